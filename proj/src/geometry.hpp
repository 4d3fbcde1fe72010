#pragma once

#include "raster.hpp"

#include <array>
#include <string>

namespace leakaudit {

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

/// Corner quad. Canonical order is top-left, top-right, bottom-right,
/// bottom-left (clockwise on screen, y pointing down).
using Quad = std::array<Point, 4>;

struct CanonicalSize {
    int width = 96;
    int height = 48;
    friend bool operator==(const CanonicalSize&, const CanonicalSize&) = default;
};

/// Parses "WxH". Throws Error(InvalidArgument).
CanonicalSize parse_canonical_size(const std::string& text);
std::string to_string(const CanonicalSize& size);

/// Twice the signed area of triangle abc.
double cross(const Point& a, const Point& b, const Point& c) noexcept;

/// Shoelace signed area; positive for clockwise-on-screen order.
double signed_area(const Quad& q) noexcept;

/// True when some triple of corners is collinear, relative to the bounding
/// box area (tolerance 1e-9 of it).
bool has_collinear_triple(const Quad& q) noexcept;

/// Non-self-intersecting, positive area, no collinear triple.
bool is_simple_quad(const Quad& q) noexcept;

/// Reorders a quad to clockwise winding starting at the top-left corner
/// (the vertex minimising x + y, ties broken by y then x).
Quad canonicalize_corners(const Quad& q);

class Homography {
public:
    Homography();  // identity
    explicit Homography(const std::array<double, 9>& m);

    Point apply(const Point& p) const noexcept;
    Homography inverse() const;
    Homography operator*(const Homography& rhs) const noexcept;
    double determinant() const noexcept;

    double operator()(int r, int c) const noexcept { return m_[r * 3 + c]; }
    const std::array<double, 9>& data() const noexcept { return m_; }

private:
    std::array<double, 9> m_;
};

/// Direct linear transform on the 8x8 system with partial pivoting, h33 = 1.
/// Throws Error(Degenerate) on a collinear triple or a singular system.
Homography solve_homography(const Quad& src, const Quad& dst);

/// The rectified plate region at a fixed size.
struct CanonicalPlate {
    Raster raster;
    int width() const noexcept { return raster.width; }
    int height() const noexcept { return raster.height; }
};

/// Inverse-warps the quad region of `image` onto a size.width x size.height
/// rectangle using bilinear sampling with edge clamping. Corners use pixel-edge
/// coordinates, so the full-image quad (0,0)-(W,H) at size W x H is the identity.
CanonicalPlate rectify(const Raster& image, const Quad& corners, CanonicalSize size);

/// Warps `src` into a frame of the same size through `dst_from_src`
/// (maps source pixel-edge coordinates to destination ones).
Raster warp_same_frame(const Raster& src, const Homography& dst_from_src);

/// Euclidean distance over all pixels and channels, in double precision.
/// Throws Error(DimensionMismatch).
double pixel_distance(const Raster& a, const Raster& b);
double pixel_distance(const CanonicalPlate& a, const CanonicalPlate& b);

}  // namespace leakaudit
