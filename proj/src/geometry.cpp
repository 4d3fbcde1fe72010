#include "geometry.hpp"

#include "error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace leakaudit {

CanonicalSize parse_canonical_size(const std::string& text) {
    const auto x = text.find_first_of("xX");
    CanonicalSize size{0, 0};
    if (x != std::string::npos) {
        const char* b = text.data();
        const char* e = b + text.size();
        auto r1 = std::from_chars(b, b + x, size.width);
        auto r2 = std::from_chars(b + x + 1, e, size.height);
        if (r1.ec == std::errc{} && r1.ptr == b + x && r2.ec == std::errc{} && r2.ptr == e && size.width > 0 &&
            size.height > 0)
            return size;
    }
    throw Error(ErrorCode::InvalidArgument, "canonical size '" + text + "' is not of the form WxH with positive W, H");
}

std::string to_string(const CanonicalSize& size) {
    return std::to_string(size.width) + "x" + std::to_string(size.height);
}

double cross(const Point& a, const Point& b, const Point& c) noexcept {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

double signed_area(const Quad& q) noexcept {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Point& p = q[i];
        const Point& n = q[(i + 1) % 4];
        s += p.x * n.y - n.x * p.y;
    }
    return 0.5 * s;
}

bool has_collinear_triple(const Quad& q) noexcept {
    double min_x = q[0].x, max_x = q[0].x, min_y = q[0].y, max_y = q[0].y;
    for (const Point& p : q) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double tol = 1e-9 * (max_x - min_x) * (max_y - min_y);
    for (int skip = 0; skip < 4; ++skip) {
        Point t[3];
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != skip) t[k++] = q[i];
        if (std::abs(0.5 * cross(t[0], t[1], t[2])) <= tol) return true;
    }
    return false;
}

namespace {

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    const double d1 = cross(c, d, a);
    const double d2 = cross(c, d, b);
    const double d3 = cross(a, b, c);
    const double d4 = cross(a, b, d);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace

bool is_simple_quad(const Quad& q) noexcept {
    if (has_collinear_triple(q)) return false;
    if (segments_cross(q[0], q[1], q[2], q[3]) || segments_cross(q[1], q[2], q[3], q[0])) return false;
    return std::abs(signed_area(q)) > 0.0;
}

Quad canonicalize_corners(const Quad& q) {
    Quad cw = q;
    if (signed_area(cw) < 0) std::swap(cw[1], cw[3]);
    int start = 0;
    for (int i = 1; i < 4; ++i) {
        const Point& p = cw[i];
        const Point& s = cw[start];
        const double ps = p.x + p.y, ss = s.x + s.y;
        if (ps < ss || (ps == ss && (p.y < s.y || (p.y == s.y && p.x < s.x)))) start = i;
    }
    Quad out;
    for (int i = 0; i < 4; ++i) out[i] = cw[(start + i) % 4];
    return out;
}

Homography::Homography() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

Homography::Homography(const std::array<double, 9>& m) : m_(m) {}

Point Homography::apply(const Point& p) const noexcept {
    const double w = m_[6] * p.x + m_[7] * p.y + m_[8];
    return {(m_[0] * p.x + m_[1] * p.y + m_[2]) / w, (m_[3] * p.x + m_[4] * p.y + m_[5]) / w};
}

double Homography::determinant() const noexcept {
    const auto& m = m_;
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Homography Homography::inverse() const {
    const auto& m = m_;
    const double det = determinant();
    if (det == 0.0 || !std::isfinite(det)) throw Error(ErrorCode::Degenerate, "homography is singular");
    std::array<double, 9> inv{
        (m[4] * m[8] - m[5] * m[7]), -(m[1] * m[8] - m[2] * m[7]), (m[1] * m[5] - m[2] * m[4]),
        -(m[3] * m[8] - m[5] * m[6]), (m[0] * m[8] - m[2] * m[6]), -(m[0] * m[5] - m[2] * m[3]),
        (m[3] * m[7] - m[4] * m[6]), -(m[0] * m[7] - m[1] * m[6]), (m[0] * m[4] - m[1] * m[3]),
    };
    const double scale = inv[8] != 0.0 ? inv[8] : det;
    for (double& v : inv) v /= scale;
    return Homography(inv);
}

Homography Homography::operator*(const Homography& rhs) const noexcept {
    std::array<double, 9> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i * 3 + j] += m_[i * 3 + k] * rhs.m_[k * 3 + j];
    if (r[8] != 0.0)
        for (double& v : r) v /= r[8];
    return Homography(r);
}

Homography solve_homography(const Quad& src, const Quad& dst) {
    if (has_collinear_triple(src)) throw Error(ErrorCode::Degenerate, "source quad has three collinear corners");
    if (has_collinear_triple(dst)) throw Error(ErrorCode::Degenerate, "destination quad has three collinear corners");

    double a[8][9] = {};
    for (int i = 0; i < 4; ++i) {
        const double x = src[i].x, y = src[i].y, u = dst[i].x, v = dst[i].y;
        double* r0 = a[2 * i];
        double* r1 = a[2 * i + 1];
        r0[0] = x, r0[1] = y, r0[2] = 1, r0[6] = -u * x, r0[7] = -u * y, r0[8] = u;
        r1[3] = x, r1[4] = y, r1[5] = 1, r1[6] = -v * x, r1[7] = -v * y, r1[8] = v;
    }

    double scale = 0.0;
    for (auto& row : a)
        for (int j = 0; j < 8; ++j) scale = std::max(scale, std::abs(row[j]));

    for (int col = 0; col < 8; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 8; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) <= 1e-12 * scale) throw Error(ErrorCode::Degenerate, "homography system is singular");
        if (pivot != col)
            for (int j = 0; j < 9; ++j) std::swap(a[col][j], a[pivot][j]);
        for (int r = col + 1; r < 8; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (int j = col; j < 9; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::array<double, 9> h{};
    for (int r = 7; r >= 0; --r) {
        double s = a[r][8];
        for (int j = r + 1; j < 8; ++j) s -= a[r][j] * h[j];
        h[r] = s / a[r][r];
    }
    h[8] = 1.0;

    Homography H(h);
    double max_abs = 0.0;
    for (double v : h) max_abs = std::max(max_abs, std::abs(v));
    if (std::abs(H.determinant()) <= 1e-9 * max_abs * max_abs * max_abs)
        throw Error(ErrorCode::Degenerate, "homography determinant vanishes");
    return H;
}

CanonicalPlate rectify(const Raster& image, const Quad& corners, CanonicalSize size) {
    if (image.empty()) throw Error(ErrorCode::InvalidArgument, "cannot rectify an empty image");
    if (size.width <= 0 || size.height <= 0) throw Error(ErrorCode::InvalidArgument, "canonical size must be positive");
    const Quad canon{Point{0, 0}, Point{double(size.width), 0}, Point{double(size.width), double(size.height)},
                     Point{0, double(size.height)}};
    const Homography src_from_canon = solve_homography(canon, corners);

    CanonicalPlate out{Raster(size.width, size.height)};
    double px[3];
    for (int v = 0; v < size.height; ++v) {
        for (int u = 0; u < size.width; ++u) {
            const Point p = src_from_canon.apply({u + 0.5, v + 0.5});
            sample_bilinear(image, p.x - 0.5, p.y - 0.5, px);
            for (int c = 0; c < 3; ++c) out.raster.at(u, v, c) = clamp_to_u8(px[c]);
        }
    }
    return out;
}

Raster warp_same_frame(const Raster& src, const Homography& dst_from_src) {
    const Homography src_from_dst = dst_from_src.inverse();
    Raster out(src.width, src.height);
    double px[3];
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            const Point p = src_from_dst.apply({x + 0.5, y + 0.5});
            sample_bilinear(src, p.x - 0.5, p.y - 0.5, px);
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = clamp_to_u8(px[c]);
        }
    }
    return out;
}

double pixel_distance(const Raster& a, const Raster& b) {
    if (a.width != b.width || a.height != b.height || a.pixels.size() != b.pixels.size())
        throw Error(ErrorCode::DimensionMismatch, "pixel_distance: rasters are " + std::to_string(a.width) + "x" +
                                                      std::to_string(a.height) + " and " + std::to_string(b.width) +
                                                      "x" + std::to_string(b.height));
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        sum += d * d;
    }
    return std::sqrt(sum);
}

double pixel_distance(const CanonicalPlate& a, const CanonicalPlate& b) { return pixel_distance(a.raster, b.raster); }

}  // namespace leakaudit
