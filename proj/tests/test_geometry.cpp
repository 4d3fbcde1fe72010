#include <doctest.h>

#include "cv_oracle.hpp"
#include "error.hpp"
#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace leakaudit;
using namespace cv_oracle;

namespace {

const Quad kUnit{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}};

// Gauss-Jordan with full pivoting in long double; shares nothing with the
// library solver beyond the equations themselves.
std::array<double, 9> oracle_homography(const Quad& s, const Quad& d) {
    long double m[8][9] = {};
    for (int i = 0; i < 4; ++i) {
        const long double x = s[i].x, y = s[i].y, u = d[i].x, v = d[i].y;
        long double r0[9] = {x, y, 1, 0, 0, 0, -u * x, -u * y, u};
        long double r1[9] = {0, 0, 0, x, y, 1, -v * x, -v * y, v};
        std::copy(r0, r0 + 9, m[2 * i]);
        std::copy(r1, r1 + 9, m[2 * i + 1]);
    }
    int perm[8] = {0, 1, 2, 3, 4, 5, 6, 7};
    for (int k = 0; k < 8; ++k) {
        int br = k, bc = k;
        for (int r = k; r < 8; ++r)
            for (int c = k; c < 8; ++c)
                if (std::fabs(m[r][c]) > std::fabs(m[br][bc])) br = r, bc = c;
        for (int c = 0; c < 9; ++c) std::swap(m[k][c], m[br][c]);
        for (int r = 0; r < 8; ++r) std::swap(m[r][k], m[r][bc]);
        std::swap(perm[k], perm[bc]);
        const long double p = m[k][k];
        for (int c = 0; c < 9; ++c) m[k][c] /= p;
        for (int r = 0; r < 8; ++r) {
            if (r == k) continue;
            const long double f = m[r][k];
            for (int c = 0; c < 9; ++c) m[r][c] -= f * m[k][c];
        }
    }
    std::array<double, 9> h{};
    for (int k = 0; k < 8; ++k) h[perm[k]] = static_cast<double>(m[k][8]);
    h[8] = 1;
    return h;
}

Quad random_convex_quad(std::mt19937_64& gen, double cx, double cy, double r) {
    std::uniform_real_distribution<double> jitter(-0.25, 0.25), rad(0.6, 1.0);
    Quad q;
    for (int i = 0; i < 4; ++i) {
        const double a = -2.356 + i * 1.5708 + jitter(gen);
        q[i] = {cx + r * rad(gen) * std::cos(a), cy + r * rad(gen) * std::sin(a)};
    }
    return q;
}

Raster random_raster(std::mt19937_64& gen, int w, int h) {
    Raster r(w, h);
    for (auto& p : r.pixels) p = static_cast<std::uint8_t>(gen() & 0xFF);
    return r;
}

}  // namespace

TEST_CASE("identity and scale homographies") {
    const Homography I = solve_homography(kUnit, kUnit);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(std::abs(I(r, c) - (r == c ? 1.0 : 0.0)) < 1e-6);

    const Quad twice{Point{0, 0}, Point{2, 0}, Point{2, 2}, Point{0, 2}};
    const Homography S = solve_homography(kUnit, twice);
    const auto oracle = oracle_homography(kUnit, twice);
    const std::array<double, 9> expect{2, 0, 0, 0, 2, 0, 0, 0, 1};
    for (int i = 0; i < 9; ++i) {
        CHECK(std::abs(S.data()[i] - expect[i]) < 1e-6);
        CHECK(std::abs(oracle[i] - expect[i]) < 1e-6);
    }
}

TEST_CASE("solver matches the elimination oracle and maps corners") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 500; ++trial) {
        const Quad a = random_convex_quad(gen, 200, 120, 90);
        const Quad b = random_convex_quad(gen, 48, 24, 40);
        const Homography H = solve_homography(a, b);
        const auto o = oracle_homography(a, b);
        for (int i = 0; i < 9; ++i) CHECK(std::abs(H.data()[i] - o[i]) <= 1e-6 * std::max(1.0, std::abs(o[i])));
        for (int i = 0; i < 4; ++i) {
            const Point p = H.apply(a[i]);
            CHECK(std::abs(p.x - b[i].x) < 1e-6);
            CHECK(std::abs(p.y - b[i].y) < 1e-6);
        }
        // solve(q, q) is the identity; solve(a,b) then solve(b,a) composes to it
        const Homography self = solve_homography(a, a);
        const Homography round = solve_homography(b, a) * H;
        const std::array<double, 9> id{1, 0, 0, 0, 1, 0, 0, 0, 1};
        for (int i = 0; i < 9; ++i) {
            CHECK(std::abs(self.data()[i] - id[i]) < 1e-6);
            CHECK(std::abs(round.data()[i] - id[i]) < 1e-5);
        }
        const Homography inv = H.inverse() * H;
        for (int i = 0; i < 9; ++i) CHECK(std::abs(inv.data()[i] - id[i]) < 1e-5);
    }
}

TEST_CASE("degenerate quads are rejected") {
    const Quad collinear{Point{0, 0}, Point{1, 1}, Point{2, 2}, Point{0, 3}};
    CHECK_THROWS_AS(solve_homography(collinear, kUnit), Error);
    CHECK_THROWS_AS(solve_homography(kUnit, collinear), Error);
    try {
        (void)solve_homography(collinear, kUnit);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Degenerate);
    }
    // near-collinear within the relative tolerance, at a large scale
    const Quad almost{Point{0, 0}, Point{1000, 0}, Point{2000, 1e-7}, Point{0, 1000}};
    CHECK_THROWS_AS(solve_homography(almost, kUnit), Error);
    CHECK(has_collinear_triple(almost));
    CHECK_FALSE(has_collinear_triple(kUnit));
}

TEST_CASE("quad predicates and canonical winding") {
    CHECK(is_simple_quad(kUnit));
    CHECK_FALSE(is_simple_quad(Quad{Point{0, 0}, Point{1, 1}, Point{1, 0}, Point{0, 1}}));  // bow tie
    CHECK(signed_area(kUnit) > 0);

    const Quad q{Point{10, 12}, Point{90, 8}, Point{95, 40}, Point{12, 44}};
    for (int start = 0; start < 4; ++start) {
        Quad rot, rev;
        for (int i = 0; i < 4; ++i) {
            rot[i] = q[(start + i) % 4];
            rev[i] = q[(start + 4 - i) % 4];
        }
        CHECK(canonicalize_corners(rot) == q);
        CHECK(canonicalize_corners(rev) == q);
    }
}

TEST_CASE("canonical size parsing") {
    CHECK(parse_canonical_size("96x48") == CanonicalSize{96, 48});
    CHECK(to_string(CanonicalSize{64, 32}) == "64x32");
    CHECK_THROWS_AS(parse_canonical_size("96"), Error);
    CHECK_THROWS_AS(parse_canonical_size("0x48"), Error);
    CHECK_THROWS_AS(parse_canonical_size("96x48x2"), Error);
}

TEST_CASE("rectify over the full frame at native size is exact") {
    std::mt19937_64 gen(23);
    const Raster img = random_raster(gen, 37, 21);
    const Quad full{Point{0, 0}, Point{37, 0}, Point{37, 21}, Point{0, 21}};
    const CanonicalPlate p = rectify(img, full, {37, 21});
    CHECK(p.raster == img);
    CHECK(warp_same_frame(img, Homography()) == img);
}

TEST_CASE("axis-aligned rectify matches crop then bilinear resize") {
    std::mt19937_64 gen(29);
    std::uniform_int_distribution<int> dim(4, 40), off(0, 15);
    for (int trial = 0; trial < 60; ++trial) {
        const int cw = dim(gen), ch = dim(gen), left = off(gen), top = off(gen), right = off(gen), bottom = off(gen);
        const Raster crop = random_raster(gen, cw, ch);
        // outside the crop the image replicates the crop border, so both
        // sampling schemes see the same clamped values
        cv::Mat padded;
        cv::copyMakeBorder(to_mat(crop), padded, top, bottom, left, right, cv::BORDER_REPLICATE);
        const Raster image = from_mat(padded);

        const CanonicalSize size{dim(gen) + 8, dim(gen) + 4};
        const Quad rect{Point{double(left), double(top)}, Point{double(left + cw), double(top)},
                        Point{double(left + cw), double(top + ch)}, Point{double(left), double(top + ch)}};
        const Raster got = rectify(image, rect, size).raster;
        cv::Mat resized;
        cv::resize(to_mat(crop), resized, cv::Size(size.width, size.height), 0, 0, cv::INTER_LINEAR);
        const Raster want = from_mat(resized);
        REQUIRE(got.width == size.width);
        REQUIRE(got.height == size.height);
        CHECK(max_abs_diff(got, want) <= 1);
    }
}

TEST_CASE("rectify is translation equivariant") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 30; ++trial) {
        const Raster img = random_raster(gen, 60, 40);
        const int dx = int(gen() % 20), dy = int(gen() % 20);
        Raster shifted(80, 60);
        for (int y = 0; y < 60; ++y)
            for (int x = 0; x < 80; ++x)
                for (int c = 0; c < 3; ++c)
                    shifted.at(x, y, c) = img.at(std::clamp(x - dx, 0, 59), std::clamp(y - dy, 0, 39), c);
        const Quad q = random_convex_quad(gen, 30, 20, 14);
        Quad qs = q;
        for (auto& p : qs) p = {p.x + dx, p.y + dy};
        CHECK(max_abs_diff(rectify(img, q, {48, 24}).raster, rectify(shifted, qs, {48, 24}).raster) <= 1);
    }
}

TEST_CASE("rectify rejects collinear corners") {
    Raster img(10, 10);
    CHECK_THROWS_AS(rectify(img, Quad{Point{0, 0}, Point{5, 5}, Point{9, 9}, Point{0, 9}}, {8, 4}), Error);
}

TEST_CASE("pixel distance examples") {
    Raster a(1, 1), b(1, 1);
    b.at(0, 0, 1) = 10;
    CHECK(pixel_distance(a, b) == 10.0);
    CHECK(pixel_distance(a, a) == 0.0);

    Raster c(2, 2), d(2, 2);
    d.at(0, 0, 0) = 3, d.at(0, 0, 1) = 4, d.at(1, 1, 2) = 12;
    CHECK(pixel_distance(c, d) == 13.0);

    try {
        (void)pixel_distance(Raster(2, 2), Raster(2, 3));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("pixel distance is a metric on sampled triples") {
    std::mt19937_64 gen(37);
    for (int trial = 0; trial < 1000; ++trial) {
        const int w = 1 + int(gen() % 6), h = 1 + int(gen() % 4);
        Raster x = random_raster(gen, w, h), y = random_raster(gen, w, h), z = random_raster(gen, w, h);
        if (trial % 5 == 0) y = x;
        const double xy = pixel_distance(x, y), yx = pixel_distance(y, x);
        CHECK(xy == yx);
        CHECK((xy == 0) == (x == y));
        CHECK(pixel_distance(x, z) <= xy + pixel_distance(y, z) + 1e-9);
    }
}
