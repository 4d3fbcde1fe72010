#include "raster.hpp"

#include "error.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <cmath>

namespace leakaudit {

Raster::Raster(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, fill) {}

Raster load_image(const std::filesystem::path& path) {
    cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (bgr.empty()) throw Error(ErrorCode::Io, "cannot decode image '" + path.string() + "'");
    Raster out(bgr.cols, bgr.rows);
    for (int y = 0; y < bgr.rows; ++y) {
        const auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            out.at(x, y, 0) = row[x][2];
            out.at(x, y, 1) = row[x][1];
            out.at(x, y, 2) = row[x][0];
        }
    }
    return out;
}

void save_image(const Raster& raster, const std::filesystem::path& path) {
    cv::Mat bgr(raster.height, raster.width, CV_8UC3);
    for (int y = 0; y < raster.height; ++y) {
        auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < raster.width; ++x)
            row[x] = cv::Vec3b(raster.at(x, y, 2), raster.at(x, y, 1), raster.at(x, y, 0));
    }
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), bgr);
    } catch (const cv::Exception& e) {
        throw Error(ErrorCode::Io, "cannot write image '" + path.string() + "': " + e.what());
    }
    if (!ok) throw Error(ErrorCode::Io, "cannot write image '" + path.string() + "'");
}

std::pair<int, int> probe_image_size(const std::filesystem::path& path) {
    // imgcodecs has no header-only probe; a reduced decode is the cheapest option.
    cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (m.empty()) throw Error(ErrorCode::Io, "cannot decode image '" + path.string() + "'");
    return {m.cols, m.rows};
}

std::uint8_t clamp_to_u8(double v) {
    if (!(v > 0.0)) return 0;
    if (v >= 255.0) return 255;
    return static_cast<std::uint8_t>(std::lround(v));
}

void sample_bilinear(const Raster& src, double x, double y, double out[3]) {
    const double cx = std::clamp(x, 0.0, static_cast<double>(src.width - 1));
    const double cy = std::clamp(y, 0.0, static_cast<double>(src.height - 1));
    const int x0 = static_cast<int>(std::floor(cx));
    const int y0 = static_cast<int>(std::floor(cy));
    const int x1 = std::min(x0 + 1, src.width - 1);
    const int y1 = std::min(y0 + 1, src.height - 1);
    const double fx = cx - x0;
    const double fy = cy - y0;
    for (int c = 0; c < 3; ++c) {
        const double top = src.at(x0, y0, c) * (1.0 - fx) + src.at(x1, y0, c) * fx;
        const double bottom = src.at(x0, y1, c) * (1.0 - fx) + src.at(x1, y1, c) * fx;
        out[c] = top * (1.0 - fy) + bottom * fy;
    }
}

}  // namespace leakaudit
