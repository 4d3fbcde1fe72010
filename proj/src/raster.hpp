#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace leakaudit {

/// Row-major interleaved RGB image, 8 bits per channel.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Raster() = default;
    Raster(int w, int h, std::uint8_t fill = 0);

    bool empty() const noexcept { return width == 0 || height == 0; }
    std::uint8_t& at(int x, int y, int c) { return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
    std::uint8_t at(int x, int y, int c) const { return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }

    friend bool operator==(const Raster&, const Raster&) = default;
};

// Decoding boundary. Any format the underlying codec understands is accepted;
// output is always RGB. Throws Error(Io) when the file cannot be decoded.
Raster load_image(const std::filesystem::path& path);
void save_image(const Raster& raster, const std::filesystem::path& path);

/// (width, height) of an image file.
std::pair<int, int> probe_image_size(const std::filesystem::path& path);

/// Bilinear sample at continuous pixel-index coordinates (pixel centres on
/// integers). Out-of-range coordinates clamp to the nearest edge pixel.
void sample_bilinear(const Raster& src, double x, double y, double out[3]);

std::uint8_t clamp_to_u8(double v);

}  // namespace leakaudit
