#pragma once

#include "geometry.hpp"
#include "plate.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leakaudit {

struct BBox {
    double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
    friend bool operator==(const BBox&, const BBox&) = default;
};

struct ImageEntry {
    std::string id;  // relative file path, unique within a manifest
    std::string dataset_id;
    std::string subset;
    std::string plate_text;
    int image_width = 0;
    int image_height = 0;
    std::optional<Quad> corners;
    std::optional<BBox> bbox;

    PlateKey key() const { return normalize_plate(plate_text); }

    friend bool operator==(const ImageEntry&, const ImageEntry&) = default;
};

/// Named symbol tables for index-coded labels; symbols are UTF-8 strings.
using Charmaps = std::map<std::string, std::vector<std::string>>;

struct Manifest {
    std::string dataset_id;
    std::vector<ImageEntry> entries;
    Charmaps charmaps;

    friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// Checks the ImageEntry invariants; `where` prefixes error messages.
/// Throws Error(Validation).
void validate_entry(const ImageEntry& entry, const std::string& where = {});

/// One JSON object per non-empty line. An optional first line of the form
/// {"manifest": {"dataset_id": ..., "charmaps": {...}}} carries manifest
/// level fields. Corners are canonicalized to clockwise-from-top-left.
/// Throws Error(Parse) with the line number, or Error(Validation).
Manifest parse_manifest(std::istream& in);
Manifest parse_manifest(std::string_view text);
Manifest load_manifest(const std::filesystem::path& path);

std::string serialize_entry(const ImageEntry& entry);
std::string serialize_manifest(const Manifest& manifest);

}  // namespace leakaudit
