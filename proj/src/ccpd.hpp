#pragma once

#include "manifest.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace leakaudit {

// Charmap table names used by the CCPD label encoding.
inline constexpr const char* kProvinceTable = "provinces";
inline constexpr const char* kLetterTable = "alphabets";
inline constexpr const char* kAlnumTable = "ads";

/// Decoded CCPD filename annotation.
///   <area>-<h>_<v>-<x1>&<y1>_<x2>&<y2>-<4 vertices>-<indices>-<brightness>-<blurriness>.<ext>
/// Vertices are kept in the stored order (bottom-right first).
struct CcpdRecord {
    double area_ratio = 0;
    std::pair<double, double> tilt{};
    std::array<Point, 2> bbox{};
    std::array<Point, 4> vertices{};
    std::vector<int> char_indices;
    int brightness = 0;
    int blurriness = 0;

    friend bool operator==(const CcpdRecord&, const CcpdRecord&) = default;
};

/// Loads a JSON object with arrays "provinces", "alphabets" and "ads".
Charmaps load_charmaps(const std::filesystem::path& path);
Charmaps parse_charmaps(std::string_view json_text);

/// `name` is the base filename, extension optional. Throws Error(Parse)
/// naming the offending field; index range errors name the position.
CcpdRecord parse_ccpd_filename(std::string_view name, const Charmaps& charmaps);

/// Index 0 -> provinces, index 1 -> alphabets, the rest -> ads.
/// Throws Error(Validation) on an empty list, bad length or out-of-range index.
PlateKey decode_plate_indices(const std::vector<int>& indices, const Charmaps& charmaps);

/// Raw concatenation of the decoded symbols (not normalized).
std::string decode_plate_text(const std::vector<int>& indices, const Charmaps& charmaps);

/// Vertices in canonical top-left clockwise order.
Quad canonical_vertices(const CcpdRecord& record);

struct CcpdIngestOptions {
    std::string dataset_id = "ccpd";
    std::optional<std::string> subset;  // otherwise derived from the directory name
    std::optional<std::pair<int, int>> image_size;  // otherwise probed from the file
};

/// Subset tag derived from the parent directories, e.g. ccpd_base/x.jpg -> "Base",
/// ccpd_green/test/x.jpg -> "Green-test", ccpd_green/train/x.jpg -> "Green".
std::string ccpd_subset_from_path(const std::filesystem::path& relative);

/// Builds a manifest from CCPD image paths relative to `root`.
Manifest ingest_ccpd(const std::filesystem::path& root, const std::vector<std::filesystem::path>& relative_paths,
                     const Charmaps& charmaps, const CcpdIngestOptions& options);

}  // namespace leakaudit
