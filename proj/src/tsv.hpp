#pragma once

#include "manifest.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace leakaudit {

struct TsvIngestOptions {
    std::string dataset_id;
    std::optional<std::filesystem::path> image_root;  // probes sizes when the columns are absent
    std::optional<std::pair<int, int>> image_size;
};

/// Tab-separated annotations with a header row. Required columns: id, subset,
/// plate_text. Optional: image_width, image_height, corners (eight
/// comma-separated numbers x1,y1,...,x4,y4 in any winding). Blank corner
/// cells are allowed. Throws Error(Parse) with the line number, or
/// Error(Validation).
Manifest ingest_tsv(std::istream& in, const TsvIngestOptions& options);
Manifest ingest_tsv(const std::filesystem::path& path, const TsvIngestOptions& options);

}  // namespace leakaudit
