#pragma once

#include "assignment.hpp"
#include "dedup.hpp"
#include "splitgen.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leakaudit {

struct InputDigest {
    std::string path;
    std::string sha256;
    friend bool operator==(const InputDigest&, const InputDigest&) = default;
};

struct OverlapSection {
    std::string dataset_a;
    std::string dataset_b;
    std::optional<double> threshold;
    std::vector<OverlapPair> pairs;
    friend bool operator==(const OverlapSection&, const OverlapSection&) = default;
};

struct AuditDocument {
    std::string tool_version;
    std::string generated_at;  // ISO 8601, UTC
    std::vector<InputDigest> inputs;
    std::vector<LeakageReport> reports;
    std::optional<OverlapSection> overlap;
    friend bool operator==(const AuditDocument&, const AuditDocument&) = default;
};

enum class ReportFormat { Json, Table };

/// "json" (alias "structured") or "table". Throws Error(InvalidArgument).
ReportFormat parse_report_format(std::string_view name);

/// Json: sorted keys, parse_audit_document() inverts it exactly.
/// Table: one row per split, fractions as "320/683 (46.9%)".
std::string emit_audit(const AuditDocument& doc, ReportFormat format);
AuditDocument parse_audit_document(std::string_view json_text);

/// k/n as a percentage with one decimal, halves rounded away from zero, using
/// integer arithmetic so 320/683 is exactly "46.9%".
std::string format_percent(std::size_t k, std::size_t n);
/// "k/n (p%)"
std::string format_fraction(std::size_t k, std::size_t n);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);
std::string utc_timestamp();

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

/// train.txt, val.txt, test.txt (sorted ids, newline-terminated),
/// excluded.txt when the protocol dropped images, and split_meta.json.
std::vector<std::filesystem::path> emit_split_files(const SplitAssignment& assignment, const SplitSpec& spec,
                                                    const std::filesystem::path& dir);

struct LoadedSplit {
    SplitAssignment assignment;
    std::vector<std::string> multiply_assigned;
    std::optional<SplitSpec> spec;  // from split_meta.json when present
};

/// Reads what emit_split_files wrote. The sidecar is optional; without it the
/// protocol is unknown and spec is empty.
LoadedSplit load_split_files(const std::filesystem::path& dir);

struct GalleryEntry {
    PercentilePair pair;
    std::optional<Raster> train_plate;
    std::optional<Raster> test_plate;
};

/// index.html plus one PNG per plate, blocks in ascending percentile order.
/// Throws Error(Validation) naming the pair when a raster is missing.
std::filesystem::path emit_gallery(std::vector<GalleryEntry> entries, const std::filesystem::path& dir);

}  // namespace leakaudit
