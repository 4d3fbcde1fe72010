#pragma once

#include "assignment.hpp"
#include "geometry.hpp"
#include "manifest.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace leakaudit {

/// Images sharing one normalized plate string.
struct DuplicateGroup {
    PlateKey key;
    std::vector<std::string> members;  // sorted, distinct
    std::set<std::string> dataset_ids;

    friend bool operator==(const DuplicateGroup&, const DuplicateGroup&) = default;
};

/// One group per distinct key, sorted by key. An id occurring in two of the
/// given manifests is rejected (Error(Validation)) since members are bare ids.
std::vector<DuplicateGroup> build_groups(std::span<const Manifest> manifests);
std::vector<DuplicateGroup> build_groups(const Manifest& manifest);

struct ScoredPair {
    std::string train_id;
    std::string test_id;
    double distance = 0;
    friend bool operator==(const ScoredPair&, const ScoredPair&) = default;
};

struct PercentilePair {
    double percentile = 0;
    ScoredPair pair;
    friend bool operator==(const PercentilePair&, const PercentilePair&) = default;
};

struct ReportMetadata {
    std::string tool_version;
    std::string canonical_size;  // "WxH"
    std::optional<std::uint64_t> seed;
    std::string distance_basis = "rectified";
    friend bool operator==(const ReportMetadata&, const ReportMetadata&) = default;
};

struct LeakageReport {
    std::string split_name;
    std::size_t n_train = 0;
    std::size_t n_val = 0;
    std::size_t n_test = 0;
    std::size_t n_test_leaked = 0;
    double leak_fraction = 0;
    // Validation images whose key also occurs in test; reported, never counted as leakage.
    std::size_t n_val_with_test_duplicates = 0;
    // group size -> number of images living in groups of that size
    std::map<std::size_t, std::size_t> group_size_histogram;
    std::vector<std::string> leaked_test_ids;  // sorted
    std::vector<PercentilePair> percentile_pairs;
    ReportMetadata metadata;

    friend bool operator==(const LeakageReport&, const LeakageReport&) = default;
};

/// Counts test images whose key occurs on at least one train image.
/// Throws Error(Validation) on an unassigned id or an empty test set.
LeakageReport audit_split(const std::vector<DuplicateGroup>& groups, const SplitAssignment& assignment,
                          std::string split_name = "split");

/// All (train, test) id pairs inside each group, in group then id order.
std::vector<std::pair<std::string, std::string>> cross_split_pairs(const std::vector<DuplicateGroup>& groups,
                                                                   const SplitAssignment& assignment);

/// Provides the rectified plate for an image id, or nothing when it cannot be
/// computed (no corners, missing file).
using PlateSource = std::function<std::optional<CanonicalPlate>(const std::string& id)>;

/// Distances for every cross-split pair whose plates are both available.
/// Distances are rounded to 2 decimals, the reporting precision.
std::vector<ScoredPair> score_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                                    const PlateSource& train_plates, const PlateSource& test_plates);

/// Sorts ascending by (distance, train_id, test_id) and, for each percentile
/// p, picks zero-based rank floor(p/100 * (n-1)). Throws Error(Validation)
/// on an empty pair list or an out-of-range percentile.
std::vector<PercentilePair> percentile_pairs(std::vector<ScoredPair> pairs, const std::vector<double>& percentiles);

double round_to(double value, int decimals);

enum class OverlapTier { Likely, Candidate };
std::string_view to_string(OverlapTier tier) noexcept;

struct OverlapPair {
    std::string key;
    std::string id_a;
    std::string id_b;
    std::optional<double> distance;
    OverlapTier tier = OverlapTier::Candidate;
    friend bool operator==(const OverlapPair&, const OverlapPair&) = default;
};

/// Every (a, b) with equal keys. With a threshold and both plates available,
/// tier is Likely when distance <= threshold. Sorted by (key, id_a, id_b).
std::vector<OverlapPair> cross_dataset_overlap(const Manifest& a, const Manifest& b,
                                               std::optional<double> distance_threshold,
                                               const PlateSource& plates_a = {}, const PlateSource& plates_b = {});

}  // namespace leakaudit
