#pragma once

#include "assignment.hpp"
#include "dedup.hpp"
#include "manifest.hpp"
#include "rng.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace leakaudit {

enum class Protocol {
    AolpFairA,
    AolpFairB,
    CcpdFair,
    Generic,
    AolpB,  // the original AC+LE / RP protocol, used as the Fair-B baseline
};

std::string_view to_string(Protocol p) noexcept;
/// Throws Error(InvalidArgument) naming the unknown protocol.
Protocol parse_protocol(std::string_view name);

struct SplitSpec {
    Protocol protocol = Protocol::Generic;
    std::optional<std::uint64_t> seed;
    double val_fraction = 0.2;

    // generic: exact role sizes, must sum to the manifest size
    std::map<Role, std::size_t> targets;

    // ccpd_fair: subsets that donate train/val images; everything else is test
    std::vector<std::string> donor_subsets{"Base", "Green"};
    // per donor subset validation size; default round(|subset| / 2)
    std::map<std::string, std::size_t> val_targets;
    // donors whose forced validation set may overflow the target (logged, not fatal)
    std::set<std::string> lenient_donors{"Green"};
};

/// round-half-away-from-zero
std::size_t round_count(double value);

struct Partition {
    std::vector<std::string> test;  // sorted
    std::vector<std::string> rest;  // sorted
    std::size_t swaps = 0;
    bool used_subset_sum = false;  // swap repair stalled; exact fill came from the feasibility table
};

/// Splits whole groups so that exactly `target_test` images land on the test
/// side. Groups are taken in key order, shuffled with `rng`, filled greedily,
/// then repaired by exchanging one test group for one or two rest groups
/// (smallest sizes first) for at most 10,000 attempts. If repair stalls, a
/// subset-sum table over group-size multiplicities either proves the target
/// infeasible (Error(Infeasible)) or supplies an exact selection.
Partition group_atomic_partition(const std::vector<DuplicateGroup>& groups, std::size_t n_total,
                                 std::size_t target_test, Rng& rng);

/// True when some multiset of the given group sizes sums to `target`.
bool subset_sum_feasible(const std::vector<std::size_t>& sizes, std::size_t target);

SplitAssignment split_aolp_fair_a(const Manifest& manifest, std::uint64_t seed, double val_fraction = 0.2);
SplitAssignment split_aolp_b(const Manifest& manifest, std::uint64_t seed, double val_fraction = 0.2);
SplitAssignment split_aolp_fair_b(const Manifest& manifest, std::uint64_t seed, double val_fraction = 0.2);
SplitAssignment split_ccpd_fair(const Manifest& manifest, const SplitSpec& spec);
SplitAssignment split_generic(const Manifest& manifest, const SplitSpec& spec);

/// Dispatches on spec.protocol. Randomized protocols require a seed.
SplitAssignment generate_split(const Manifest& manifest, const SplitSpec& spec);

/// Role sizes the protocol must produce on this manifest.
RoleCounts expected_counts(const Manifest& manifest, const SplitSpec& spec);

struct VerificationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
    std::vector<std::string> offending;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    bool passed() const noexcept;
    std::string to_text() const;
};

/// Never throws on a bad split; failures become check content.
/// `multiply_assigned` lists ids seen under more than one role when the
/// assignment was read back from files.
VerificationReport verify_split(const SplitAssignment& assignment, const Manifest& manifest, const SplitSpec& spec,
                                const std::vector<std::string>& multiply_assigned = {});

}  // namespace leakaudit
