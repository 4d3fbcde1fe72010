#include "splitgen.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace leakaudit {

std::string_view to_string(Protocol p) noexcept {
    switch (p) {
    case Protocol::AolpFairA: return "aolp_fair_a";
    case Protocol::AolpFairB: return "aolp_fair_b";
    case Protocol::CcpdFair: return "ccpd_fair";
    case Protocol::Generic: return "generic";
    case Protocol::AolpB: return "aolp_b";
    }
    return "?";
}

Protocol parse_protocol(std::string_view name) {
    for (Protocol p : {Protocol::AolpFairA, Protocol::AolpFairB, Protocol::CcpdFair, Protocol::Generic, Protocol::AolpB})
        if (to_string(p) == name) return p;
    throw Error(ErrorCode::InvalidArgument, "unknown protocol '" + std::string(name) +
                                                "' (expected aolp_fair_a, aolp_fair_b, ccpd_fair, generic or aolp_b)");
}

std::size_t round_count(double value) {
    return static_cast<std::size_t>(std::llround(value));  // llround rounds halves away from zero
}

namespace {

constexpr std::size_t kMaxSwapAttempts = 10'000;

// Bounded subset-sum over distinct sizes with multiplicities. used[i][t] is the
// number of copies of size i in a witness for sum t (valid where reachable).
struct SubsetSumTable {
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::uint32_t>> used;
    std::vector<char> reach;

    SubsetSumTable(const std::vector<std::size_t>& group_sizes, std::size_t target) {
        std::map<std::size_t, std::size_t> mult;
        for (std::size_t s : group_sizes) ++mult[s];
        reach.assign(target + 1, 0);
        reach[0] = 1;
        for (auto [s, c] : mult) {
            sizes.push_back(s);
            counts.push_back(c);
            std::vector<std::uint32_t> u(target + 1, 0);
            const std::vector<char> before = reach;
            for (std::size_t t = s; t <= target && s > 0; ++t) {
                if (before[t]) continue;
                if (reach[t - s] && u[t - s] < c) {
                    reach[t] = 1;
                    u[t] = u[t - s] + 1;
                }
            }
            used.push_back(std::move(u));
        }
    }

    bool feasible() const { return reach.back() != 0; }

    // copies of each size (by size) in a witness for the target
    std::map<std::size_t, std::size_t> witness() const {
        std::map<std::size_t, std::size_t> out;
        std::size_t t = reach.size() - 1;
        for (std::size_t i = sizes.size(); i-- > 0;) {
            const std::size_t k = used[i][t];
            out[sizes[i]] = k;
            t -= k * sizes[i];
        }
        return out;
    }
};

struct Move {
    std::size_t out_size = 0;  // 0: no test group leaves
    std::size_t in_a = 0;
    std::size_t in_b = 0;  // 0: single incoming group
    std::size_t delta = 0;
};

std::string describe_sizes(const std::vector<std::size_t>& sizes) {
    std::map<std::size_t, std::size_t> mult;
    for (auto s : sizes) ++mult[s];
    std::ostringstream os;
    bool first = true;
    for (auto [s, c] : mult) {
        os << (first ? "" : ", ") << c << "x" << s;
        first = false;
    }
    return os.str();
}

}  // namespace

bool subset_sum_feasible(const std::vector<std::size_t>& sizes, std::size_t target) {
    return SubsetSumTable(sizes, target).feasible();
}

Partition group_atomic_partition(const std::vector<DuplicateGroup>& groups, std::size_t n_total,
                                 std::size_t target_test, Rng& rng) {
    std::size_t sum = 0;
    for (const auto& g : groups) sum += g.members.size();
    if (sum != n_total)
        throw Error(ErrorCode::InvalidArgument, "groups hold " + std::to_string(sum) + " images but n_total is " +
                                                    std::to_string(n_total));
    if (target_test > n_total)
        throw Error(ErrorCode::InvalidArgument, "target " + std::to_string(target_test) + " exceeds the " +
                                                    std::to_string(n_total) + " available images");

    std::vector<std::size_t> order(groups.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return groups[a].key < groups[b].key; });
    rng.shuffle(order);

    auto size_at = [&](std::size_t pos) { return groups[order[pos]].members.size(); };

    std::vector<char> in_test(order.size(), 0);  // indexed by shuffled position
    std::size_t current = 0;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        if (current + size_at(pos) <= target_test) {
            in_test[pos] = 1;
            current += size_at(pos);
        }
    }

    // size -> shuffled positions, so the earliest-drawn group of a size moves first
    std::map<std::size_t, std::set<std::size_t>> test_by_size, rest_by_size;
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        (in_test[pos] ? test_by_size : rest_by_size)[size_at(pos)].insert(pos);

    Partition result;
    std::size_t deficit = target_test - current;
    for (std::size_t attempt = 0; deficit > 0 && attempt < kMaxSwapAttempts; ++attempt) {
        std::vector<std::size_t> out_sizes{0};
        for (const auto& [s, set] : test_by_size)
            if (!set.empty()) out_sizes.push_back(s);
        std::vector<std::size_t> in_sizes;
        for (const auto& [s, set] : rest_by_size)
            if (!set.empty()) in_sizes.push_back(s);

        std::optional<Move> exact, partial;
        auto consider = [&](const Move& m) {
            if (m.delta == deficit) {
                if (!exact) exact = m;
            } else if (m.delta > 0 && m.delta < deficit && (!partial || m.delta > partial->delta)) {
                partial = m;
            }
        };
        for (std::size_t a : out_sizes) {
            for (std::size_t i = 0; i < in_sizes.size() && !exact; ++i) {
                const std::size_t b1 = in_sizes[i];
                if (b1 > a) consider({a, b1, 0, b1 - a});
                for (std::size_t j = i; j < in_sizes.size() && !exact; ++j) {
                    const std::size_t b2 = in_sizes[j];
                    if (j == i && rest_by_size[b1].size() < 2) continue;
                    if (b1 + b2 <= a) continue;
                    if (b1 + b2 - a > deficit) break;
                    consider({a, b1, b2, b1 + b2 - a});
                }
            }
            if (exact) break;
        }
        const std::optional<Move>& move = exact ? exact : partial;
        if (!move) break;

        auto take_first = [](std::set<std::size_t>& s) {
            const std::size_t pos = *s.begin();
            s.erase(s.begin());
            return pos;
        };
        if (move->out_size) {
            const std::size_t pos = take_first(test_by_size[move->out_size]);
            in_test[pos] = 0;
            rest_by_size[move->out_size].insert(pos);
        }
        // take both incoming groups before reinserting anything into test buckets
        std::vector<std::size_t> incoming{take_first(rest_by_size[move->in_a])};
        if (move->in_b) incoming.push_back(take_first(rest_by_size[move->in_b]));
        for (std::size_t pos : incoming) {
            in_test[pos] = 1;
            test_by_size[size_at(pos)].insert(pos);
        }
        deficit -= move->delta;
        ++result.swaps;
    }

    if (deficit > 0) {
        std::vector<std::size_t> sizes;
        for (const auto& g : groups) sizes.push_back(g.members.size());
        const SubsetSumTable table(sizes, target_test);
        if (!table.feasible())
            throw Error(ErrorCode::Infeasible, "no set of whole duplicate groups holds exactly " +
                                                   std::to_string(target_test) + " images (group sizes: " +
                                                   describe_sizes(sizes) + ")");
        auto want = table.witness();
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            auto& k = want[size_at(pos)];
            in_test[pos] = k > 0;
            if (k > 0) --k;
        }
        result.used_subset_sum = true;
    }

    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        auto& side = in_test[pos] ? result.test : result.rest;
        const auto& members = groups[order[pos]].members;
        side.insert(side.end(), members.begin(), members.end());
    }
    std::sort(result.test.begin(), result.test.end());
    std::sort(result.rest.begin(), result.rest.end());
    return result;
}

namespace {

std::vector<DuplicateGroup> restrict_groups(const std::vector<DuplicateGroup>& groups,
                                            const std::set<std::string>& ids) {
    std::vector<DuplicateGroup> out;
    for (const auto& g : groups) {
        DuplicateGroup r{g.key, {}, g.dataset_ids};
        for (const auto& id : g.members)
            if (ids.count(id)) r.members.push_back(id);
        if (!r.members.empty()) out.push_back(std::move(r));
    }
    return out;
}

struct ValCarve {
    std::vector<std::string> val;
    std::vector<std::string> train;
    std::string mode;
};

// Whole groups where a group-atomic fill exists, single images otherwise.
ValCarve carve_validation(const std::vector<DuplicateGroup>& pool_groups, std::size_t pool_size,
                          std::size_t val_target, Rng& rng) {
    try {
        Partition p = group_atomic_partition(pool_groups, pool_size, val_target, rng);
        return {std::move(p.test), std::move(p.rest), "group"};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Infeasible) throw;
    }
    std::vector<std::size_t> order(pool_groups.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    ValCarve out{{}, {}, "image"};
    for (std::size_t idx : order) {
        for (const auto& id : pool_groups[idx].members)
            (out.val.size() < val_target ? out.val : out.train).push_back(id);
    }
    std::sort(out.val.begin(), out.val.end());
    std::sort(out.train.begin(), out.train.end());
    return out;
}

std::uint64_t require_seed(const SplitSpec& spec) {
    if (!spec.seed)
        throw Error(ErrorCode::InvalidArgument, "protocol '" + std::string(to_string(spec.protocol)) + "' needs a seed");
    return *spec.seed;
}

void assign(SplitAssignment& a, const std::vector<std::string>& ids, Role role) {
    for (const auto& id : ids) a.roles[id] = role;
}

std::string aolp_subset(const ImageEntry& e) {
    std::string s = e.subset;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    if (s != "AC" && s != "LE" && s != "RP")
        throw Error(ErrorCode::Validation, "entry '" + e.id + "' has subset tag '" + e.subset +
                                               "'; AOLP protocols need AC, LE or RP");
    return s;
}

// Plate keys of the entries matching pred.
std::set<PlateKey> keys_of(const Manifest& m, const std::function<bool(const ImageEntry&)>& pred) {
    std::set<PlateKey> keys;
    for (const auto& e : m.entries)
        if (pred(e)) keys.insert(e.key());
    return keys;
}

bool is_donor(const SplitSpec& spec, const ImageEntry& e) {
    return std::find(spec.donor_subsets.begin(), spec.donor_subsets.end(), e.subset) != spec.donor_subsets.end();
}

}  // namespace

SplitAssignment split_aolp_fair_a(const Manifest& manifest, std::uint64_t seed, double val_fraction) {
    const std::size_t n = manifest.entries.size();
    const auto groups = build_groups(manifest);
    Rng rng(seed);
    Partition part = group_atomic_partition(groups, n, round_count(n / 3.0), rng);

    const std::set<std::string> rest(part.rest.begin(), part.rest.end());
    ValCarve carve = carve_validation(restrict_groups(groups, rest), rest.size(),
                                      round_count(val_fraction * static_cast<double>(rest.size())), rng);

    SplitAssignment a;
    a.protocol = "aolp_fair_a";
    a.seed = seed;
    a.val_mode = carve.mode;
    assign(a, part.test, Role::Test);
    assign(a, carve.val, Role::Val);
    assign(a, carve.train, Role::Train);
    return a;
}

SplitAssignment split_aolp_b(const Manifest& manifest, std::uint64_t seed, double val_fraction) {
    std::vector<std::string> pool, test;
    for (const auto& e : manifest.entries) (aolp_subset(e) == "RP" ? test : pool).push_back(e.id);
    std::sort(pool.begin(), pool.end());
    Rng rng(seed);
    rng.shuffle(pool);
    const std::size_t n_val = round_count(val_fraction * static_cast<double>(pool.size()));

    SplitAssignment a;
    a.protocol = "aolp_b";
    a.seed = seed;
    a.val_mode = "image";
    for (std::size_t i = 0; i < pool.size(); ++i) a.roles[pool[i]] = i < n_val ? Role::Val : Role::Train;
    assign(a, test, Role::Test);
    return a;
}

SplitAssignment split_aolp_fair_b(const Manifest& manifest, std::uint64_t seed, double val_fraction) {
    SplitAssignment a = split_aolp_b(manifest, seed, val_fraction);
    a.protocol = "aolp_fair_b";
    a.val_mode = "original";
    std::set<PlateKey> train_keys;
    for (const auto& e : manifest.entries)
        if (a.roles.at(e.id) == Role::Train) train_keys.insert(e.key());
    for (const auto& e : manifest.entries)
        if (a.roles.at(e.id) == Role::Test && train_keys.count(e.key())) a.roles[e.id] = Role::Excluded;
    if (a.counts().test == 0) a.warnings.push_back("every RP image has a duplicate in training; the test set is empty");
    return a;
}

SplitAssignment split_ccpd_fair(const Manifest& manifest, const SplitSpec& spec) {
    const std::uint64_t seed = require_seed(spec);
    SplitAssignment a;
    a.protocol = "ccpd_fair";
    a.seed = seed;
    a.val_mode = "forced+seeded";

    const auto test_keys = keys_of(manifest, [&](const ImageEntry& e) { return !is_donor(spec, e); });
    for (const auto& e : manifest.entries)
        if (!is_donor(spec, e)) a.roles[e.id] = Role::Test;

    std::vector<std::string> donors = spec.donor_subsets;
    std::sort(donors.begin(), donors.end());
    donors.erase(std::unique(donors.begin(), donors.end()), donors.end());
    for (std::size_t d = 0; d < donors.size(); ++d) {
        const std::string& subset = donors[d];
        std::vector<std::string> forced, free;
        for (const auto& e : manifest.entries) {
            if (e.subset != subset) continue;
            (test_keys.count(e.key()) ? forced : free).push_back(e.id);
        }
        const std::size_t size = forced.size() + free.size();
        if (size == 0) continue;
        auto tgt = spec.val_targets.find(subset);
        const std::size_t target = tgt != spec.val_targets.end() ? tgt->second : round_count(size / 2.0);
        if (target > size)
            throw Error(ErrorCode::Infeasible, "subset '" + subset + "': validation target " + std::to_string(target) +
                                                   " exceeds its " + std::to_string(size) + " images");
        if (forced.size() > target) {
            const std::string msg = "subset '" + subset + "': " + std::to_string(forced.size()) +
                                    " images share plates with the test set but the validation target is " +
                                    std::to_string(target);
            if (!spec.lenient_donors.count(subset)) throw Error(ErrorCode::Infeasible, msg);
            a.warnings.push_back(msg + "; validation grows by " + std::to_string(forced.size() - target));
        }
        std::sort(forced.begin(), forced.end());
        std::sort(free.begin(), free.end());
        Rng rng(derive_seed(seed, d));
        rng.shuffle(free);
        const std::size_t fill = target > forced.size() ? target - forced.size() : 0;
        assign(a, forced, Role::Val);
        for (std::size_t i = 0; i < free.size(); ++i) a.roles[free[i]] = i < fill ? Role::Val : Role::Train;
    }
    return a;
}

SplitAssignment split_generic(const Manifest& manifest, const SplitSpec& spec) {
    const std::uint64_t seed = require_seed(spec);
    const std::size_t n = manifest.entries.size();
    auto target = [&](Role r) {
        auto it = spec.targets.find(r);
        return it == spec.targets.end() ? std::size_t{0} : it->second;
    };
    if (target(Role::Train) + target(Role::Val) + target(Role::Test) != n || target(Role::Excluded) != 0)
        throw Error(ErrorCode::InvalidArgument, "generic targets must sum to the manifest size " + std::to_string(n));

    const auto groups = build_groups(manifest);
    Rng rng(seed);
    Partition part = group_atomic_partition(groups, n, target(Role::Test), rng);
    const std::set<std::string> rest(part.rest.begin(), part.rest.end());
    ValCarve carve = carve_validation(restrict_groups(groups, rest), rest.size(), target(Role::Val), rng);

    SplitAssignment a;
    a.protocol = "generic";
    a.seed = seed;
    a.val_mode = carve.mode;
    assign(a, part.test, Role::Test);
    assign(a, carve.val, Role::Val);
    assign(a, carve.train, Role::Train);
    return a;
}

SplitAssignment generate_split(const Manifest& manifest, const SplitSpec& spec) {
    switch (spec.protocol) {
    case Protocol::AolpFairA: return split_aolp_fair_a(manifest, require_seed(spec), spec.val_fraction);
    case Protocol::AolpFairB: return split_aolp_fair_b(manifest, require_seed(spec), spec.val_fraction);
    case Protocol::AolpB: return split_aolp_b(manifest, require_seed(spec), spec.val_fraction);
    case Protocol::CcpdFair: return split_ccpd_fair(manifest, spec);
    case Protocol::Generic: return split_generic(manifest, spec);
    }
    throw Error(ErrorCode::InvalidArgument, "unsupported protocol");
}

RoleCounts expected_counts(const Manifest& manifest, const SplitSpec& spec) {
    const std::size_t n = manifest.entries.size();
    RoleCounts c;
    switch (spec.protocol) {
    case Protocol::AolpFairA: {
        c.test = round_count(n / 3.0);
        c.val = round_count(spec.val_fraction * static_cast<double>(n - c.test));
        c.train = n - c.test - c.val;
        break;
    }
    case Protocol::AolpB:
    case Protocol::AolpFairB: {
        std::size_t pool = 0;
        for (const auto& e : manifest.entries) (aolp_subset(e) == "RP" ? c.test : pool) += 1;
        c.val = round_count(spec.val_fraction * static_cast<double>(pool));
        c.train = pool - c.val;
        if (spec.protocol == Protocol::AolpFairB) {
            // test images sharing a plate with the original training images are dropped
            const SplitAssignment original = split_aolp_b(manifest, require_seed(spec), spec.val_fraction);
            const auto groups = build_groups(manifest);
            std::size_t leaked = 0;
            for (const auto& g : groups) {
                std::size_t train = 0, test = 0;
                for (const auto& id : g.members) {
                    const Role r = original.roles.at(id);
                    train += r == Role::Train;
                    test += r == Role::Test;
                }
                if (train > 0) leaked += test;
            }
            c.excluded = leaked;
            c.test -= leaked;
        }
        break;
    }
    case Protocol::CcpdFair: {
        const auto test_keys = keys_of(manifest, [&](const ImageEntry& e) { return !is_donor(spec, e); });
        std::map<std::string, std::pair<std::size_t, std::size_t>> donor;  // subset -> (size, forced)
        for (const auto& e : manifest.entries) {
            if (!is_donor(spec, e)) {
                ++c.test;
                continue;
            }
            auto& [size, forced] = donor[e.subset];
            ++size;
            forced += test_keys.count(e.key());
        }
        for (const auto& [subset, sf] : donor) {
            auto tgt = spec.val_targets.find(subset);
            const std::size_t target = tgt != spec.val_targets.end() ? tgt->second : round_count(sf.first / 2.0);
            const std::size_t val = std::max(target, sf.second);
            c.val += val;
            c.train += sf.first - val;
        }
        break;
    }
    case Protocol::Generic: {
        auto get = [&](Role r) {
            auto it = spec.targets.find(r);
            return it == spec.targets.end() ? std::size_t{0} : it->second;
        };
        c.train = get(Role::Train);
        c.val = get(Role::Val);
        c.test = get(Role::Test);
        break;
    }
    }
    return c;
}

bool VerificationReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const VerificationCheck& c) { return c.passed; });
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) os << ": " << c.detail;
        os << "\n";
        const std::size_t shown = std::min<std::size_t>(c.offending.size(), 20);
        for (std::size_t i = 0; i < shown; ++i) os << "  - " << c.offending[i] << "\n";
        if (c.offending.size() > shown) os << "  ... " << (c.offending.size() - shown) << " more\n";
    }
    os << (passed() ? "verification passed\n" : "verification FAILED\n");
    return os.str();
}

VerificationReport verify_split(const SplitAssignment& assignment, const Manifest& manifest, const SplitSpec& spec,
                                const std::vector<std::string>& multiply_assigned) {
    VerificationReport report;

    // (c) coverage
    {
        VerificationCheck chk{"coverage", true, {}, {}};
        std::set<std::string> ids;
        for (const auto& e : manifest.entries) {
            ids.insert(e.id);
            if (!assignment.roles.count(e.id)) chk.offending.push_back("unassigned: " + e.id);
        }
        for (const auto& [id, role] : assignment.roles)
            if (!ids.count(id)) chk.offending.push_back("not in manifest: " + id);
        for (const auto& id : multiply_assigned) chk.offending.push_back("assigned more than once: " + id);
        chk.passed = chk.offending.empty();
        chk.detail = chk.passed ? "every image assigned exactly once"
                                : std::to_string(chk.offending.size()) + " coverage problem(s)";
        report.checks.push_back(std::move(chk));
    }

    // (a) train/test plate disjointness
    {
        VerificationCheck chk{"disjointness", true, {}, {}};
        std::map<PlateKey, std::pair<std::vector<std::string>, std::vector<std::string>>> sides;
        for (const auto& e : manifest.entries) {
            auto it = assignment.roles.find(e.id);
            if (it == assignment.roles.end()) continue;
            if (it->second == Role::Train) sides[e.key()].first.push_back(e.id);
            if (it->second == Role::Test) sides[e.key()].second.push_back(e.id);
        }
        for (const auto& [key, s] : sides) {
            if (s.first.empty() || s.second.empty()) continue;
            chk.offending.push_back("plate " + key.value() + " (train: " + s.first.front() +
                                    ", test: " + s.second.front() + ")");
        }
        chk.passed = chk.offending.empty();
        chk.detail = chk.passed ? "no plate shared by train and test"
                                : std::to_string(chk.offending.size()) + " plate(s) shared by train and test";
        if (spec.protocol == Protocol::AolpB && !chk.passed) {
            // the original protocol never separated plates; report, don't fail
            chk.detail += " (not required by aolp_b)";
            chk.offending.clear();
            chk.passed = true;
        }
        report.checks.push_back(std::move(chk));
    }

    // (b) exact role counts
    {
        VerificationCheck chk{"counts", true, {}, {}};
        try {
            const RoleCounts want = expected_counts(manifest, spec);
            const RoleCounts got = assignment.counts();
            auto cmp = [&](const char* role, std::size_t w, std::size_t g) {
                if (w != g)
                    chk.offending.push_back(std::string(role) + ": expected " + std::to_string(w) + ", got " +
                                            std::to_string(g));
            };
            cmp("train", want.train, got.train);
            cmp("val", want.val, got.val);
            cmp("test", want.test, got.test);
            cmp("excluded", want.excluded, got.excluded);
            chk.detail = "train " + std::to_string(got.train) + ", val " + std::to_string(got.val) + ", test " +
                         std::to_string(got.test) + (got.excluded ? ", excluded " + std::to_string(got.excluded) : "");
        } catch (const Error& e) {
            chk.offending.push_back(e.what());
            chk.detail = "expected counts unavailable";
        }
        chk.passed = chk.offending.empty();
        report.checks.push_back(std::move(chk));
    }

    // (d) protocol-specific constraints
    {
        VerificationCheck chk{"protocol", true, {}, {}};
        if (!assignment.protocol.empty() && assignment.protocol != to_string(spec.protocol))
            chk.offending.push_back("split was produced by '" + assignment.protocol + "', verifying against '" +
                                    std::string(to_string(spec.protocol)) + "'");
        auto role_of = [&](const std::string& id) -> std::optional<Role> {
            auto it = assignment.roles.find(id);
            if (it == assignment.roles.end()) return std::nullopt;
            return it->second;
        };
        switch (spec.protocol) {
        case Protocol::CcpdFair:
            chk.detail = "test set equals all non-donor images";
            for (const auto& e : manifest.entries) {
                const bool should_test = !is_donor(spec, e);
                const auto r = role_of(e.id);
                if (r && (*r == Role::Test) != should_test)
                    chk.offending.push_back((should_test ? "test image moved out of test: " : "donor image in test: ") +
                                            e.id);
            }
            break;
        case Protocol::AolpFairB:
        case Protocol::AolpB:
            chk.detail = "test images come from RP; train and validation come from AC and LE";
            for (const auto& e : manifest.entries) {
                const auto r = role_of(e.id);
                if (!r) continue;
                std::string subset;
                try {
                    subset = aolp_subset(e);
                } catch (const Error& err) {
                    chk.offending.push_back(err.what());
                    continue;
                }
                const bool rp = subset == "RP";
                if (rp && (*r == Role::Train || *r == Role::Val))
                    chk.offending.push_back("RP image outside test: " + e.id);
                if (!rp && (*r == Role::Test || *r == Role::Excluded))
                    chk.offending.push_back(subset + " image in test: " + e.id);
            }
            break;
        case Protocol::AolpFairA:
        case Protocol::Generic:
            chk.detail = "no extra constraints";
            if (assignment.counts().excluded)
                chk.offending.push_back(std::to_string(assignment.counts().excluded) + " excluded image(s) not allowed");
            break;
        }
        chk.passed = chk.offending.empty();
        report.checks.push_back(std::move(chk));
    }
    return report;
}

}  // namespace leakaudit
