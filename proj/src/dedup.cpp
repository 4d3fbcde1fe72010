#include "dedup.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace leakaudit {

std::vector<DuplicateGroup> build_groups(std::span<const Manifest> manifests) {
    std::map<PlateKey, DuplicateGroup> by_key;
    std::unordered_map<std::string, std::string> owner;  // id -> dataset
    for (const Manifest& m : manifests) {
        for (const ImageEntry& e : m.entries) {
            if (auto [it, fresh] = owner.emplace(e.id, e.dataset_id); !fresh)
                throw Error(ErrorCode::Validation, "id '" + e.id + "' occurs in datasets '" + it->second + "' and '" +
                                                       e.dataset_id + "'");
            PlateKey key = e.key();
            auto& g = by_key[key];
            g.key = key;
            g.members.push_back(e.id);
            g.dataset_ids.insert(e.dataset_id);
        }
    }
    std::vector<DuplicateGroup> out;
    out.reserve(by_key.size());
    for (auto& [key, g] : by_key) {
        std::sort(g.members.begin(), g.members.end());
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<DuplicateGroup> build_groups(const Manifest& manifest) {
    return build_groups(std::span<const Manifest>(&manifest, 1));
}

namespace {

Role role_of(const SplitAssignment& a, const std::string& id) {
    auto it = a.roles.find(id);
    if (it == a.roles.end()) throw Error(ErrorCode::Validation, "image '" + id + "' has no role in the split");
    return it->second;
}

}  // namespace

LeakageReport audit_split(const std::vector<DuplicateGroup>& groups, const SplitAssignment& assignment,
                          std::string split_name) {
    LeakageReport r;
    r.split_name = std::move(split_name);
    r.metadata.seed = assignment.seed;
    for (const DuplicateGroup& g : groups) {
        bool has_train = false, has_test = false;
        std::size_t test_here = 0;
        for (const auto& id : g.members) {
            switch (role_of(assignment, id)) {
            case Role::Train: has_train = true, ++r.n_train; break;
            case Role::Val: ++r.n_val; break;
            case Role::Test: has_test = true, ++r.n_test, ++test_here; break;
            case Role::Excluded: break;
            }
        }
        r.group_size_histogram[g.members.size()] += g.members.size();
        if (has_train && test_here > 0) {
            r.n_test_leaked += test_here;
            for (const auto& id : g.members)
                if (assignment.roles.at(id) == Role::Test) r.leaked_test_ids.push_back(id);
        }
        if (has_test)
            for (const auto& id : g.members)
                if (assignment.roles.at(id) == Role::Val) ++r.n_val_with_test_duplicates;
    }
    if (r.n_test == 0)
        throw Error(ErrorCode::Validation, "split '" + r.split_name + "' has an empty test set (invalid protocol)");
    r.leak_fraction = static_cast<double>(r.n_test_leaked) / static_cast<double>(r.n_test);
    std::sort(r.leaked_test_ids.begin(), r.leaked_test_ids.end());
    return r;
}

std::vector<std::pair<std::string, std::string>> cross_split_pairs(const std::vector<DuplicateGroup>& groups,
                                                                   const SplitAssignment& assignment) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const DuplicateGroup& g : groups) {
        std::vector<const std::string*> train, test;
        for (const auto& id : g.members) {
            const Role r = role_of(assignment, id);
            if (r == Role::Train) train.push_back(&id);
            if (r == Role::Test) test.push_back(&id);
        }
        for (const auto* tr : train)
            for (const auto* te : test) out.emplace_back(*tr, *te);
    }
    return out;
}

double round_to(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(value * scale) / scale;
}

std::vector<ScoredPair> score_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                                    const PlateSource& train_plates, const PlateSource& test_plates) {
    std::map<std::string, std::optional<CanonicalPlate>> train_cache, test_cache;
    auto fetch = [](auto& cache, const PlateSource& src, const std::string& id) -> const std::optional<CanonicalPlate>& {
        auto it = cache.find(id);
        if (it == cache.end()) it = cache.emplace(id, src ? src(id) : std::nullopt).first;
        return it->second;
    };
    std::vector<ScoredPair> out;
    for (const auto& [train_id, test_id] : pairs) {
        // groups are disjoint, so two unseen ids mean the previous group is done
        if (!train_cache.count(train_id) && !test_cache.count(test_id)) train_cache.clear(), test_cache.clear();
        const auto& a = fetch(train_cache, train_plates, train_id);
        const auto& b = fetch(test_cache, test_plates, test_id);
        if (!a || !b) continue;
        out.push_back({train_id, test_id, round_to(pixel_distance(*a, *b), 2)});
    }
    return out;
}

std::vector<PercentilePair> percentile_pairs(std::vector<ScoredPair> pairs, const std::vector<double>& percentiles) {
    if (pairs.empty()) throw Error(ErrorCode::Validation, "percentile selection needs at least one pair");
    for (const auto& p : pairs)
        if (!std::isfinite(p.distance) || p.distance < 0)
            throw Error(ErrorCode::Validation, "pair (" + p.train_id + ", " + p.test_id + ") has an invalid distance");
    std::sort(pairs.begin(), pairs.end(), [](const ScoredPair& a, const ScoredPair& b) {
        return std::tie(a.distance, a.train_id, a.test_id) < std::tie(b.distance, b.train_id, b.test_id);
    });
    const double last = static_cast<double>(pairs.size() - 1);
    std::vector<PercentilePair> out;
    for (double p : percentiles) {
        if (!(p >= 0.0 && p <= 100.0))
            throw Error(ErrorCode::Validation, "percentile " + std::to_string(p) + " is outside [0, 100]");
        const auto rank = static_cast<std::size_t>(std::floor(p * last / 100.0));
        out.push_back({p, pairs[std::min(rank, pairs.size() - 1)]});
    }
    return out;
}

std::string_view to_string(OverlapTier tier) noexcept { return tier == OverlapTier::Likely ? "likely" : "candidate"; }

std::vector<OverlapPair> cross_dataset_overlap(const Manifest& a, const Manifest& b,
                                               std::optional<double> distance_threshold, const PlateSource& plates_a,
                                               const PlateSource& plates_b) {
    std::map<PlateKey, std::vector<const ImageEntry*>> b_by_key;
    for (const auto& e : b.entries) b_by_key[e.key()].push_back(&e);

    std::map<std::string, std::optional<CanonicalPlate>> cache_a, cache_b;
    auto fetch = [](auto& cache, const PlateSource& src, const ImageEntry& e) -> const std::optional<CanonicalPlate>& {
        auto it = cache.find(e.id);
        if (it == cache.end()) it = cache.emplace(e.id, (src && e.corners) ? src(e.id) : std::nullopt).first;
        return it->second;
    };

    std::map<PlateKey, std::vector<const ImageEntry*>> a_by_key;
    for (const auto& e : a.entries) a_by_key[e.key()].push_back(&e);

    std::vector<OverlapPair> out;
    for (const auto& [key, as] : a_by_key) {
        auto hit = b_by_key.find(key);
        if (hit == b_by_key.end()) continue;
        cache_a.clear();
        cache_b.clear();
        for (const ImageEntry* ea : as)
            for (const ImageEntry* eb : hit->second) {
                OverlapPair p{key.value(), ea->id, eb->id, std::nullopt, OverlapTier::Candidate};
                const auto& ra = fetch(cache_a, plates_a, *ea);
                const auto& rb = fetch(cache_b, plates_b, *eb);
                if (ra && rb) {
                    p.distance = round_to(pixel_distance(*ra, *rb), 2);
                    if (distance_threshold && *p.distance <= *distance_threshold) p.tier = OverlapTier::Likely;
                }
                out.push_back(std::move(p));
            }
    }
    std::sort(out.begin(), out.end(), [](const OverlapPair& x, const OverlapPair& y) {
        return std::tie(x.key, x.id_a, x.id_b) < std::tie(y.key, y.id_a, y.id_b);
    });
    return out;
}

}  // namespace leakaudit
