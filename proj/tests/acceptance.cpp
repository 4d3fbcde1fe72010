// Acceptance run: one PASS/FAIL/SKIP line per criterion, exit 1 on any FAIL.
//
// Criterion 8 needs the real datasets. For each of AOLP_A, AOLP_B, CCPD and
// REID set LEAKAUDIT_<NAME>_MANIFEST (JSONL manifest) and LEAKAUDIT_<NAME>_SPLIT
// (directory with the original protocol's train/val/test.txt).

#include "cv_oracle.hpp"
#include "dedup.hpp"
#include "error.hpp"
#include "fixtures.hpp"
#include "metrics.hpp"
#include "platesynth.hpp"
#include "report.hpp"
#include "reported_rates.hpp"
#include "splitgen.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>

using namespace leakaudit;

namespace {

struct Outcome {
    enum { Pass, Fail, Skip } status = Pass;
    std::string detail;
};

Outcome fail(std::string d) { return {Outcome::Fail, std::move(d)}; }
Outcome skip(std::string d) { return {Outcome::Skip, std::move(d)}; }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

// ---- 1 ----
Outcome metric_regression() {
    int good = 0;
    std::ostringstream bad;
    for (const auto& row : kAolpRows) {
        const auto g = gap_metrics(row.orig, row.fair);
        if (std::abs(g.gap - row.gap) <= 0.05 && std::abs(g.rel_gap - row.rel_gap) <= 0.1) {
            ++good;
        } else {
            bad << " " << row.orig << "/" << row.fair << " -> " << g.gap << "/" << g.rel_gap;
        }
    }
    const int n = static_cast<int>(std::size(kAolpRows));
    if (good != n) return fail(std::to_string(good) + "/" + std::to_string(n) + " pairs within tolerance;" + bad.str());
    return {Outcome::Pass, "12/12 (gap, rel_gap) pairs within 0.05 / 0.1"};
}

// ---- 2 ----
Outcome leakage_oracle() {
    std::mt19937_64 gen(2024);
    const Role roles[] = {Role::Train, Role::Val, Role::Test};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + gen() % 1000, plates = 1 + gen() % 300;
        const Manifest m = fixtures::random_manifest(gen, n, plates);
        SplitAssignment a;
        for (const auto& e : m.entries) a.roles[e.id] = roles[gen() % 3];
        a.roles[m.entries.front().id] = Role::Test;

        std::vector<std::string> keys;
        for (const auto& e : m.entries) keys.push_back(e.plate_text);  // fixture plates are already normalized
        std::size_t n_test = 0, leaked = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (a.roles[m.entries[i].id] != Role::Test) continue;
            ++n_test;
            for (std::size_t j = 0; j < n; ++j)
                if (a.roles[m.entries[j].id] == Role::Train && keys[j] == keys[i]) {
                    ++leaked;
                    break;
                }
        }
        const LeakageReport r = audit_split(build_groups(m), a);
        if (r.n_test != n_test || r.n_test_leaked != leaked)
            return fail("fixture " + std::to_string(trial) + ": audit " + std::to_string(r.n_test_leaked) + "/" +
                        std::to_string(r.n_test) + ", brute force " + std::to_string(leaked) + "/" +
                        std::to_string(n_test));
    }
    return {Outcome::Pass, "200 fixtures agree with the nested-loop count"};
}

// ---- 3 ----
Outcome fair_split_invariants() {
    std::mt19937_64 gen(3);
    std::size_t runs = 0;
    for (Protocol p : {Protocol::AolpFairA, Protocol::AolpFairB, Protocol::CcpdFair, Protocol::Generic}) {
        for (int run = 0; run < 100; ++run) {
            Manifest m;
            if (p == Protocol::CcpdFair) {
                m = fixtures::ccpd_manifest(gen, 100 + gen() % 100, 10 + gen() % 20, 50 + gen() % 100, gen() % 10);
            } else {
                const std::size_t per = 50 + gen() % 100;
                m = fixtures::aolp_manifest(gen, per, per + gen() % 20, per - gen() % 20, 2 * per);
            }
            SplitSpec spec;
            spec.protocol = p;
            spec.seed = gen();
            const std::size_t n = m.entries.size();
            if (p == Protocol::Generic) {
                const std::size_t test = n / 4, val = n / 5;
                spec.targets = {{Role::Train, n - test - val}, {Role::Val, val}, {Role::Test, test}};
            }
            const std::string where = std::string(to_string(p)) + " run " + std::to_string(run);
            SplitAssignment a;
            try {
                a = generate_split(m, spec);
            } catch (const Error& e) {
                return fail(where + ": " + e.what());
            }
            const VerificationReport r = verify_split(a, m, spec);
            if (!r.passed()) return fail(where + "\n" + r.to_text());
            if (p == Protocol::AolpFairA && a.counts().test != round_count(n / 3.0))
                return fail(where + ": test size is not round(N/3)");
            if (p == Protocol::CcpdFair)
                for (const auto& e : m.entries) {
                    const bool standard_test = e.subset != "Base" && e.subset != "Green";
                    if (standard_test != (a.roles.at(e.id) == Role::Test))
                        return fail(where + ": test set differs from the standard split at " + e.id);
                }
            ++runs;
        }
    }
    return {Outcome::Pass, std::to_string(runs) + " seeded runs over 4 protocols pass every verification check"};
}

// ---- 4 ----
Outcome determinism() {
    std::mt19937_64 gen(4);
    const std::vector<const char*> files{"train.txt", "val.txt", "test.txt", "split_meta.json"};
    for (int trial = 0; trial < 20; ++trial) {
        const Protocol p = trial % 2 ? Protocol::AolpFairA : Protocol::CcpdFair;
        const Manifest m = p == Protocol::CcpdFair ? fixtures::ccpd_manifest(gen, 120, 20, 80, 4)
                                                   : fixtures::aolp_manifest(gen, 80, 80, 80, 160);
        SplitSpec spec;
        spec.protocol = p;
        spec.seed = gen();
        Manifest shuffled = m;
        std::shuffle(shuffled.entries.begin(), shuffled.entries.end(), gen);

        fixtures::TempDir a("acc_a"), b("acc_b"), c("acc_c");
        emit_split_files(generate_split(m, spec), spec, a.path);
        emit_split_files(generate_split(m, spec), spec, b.path);
        emit_split_files(generate_split(shuffled, spec), spec, c.path);
        for (const char* f : files) {
            const std::string ref = slurp(a.path / f);
            if (ref != slurp(b.path / f)) return fail("trial " + std::to_string(trial) + ": " + f + " differs on rerun");
            if (ref != slurp(c.path / f))
                return fail("trial " + std::to_string(trial) + ": " + f + " differs after permuting the manifest");
        }
    }
    return {Outcome::Pass, "20 trials byte-identical across reruns and manifest permutations"};
}

// ---- 5 ----
Outcome geometry() {
    const Quad unit{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}};
    const Quad twice{Point{0, 0}, Point{2, 0}, Point{2, 2}, Point{0, 2}};
    const Homography id = solve_homography(unit, unit), sc = solve_homography(unit, twice);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            if (std::abs(id(r, c) - (r == c)) > 1e-6) return fail("identity homography off at " + std::to_string(r * 3 + c));
            const double want = r == c ? (r == 2 ? 1.0 : 2.0) : 0.0;
            if (std::abs(sc(r, c) - want) > 1e-6) return fail("scale homography off at " + std::to_string(r * 3 + c));
        }

    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> dim(4, 40), off(0, 15);
    int worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int cw = dim(gen), ch = dim(gen), left = off(gen), top = off(gen), right = off(gen), bottom = off(gen);
        Raster crop(cw, ch);
        for (auto& px : crop.pixels) px = static_cast<std::uint8_t>(gen());
        cv::Mat padded;
        cv::copyMakeBorder(cv_oracle::to_mat(crop), padded, top, bottom, left, right, cv::BORDER_REPLICATE);
        const CanonicalSize size{dim(gen) + 8, dim(gen) + 4};
        const Quad rect{Point{double(left), double(top)}, Point{double(left + cw), double(top)},
                        Point{double(left + cw), double(top + ch)}, Point{double(left), double(top + ch)}};
        const Raster got = rectify(cv_oracle::from_mat(padded), rect, size).raster;
        cv::Mat resized;
        cv::resize(cv_oracle::to_mat(crop), resized, cv::Size(size.width, size.height), 0, 0, cv::INTER_LINEAR);
        worst = std::max(worst, cv_oracle::max_abs_diff(got, cv_oracle::from_mat(resized)));
    }
    if (worst > 1) return fail("rectify differs from crop-resize by " + std::to_string(worst) + " levels");

    for (int trial = 0; trial < 1000; ++trial) {
        const int w = 1 + int(gen() % 8), h = 1 + int(gen() % 5);
        Raster a(w, h), b(w, h), c(w, h);
        for (Raster* r : {&a, &b, &c})
            for (auto& px : r->pixels) px = static_cast<std::uint8_t>(gen());
        const double ab = pixel_distance(a, b), ba = pixel_distance(b, a), bc = pixel_distance(b, c),
                     ac = pixel_distance(a, c);
        if (ab != ba) return fail("pixel distance not symmetric");
        if (pixel_distance(a, a) != 0) return fail("pixel distance of a raster to itself is not zero");
        if ((ab == 0) != (a == b)) return fail("zero distance between different rasters");
        if (ac > ab + bc + 1e-9) return fail("triangle inequality violated");
    }
    return {Outcome::Pass, "homography oracles within 1e-6; rectify within " + std::to_string(worst) +
                               " level of crop-resize; 1000 metric triples"};
}

// ---- 6 ----
Outcome percentile_selection() {
    std::vector<ScoredPair> pairs;
    for (int i = 100; i >= 0; --i)
        pairs.push_back({"train" + std::to_string(i), "test" + std::to_string(i), static_cast<double>(i)});
    const auto sel = percentile_pairs(pairs, {10, 50, 90});
    for (std::size_t i = 0; i < 3; ++i) {
        const double want = i == 0 ? 10 : i == 1 ? 50 : 90;
        if (sel[i].pair.distance != want)
            return fail("percentile " + std::to_string(sel[i].percentile) + " picked distance " +
                        std::to_string(sel[i].pair.distance));
    }
    return {Outcome::Pass, "ranks 10, 50, 90 selected from 101 pairs"};
}

// ---- 7 ----
Outcome synthesis() {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        Raster r(16 + int(gen() % 40), 8 + int(gen() % 20));
        for (auto& px : r.pixels) px = static_cast<std::uint8_t>(gen());
        synth::TransformConfig zero;
        zero.seed = gen();
        if (!(synth::apply_transforms(r, zero) == r)) return fail("zero-magnitude transforms changed the image");
    }

    const auto cfg_path = std::filesystem::path(LEAKAUDIT_DATA_DIR) / "synth" / "synth_config.json";
    synth::SynthConfig cfg = synth::load_synth_config(cfg_path);
    cfg.count = 25;
    fixtures::TempDir a("acc_synth_a"), b("acc_synth_b");
    cfg.output_dir = a.path;
    const auto first = synth::run_synthesis(cfg);
    cfg.output_dir = b.path;
    const auto second = synth::run_synthesis(cfg);
    for (std::size_t i = 0; i < first.size(); ++i)
        if (first[i].filename() != second[i].filename() || slurp(first[i]) != slurp(second[i]))
            return fail("corpus differs at item " + std::to_string(i));

    const std::string letters = "ABCDEFGHJKLMNPQRSTUVWXYZ", digits = "0123456789";
    const std::string provinces = "皖沪津渝冀晋蒙辽吉黑苏浙京闽赣鲁豫鄂湘粤桂琼川贵云藏陕甘青宁新";
    auto in = [](const std::string& set, const std::string& sym) { return set.find(sym) != std::string::npos; };
    // position classes: P province, L letter, A letter or digit, D digit, F the green D/F marker
    const std::vector<std::pair<const char*, std::string>> patterns{
        {"mainland", "PLAAAAA"}, {"mainland_green", "PLFADDDD"}, {"taiwan", "LLLDDDD"}};
    Rng rng(77);
    for (const auto& [name, classes] : patterns) {
        const auto pattern = synth::parse_pattern(synth::default_pattern(name));
        for (int i = 0; i < 1000; ++i) {
            const std::string text = synth::sample_plate_text(pattern, rng);
            std::vector<std::string> syms;
            for (char32_t c : utf8::decode(text)) syms.push_back(utf8::encode(c));
            if (syms.size() != classes.size())
                return fail(std::string(name) + " produced '" + text + "' of length " + std::to_string(syms.size()));
            for (std::size_t k = 0; k < syms.size(); ++k) {
                const char cls = classes[k];
                const bool ok = cls == 'P'   ? in(provinces, syms[k])
                                : cls == 'L' ? syms[k].size() == 1 && in(letters, syms[k])
                                : cls == 'D' ? syms[k].size() == 1 && in(digits, syms[k])
                                : cls == 'A' ? syms[k].size() == 1 && (in(letters, syms[k]) || in(digits, syms[k]))
                                             : syms[k] == "D" || syms[k] == "F";
                if (!ok) return fail(std::string(name) + " produced '" + text + "'");
            }
        }
    }
    return {Outcome::Pass, "no-op verified, 25-item corpus reproduced, 3000 texts conform (green length 8)"};
}

// ---- 8 ----
struct FullDataTarget {
    const char* name;
    std::size_t leaked;
    std::optional<std::size_t> n_test;
    const char* percent;
};

Outcome full_data() {
    const FullDataTarget targets[] = {{"AOLP_A", 320, 683, "46.9%"},
                                      {"AOLP_B", 413, 611, "67.6%"},
                                      {"CCPD", 29943, std::nullopt, "19.1%"},
                                      {"REID", 52394, 76412, "68.6%"}};
    std::ostringstream detail;
    bool any = false;
    for (const auto& t : targets) {
        const std::string prefix = std::string("LEAKAUDIT_") + t.name;
        const char* manifest = std::getenv((prefix + "_MANIFEST").c_str());
        const char* split = std::getenv((prefix + "_SPLIT").c_str());
        if (!manifest || !split) continue;
        any = true;
        const Manifest m = load_manifest(manifest);
        const LoadedSplit s = load_split_files(split);
        const LeakageReport r = audit_split(build_groups(m), s.assignment, t.name);
        const std::string got = format_fraction(r.n_test_leaked, r.n_test);
        const bool ok = r.n_test_leaked == t.leaked && (!t.n_test || r.n_test == *t.n_test) &&
                        format_percent(r.n_test_leaked, r.n_test) == t.percent;
        if (!ok) return fail(std::string(t.name) + " reports " + got + ", expected " + std::to_string(t.leaked) + " (" + t.percent + ")");
        detail << t.name << " " << got << "; ";
    }
    if (!any) return skip("no dataset manifests configured (set LEAKAUDIT_<AOLP_A|AOLP_B|CCPD|REID>_MANIFEST and _SPLIT)");
    return {Outcome::Pass, detail.str()};
}

// ---- 9 ----
Outcome fair_b_arithmetic() {
    Manifest m;
    std::size_t orig_test = 0, leaked = 0;
    if (const char* path = std::getenv("LEAKAUDIT_AOLP_B_MANIFEST")) {
        m = load_manifest(path);
    } else {
        // 681 AC + 757 LE images, 611 RP of which 413 repeat an AC/LE plate
        std::vector<ImageEntry> es;
        for (std::size_t i = 0; i < 681; ++i) es.push_back(fixtures::entry("AC_" + std::to_string(i), "A" + std::to_string(i), "AC"));
        for (std::size_t i = 0; i < 757; ++i) es.push_back(fixtures::entry("LE_" + std::to_string(i), "L" + std::to_string(i), "LE"));
        for (std::size_t i = 0; i < 611; ++i)
            es.push_back(fixtures::entry("RP_" + std::to_string(i),
                                         i < 413 ? (i % 2 ? "A" : "L") + std::to_string(i) : "R" + std::to_string(i), "RP"));
        m = fixtures::manifest(std::move(es));
    }
    const auto groups = build_groups(m);
    const SplitAssignment orig = split_aolp_b(m, 9, 0.0);
    const LeakageReport r = audit_split(groups, orig);
    orig_test = r.n_test;
    leaked = r.n_test_leaked;
    const SplitAssignment fair = split_aolp_fair_b(m, 9, 0.0);
    const std::size_t fair_test = fair.counts().test;
    const std::string eq = std::to_string(orig_test) + " - " + std::to_string(leaked) + " = " + std::to_string(fair_test);
    if (fair_test != orig_test - leaked) return fail("expected original minus leaked, got " + eq);
    if (!std::getenv("LEAKAUDIT_AOLP_B_MANIFEST") && fair_test != 198) return fail("fixture gives " + eq + ", expected 198");
    return {Outcome::Pass, eq + (std::getenv("LEAKAUDIT_AOLP_B_MANIFEST") ? " (dataset)" : " (fixture)")};
}

}  // namespace

int main() {
    const std::vector<std::tuple<int, const char*, double, std::function<Outcome()>>> criteria{
        {1, "metric regression", 1, metric_regression},
        {2, "leakage oracle equivalence", 30, leakage_oracle},
        {3, "fair-split invariants", 60, fair_split_invariants},
        {4, "determinism and order independence", 0, determinism},
        {5, "geometry", 0, geometry},
        {6, "percentile selection", 0, percentile_selection},
        {7, "synthesis", 0, synthesis},
        {8, "full-data audits", 300, full_data},
        {9, "AOLP-Fair-B arithmetic", 0, fair_b_arithmetic},
    };
    int failures = 0;
    for (const auto& [id, name, budget, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = fail(std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.status == Outcome::Pass && budget > 0 && secs > budget) {
            o.status = Outcome::Fail;
            o.detail += " (took longer than " + std::to_string(int(budget)) + " s)";
        }
        const char* tag = o.status == Outcome::Pass ? "PASS" : o.status == Outcome::Fail ? "FAIL" : "SKIP";
        std::printf("criterion %d %s: %s - %s [%.2f s]\n", id, tag, name, o.detail.c_str(), secs);
        failures += o.status == Outcome::Fail;
    }
    std::fflush(stdout);
    return failures ? 1 : 0;
}
