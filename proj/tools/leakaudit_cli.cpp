#include <leakaudit/leakaudit.h>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Failure {
    la_status status;
    std::string message;
};

void check(la_status s, const std::string& context = {}) {
    if (s == LA_OK) return;
    const std::string detail = la_last_error();
    throw Failure{s, context.empty() ? detail : context + ": " + detail};
}

[[noreturn]] void usage_error(const std::string& message) { throw Failure{LA_ERR_INVALID_ARGUMENT, message}; }

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Manifest = std::unique_ptr<la_manifest, Deleter<la_manifest, la_manifest_free>>;
using Split = std::unique_ptr<la_split, Deleter<la_split, la_split_free>>;
using Document = std::unique_ptr<la_document, Deleter<la_document, la_document_free>>;
using Verification = std::unique_ptr<la_verification, Deleter<la_verification, la_verification_free>>;
using Charmaps = std::unique_ptr<la_charmaps, Deleter<la_charmaps, la_charmaps_free>>;

std::string take(char* s) {
    std::string out = s ? s : "";
    la_free_string(s);
    return out;
}

Manifest load_manifest(const std::string& path) {
    la_manifest* m = nullptr;
    check(la_manifest_load(path.c_str(), &m));
    return Manifest(m);
}

Split load_split(const std::string& dir) {
    la_split* s = nullptr;
    check(la_split_load(dir.c_str(), &s), "split directory '" + dir + "'");
    return Split(s);
}

std::pair<int, int> parse_size(const std::string& text) {
    int w = 0, h = 0;
    char x = 0, extra = 0;
    if (std::sscanf(text.c_str(), "%d%c%d%c", &w, &x, &h, &extra) != 3 || (x != 'x' && x != 'X') || w <= 0 || h <= 0)
        usage_error("--canonical-size/--image-size '" + text + "' is not WxH with positive integers");
    return {w, h};
}

void write_text(const std::string& text) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
}

std::vector<std::string> split_files(const std::string& dir) {
    std::vector<std::string> out;
    for (const char* name : {"train.txt", "val.txt", "test.txt", "excluded.txt", "split_meta.json"})
        if (fs::exists(fs::path(dir) / name)) out.push_back((fs::path(dir) / name).string());
    return out;
}

std::string split_name(const std::string& dir) {
    auto p = fs::path(dir);
    if (p.filename().empty()) p = p.parent_path();
    return p.filename().string();
}

struct Common {
    std::vector<std::string> manifests;
    std::vector<std::string> split_dirs;
    std::string protocol;
    std::optional<std::uint64_t> seed;
    std::string canonical_size = "96x48";
    std::optional<double> threshold;
    std::string format;
    std::string out;
};

Common g;

// ---- ingest ----

struct IngestArgs {
    bool ccpd = false;
    std::string root;
    std::string list;
    std::string tsv;
    std::string charmaps;
    std::string dataset_id;
    std::string subset;
    std::string image_size;
};

std::vector<std::string> ccpd_files(const IngestArgs& a) {
    std::vector<std::string> rel;
    if (!a.list.empty()) {
        std::ifstream in(a.list);
        if (!in) throw Failure{LA_ERR_IO, "cannot open list file '" + a.list + "'"};
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) rel.push_back(line);
        }
        return rel;
    }
    std::error_code ec;
    for (fs::recursive_directory_iterator it(a.root, ec), end; !ec && it != end; it.increment(ec)) {
        if (!it->is_regular_file()) continue;
        auto ext = it->path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".jpg" || ext == ".jpeg" || ext == ".png") rel.push_back(fs::relative(it->path(), a.root).generic_string());
    }
    if (ec) throw Failure{LA_ERR_IO, "cannot scan '" + a.root + "': " + ec.message()};
    std::sort(rel.begin(), rel.end());
    return rel;
}

int run_ingest(const IngestArgs& a) {
    if (a.ccpd == !a.tsv.empty()) usage_error("ingest needs exactly one of --ccpd-filenames or --tsv");
    la_ingest_options o;
    la_ingest_options_init(&o);
    o.dataset_id = a.dataset_id.c_str();
    if (!a.subset.empty()) o.subset = a.subset.c_str();
    if (!a.image_size.empty()) std::tie(o.image_width, o.image_height) = parse_size(a.image_size);
    if (!a.root.empty()) o.image_root = a.root.c_str();

    la_manifest* raw = nullptr;
    if (a.ccpd) {
        if (a.root.empty()) usage_error("--ccpd-filenames needs --root");
        if (a.charmaps.empty()) usage_error("--ccpd-filenames needs --charmaps");
        la_charmaps* cm = nullptr;
        check(la_charmaps_load(a.charmaps.c_str(), &cm), "charmaps '" + a.charmaps + "'");
        Charmaps charmaps(cm);
        const auto rel = ccpd_files(a);
        std::vector<const char*> ptrs;
        for (const auto& r : rel) ptrs.push_back(r.c_str());
        check(la_manifest_ingest_ccpd(a.root.c_str(), ptrs.data(), ptrs.size(), charmaps.get(), &o, &raw),
              "CCPD root '" + a.root + "'");
    } else {
        check(la_manifest_ingest_tsv(a.tsv.c_str(), &o, &raw), "annotations '" + a.tsv + "'");
    }
    Manifest m(raw);
    if (g.out.empty()) {
        write_text(take([&] {
            char* s = nullptr;
            check(la_manifest_serialize(m.get(), &s));
            return s;
        }()));
    } else {
        check(la_manifest_save(m.get(), g.out.c_str()), "output '" + g.out + "'");
        std::cerr << "wrote " << la_manifest_size(m.get()) << " entries to " << g.out << "\n";
    }
    return 0;
}

// ---- fair-split / verify ----

struct SplitArgs {
    double val_fraction = 0.2;
    std::vector<std::size_t> targets;
    std::vector<std::string> donors;
    std::vector<std::string> lenient;
    std::vector<std::string> val_targets;
};

struct SplitOptions {
    la_split_options o;
    std::vector<std::string> donor_store, lenient_store, val_names;
    std::vector<const char*> donor_ptrs, lenient_ptrs, val_ptrs;
    std::vector<std::size_t> val_counts;
};

std::unique_ptr<SplitOptions> split_options(const SplitArgs& a) {
    auto s = std::make_unique<SplitOptions>();
    la_split_options_init(&s->o);
    s->o.protocol = g.protocol.c_str();
    if (g.seed) {
        s->o.has_seed = 1;
        s->o.seed = *g.seed;
    }
    s->o.val_fraction = a.val_fraction;
    if (!a.targets.empty()) {
        if (a.targets.size() != 3) usage_error("--targets takes three counts: train val test");
        s->o.target_train = a.targets[0];
        s->o.target_val = a.targets[1];
        s->o.target_test = a.targets[2];
    }
    s->donor_store = a.donors;
    s->lenient_store = a.lenient;
    for (const auto& d : s->donor_store) s->donor_ptrs.push_back(d.c_str());
    for (const auto& d : s->lenient_store) s->lenient_ptrs.push_back(d.c_str());
    if (!a.donors.empty()) {
        s->o.donor_subsets = s->donor_ptrs.data();
        s->o.n_donor_subsets = s->donor_ptrs.size();
    }
    if (!a.lenient.empty()) {
        s->o.lenient_donors = s->lenient_ptrs.data();
        s->o.n_lenient_donors = s->lenient_ptrs.size();
    }
    for (const auto& vt : a.val_targets) {
        const auto eq = vt.find('=');
        if (eq == std::string::npos || eq == 0) usage_error("--val-target '" + vt + "' is not SUBSET=COUNT");
        try {
            std::size_t used = 0;
            const auto n = std::stoull(vt.substr(eq + 1), &used);
            if (used != vt.size() - eq - 1) throw std::invalid_argument(vt);
            s->val_names.push_back(vt.substr(0, eq));
            s->val_counts.push_back(n);
        } catch (const std::exception&) {
            usage_error("--val-target '" + vt + "' is not SUBSET=COUNT");
        }
    }
    for (const auto& n : s->val_names) s->val_ptrs.push_back(n.c_str());
    if (!s->val_names.empty()) {
        s->o.val_target_subsets = s->val_ptrs.data();
        s->o.val_target_counts = s->val_counts.data();
        s->o.n_val_targets = s->val_names.size();
    }
    return s;
}

int run_fair_split(const SplitArgs& a) {
    if (g.manifests.size() != 1) usage_error("fair-split takes exactly one --manifest");
    if (g.protocol.empty()) usage_error("fair-split needs --protocol");
    if (g.out.empty()) usage_error("fair-split needs --out DIR");
    Manifest m = load_manifest(g.manifests[0]);
    auto opts = split_options(a);
    la_split* raw = nullptr;
    check(la_split_generate(m.get(), &opts->o, &raw), "manifest '" + g.manifests[0] + "'");
    Split split(raw);
    for (std::size_t i = 0; i < la_split_warning_count(split.get()); ++i)
        std::cerr << "warning: " << la_split_warning(split.get(), i) << "\n";
    check(la_split_write(split.get(), g.out.c_str()), "output '" + g.out + "'");
    std::size_t tr = 0, va = 0, te = 0, ex = 0;
    check(la_split_counts(split.get(), &tr, &va, &te, &ex));
    std::cout << g.protocol << ": train " << tr << ", val " << va << ", test " << te;
    if (ex) std::cout << ", excluded " << ex;
    std::cout << " -> " << g.out << "\n";
    return 0;
}

int run_verify(const SplitArgs& a) {
    if (g.manifests.size() != 1) usage_error("verify takes exactly one --manifest");
    if (g.split_dirs.size() != 1) usage_error("verify takes exactly one --split-dir");
    const std::string& dir = g.split_dirs[0];
    Manifest m = load_manifest(g.manifests[0]);
    Split split = load_split(dir);
    std::unique_ptr<SplitOptions> opts;
    if (!g.protocol.empty()) opts = split_options(a);
    la_verification* raw = nullptr;
    check(la_split_verify(split.get(), m.get(), opts ? &opts->o : nullptr, &raw),
          "split directory '" + dir + "'");
    Verification v(raw);
    char* text = nullptr;
    check(la_verification_text(v.get(), &text));
    write_text(take(text));
    if (!la_verification_passed(v.get())) {
        std::cerr << "verification failed for split directory '" << dir << "'\n";
        return 1;
    }
    return 0;
}

// ---- audit / overlap ----

struct AuditArgs {
    std::vector<std::string> images;
    std::vector<double> percentiles{10, 50, 90};
    std::string timestamp;
};

std::string doc_format() { return g.format.empty() ? "json" : g.format; }

Document new_document(const AuditArgs& a) {
    la_document* raw = nullptr;
    check(la_document_create(&raw));
    Document doc(raw);
    if (!a.timestamp.empty()) check(la_document_set_timestamp(doc.get(), a.timestamp.c_str()));
    return doc;
}

void emit(const la_document* doc, const std::string& format) {
    char* text = nullptr;
    check(la_document_emit(doc, format.c_str(), &text), "--format");
    write_text(take(text));
}

int run_audit(const AuditArgs& a) {
    if (g.manifests.empty()) usage_error("audit needs at least one --manifest");
    if (g.split_dirs.empty()) usage_error("audit needs at least one --split-dir");
    if (a.images.size() > 1) usage_error("audit takes at most one --images root");
    if (!g.out.empty() && a.images.empty()) usage_error("--out (gallery) needs --images");
    const auto [cw, ch] = parse_size(g.canonical_size);
    const std::string format = doc_format();
    {
        char* probe = nullptr;
        la_document* d = nullptr;
        check(la_document_create(&d));
        Document tmp(d);
        check(la_document_emit(tmp.get(), format.c_str(), &probe), "--format '" + format + "'");
        la_free_string(probe);
    }

    Document doc = new_document(a);
    std::vector<Manifest> manifests;
    std::vector<const la_manifest*> ptrs;
    for (const auto& path : g.manifests) {
        manifests.push_back(load_manifest(path));
        ptrs.push_back(manifests.back().get());
        check(la_document_add_input(doc.get(), path.c_str()));
    }
    for (const auto& dir : g.split_dirs) {
        Split split = load_split(dir);
        for (const auto& f : split_files(dir)) check(la_document_add_input(doc.get(), f.c_str()));
        la_audit_options o;
        la_audit_options_init(&o);
        const std::string name = split_name(dir);
        o.split_name = name.c_str();
        o.canonical_width = cw;
        o.canonical_height = ch;
        o.percentiles = a.percentiles.data();
        o.n_percentiles = a.percentiles.size();
        if (!a.images.empty()) o.image_root = a.images[0].c_str();
        std::string gallery;
        if (!g.out.empty()) {
            gallery = g.split_dirs.size() == 1 ? g.out : (fs::path(g.out) / name).string();
            o.gallery_dir = gallery.c_str();
        }
        check(la_document_audit(doc.get(), ptrs.data(), ptrs.size(), split.get(), &o), "split '" + dir + "'");
        if (!gallery.empty()) std::cerr << "gallery: " << (fs::path(gallery) / "index.html").string() << "\n";
    }
    emit(doc.get(), format);
    return 0;
}

int run_overlap(const AuditArgs& a) {
    if (g.manifests.size() != 2) usage_error("overlap takes exactly two --manifest options");
    if (!a.images.empty() && a.images.size() != 2) usage_error("overlap takes --images once per manifest, or not at all");
    const auto [cw, ch] = parse_size(g.canonical_size);
    Document doc = new_document(a);
    Manifest m1 = load_manifest(g.manifests[0]);
    Manifest m2 = load_manifest(g.manifests[1]);
    for (const auto& path : g.manifests) check(la_document_add_input(doc.get(), path.c_str()));
    la_overlap_options o;
    la_overlap_options_init(&o);
    if (g.threshold) {
        o.has_threshold = 1;
        o.threshold = *g.threshold;
    }
    o.canonical_width = cw;
    o.canonical_height = ch;
    if (a.images.size() == 2) {
        o.image_root_a = a.images[0].c_str();
        o.image_root_b = a.images[1].c_str();
    }
    check(la_document_overlap(doc.get(), m1.get(), m2.get(), &o),
          "manifests '" + g.manifests[0] + "' and '" + g.manifests[1] + "'");
    emit(doc.get(), doc_format());
    return 0;
}

// ---- synth ----

struct SynthArgs {
    std::string config;
    std::size_t count = 0;
};

int run_synth(const SynthArgs& a) {
    la_synth_overrides o;
    la_synth_overrides_init(&o);
    if (!g.out.empty()) o.output_dir = g.out.c_str();
    o.count = a.count;
    if (g.seed) {
        o.has_seed = 1;
        o.seed = *g.seed;
    }
    std::size_t n = 0;
    check(la_synth_run(a.config.c_str(), &o, &n), "synth config '" + a.config + "'");
    std::cout << "wrote " << n << " images\n";
    return 0;
}

// ---- metrics ----

struct MetricsArgs {
    std::vector<double> orig;
    std::vector<double> fair;
    std::vector<std::string> labels;
    std::string truth;
    std::string predictions;
};

std::map<std::string, std::string> read_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure{LA_ERR_IO, "cannot open '" + path + "'"};
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw Failure{LA_ERR_PARSE, "'" + path + "' line " + std::to_string(n) + ": expected id<TAB>text"};
        if (!out.emplace(line.substr(0, tab), line.substr(tab + 1)).second)
            throw Failure{LA_ERR_PARSE, "'" + path + "' line " + std::to_string(n) + ": repeated id"};
    }
    return out;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

int run_metrics(const MetricsArgs& a) {
    const std::string format = g.format.empty() ? "table" : g.format;
    if (format != "table" && format != "json" && format != "structured")
        usage_error("--format '" + format + "' (expected json or table)");
    const bool json = format != "table";
    if (!a.truth.empty() || !a.predictions.empty()) {
        if (a.truth.empty() || a.predictions.empty()) usage_error("--truth and --predictions go together");
        const auto truth = read_labels(a.truth);
        const auto pred = read_labels(a.predictions);
        std::vector<const char*> tid, tv, pid, pv;
        for (const auto& [k, v] : truth) tid.push_back(k.c_str()), tv.push_back(v.c_str());
        for (const auto& [k, v] : pred) pid.push_back(k.c_str()), pv.push_back(v.c_str());
        double rate = 0;
        check(la_recognition_rate(pid.data(), pv.data(), pid.size(), tid.data(), tv.data(), tid.size(), &rate),
              "predictions '" + a.predictions + "'");
        if (json)
            std::cout << "{\"recognition_rate\": " << fixed(rate, 2) << "}\n";
        else
            std::cout << "recognition rate " << fixed(rate, 2) << "%\n";
        if (a.orig.empty()) return 0;
    }
    if (a.orig.empty()) usage_error("metrics needs --orig/--fair pairs or --truth/--predictions");
    if (a.orig.size() != a.fair.size()) usage_error("--orig and --fair must be given the same number of times");
    if (!a.labels.empty() && a.labels.size() != a.orig.size()) usage_error("--label must be given once per pair");
    std::vector<la_gap> rows;
    for (std::size_t i = 0; i < a.orig.size(); ++i) {
        la_gap g{};
        check(la_gap_metrics(a.orig[i], a.fair[i], &g),
              "--orig " + fixed(a.orig[i], 2) + " --fair " + fixed(a.fair[i], 2));
        rows.push_back(g);
    }
    auto label = [&](std::size_t i) { return a.labels.empty() ? std::to_string(i + 1) : a.labels[i]; };
    if (json) {
        std::cout << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            std::cout << "  {\"label\": \"" << label(i) << "\", \"acc_orig\": " << fixed(rows[i].acc_orig, 2)
                      << ", \"acc_fair\": " << fixed(rows[i].acc_fair, 2) << ", \"gap\": " << fixed(rows[i].gap, 2)
                      << ", \"rel_gap\": " << fixed(rows[i].rel_gap, 1) << "}" << (i + 1 < rows.size() ? "," : "")
                      << "\n";
        std::cout << "]\n";
        return 0;
    }
    std::printf("%-12s %8s %8s %8s %8s\n", "model", "orig", "fair", "gap", "rel-gap");
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::printf("%-12s %8s %8s %8s %8s\n", label(i).c_str(), fixed(rows[i].acc_orig, 2).c_str(),
                    fixed(rows[i].acc_fair, 2).c_str(), fixed(rows[i].gap, 2).c_str(),
                    fixed(rows[i].rel_gap, 1).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Train/test leakage auditing for license plate datasets"};
    app.set_version_flag("--version", std::string(la_version()));
    app.set_config("--config", "", "Defaults file (key=value or TOML/INI)")->envname("LEAKAUDIT_CONFIG");
    app.require_subcommand(1);

    app.add_option("--manifest", g.manifests, "Manifest (JSONL), repeatable");
    app.add_option("--split-dir", g.split_dirs, "Split directory (train/val/test.txt), repeatable");
    app.add_option("--protocol", g.protocol, "aolp_fair_a, aolp_fair_b, aolp_b, ccpd_fair or generic");
    app.add_option("--seed", g.seed, "Random seed (u64)");
    app.add_option("--canonical-size,--canonical_size", g.canonical_size, "Rectified plate size WxH")
        ->capture_default_str();
    app.add_option("--threshold", g.threshold, "Pixel distance for the likely overlap tier");
    app.add_option("--format", g.format, "json (alias structured) or table");
    app.add_option("--out", g.out, "Output path or directory");

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Build a manifest from dataset annotations");
    ingest_cmd->add_flag("--ccpd-filenames", ingest.ccpd, "Decode labels from CCPD filenames under --root");
    ingest_cmd->add_option("--root", ingest.root, "Image root directory");
    ingest_cmd->add_option("--list", ingest.list, "File with image paths relative to --root (default: scan)");
    ingest_cmd->add_option("--tsv", ingest.tsv, "Tab-separated annotation file with a header row");
    ingest_cmd->add_option("--charmaps", ingest.charmaps, "CCPD symbol tables (JSON)");
    ingest_cmd->add_option("--dataset-id", ingest.dataset_id, "Dataset identifier")->required();
    ingest_cmd->add_option("--subset", ingest.subset, "Subset tag for every image");
    ingest_cmd->add_option("--image-size", ingest.image_size, "Fixed WxH instead of probing files");

    SplitArgs split;
    auto add_split_opts = [&](CLI::App* cmd) {
        cmd->add_option("--val-fraction", split.val_fraction, "Validation share of the non-test images")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--targets", split.targets, "generic: train val test counts")->expected(3);
        cmd->add_option("--donor", split.donors, "ccpd_fair: donor subset (repeatable)");
        cmd->add_option("--lenient-donor", split.lenient, "ccpd_fair: donor allowed to overflow its target");
        cmd->add_option("--val-target", split.val_targets, "ccpd_fair: SUBSET=COUNT validation size");
    };
    auto* split_cmd = app.add_subcommand("fair-split", "Generate a leakage-free split");
    add_split_opts(split_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "Check a split against its protocol");
    add_split_opts(verify_cmd);

    AuditArgs audit;
    auto add_doc_opts = [&](CLI::App* cmd) {
        cmd->add_option("--images", audit.images, "Image root for pixel distances");
        cmd->add_option("--timestamp", audit.timestamp, "Override the generation timestamp");
    };
    auto* audit_cmd = app.add_subcommand("audit", "Count test images whose plate also occurs in train");
    add_doc_opts(audit_cmd);
    audit_cmd->add_option("--percentiles", audit.percentiles, "Percentiles of the pair gallery");
    auto* overlap_cmd = app.add_subcommand("overlap", "Plates shared between two datasets");
    add_doc_opts(overlap_cmd);

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic plate corpus");
    synth_cmd->add_option("config", synth.config, "Synthesis config (JSON)")->required();
    synth_cmd->add_option("--count", synth.count, "Number of images (overrides the config)");

    MetricsArgs metrics;
    auto* metrics_cmd = app.add_subcommand("metrics", "Gap and relative gap between original and fair accuracy");
    metrics_cmd->add_option("--orig", metrics.orig, "Accuracy on the original split, percent");
    metrics_cmd->add_option("--fair", metrics.fair, "Accuracy on the fair split, percent");
    metrics_cmd->add_option("--label", metrics.labels, "Row label per pair");
    metrics_cmd->add_option("--truth", metrics.truth, "id<TAB>plate ground truth");
    metrics_cmd->add_option("--predictions", metrics.predictions, "id<TAB>plate predictions");

    for (auto* cmd : app.get_subcommands({})) cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ingest_cmd) return run_ingest(ingest);
        if (*split_cmd) return run_fair_split(split);
        if (*verify_cmd) return run_verify(split);
        if (*audit_cmd) return run_audit(audit);
        if (*overlap_cmd) return run_overlap(audit);
        if (*synth_cmd) return run_synth(synth);
        if (*metrics_cmd) return run_metrics(metrics);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.status == LA_ERR_INVALID_ARGUMENT ? 2 : 1;
    }
    return 2;
}
