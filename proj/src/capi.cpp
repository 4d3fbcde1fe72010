#include <leakaudit/leakaudit.h>

#include "ccpd.hpp"
#include "dedup.hpp"
#include "error.hpp"
#include "manifest.hpp"
#include "metrics.hpp"
#include "platesynth.hpp"
#include "report.hpp"
#include "splitgen.hpp"
#include "tsv.hpp"
#include "version.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <map>
#include <new>
#include <unordered_map>

using namespace leakaudit;

struct la_manifest {
    Manifest m;
};
struct la_charmaps {
    Charmaps c;
};
struct la_split {
    SplitAssignment a;
    std::vector<std::string> multiply_assigned;
    std::optional<SplitSpec> spec;
};
struct la_verification {
    VerificationReport r;
};
struct la_document {
    AuditDocument d;
};
struct la_raster {
    Raster r;
};

namespace {

thread_local std::string g_last_error;

la_status to_status(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return LA_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return LA_ERR_PARSE;
    case ErrorCode::Validation: return LA_ERR_VALIDATION;
    case ErrorCode::Infeasible: return LA_ERR_INFEASIBLE;
    case ErrorCode::Io: return LA_ERR_IO;
    case ErrorCode::DimensionMismatch: return LA_ERR_DIMENSION_MISMATCH;
    case ErrorCode::Degenerate: return LA_ERR_DEGENERATE;
    case ErrorCode::Undefined: return LA_ERR_UNDEFINED;
    }
    return LA_ERR_INTERNAL;
}

template <class F>
la_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return LA_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = e.what();
    } catch (...) {
        g_last_error = "unknown failure";
    }
    return LA_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
    if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

template <class T, class... Args>
void emit_handle(T** out, Args&&... args) {
    need(out, "output handle");
    *out = nullptr;
    *out = new T{std::forward<Args>(args)...};
}

std::vector<std::string> strings(const char* const* items, std::size_t n, const char* what) {
    std::vector<std::string> out;
    if (n) need(items, what);
    for (std::size_t i = 0; i < n; ++i) {
        need(items[i], what);
        out.emplace_back(items[i]);
    }
    return out;
}

SplitSpec to_spec(const la_split_options& o) {
    need(o.protocol, "protocol");
    SplitSpec spec;
    spec.protocol = parse_protocol(o.protocol);
    if (o.has_seed) spec.seed = o.seed;
    spec.val_fraction = o.val_fraction;
    if (spec.protocol == Protocol::Generic) {
        spec.targets[Role::Train] = o.target_train;
        spec.targets[Role::Val] = o.target_val;
        spec.targets[Role::Test] = o.target_test;
    }
    if (o.donor_subsets) spec.donor_subsets = strings(o.donor_subsets, o.n_donor_subsets, "donor subset");
    if (o.lenient_donors) {
        const auto v = strings(o.lenient_donors, o.n_lenient_donors, "lenient donor");
        spec.lenient_donors = {v.begin(), v.end()};
    }
    if (o.n_val_targets) {
        const auto names = strings(o.val_target_subsets, o.n_val_targets, "validation target subset");
        need(o.val_target_counts, "validation target counts");
        for (std::size_t i = 0; i < names.size(); ++i) spec.val_targets[names[i]] = o.val_target_counts[i];
    }
    return spec;
}

CanonicalSize canonical(int w, int h) {
    if (w <= 0 || h <= 0)
        throw Error(ErrorCode::InvalidArgument,
                    "canonical size " + std::to_string(w) + "x" + std::to_string(h) + " must be positive");
    return {w, h};
}

// Rectified plates for the ids of the given manifests, read from root/id.
PlateSource plate_source(std::vector<const Manifest*> manifests, std::string root, CanonicalSize size) {
    auto index = std::make_shared<std::unordered_map<std::string, const ImageEntry*>>();
    for (const Manifest* m : manifests)
        for (const auto& e : m->entries) index->emplace(e.id, &e);
    return [index, root = std::filesystem::path(root), size](const std::string& id) -> std::optional<CanonicalPlate> {
        auto it = index->find(id);
        if (it == index->end() || !it->second->corners) return std::nullopt;
        return rectify(load_image(root / id), *it->second->corners, size);
    };
}

synth::ClassTable classes_from(const char* classes_json) {
    if (!classes_json) return {};
    try {
        return nlohmann::json::parse(classes_json).get<synth::ClassTable>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("classes: ") + e.what());
    }
}

synth::Pattern pattern_from(const char* pattern, const char* classes_json) {
    need(pattern, "pattern");
    const auto named = synth::default_pattern(pattern);
    return synth::parse_pattern(named.empty() ? std::string_view(pattern) : named, classes_from(classes_json));
}

Quad quad_from(const double c[8]) {
    need(c, "corners");
    return {Point{c[0], c[1]}, Point{c[2], c[3]}, Point{c[4], c[5]}, Point{c[6], c[7]}};
}

}  // namespace

extern "C" {

const char* la_version(void) { return kToolVersion; }

const char* la_status_name(la_status status) {
    switch (status) {
    case LA_OK: return "ok";
    case LA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LA_ERR_PARSE: return "parse error";
    case LA_ERR_VALIDATION: return "validation error";
    case LA_ERR_INFEASIBLE: return "infeasible";
    case LA_ERR_IO: return "i/o error";
    case LA_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case LA_ERR_DEGENERATE: return "degenerate geometry";
    case LA_ERR_UNDEFINED: return "undefined";
    case LA_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* la_last_error(void) { return g_last_error.c_str(); }

void la_free_string(char* s) { std::free(s); }

la_status la_normalize_plate(const char* raw, char** out_key) {
    return guarded([&] {
        need(raw, "plate");
        need(out_key, "output");
        *out_key = dup_string(normalize_plate(raw).value());
    });
}

la_status la_charmaps_load(const char* path, la_charmaps** out) {
    return guarded([&] {
        need(path, "path");
        emit_handle(out, load_charmaps(path));
    });
}

la_status la_charmaps_parse(const char* json_text, la_charmaps** out) {
    return guarded([&] {
        need(json_text, "charmaps text");
        emit_handle(out, parse_charmaps(json_text));
    });
}

void la_charmaps_free(la_charmaps* charmaps) { delete charmaps; }

la_status la_ccpd_plate_text(const char* filename, const la_charmaps* charmaps, char** out_text) {
    return guarded([&] {
        need(filename, "filename");
        need(charmaps, "charmaps");
        need(out_text, "output");
        const auto rec = parse_ccpd_filename(filename, charmaps->c);
        *out_text = dup_string(decode_plate_text(rec.char_indices, charmaps->c));
    });
}

la_status la_manifest_load(const char* path, la_manifest** out) {
    return guarded([&] {
        need(path, "path");
        emit_handle(out, load_manifest(path));
    });
}

la_status la_manifest_parse(const char* jsonl_text, la_manifest** out) {
    return guarded([&] {
        need(jsonl_text, "manifest text");
        emit_handle(out, parse_manifest(std::string_view(jsonl_text)));
    });
}

void la_ingest_options_init(la_ingest_options* options) {
    if (options) *options = la_ingest_options{nullptr, nullptr, 0, 0, nullptr};
}

la_status la_manifest_ingest_ccpd(const char* root, const char* const* relative_paths, size_t count,
                                  const la_charmaps* charmaps, const la_ingest_options* options, la_manifest** out) {
    return guarded([&] {
        need(root, "root");
        need(charmaps, "charmaps");
        need(options, "options");
        need(options->dataset_id, "dataset id");
        CcpdIngestOptions o;
        o.dataset_id = options->dataset_id;
        if (options->subset) o.subset = options->subset;
        if (options->image_width > 0 || options->image_height > 0)
            o.image_size = std::pair{options->image_width, options->image_height};
        std::vector<std::filesystem::path> rel;
        for (const auto& s : strings(relative_paths, count, "path")) rel.emplace_back(s);
        emit_handle(out, ingest_ccpd(root, rel, charmaps->c, o));
    });
}

la_status la_manifest_ingest_tsv(const char* path, const la_ingest_options* options, la_manifest** out) {
    return guarded([&] {
        need(path, "path");
        need(options, "options");
        need(options->dataset_id, "dataset id");
        TsvIngestOptions o;
        o.dataset_id = options->dataset_id;
        if (options->image_root) o.image_root = options->image_root;
        if (options->image_width > 0 || options->image_height > 0)
            o.image_size = std::pair{options->image_width, options->image_height};
        Manifest m = ingest_tsv(std::filesystem::path(path), o);
        if (options->subset)
            for (auto& e : m.entries) e.subset = options->subset;
        emit_handle(out, std::move(m));
    });
}

void la_manifest_free(la_manifest* manifest) { delete manifest; }

size_t la_manifest_size(const la_manifest* manifest) { return manifest ? manifest->m.entries.size() : 0; }

const char* la_manifest_dataset_id(const la_manifest* manifest) {
    return manifest ? manifest->m.dataset_id.c_str() : nullptr;
}

const char* la_manifest_entry_id(const la_manifest* manifest, size_t index) {
    return manifest && index < manifest->m.entries.size() ? manifest->m.entries[index].id.c_str() : nullptr;
}

const char* la_manifest_entry_subset(const la_manifest* manifest, size_t index) {
    return manifest && index < manifest->m.entries.size() ? manifest->m.entries[index].subset.c_str() : nullptr;
}

const char* la_manifest_entry_plate(const la_manifest* manifest, size_t index) {
    return manifest && index < manifest->m.entries.size() ? manifest->m.entries[index].plate_text.c_str() : nullptr;
}

la_status la_manifest_serialize(const la_manifest* manifest, char** out_jsonl) {
    return guarded([&] {
        need(manifest, "manifest");
        need(out_jsonl, "output");
        *out_jsonl = dup_string(serialize_manifest(manifest->m));
    });
}

la_status la_manifest_save(const la_manifest* manifest, const char* path) {
    return guarded([&] {
        need(manifest, "manifest");
        need(path, "path");
        write_file_atomic(path, serialize_manifest(manifest->m));
    });
}

void la_split_options_init(la_split_options* options) {
    if (!options) return;
    *options = la_split_options{};
    options->protocol = "generic";
    options->val_fraction = 0.2;
}

la_status la_split_generate(const la_manifest* manifest, const la_split_options* options, la_split** out) {
    return guarded([&] {
        need(manifest, "manifest");
        need(options, "options");
        SplitSpec spec = to_spec(*options);
        SplitAssignment a = generate_split(manifest->m, spec);
        emit_handle(out, std::move(a), std::vector<std::string>{}, std::optional<SplitSpec>(std::move(spec)));
    });
}

la_status la_split_load(const char* dir, la_split** out) {
    return guarded([&] {
        need(dir, "directory");
        LoadedSplit loaded = load_split_files(dir);
        emit_handle(out, std::move(loaded.assignment), std::move(loaded.multiply_assigned), std::move(loaded.spec));
    });
}

la_status la_split_write(const la_split* split, const char* dir) {
    return guarded([&] {
        need(split, "split");
        need(dir, "directory");
        SplitSpec spec;
        if (split->spec) {
            spec = *split->spec;
        } else {
            spec.protocol = parse_protocol(split->a.protocol);
            spec.seed = split->a.seed;
        }
        emit_split_files(split->a, spec, dir);
    });
}

void la_split_free(la_split* split) { delete split; }

const char* la_split_protocol(const la_split* split) { return split ? split->a.protocol.c_str() : nullptr; }

la_status la_split_counts(const la_split* split, size_t* train, size_t* val, size_t* test, size_t* excluded) {
    return guarded([&] {
        need(split, "split");
        const RoleCounts c = split->a.counts();
        if (train) *train = c.train;
        if (val) *val = c.val;
        if (test) *test = c.test;
        if (excluded) *excluded = c.excluded;
    });
}

la_status la_split_role(const la_split* split, const char* id, la_role* out) {
    return guarded([&] {
        need(split, "split");
        need(id, "id");
        need(out, "output");
        auto it = split->a.roles.find(id);
        if (it == split->a.roles.end())
            throw Error(ErrorCode::Validation, "id '" + std::string(id) + "' is not in the split");
        *out = static_cast<la_role>(static_cast<int>(it->second));
    });
}

size_t la_split_warning_count(const la_split* split) { return split ? split->a.warnings.size() : 0; }

const char* la_split_warning(const la_split* split, size_t index) {
    return split && index < split->a.warnings.size() ? split->a.warnings[index].c_str() : nullptr;
}

la_status la_split_verify(const la_split* split, const la_manifest* manifest, const la_split_options* options,
                          la_verification** out) {
    return guarded([&] {
        need(split, "split");
        need(manifest, "manifest");
        SplitSpec spec;
        if (options) {
            spec = to_spec(*options);
        } else if (split->spec) {
            spec = *split->spec;
        } else {
            throw Error(ErrorCode::InvalidArgument, "split carries no protocol parameters (split_meta.json missing)");
        }
        emit_handle(out, verify_split(split->a, manifest->m, spec, split->multiply_assigned));
    });
}

void la_verification_free(la_verification* report) { delete report; }

int la_verification_passed(const la_verification* report) { return report && report->r.passed() ? 1 : 0; }

size_t la_verification_check_count(const la_verification* report) { return report ? report->r.checks.size() : 0; }

la_status la_verification_check(const la_verification* report, size_t index, const char** name, int* passed,
                                const char** detail) {
    return guarded([&] {
        need(report, "report");
        if (index >= report->r.checks.size())
            throw Error(ErrorCode::InvalidArgument, "check index " + std::to_string(index) + " out of range");
        const auto& c = report->r.checks[index];
        if (name) *name = c.name.c_str();
        if (passed) *passed = c.passed ? 1 : 0;
        if (detail) *detail = c.detail.c_str();
    });
}

la_status la_verification_text(const la_verification* report, char** out_text) {
    return guarded([&] {
        need(report, "report");
        need(out_text, "output");
        *out_text = dup_string(report->r.to_text());
    });
}

void la_audit_options_init(la_audit_options* options) {
    if (options) *options = la_audit_options{"split", nullptr, 96, 48, nullptr, 0, nullptr};
}

void la_overlap_options_init(la_overlap_options* options) {
    if (options) *options = la_overlap_options{0, 0.0, nullptr, nullptr, 96, 48};
}

la_status la_document_create(la_document** out) {
    return guarded([&] {
        AuditDocument d;
        d.tool_version = kToolVersion;
        d.generated_at = utc_timestamp();
        emit_handle(out, std::move(d));
    });
}

void la_document_free(la_document* doc) { delete doc; }

la_status la_document_set_timestamp(la_document* doc, const char* iso8601) {
    return guarded([&] {
        need(doc, "document");
        need(iso8601, "timestamp");
        doc->d.generated_at = iso8601;
    });
}

la_status la_document_add_input(la_document* doc, const char* path) {
    return guarded([&] {
        need(doc, "document");
        need(path, "path");
        doc->d.inputs.push_back({path, sha256_file(path)});
    });
}

la_status la_document_audit(la_document* doc, const la_manifest* const* manifests, size_t n_manifests,
                            const la_split* split, const la_audit_options* options) {
    return guarded([&] {
        need(doc, "document");
        need(split, "split");
        need(options, "options");
        if (n_manifests == 0) throw Error(ErrorCode::InvalidArgument, "no manifest given");
        need(manifests, "manifests");
        std::vector<Manifest> ms;
        std::vector<const Manifest*> ptrs;
        for (std::size_t i = 0; i < n_manifests; ++i) {
            need(manifests[i], "manifest");
            ptrs.push_back(&manifests[i]->m);
        }
        std::vector<DuplicateGroup> groups;
        if (n_manifests == 1) {
            groups = build_groups(manifests[0]->m);
        } else {
            for (const Manifest* m : ptrs) ms.push_back(*m);
            groups = build_groups(std::span<const Manifest>(ms));
        }
        const CanonicalSize size = canonical(options->canonical_width, options->canonical_height);
        LeakageReport report = audit_split(groups, split->a, options->split_name ? options->split_name : "split");
        report.metadata.tool_version = kToolVersion;
        report.metadata.canonical_size = to_string(size);
        report.metadata.seed = split->a.seed;

        if (options->gallery_dir && !options->image_root)
            throw Error(ErrorCode::InvalidArgument, "a gallery needs an image root");
        if (options->image_root) {
            std::vector<double> ps{10, 50, 90};
            if (options->percentiles) ps.assign(options->percentiles, options->percentiles + options->n_percentiles);
            const PlateSource source = plate_source(ptrs, options->image_root, size);
            auto scored = score_pairs(cross_split_pairs(groups, split->a), source, source);
            if (!scored.empty()) report.percentile_pairs = percentile_pairs(std::move(scored), ps);
            if (options->gallery_dir) {
                std::vector<GalleryEntry> entries;
                for (const auto& p : report.percentile_pairs) {
                    GalleryEntry g{p, std::nullopt, std::nullopt};
                    if (auto a = source(p.pair.train_id)) g.train_plate = a->raster;
                    if (auto b = source(p.pair.test_id)) g.test_plate = b->raster;
                    entries.push_back(std::move(g));
                }
                emit_gallery(std::move(entries), options->gallery_dir);
            }
        }
        doc->d.reports.push_back(std::move(report));
    });
}

la_status la_document_overlap(la_document* doc, const la_manifest* a, const la_manifest* b,
                              const la_overlap_options* options) {
    return guarded([&] {
        need(doc, "document");
        need(a, "first manifest");
        need(b, "second manifest");
        need(options, "options");
        std::optional<double> threshold;
        if (options->has_threshold) {
            if (!(options->threshold >= 0))
                throw Error(ErrorCode::InvalidArgument, "threshold must be a non-negative number");
            threshold = options->threshold;
        }
        const CanonicalSize size = canonical(options->canonical_width, options->canonical_height);
        PlateSource pa, pb;
        if (options->image_root_a) pa = plate_source({&a->m}, options->image_root_a, size);
        if (options->image_root_b) pb = plate_source({&b->m}, options->image_root_b, size);
        OverlapSection o;
        o.dataset_a = a->m.dataset_id;
        o.dataset_b = b->m.dataset_id;
        o.threshold = threshold;
        o.pairs = cross_dataset_overlap(a->m, b->m, threshold, pa, pb);
        doc->d.overlap = std::move(o);
    });
}

size_t la_document_report_count(const la_document* doc) { return doc ? doc->d.reports.size() : 0; }

la_status la_document_report(const la_document* doc, size_t index, la_report_summary* out) {
    return guarded([&] {
        need(doc, "document");
        need(out, "output");
        if (index >= doc->d.reports.size())
            throw Error(ErrorCode::InvalidArgument, "report index " + std::to_string(index) + " out of range");
        const auto& r = doc->d.reports[index];
        *out = la_report_summary{r.n_train,       r.n_val,
                                 r.n_test,        r.n_test_leaked,
                                 r.leak_fraction, r.n_val_with_test_duplicates,
                                 r.percentile_pairs.size()};
    });
}

la_status la_document_overlap_counts(const la_document* doc, size_t* pairs, size_t* likely) {
    return guarded([&] {
        need(doc, "document");
        if (!doc->d.overlap) throw Error(ErrorCode::InvalidArgument, "document has no overlap section");
        std::size_t n_likely = 0;
        for (const auto& p : doc->d.overlap->pairs) n_likely += p.tier == OverlapTier::Likely;
        if (pairs) *pairs = doc->d.overlap->pairs.size();
        if (likely) *likely = n_likely;
    });
}

la_status la_document_emit(const la_document* doc, const char* format, char** out_text) {
    return guarded([&] {
        need(doc, "document");
        need(format, "format");
        need(out_text, "output");
        *out_text = dup_string(emit_audit(doc->d, parse_report_format(format)));
    });
}

la_status la_document_parse(const char* json_text, la_document** out) {
    return guarded([&] {
        need(json_text, "document text");
        emit_handle(out, parse_audit_document(json_text));
    });
}

int la_document_equal(const la_document* a, const la_document* b) { return a && b && a->d == b->d ? 1 : 0; }

la_status la_gap_metrics(double acc_orig, double acc_fair, la_gap* out) {
    return guarded([&] {
        need(out, "output");
        const GapMetrics g = gap_metrics(acc_orig, acc_fair);
        *out = la_gap{g.acc_orig, g.acc_fair, g.gap, g.rel_gap};
    });
}

la_status la_recognition_rate(const char* const* prediction_ids, const char* const* predictions, size_t n_predictions,
                              const char* const* truth_ids, const char* const* truths, size_t n_truths,
                              double* out_percent) {
    return guarded([&] {
        need(out_percent, "output");
        auto to_map = [](const char* const* ids, const char* const* values, std::size_t n, const char* what) {
            const auto k = strings(ids, n, what);
            const auto v = strings(values, n, what);
            std::map<std::string, std::string> m;
            for (std::size_t i = 0; i < n; ++i)
                if (!m.emplace(k[i], v[i]).second)
                    throw Error(ErrorCode::InvalidArgument, std::string("repeated ") + what + " id '" + k[i] + "'");
            return m;
        };
        *out_percent = recognition_rate(to_map(prediction_ids, predictions, n_predictions, "prediction"),
                                        to_map(truth_ids, truths, n_truths, "truth"));
    });
}

la_status la_format_fraction(size_t k, size_t n, char** out_text) {
    return guarded([&] {
        need(out_text, "output");
        *out_text = dup_string(format_fraction(k, n));
    });
}

la_status la_raster_load(const char* path, la_raster** out) {
    return guarded([&] {
        need(path, "path");
        emit_handle(out, load_image(path));
    });
}

la_status la_raster_create(int width, int height, const uint8_t* rgb, la_raster** out) {
    return guarded([&] {
        if (width <= 0 || height <= 0) throw Error(ErrorCode::InvalidArgument, "raster dimensions must be positive");
        Raster r(width, height);
        if (rgb) std::memcpy(r.pixels.data(), rgb, r.pixels.size());
        emit_handle(out, std::move(r));
    });
}

void la_raster_free(la_raster* raster) { delete raster; }

int la_raster_width(const la_raster* raster) { return raster ? raster->r.width : 0; }

int la_raster_height(const la_raster* raster) { return raster ? raster->r.height : 0; }

const uint8_t* la_raster_data(const la_raster* raster) { return raster ? raster->r.pixels.data() : nullptr; }

la_status la_raster_save(const la_raster* raster, const char* path) {
    return guarded([&] {
        need(raster, "raster");
        need(path, "path");
        save_image(raster->r, path);
    });
}

la_status la_solve_homography(const double src[8], const double dst[8], double h[9]) {
    return guarded([&] {
        need(h, "output");
        const Homography H = solve_homography(quad_from(src), quad_from(dst));
        std::copy(H.data().begin(), H.data().end(), h);
    });
}

la_status la_rectify(const la_raster* image, const double corners[8], int width, int height, la_raster** out) {
    return guarded([&] {
        need(image, "image");
        emit_handle(out, rectify(image->r, quad_from(corners), canonical(width, height)).raster);
    });
}

la_status la_pixel_distance(const la_raster* a, const la_raster* b, double* out) {
    return guarded([&] {
        need(a, "first raster");
        need(b, "second raster");
        need(out, "output");
        *out = pixel_distance(a->r, b->r);
    });
}

void la_synth_overrides_init(la_synth_overrides* overrides) {
    if (overrides) *overrides = la_synth_overrides{nullptr, 0, 0, 0};
}

la_status la_synth_run(const char* config_path, const la_synth_overrides* overrides, size_t* n_written) {
    return guarded([&] {
        need(config_path, "config path");
        synth::SynthConfig cfg = synth::load_synth_config(config_path);
        if (overrides) {
            if (overrides->output_dir) cfg.output_dir = overrides->output_dir;
            if (overrides->count) cfg.count = overrides->count;
            if (overrides->has_seed) cfg.master_seed = overrides->seed;
        }
        if (cfg.output_dir.empty()) throw Error(ErrorCode::InvalidArgument, "no output directory configured");
        const auto written = synth::run_synthesis(cfg);
        if (n_written) *n_written = written.size();
    });
}

la_status la_synth_sample_text(const char* pattern, const char* classes_json, uint64_t seed, char** out_text) {
    return guarded([&] {
        need(out_text, "output");
        const auto p = pattern_from(pattern, classes_json);
        Rng rng(seed);
        *out_text = dup_string(synth::sample_plate_text(p, rng));
    });
}

la_status la_synth_conforms(const char* pattern, const char* classes_json, const char* text, int* out) {
    return guarded([&] {
        need(text, "text");
        need(out, "output");
        *out = synth::conforms(pattern_from(pattern, classes_json), text) ? 1 : 0;
    });
}

}  // extern "C"
