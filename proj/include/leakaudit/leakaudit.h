#ifndef LEAKAUDIT_H
#define LEAKAUDIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LA_API __declspec(dllexport)
#else
#define LA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum la_status {
    LA_OK = 0,
    LA_ERR_INVALID_ARGUMENT = 1,
    LA_ERR_PARSE = 2,
    LA_ERR_VALIDATION = 3,
    LA_ERR_INFEASIBLE = 4,
    LA_ERR_IO = 5,
    LA_ERR_DIMENSION_MISMATCH = 6,
    LA_ERR_DEGENERATE = 7,
    LA_ERR_UNDEFINED = 8,
    LA_ERR_INTERNAL = 9
} la_status;

typedef enum la_role { LA_ROLE_TRAIN = 0, LA_ROLE_VAL = 1, LA_ROLE_TEST = 2, LA_ROLE_EXCLUDED = 3 } la_role;

typedef struct la_manifest la_manifest;
typedef struct la_charmaps la_charmaps;
typedef struct la_split la_split;
typedef struct la_verification la_verification;
typedef struct la_document la_document;
typedef struct la_raster la_raster;

LA_API const char* la_version(void);
LA_API const char* la_status_name(la_status status);
/* Message of the last failed call on this thread; "" after success. */
LA_API const char* la_last_error(void);
/* Strings returned through char** out parameters are malloc'd; free them here. */
LA_API void la_free_string(char* s);

/* ---- plates ---- */

LA_API la_status la_normalize_plate(const char* raw, char** out_key);

/* ---- charmaps and CCPD labels ---- */

LA_API la_status la_charmaps_load(const char* path, la_charmaps** out);
LA_API la_status la_charmaps_parse(const char* json_text, la_charmaps** out);
LA_API void la_charmaps_free(la_charmaps* charmaps);
/* Raw plate text encoded in a CCPD filename. */
LA_API la_status la_ccpd_plate_text(const char* filename, const la_charmaps* charmaps, char** out_text);

/* ---- manifests ---- */

LA_API la_status la_manifest_load(const char* path, la_manifest** out);
LA_API la_status la_manifest_parse(const char* jsonl_text, la_manifest** out);

typedef struct la_ingest_options {
    const char* dataset_id;  /* required */
    const char* subset;      /* NULL: derived per file (CCPD) */
    int image_width;         /* 0: probed from the files */
    int image_height;
    const char* image_root;  /* TSV only: where to probe sizes */
} la_ingest_options;

LA_API void la_ingest_options_init(la_ingest_options* options);
/* CCPD images given as paths relative to root. */
LA_API la_status la_manifest_ingest_ccpd(const char* root, const char* const* relative_paths, size_t count,
                                         const la_charmaps* charmaps, const la_ingest_options* options,
                                         la_manifest** out);
/* Header-driven TSV: id, subset, plate_text [, image_width, image_height] [, corners]. */
LA_API la_status la_manifest_ingest_tsv(const char* path, const la_ingest_options* options, la_manifest** out);

LA_API void la_manifest_free(la_manifest* manifest);
LA_API size_t la_manifest_size(const la_manifest* manifest);
/* Owned by the manifest. */
LA_API const char* la_manifest_dataset_id(const la_manifest* manifest);
LA_API const char* la_manifest_entry_id(const la_manifest* manifest, size_t index);
LA_API const char* la_manifest_entry_subset(const la_manifest* manifest, size_t index);
LA_API const char* la_manifest_entry_plate(const la_manifest* manifest, size_t index);
LA_API la_status la_manifest_serialize(const la_manifest* manifest, char** out_jsonl);
LA_API la_status la_manifest_save(const la_manifest* manifest, const char* path);

/* ---- splits ---- */

typedef struct la_split_options {
    const char* protocol; /* aolp_fair_a, aolp_fair_b, aolp_b, ccpd_fair, generic */
    int has_seed;
    uint64_t seed;
    double val_fraction;
    /* generic: exact role sizes */
    size_t target_train;
    size_t target_val;
    size_t target_test;
    /* ccpd_fair; NULL keeps the defaults */
    const char* const* donor_subsets;
    size_t n_donor_subsets;
    const char* const* lenient_donors;
    size_t n_lenient_donors;
    const char* const* val_target_subsets;
    const size_t* val_target_counts;
    size_t n_val_targets;
} la_split_options;

LA_API void la_split_options_init(la_split_options* options);
LA_API la_status la_split_generate(const la_manifest* manifest, const la_split_options* options, la_split** out);
/* Reads train/val/test.txt, excluded.txt and split_meta.json from dir. */
LA_API la_status la_split_load(const char* dir, la_split** out);
LA_API la_status la_split_write(const la_split* split, const char* dir);
LA_API void la_split_free(la_split* split);
LA_API const char* la_split_protocol(const la_split* split);
LA_API la_status la_split_counts(const la_split* split, size_t* train, size_t* val, size_t* test, size_t* excluded);
LA_API la_status la_split_role(const la_split* split, const char* id, la_role* out);
LA_API size_t la_split_warning_count(const la_split* split);
LA_API const char* la_split_warning(const la_split* split, size_t index);

/* options NULL: use the parameters recorded with the split. */
LA_API la_status la_split_verify(const la_split* split, const la_manifest* manifest, const la_split_options* options,
                                 la_verification** out);
LA_API void la_verification_free(la_verification* report);
LA_API int la_verification_passed(const la_verification* report);
LA_API size_t la_verification_check_count(const la_verification* report);
LA_API la_status la_verification_check(const la_verification* report, size_t index, const char** name, int* passed,
                                       const char** detail);
LA_API la_status la_verification_text(const la_verification* report, char** out_text);

/* ---- audit documents ---- */

typedef struct la_audit_options {
    const char* split_name;
    const char* image_root;   /* NULL: no pixel distances */
    int canonical_width;      /* default 96 */
    int canonical_height;     /* default 48 */
    const double* percentiles; /* NULL: 10, 50, 90 */
    size_t n_percentiles;
    const char* gallery_dir;  /* NULL: no gallery; requires image_root */
} la_audit_options;

typedef struct la_report_summary {
    size_t n_train;
    size_t n_val;
    size_t n_test;
    size_t n_test_leaked;
    double leak_fraction;
    size_t n_val_with_test_duplicates;
    size_t n_percentile_pairs;
} la_report_summary;

typedef struct la_overlap_options {
    int has_threshold;
    double threshold;
    const char* image_root_a;
    const char* image_root_b;
    int canonical_width;
    int canonical_height;
} la_overlap_options;

LA_API void la_audit_options_init(la_audit_options* options);
LA_API void la_overlap_options_init(la_overlap_options* options);

LA_API la_status la_document_create(la_document** out);
LA_API void la_document_free(la_document* doc);
LA_API la_status la_document_set_timestamp(la_document* doc, const char* iso8601);
/* Records the file's SHA-256. */
LA_API la_status la_document_add_input(la_document* doc, const char* path);
LA_API la_status la_document_audit(la_document* doc, const la_manifest* const* manifests, size_t n_manifests,
                                   const la_split* split, const la_audit_options* options);
LA_API la_status la_document_overlap(la_document* doc, const la_manifest* a, const la_manifest* b,
                                     const la_overlap_options* options);
LA_API size_t la_document_report_count(const la_document* doc);
LA_API la_status la_document_report(const la_document* doc, size_t index, la_report_summary* out);
LA_API la_status la_document_overlap_counts(const la_document* doc, size_t* pairs, size_t* likely);
/* format: "json" (or "structured") or "table". */
LA_API la_status la_document_emit(const la_document* doc, const char* format, char** out_text);
LA_API la_status la_document_parse(const char* json_text, la_document** out);
LA_API int la_document_equal(const la_document* a, const la_document* b);

/* ---- metrics ---- */

typedef struct la_gap {
    double acc_orig;
    double acc_fair;
    double gap;
    double rel_gap;
} la_gap;

LA_API la_status la_gap_metrics(double acc_orig, double acc_fair, la_gap* out);
LA_API la_status la_recognition_rate(const char* const* prediction_ids, const char* const* predictions,
                                     size_t n_predictions, const char* const* truth_ids, const char* const* truths,
                                     size_t n_truths, double* out_percent);
/* "k/n (p%)" with one decimal, halves away from zero. */
LA_API la_status la_format_fraction(size_t k, size_t n, char** out_text);

/* ---- geometry and rasters ---- */

LA_API la_status la_raster_load(const char* path, la_raster** out);
LA_API la_status la_raster_create(int width, int height, const uint8_t* rgb, la_raster** out);
LA_API void la_raster_free(la_raster* raster);
LA_API int la_raster_width(const la_raster* raster);
LA_API int la_raster_height(const la_raster* raster);
/* Interleaved RGB, width * height * 3 bytes, owned by the raster. */
LA_API const uint8_t* la_raster_data(const la_raster* raster);
LA_API la_status la_raster_save(const la_raster* raster, const char* path);

/* Corners as x1,y1,...,x4,y4; rectify expects top-left, top-right, bottom-right,
   bottom-left in pixel-edge coordinates. h is row-major 3x3 with h[8] = 1. */
LA_API la_status la_solve_homography(const double src[8], const double dst[8], double h[9]);
LA_API la_status la_rectify(const la_raster* image, const double corners[8], int width, int height, la_raster** out);
LA_API la_status la_pixel_distance(const la_raster* a, const la_raster* b, double* out);

/* ---- synthesis ---- */

typedef struct la_synth_overrides {
    const char* output_dir; /* NULL keeps the config value */
    size_t count;           /* 0 keeps the config value */
    int has_seed;
    uint64_t seed;
} la_synth_overrides;

LA_API void la_synth_overrides_init(la_synth_overrides* overrides);
LA_API la_status la_synth_run(const char* config_path, const la_synth_overrides* overrides, size_t* n_written);
/* pattern: a pattern string or a default name (mainland, mainland_green, taiwan).
   classes_json: NULL or {"P": ["京", ...], ...} for named classes beyond L, D, A. */
LA_API la_status la_synth_sample_text(const char* pattern, const char* classes_json, uint64_t seed, char** out_text);
LA_API la_status la_synth_conforms(const char* pattern, const char* classes_json, const char* text, int* out);

#ifdef __cplusplus
}
#endif

#endif
