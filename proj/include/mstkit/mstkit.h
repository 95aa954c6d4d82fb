/*
 * mstkit C API.
 *
 * Every object is an opaque handle created by a `*_create`/`*_read`/`*_build`
 * style call and released with the matching `*_free`. Calls that can fail
 * return an mstk_status; on failure mstk_last_error() holds a message for the
 * calling thread until its next failing call. Output handles are only written
 * on success.
 *
 * Handles are not synchronised: share a handle across threads only for
 * read-only calls.
 */
#ifndef MSTKIT_MSTKIT_H
#define MSTKIT_MSTKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MSTKIT_BUILDING)
#    define MSTK_API __declspec(dllexport)
#  else
#    define MSTK_API __declspec(dllimport)
#  endif
#else
#  define MSTK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mstk_status {
  MSTK_OK = 0,
  MSTK_ERR_INVALID_ARGUMENT = 1,
  MSTK_ERR_PARSE = 2,
  MSTK_ERR_NUMERIC = 3,
  MSTK_ERR_IO = 4,
  MSTK_ERR_INTERNAL = 5
} mstk_status;

typedef struct mstk_pointset mstk_pointset;
typedef struct mstk_tree mstk_tree;
typedef struct mstk_values mstk_values;
typedef struct mstk_histogram mstk_histogram;
typedef struct mstk_comparison mstk_comparison;
typedef struct mstk_model mstk_model;
typedef struct mstk_fit mstk_fit;

MSTK_API const char* mstk_version(void);
MSTK_API const char* mstk_last_error(void);

/* ---- point sets ------------------------------------------------------- */

/* feature_names may be NULL (columns become x0, x1, ...). */
MSTK_API mstk_status mstk_pointset_create(size_t dimension, const char* const* feature_names, mstk_pointset** out);
/* label may be NULL. */
MSTK_API mstk_status mstk_pointset_add(mstk_pointset* ps, const double* coords, double weight, const char* label);
MSTK_API mstk_status mstk_pointset_read(const char* path, mstk_pointset** out);
/* provenance may be NULL; otherwise written as a leading "# ..." line. */
MSTK_API mstk_status mstk_pointset_write(const mstk_pointset* ps, const char* path, const char* provenance);
MSTK_API size_t mstk_pointset_size(const mstk_pointset* ps);
MSTK_API size_t mstk_pointset_dimension(const mstk_pointset* ps);
/* coords_out receives dimension values; either output may be NULL. */
MSTK_API mstk_status mstk_pointset_point(const mstk_pointset* ps, size_t i, double* coords_out, double* weight_out);
/* NULL when the point has no label. Valid until the handle changes. */
MSTK_API const char* mstk_pointset_label(const mstk_pointset* ps, size_t i);
MSTK_API const char* mstk_pointset_feature_name(const mstk_pointset* ps, size_t axis);
MSTK_API mstk_status mstk_pointset_feature_index(const mstk_pointset* ps, const char* name, size_t* out);
MSTK_API void mstk_pointset_free(mstk_pointset* ps);

typedef enum mstk_rescale_mode {
  MSTK_RESCALE_NONE = 0,
  MSTK_RESCALE_UNIT_RANGE = 1,
  MSTK_RESCALE_UNIT_VARIANCE = 2
} mstk_rescale_mode;

/* offsets/scales (dimension entries each, may be NULL) receive the affine map
 * x' = (x - offset) / scale; scale 0 marks a constant feature mapped to 0. */
MSTK_API mstk_status mstk_pointset_rescale(const mstk_pointset* ps, mstk_rescale_mode mode, mstk_pointset** out,
                                           double* offsets, double* scales);
/* Keeps only the listed feature columns, in the given order. */
MSTK_API mstk_status mstk_pointset_select(const mstk_pointset* ps, const size_t* features, size_t count,
                                          mstk_pointset** out);
/* Keeps points whose `feature` value is strictly greater than `threshold`. */
MSTK_API mstk_status mstk_pointset_cut_min(const mstk_pointset* ps, size_t feature, double threshold,
                                           mstk_pointset** out);

/* Open interval lo < x < hi; use +-INFINITY for open ends. */
typedef struct mstk_bound {
  size_t feature;
  double lo;
  double hi;
} mstk_bound;

typedef struct mstk_region {
  const mstk_bound* bounds;
  size_t bound_count;
  double inside_weight;
  double outside_weight;
} mstk_region;

MSTK_API mstk_status mstk_pointset_apply_region(const mstk_pointset* ps, const mstk_region* region,
                                                mstk_pointset** out);

/* ---- generators -------------------------------------------------------- */

typedef enum mstk_generator_kind {
  MSTK_GEN_UNIFORM_1D = 0,
  MSTK_GEN_EXPONENTIAL_1D = 1,
  MSTK_GEN_SIN2_1D = 2,
  MSTK_GEN_GRID = 3,
  MSTK_GEN_QUADRATIC_GRID = 4,
  MSTK_GEN_DISC = 5,
  MSTK_GEN_STRIP = 6,
  MSTK_GEN_DISC3D = 7
} mstk_generator_kind;

typedef enum mstk_z_distribution { MSTK_Z_UNIFORM = 0, MSTK_Z_EXPONENTIAL = 1 } mstk_z_distribution;

typedef struct mstk_generator_spec {
  mstk_generator_kind kind;
  size_t count;
  size_t cols;
  size_t rows;
  double x0;
  double y0;
  double x_extent;
  double y_extent;
  double radius;
  mstk_z_distribution z_kind;
  double z_scale;
  double sigma;
  uint64_t seed;
} mstk_generator_spec;

MSTK_API mstk_status mstk_generator_preset(const char* name, mstk_generator_spec* out);
MSTK_API size_t mstk_generator_preset_count(void);
MSTK_API const char* mstk_generator_preset_name(size_t i);
MSTK_API const char* mstk_generator_kind_name(mstk_generator_kind kind);
MSTK_API mstk_status mstk_generator_kind_parse(const char* name, mstk_generator_kind* out);
/* Independent stream seed derived from a master seed (splitmix64 mix). */
MSTK_API uint64_t mstk_derive_seed(uint64_t master, uint64_t stream);
MSTK_API mstk_status mstk_generate(const mstk_generator_spec* spec, mstk_pointset** out);
/* Labelled "background"/"signal" mixture; component count/seed are ignored. */
MSTK_API mstk_status mstk_generate_mixture(size_t count, double alpha, const mstk_generator_spec* background,
                                           const mstk_generator_spec* signal, uint64_t seed, mstk_pointset** out);

/* ---- trees ------------------------------------------------------------- */

typedef enum mstk_algorithm { MSTK_KRUSKAL = 0, MSTK_PRIM = 1 } mstk_algorithm;

typedef struct mstk_edge {
  size_t u;
  size_t v;
  double length;
  double weight;
} mstk_edge;

/* The tree keeps its own reference to the point data. */
MSTK_API mstk_status mstk_tree_build(const mstk_pointset* ps, mstk_algorithm algorithm, mstk_tree** out);
MSTK_API size_t mstk_tree_vertex_count(const mstk_tree* t);
MSTK_API size_t mstk_tree_edge_count(const mstk_tree* t);
/* Edges in canonical order: ascending length, then (u, v). */
MSTK_API mstk_status mstk_tree_edge(const mstk_tree* t, size_t i, mstk_edge* out);
MSTK_API double mstk_tree_total_length(const mstk_tree* t);
MSTK_API mstk_status mstk_tree_write(const mstk_tree* t, const char* path, const char* provenance);
/* Reads a tree file's edge list; release with mstk_edges_free. */
MSTK_API mstk_status mstk_tree_read_edges(const char* path, mstk_edge** edges, size_t* count);
MSTK_API void mstk_edges_free(mstk_edge* edges);
MSTK_API void mstk_tree_free(mstk_tree* t);

/* ---- single-tree statistics --------------------------------------------- */

typedef enum mstk_statistic {
  MSTK_STAT_EDGE_LENGTH = 0,
  MSTK_STAT_NORMALIZED_LENGTH = 1,
  MSTK_STAT_LOG_NORMALIZED_LENGTH = 2,
  MSTK_STAT_DEGREE = 3,
  MSTK_STAT_BRANCH_LENGTH = 4,
  MSTK_STAT_LOG_BRANCH_LENGTH = 5
} mstk_statistic;

typedef struct mstk_summary {
  size_t vertex_count;
  size_t edge_count;
  size_t branch_count;
  size_t skipped_zero_length;
  double total_length;
  double mean_edge_length;     /* weighted <l> */
  double mean_log_norm_length; /* mu_l */
} mstk_summary;

MSTK_API mstk_status mstk_tree_statistic(const mstk_tree* t, mstk_statistic stat, mstk_values** out);
MSTK_API mstk_status mstk_tree_summary(const mstk_tree* t, mstk_summary* out);

MSTK_API size_t mstk_values_size(const mstk_values* v);
MSTK_API const double* mstk_values_data(const mstk_values* v);
MSTK_API const double* mstk_values_weights(const mstk_values* v);
MSTK_API void mstk_values_free(mstk_values* v);

/* ---- histograms ------------------------------------------------------- */

/* fold_overflow != 0 sends values >= hi into the last bin. */
MSTK_API mstk_status mstk_histogram_create(double lo, double hi, size_t nbins, int fold_overflow,
                                           mstk_histogram** out);
MSTK_API mstk_status mstk_histogram_fill(mstk_histogram* h, const mstk_values* values);
MSTK_API mstk_status mstk_histogram_fill_value(mstk_histogram* h, double value, double weight);
MSTK_API size_t mstk_histogram_bin_count(const mstk_histogram* h);
MSTK_API double mstk_histogram_content(const mstk_histogram* h, size_t i);
MSTK_API double mstk_histogram_underflow(const mstk_histogram* h);
MSTK_API double mstk_histogram_overflow(const mstk_histogram* h);
MSTK_API double mstk_histogram_total(const mstk_histogram* h);
/* New histogram scaled to the reference total; factor_out may be NULL. */
MSTK_API mstk_status mstk_histogram_normalize_to(const mstk_histogram* h, const mstk_histogram* reference,
                                                 mstk_histogram** out, double* factor_out);
MSTK_API mstk_status mstk_histogram_normalize_by_factor(const mstk_histogram* h, double factor,
                                                        mstk_histogram** out);
MSTK_API mstk_status mstk_histogram_write(const mstk_histogram* h, const char* path, const char* provenance);
MSTK_API mstk_status mstk_histogram_read(const char* path, mstk_histogram** out);
MSTK_API void mstk_histogram_free(mstk_histogram* h);

/* ---- two-tree comparison ------------------------------------------------ */

typedef enum mstk_edge_pool { MSTK_POOL_REFERENCE = 0, MSTK_POOL_SUBJECT = 1 } mstk_edge_pool;

/* k == 0 computes connection lengths only; otherwise also ratios over the k
 * nearest pool edges. */
MSTK_API mstk_status mstk_compare(const mstk_tree* subject, const mstk_tree* reference, size_t k,
                                  mstk_edge_pool pool, mstk_comparison** out);
MSTK_API size_t mstk_comparison_size(const mstk_comparison* c);
MSTK_API size_t mstk_comparison_infinite_ratios(const mstk_comparison* c);
/* ratios != 0 selects r, else c. */
MSTK_API mstk_status mstk_comparison_values(const mstk_comparison* c, int ratios, mstk_values** out);
MSTK_API mstk_status mstk_comparison_write(const mstk_comparison* c, const char* path, const char* provenance);
MSTK_API void mstk_comparison_free(mstk_comparison* c);

/* Two-sample Kolmogorov-Smirnov on the (unweighted) values. */
MSTK_API mstk_status mstk_ks_two_sample(const mstk_values* a, const mstk_values* b, double* statistic,
                                        double* p_value);

/* ---- binned likelihood fit -------------------------------------------- */

/* Grid bins over two features; templates from background/signal samples,
 * observed counts from data (weights summed). */
MSTK_API mstk_status mstk_model_from_samples(const double* x_edges, size_t nx, const double* y_edges, size_t ny,
                                             size_t x_feature, size_t y_feature, const mstk_pointset* background,
                                             const mstk_pointset* signal, const mstk_pointset* data,
                                             mstk_model** out);
/* Same templates, observed counts total * ((1 - alpha) B + alpha S). */
MSTK_API mstk_status mstk_model_asimov(const double* x_edges, size_t nx, const double* y_edges, size_t ny,
                                       size_t x_feature, size_t y_feature, const mstk_pointset* background,
                                       const mstk_pointset* signal, double alpha, double total, mstk_model** out);
MSTK_API mstk_status mstk_model_from_arrays(const double* background, const double* signal, const double* observed,
                                            size_t nbins, mstk_model** out);
MSTK_API size_t mstk_model_bin_count(const mstk_model* m);
MSTK_API mstk_status mstk_model_bin(const mstk_model* m, size_t j, double* background, double* signal,
                                    double* observed);
MSTK_API void mstk_model_free(mstk_model* m);

typedef struct mstk_constraint {
  double mu_obs;
  double slope;
  double intercept;
  double sigma_l;
} mstk_constraint;

typedef struct mstk_calibration {
  double slope;
  double intercept;
  double slope_se;
  double intercept_se;
  double sigma_l;
  size_t sample_size;
} mstk_calibration;

/* mean_mu/sd_mu (n_alpha entries each, may be NULL) receive per-alpha
 * statistics of mu_l across trials. sample_size 0 uses the background size. */
MSTK_API mstk_status mstk_calibrate(const mstk_pointset* background, const mstk_pointset* signal,
                                    const double* alphas, size_t n_alpha, size_t trials, size_t sample_size,
                                    uint64_t seed, mstk_calibration* out, double* mean_mu, double* sd_mu);

/* constraint may be NULL (baseline fit). grid_points/curve_points 0 pick the
 * defaults (1001 / 101). */
MSTK_API mstk_status mstk_fit_alpha(const mstk_model* m, const mstk_constraint* constraint, size_t grid_points,
                                    size_t curve_points, mstk_fit** out);
MSTK_API double mstk_fit_alpha_hat(const mstk_fit* f);
/* +INFINITY when Q never rises by one unit. */
MSTK_API double mstk_fit_sigma_alpha(const mstk_fit* f);
MSTK_API double mstk_fit_q_min(const mstk_fit* f);
MSTK_API void mstk_fit_interval(const mstk_fit* f, double* lo, double* hi);
MSTK_API size_t mstk_fit_curve_size(const mstk_fit* f);
MSTK_API mstk_status mstk_fit_curve_point(const mstk_fit* f, size_t i, double* alpha, double* q);
MSTK_API void mstk_fit_free(mstk_fit* f);

MSTK_API mstk_status mstk_q_value(const mstk_model* m, const mstk_constraint* constraint, double alpha, double* out);

/* ---- plots ------------------------------------------------------------- */

/* Text arguments may be NULL. */
MSTK_API mstk_status mstk_svg_tree(const mstk_pointset* ps, const mstk_edge* edges, size_t edge_count,
                                   size_t x_axis, size_t y_axis, const char* title, const char* provenance,
                                   const char* path);
MSTK_API mstk_status mstk_svg_histograms(const mstk_histogram* const* histograms, const char* const* labels,
                                         size_t count, const char* title, const char* x_label,
                                         const char* provenance, const char* path);
MSTK_API mstk_status mstk_svg_curves(const double* const* xs, const double* const* ys, const size_t* sizes,
                                     const char* const* labels, size_t count, const char* title,
                                     const char* x_label, const char* y_label, const char* provenance,
                                     const char* path);

#ifdef __cplusplus
}
#endif

#endif /* MSTKIT_MSTKIT_H */
