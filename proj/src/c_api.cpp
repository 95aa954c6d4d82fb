#include "mstkit/mstkit.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "mstkit/analysis.hpp"
#include "mstkit/error.hpp"
#include "mstkit/geometry.hpp"
#include "mstkit/histogram.hpp"
#include "mstkit/io.hpp"
#include "mstkit/ks_test.hpp"
#include "mstkit/mst.hpp"
#include "mstkit/random.hpp"
#include "mstkit/svg.hpp"
#include "mstkit/synth.hpp"
#include "mstkit/tree_compare.hpp"
#include "mstkit/tree_stats.hpp"
#include "mstkit/version.hpp"

using namespace mstkit;

// Point data is shared with trees built from it; mutation copies first.
struct mstk_pointset {
  std::shared_ptr<PointSet> ps;
};

struct mstk_tree {
  Tree tree;
};

struct mstk_values {
  std::vector<double> values;
  std::vector<double> weights;
};

struct mstk_histogram {
  Histogram h;
};

struct mstk_comparison {
  ComparisonResult result;
};

struct mstk_model {
  BinnedModel model;
};

struct mstk_fit {
  FitResult fit;
};

namespace {

thread_local std::string g_last_error;

mstk_status set_error(mstk_status status, const char* what) {
  g_last_error = what ? what : "";
  return status;
}

template <class F>
mstk_status guarded(F&& f) noexcept {
  try {
    f();
    return MSTK_OK;
  } catch (const Error& e) {
    return set_error(static_cast<mstk_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(MSTK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(MSTK_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(MSTK_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* msg) {
  if (!ok) fail(ErrorCode::InvalidArgument, msg);
}

std::string str_or_empty(const char* s) { return s ? std::string(s) : std::string(); }

mstk_pointset* wrap(PointSet ps) { return new mstk_pointset{std::make_shared<PointSet>(std::move(ps))}; }

mstk_values* wrap(const std::vector<WeightedValue>& v) {
  auto out = std::make_unique<mstk_values>();
  out->values.reserve(v.size());
  out->weights.reserve(v.size());
  for (const auto& x : v) {
    out->values.push_back(x.value);
    out->weights.push_back(x.weight);
  }
  return out.release();
}

GeneratorSpec from_c(const mstk_generator_spec& s) {
  GeneratorSpec g;
  g.kind = static_cast<GeneratorKind>(s.kind);
  g.count = s.count;
  g.cols = s.cols;
  g.rows = s.rows;
  g.x0 = s.x0;
  g.y0 = s.y0;
  g.x_extent = s.x_extent;
  g.y_extent = s.y_extent;
  g.radius = s.radius;
  g.z_kind = static_cast<ZDistribution>(s.z_kind);
  g.z_scale = s.z_scale;
  g.sigma = s.sigma;
  g.seed = s.seed;
  return g;
}

mstk_generator_spec to_c(const GeneratorSpec& g) {
  mstk_generator_spec s{};
  s.kind = static_cast<mstk_generator_kind>(g.kind);
  s.count = g.count;
  s.cols = g.cols;
  s.rows = g.rows;
  s.x0 = g.x0;
  s.y0 = g.y0;
  s.x_extent = g.x_extent;
  s.y_extent = g.y_extent;
  s.radius = g.radius;
  s.z_kind = static_cast<mstk_z_distribution>(g.z_kind);
  s.z_scale = g.z_scale;
  s.sigma = g.sigma;
  s.seed = g.seed;
  return s;
}

void check_kind(int kind) {
  require(kind >= MSTK_GEN_UNIFORM_1D && kind <= MSTK_GEN_DISC3D, "unknown generator kind");
}

std::vector<double> values_of(const mstk_values* v) {
  require(v != nullptr, "null values handle");
  return v->values;
}

BinLayout layout_from(const double* x_edges, size_t nx, const double* y_edges, size_t ny, size_t xf, size_t yf) {
  require(x_edges != nullptr && y_edges != nullptr, "null bin edges");
  return grid_layout({x_edges, nx}, {y_edges, ny}, xf, yf);
}

std::optional<MstConstraint> constraint_from(const mstk_constraint* c) {
  if (!c) return std::nullopt;
  return MstConstraint{c->mu_obs, c->slope, c->intercept, c->sigma_l};
}

std::vector<const char*> preset_name_storage() {
  static const std::vector<std::string> names = preset_names();
  std::vector<const char*> out;
  for (const auto& n : names) out.push_back(n.c_str());
  return out;
}

}  // namespace

extern "C" {

const char* mstk_version(void) { return MSTKIT_VERSION_STRING; }

const char* mstk_last_error(void) { return g_last_error.c_str(); }

// ---- point sets ----

mstk_status mstk_pointset_create(size_t dimension, const char* const* feature_names, mstk_pointset** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    std::vector<std::string> names;
    if (feature_names) {
      for (size_t a = 0; a < dimension; ++a) {
        require(feature_names[a] != nullptr, "null feature name");
        names.emplace_back(feature_names[a]);
      }
    }
    *out = wrap(PointSet(dimension, std::move(names)));
  });
}

mstk_status mstk_pointset_add(mstk_pointset* ps, const double* coords, double weight, const char* label) {
  return guarded([&] {
    require(ps != nullptr && coords != nullptr, "null argument");
    if (ps->ps.use_count() > 1) ps->ps = std::make_shared<PointSet>(*ps->ps);
    std::optional<std::string> lab;
    if (label) lab = label;
    ps->ps->add({coords, ps->ps->dimension()}, weight, std::move(lab));
  });
}

mstk_status mstk_pointset_read(const char* path, mstk_pointset** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = wrap(read_events_file(path));
  });
}

mstk_status mstk_pointset_write(const mstk_pointset* ps, const char* path, const char* provenance) {
  return guarded([&] {
    require(ps != nullptr && path != nullptr, "null argument");
    write_events_file(path, *ps->ps, str_or_empty(provenance));
  });
}

size_t mstk_pointset_size(const mstk_pointset* ps) { return ps ? ps->ps->size() : 0; }

size_t mstk_pointset_dimension(const mstk_pointset* ps) { return ps ? ps->ps->dimension() : 0; }

mstk_status mstk_pointset_point(const mstk_pointset* ps, size_t i, double* coords_out, double* weight_out) {
  return guarded([&] {
    require(ps != nullptr, "null point set");
    require(i < ps->ps->size(), "point index out of range");
    if (coords_out) {
      auto c = ps->ps->coords(i);
      std::copy(c.begin(), c.end(), coords_out);
    }
    if (weight_out) *weight_out = ps->ps->weight(i);
  });
}

const char* mstk_pointset_label(const mstk_pointset* ps, size_t i) {
  if (!ps || i >= ps->ps->size()) return nullptr;
  const auto& lab = ps->ps->label(i);
  return lab ? lab->c_str() : nullptr;
}

const char* mstk_pointset_feature_name(const mstk_pointset* ps, size_t axis) {
  if (!ps || axis >= ps->ps->dimension()) return nullptr;
  const auto& names = ps->ps->feature_names();
  if (!names.empty()) return names[axis].c_str();
  thread_local std::string fallback;
  fallback = ps->ps->feature_name(axis);
  return fallback.c_str();
}

mstk_status mstk_pointset_feature_index(const mstk_pointset* ps, const char* name, size_t* out) {
  return guarded([&] {
    require(ps != nullptr && name != nullptr && out != nullptr, "null argument");
    auto idx = ps->ps->feature_index(name);
    if (!idx) fail(ErrorCode::InvalidArgument, std::string("unknown feature '") + name + "'");
    *out = *idx;
  });
}

void mstk_pointset_free(mstk_pointset* ps) { delete ps; }

mstk_status mstk_pointset_rescale(const mstk_pointset* ps, mstk_rescale_mode mode, mstk_pointset** out,
                                  double* offsets, double* scales) {
  return guarded([&] {
    require(ps != nullptr && out != nullptr, "null argument");
    require(mode >= MSTK_RESCALE_NONE && mode <= MSTK_RESCALE_UNIT_VARIANCE, "unknown rescale mode");
    auto r = rescale_features(*ps->ps, static_cast<RescaleMode>(mode));
    for (size_t a = 0; a < r.maps.size(); ++a) {
      if (offsets) offsets[a] = r.maps[a].offset;
      if (scales) scales[a] = r.maps[a].scale;
    }
    *out = wrap(std::move(r.points));
  });
}

mstk_status mstk_pointset_select(const mstk_pointset* ps, const size_t* features, size_t count,
                                 mstk_pointset** out) {
  return guarded([&] {
    require(ps != nullptr && features != nullptr && out != nullptr, "null argument");
    *out = wrap(select_features(*ps->ps, {features, count}));
  });
}

mstk_status mstk_pointset_cut_min(const mstk_pointset* ps, size_t feature, double threshold, mstk_pointset** out) {
  return guarded([&] {
    require(ps != nullptr && out != nullptr, "null argument");
    *out = wrap(cut_min(*ps->ps, feature, threshold));
  });
}

mstk_status mstk_pointset_apply_region(const mstk_pointset* ps, const mstk_region* region, mstk_pointset** out) {
  return guarded([&] {
    require(ps != nullptr && region != nullptr && out != nullptr, "null argument");
    require(region->bound_count == 0 || region->bounds != nullptr, "null bounds");
    RegionWeight rw;
    rw.inside_weight = region->inside_weight;
    rw.outside_weight = region->outside_weight;
    for (size_t i = 0; i < region->bound_count; ++i) {
      const auto& b = region->bounds[i];
      rw.box.push_back({b.feature, b.lo, b.hi});
    }
    *out = wrap(apply_region_weights(*ps->ps, rw));
  });
}

// ---- generators ----

mstk_status mstk_generator_preset(const char* name, mstk_generator_spec* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    auto p = preset(name);
    if (!p) fail(ErrorCode::InvalidArgument, std::string("unknown preset '") + name + "'");
    *out = to_c(*p);
  });
}

size_t mstk_generator_preset_count(void) { return preset_name_storage().size(); }

const char* mstk_generator_preset_name(size_t i) {
  auto names = preset_name_storage();
  return i < names.size() ? names[i] : nullptr;
}

const char* mstk_generator_kind_name(mstk_generator_kind kind) {
  if (kind < MSTK_GEN_UNIFORM_1D || kind > MSTK_GEN_DISC3D) return nullptr;
  return to_string(static_cast<GeneratorKind>(kind));
}

mstk_status mstk_generator_kind_parse(const char* name, mstk_generator_kind* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    auto k = parse_generator_kind(name);
    if (!k) fail(ErrorCode::InvalidArgument, std::string("unknown generator kind '") + name + "'");
    *out = static_cast<mstk_generator_kind>(*k);
  });
}

uint64_t mstk_derive_seed(uint64_t master, uint64_t stream) { return derive_seed(master, stream); }

mstk_status mstk_generate(const mstk_generator_spec* spec, mstk_pointset** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    check_kind(spec->kind);
    *out = wrap(generate(from_c(*spec)));
  });
}

mstk_status mstk_generate_mixture(size_t count, double alpha, const mstk_generator_spec* background,
                                  const mstk_generator_spec* signal, uint64_t seed, mstk_pointset** out) {
  return guarded([&] {
    require(background != nullptr && signal != nullptr && out != nullptr, "null argument");
    check_kind(background->kind);
    check_kind(signal->kind);
    *out = wrap(gen_two_component(count, alpha, from_c(*background), from_c(*signal), seed));
  });
}

// ---- trees ----

mstk_status mstk_tree_build(const mstk_pointset* ps, mstk_algorithm algorithm, mstk_tree** out) {
  return guarded([&] {
    require(ps != nullptr && out != nullptr, "null argument");
    require(algorithm == MSTK_KRUSKAL || algorithm == MSTK_PRIM, "unknown algorithm");
    auto algo = algorithm == MSTK_PRIM ? MstAlgorithm::Prim : MstAlgorithm::Kruskal;
    *out = new mstk_tree{build_mst(ps->ps, algo)};
  });
}

size_t mstk_tree_vertex_count(const mstk_tree* t) { return t ? t->tree.vertex_count() : 0; }

size_t mstk_tree_edge_count(const mstk_tree* t) { return t ? t->tree.edge_count() : 0; }

mstk_status mstk_tree_edge(const mstk_tree* t, size_t i, mstk_edge* out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    require(i < t->tree.edge_count(), "edge index out of range");
    const Edge& e = t->tree.edges()[i];
    *out = {e.u, e.v, e.length, e.weight};
  });
}

double mstk_tree_total_length(const mstk_tree* t) { return t ? tree_total_length(t->tree) : 0.0; }

mstk_status mstk_tree_write(const mstk_tree* t, const char* path, const char* provenance) {
  return guarded([&] {
    require(t != nullptr && path != nullptr, "null argument");
    write_tree_file(path, t->tree, str_or_empty(provenance));
  });
}

mstk_status mstk_tree_read_edges(const char* path, mstk_edge** edges, size_t* count) {
  return guarded([&] {
    require(path != nullptr && edges != nullptr && count != nullptr, "null argument");
    auto es = read_tree_file(path);
    auto buf = std::make_unique<mstk_edge[]>(es.size() == 0 ? 1 : es.size());
    for (size_t i = 0; i < es.size(); ++i) buf[i] = {es[i].u, es[i].v, es[i].length, es[i].weight};
    *count = es.size();
    *edges = buf.release();
  });
}

void mstk_edges_free(mstk_edge* edges) { delete[] edges; }

void mstk_tree_free(mstk_tree* t) { delete t; }

// ---- statistics ----

mstk_status mstk_tree_statistic(const mstk_tree* t, mstk_statistic stat, mstk_values** out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    switch (stat) {
      case MSTK_STAT_EDGE_LENGTH: *out = wrap(edge_lengths(t->tree)); return;
      case MSTK_STAT_NORMALIZED_LENGTH: *out = wrap(normalized_lengths(t->tree)); return;
      case MSTK_STAT_LOG_NORMALIZED_LENGTH: *out = wrap(log_normalized_lengths(t->tree)); return;
      case MSTK_STAT_DEGREE: *out = wrap(degrees(t->tree)); return;
      case MSTK_STAT_BRANCH_LENGTH: *out = wrap(branch_lengths(extract_branches(t->tree))); return;
      case MSTK_STAT_LOG_BRANCH_LENGTH: *out = wrap(log_branch_lengths(extract_branches(t->tree))); return;
    }
    fail(ErrorCode::InvalidArgument, "unknown statistic");
  });
}

mstk_status mstk_tree_summary(const mstk_tree* t, mstk_summary* out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    auto s = summarize(t->tree);
    out->vertex_count = t->tree.vertex_count();
    out->edge_count = s.edge_count;
    out->branch_count = s.branch_count;
    out->skipped_zero_length = s.skipped_zero_length;
    out->total_length = s.total_length;
    out->mean_edge_length = s.mean_edge_length;
    out->mean_log_norm_length = s.mean_log_norm_length;
  });
}

size_t mstk_values_size(const mstk_values* v) { return v ? v->values.size() : 0; }

const double* mstk_values_data(const mstk_values* v) { return v ? v->values.data() : nullptr; }

const double* mstk_values_weights(const mstk_values* v) { return v ? v->weights.data() : nullptr; }

void mstk_values_free(mstk_values* v) { delete v; }

// ---- histograms ----

mstk_status mstk_histogram_create(double lo, double hi, size_t nbins, int fold_overflow, mstk_histogram** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new mstk_histogram{Histogram(lo, hi, nbins, fold_overflow != 0)};
  });
}

mstk_status mstk_histogram_fill(mstk_histogram* h, const mstk_values* values) {
  return guarded([&] {
    require(h != nullptr && values != nullptr, "null argument");
    // Validate first so a bad entry leaves the histogram untouched.
    Histogram copy = h->h;
    for (size_t i = 0; i < values->values.size(); ++i) copy.fill(values->values[i], values->weights[i]);
    h->h = std::move(copy);
  });
}

mstk_status mstk_histogram_fill_value(mstk_histogram* h, double value, double weight) {
  return guarded([&] {
    require(h != nullptr, "null histogram");
    h->h.fill(value, weight);
  });
}

size_t mstk_histogram_bin_count(const mstk_histogram* h) { return h ? h->h.bin_count() : 0; }

double mstk_histogram_content(const mstk_histogram* h, size_t i) {
  return h && i < h->h.bin_count() ? h->h.content(i) : 0.0;
}

double mstk_histogram_underflow(const mstk_histogram* h) { return h ? h->h.underflow() : 0.0; }

double mstk_histogram_overflow(const mstk_histogram* h) { return h ? h->h.overflow() : 0.0; }

double mstk_histogram_total(const mstk_histogram* h) { return h ? h->h.total() : 0.0; }

mstk_status mstk_histogram_normalize_to(const mstk_histogram* h, const mstk_histogram* reference,
                                        mstk_histogram** out, double* factor_out) {
  return guarded([&] {
    require(h != nullptr && reference != nullptr && out != nullptr, "null argument");
    double f = normalization_factor(h->h, reference->h);
    auto res = std::make_unique<mstk_histogram>(mstk_histogram{normalize_by_factor(h->h, f)});
    if (factor_out) *factor_out = f;
    *out = res.release();
  });
}

mstk_status mstk_histogram_normalize_by_factor(const mstk_histogram* h, double factor, mstk_histogram** out) {
  return guarded([&] {
    require(h != nullptr && out != nullptr, "null argument");
    *out = new mstk_histogram{normalize_by_factor(h->h, factor)};
  });
}

mstk_status mstk_histogram_write(const mstk_histogram* h, const char* path, const char* provenance) {
  return guarded([&] {
    require(h != nullptr && path != nullptr, "null argument");
    write_histogram_file(path, h->h, str_or_empty(provenance));
  });
}

mstk_status mstk_histogram_read(const char* path, mstk_histogram** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new mstk_histogram{read_histogram_file(path)};
  });
}

void mstk_histogram_free(mstk_histogram* h) { delete h; }

// ---- comparison ----

mstk_status mstk_compare(const mstk_tree* subject, const mstk_tree* reference, size_t k, mstk_edge_pool pool,
                         mstk_comparison** out) {
  return guarded([&] {
    require(subject != nullptr && reference != nullptr && out != nullptr, "null argument");
    require(pool == MSTK_POOL_REFERENCE || pool == MSTK_POOL_SUBJECT, "unknown edge pool");
    auto p = pool == MSTK_POOL_SUBJECT ? EdgePool::Subject : EdgePool::Reference;
    ComparisonResult r = k == 0 ? connection_lengths(subject->tree, reference->tree)
                                : connection_ratios(subject->tree, reference->tree, k, p);
    *out = new mstk_comparison{std::move(r)};
  });
}

size_t mstk_comparison_size(const mstk_comparison* c) { return c ? c->result.records.size() : 0; }

size_t mstk_comparison_infinite_ratios(const mstk_comparison* c) { return c ? c->result.infinite_ratios : 0; }

mstk_status mstk_comparison_values(const mstk_comparison* c, int ratios, mstk_values** out) {
  return guarded([&] {
    require(c != nullptr && out != nullptr, "null argument");
    *out = wrap(ratios ? connection_ratio_values(c->result) : connection_length_values(c->result));
  });
}

mstk_status mstk_comparison_write(const mstk_comparison* c, const char* path, const char* provenance) {
  return guarded([&] {
    require(c != nullptr && path != nullptr, "null argument");
    write_comparison_file(path, c->result, str_or_empty(provenance));
  });
}

void mstk_comparison_free(mstk_comparison* c) { delete c; }

mstk_status mstk_ks_two_sample(const mstk_values* a, const mstk_values* b, double* statistic, double* p_value) {
  return guarded([&] {
    auto r = ks_test(values_of(a), values_of(b));
    if (statistic) *statistic = r.statistic;
    if (p_value) *p_value = r.p_value;
  });
}

// ---- binned fit ----

mstk_status mstk_model_from_samples(const double* x_edges, size_t nx, const double* y_edges, size_t ny,
                                    size_t x_feature, size_t y_feature, const mstk_pointset* background,
                                    const mstk_pointset* signal, const mstk_pointset* data, mstk_model** out) {
  return guarded([&] {
    require(background != nullptr && signal != nullptr && data != nullptr && out != nullptr, "null argument");
    auto layout = layout_from(x_edges, nx, y_edges, ny, x_feature, y_feature);
    *out = new mstk_model{make_binned_model(layout, *background->ps, *signal->ps, *data->ps)};
  });
}

mstk_status mstk_model_asimov(const double* x_edges, size_t nx, const double* y_edges, size_t ny, size_t x_feature,
                              size_t y_feature, const mstk_pointset* background, const mstk_pointset* signal,
                              double alpha, double total, mstk_model** out) {
  return guarded([&] {
    require(background != nullptr && signal != nullptr && out != nullptr, "null argument");
    auto layout = layout_from(x_edges, nx, y_edges, ny, x_feature, y_feature);
    *out = new mstk_model{make_asimov_model(bin_contents(layout, *background->ps), bin_contents(layout, *signal->ps),
                                            alpha, total)};
  });
}

mstk_status mstk_model_from_arrays(const double* background, const double* signal, const double* observed,
                                   size_t nbins, mstk_model** out) {
  return guarded([&] {
    require(background != nullptr && signal != nullptr && observed != nullptr && out != nullptr, "null argument");
    BinnedModel m{{background, background + nbins}, {signal, signal + nbins}, {observed, observed + nbins}};
    m.validate();
    *out = new mstk_model{std::move(m)};
  });
}

size_t mstk_model_bin_count(const mstk_model* m) { return m ? m->model.bin_count() : 0; }

mstk_status mstk_model_bin(const mstk_model* m, size_t j, double* background, double* signal, double* observed) {
  return guarded([&] {
    require(m != nullptr, "null model");
    require(j < m->model.bin_count(), "bin index out of range");
    if (background) *background = m->model.background[j];
    if (signal) *signal = m->model.signal[j];
    if (observed) *observed = m->model.observed[j];
  });
}

void mstk_model_free(mstk_model* m) { delete m; }

mstk_status mstk_calibrate(const mstk_pointset* background, const mstk_pointset* signal, const double* alphas,
                           size_t n_alpha, size_t trials, size_t sample_size, uint64_t seed, mstk_calibration* out,
                           double* mean_mu, double* sd_mu) {
  return guarded([&] {
    require(background != nullptr && signal != nullptr && alphas != nullptr && out != nullptr, "null argument");
    CalibrationOptions opt;
    opt.alphas.assign(alphas, alphas + n_alpha);
    opt.trials = trials;
    opt.sample_size = sample_size;
    opt.seed = seed;
    auto cal = calibrate_mu_vs_alpha(*background->ps, *signal->ps, opt);
    *out = {cal.slope, cal.intercept, cal.slope_se, cal.intercept_se, cal.sigma_l, cal.sample_size};
    for (size_t i = 0; i < cal.alphas.size(); ++i) {
      if (mean_mu) mean_mu[i] = cal.mean_mu[i];
      if (sd_mu) sd_mu[i] = cal.sd_mu[i];
    }
  });
}

mstk_status mstk_fit_alpha(const mstk_model* m, const mstk_constraint* constraint, size_t grid_points,
                           size_t curve_points, mstk_fit** out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    AlphaScan scan;
    if (grid_points) scan.grid_points = grid_points;
    if (curve_points) scan.curve_points = curve_points;
    *out = new mstk_fit{fit_alpha(m->model, constraint_from(constraint), scan)};
  });
}

double mstk_fit_alpha_hat(const mstk_fit* f) { return f ? f->fit.alpha_hat : 0.0; }

double mstk_fit_sigma_alpha(const mstk_fit* f) { return f ? f->fit.sigma_alpha : kInf; }

double mstk_fit_q_min(const mstk_fit* f) { return f ? f->fit.q_min : 0.0; }

void mstk_fit_interval(const mstk_fit* f, double* lo, double* hi) {
  if (!f) return;
  if (lo) *lo = f->fit.interval_lo;
  if (hi) *hi = f->fit.interval_hi;
}

size_t mstk_fit_curve_size(const mstk_fit* f) { return f ? f->fit.q_curve.size() : 0; }

mstk_status mstk_fit_curve_point(const mstk_fit* f, size_t i, double* alpha, double* q) {
  return guarded([&] {
    require(f != nullptr, "null fit");
    require(i < f->fit.q_curve.size(), "curve index out of range");
    if (alpha) *alpha = f->fit.q_curve[i].first;
    if (q) *q = f->fit.q_curve[i].second;
  });
}

void mstk_fit_free(mstk_fit* f) { delete f; }

mstk_status mstk_q_value(const mstk_model* m, const mstk_constraint* constraint, double alpha, double* out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    auto c = constraint_from(constraint);
    *out = q_value(m->model, c ? &*c : nullptr, alpha);
  });
}

// ---- plots ----

mstk_status mstk_svg_tree(const mstk_pointset* ps, const mstk_edge* edges, size_t edge_count, size_t x_axis,
                          size_t y_axis, const char* title, const char* provenance, const char* path) {
  return guarded([&] {
    require(ps != nullptr && path != nullptr, "null argument");
    require(edge_count == 0 || edges != nullptr, "null edges");
    std::vector<Edge> es;
    es.reserve(edge_count);
    for (size_t i = 0; i < edge_count; ++i) {
      require(edges[i].u < ps->ps->size() && edges[i].v < ps->ps->size(), "edge vertex out of range");
      es.push_back({edges[i].u, edges[i].v, edges[i].length, edges[i].weight});
    }
    SvgOptions opt;
    opt.title = str_or_empty(title);
    opt.provenance = str_or_empty(provenance);
    opt.x_label = ps->ps->feature_name(std::min(x_axis, ps->ps->dimension() - 1));
    opt.y_label = ps->ps->feature_name(std::min(y_axis, ps->ps->dimension() - 1));
    write_text_file(path, render_tree_svg(*ps->ps, es, x_axis, y_axis, opt));
  });
}

mstk_status mstk_svg_histograms(const mstk_histogram* const* histograms, const char* const* labels, size_t count,
                                const char* title, const char* x_label, const char* provenance, const char* path) {
  return guarded([&] {
    require(path != nullptr, "null path");
    require(count == 0 || histograms != nullptr, "null histograms");
    std::vector<HistogramSeries> series;
    for (size_t i = 0; i < count; ++i) {
      require(histograms[i] != nullptr, "null histogram");
      series.push_back({labels ? str_or_empty(labels[i]) : std::string(), histograms[i]->h});
    }
    SvgOptions opt;
    opt.title = str_or_empty(title);
    opt.x_label = str_or_empty(x_label);
    opt.y_label = "entries";
    opt.provenance = str_or_empty(provenance);
    write_text_file(path, render_histograms_svg(series, opt));
  });
}

mstk_status mstk_svg_curves(const double* const* xs, const double* const* ys, const size_t* sizes,
                            const char* const* labels, size_t count, const char* title, const char* x_label,
                            const char* y_label, const char* provenance, const char* path) {
  return guarded([&] {
    require(path != nullptr, "null path");
    require(count == 0 || (xs != nullptr && ys != nullptr && sizes != nullptr), "null curve data");
    std::vector<CurveSeries> series;
    for (size_t i = 0; i < count; ++i) {
      CurveSeries s;
      s.label = labels ? str_or_empty(labels[i]) : std::string();
      for (size_t j = 0; j < sizes[i]; ++j) s.points.emplace_back(xs[i][j], ys[i][j]);
      series.push_back(std::move(s));
    }
    SvgOptions opt;
    opt.title = str_or_empty(title);
    opt.x_label = str_or_empty(x_label);
    opt.y_label = str_or_empty(y_label);
    opt.provenance = str_or_empty(provenance);
    write_text_file(path, render_curves_svg(series, opt));
  });
}

}  // extern "C"
