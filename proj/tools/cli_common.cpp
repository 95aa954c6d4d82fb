#include "cli_common.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

namespace cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> to_vector(const mstk_values* v) {
  const double* d = mstk_values_data(v);
  return {d, d + mstk_values_size(v)};
}

mstk_edge_pool parse_pool(const std::string& s) {
  if (s == "reference") return MSTK_POOL_REFERENCE;
  if (s == "subject") return MSTK_POOL_SUBJECT;
  usage_error("unknown edge pool '" + s + "' (expected reference or subject)");
}

mstk_rescale_mode parse_rescale(const std::string& s) {
  if (s == "none") return MSTK_RESCALE_NONE;
  if (s == "unit-range") return MSTK_RESCALE_UNIT_RANGE;
  if (s == "unit-variance") return MSTK_RESCALE_UNIT_VARIANCE;
  usage_error("unknown rescale mode '" + s + "' (expected none, unit-range or unit-variance)");
}

double bound_value(const json& j, const char* key, double fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  return j[key].get<double>();
}

// Nearest-rank percentile of the finite values.
double percentile(std::vector<double> v, double q) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return !std::isfinite(x); }), v.end());
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

double finite_mean(const std::vector<double>& v) {
  double s = 0.0;
  std::size_t n = 0;
  for (double x : v) {
    if (std::isfinite(x)) {
      s += x;
      ++n;
    }
  }
  return n ? s / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
}

const std::map<std::string, mstk_statistic>& statistic_keys() {
  static const std::map<std::string, mstk_statistic> keys = {
      {"length", MSTK_STAT_EDGE_LENGTH},
      {"norm_length", MSTK_STAT_NORMALIZED_LENGTH},
      {"log_norm_length", MSTK_STAT_LOG_NORMALIZED_LENGTH},
      {"degree", MSTK_STAT_DEGREE},
      {"branch_length", MSTK_STAT_BRANCH_LENGTH},
      {"log_branch_length", MSTK_STAT_LOG_BRANCH_LENGTH},
  };
  return keys;
}

void write_histogram_svg(const Context& ctx, const std::string& file, const mstk_histogram* h,
                         const std::string& label, const std::string& title) {
  const mstk_histogram* hs[] = {h};
  const char* labels[] = {label.c_str()};
  const std::string prov = ctx.provenance();
  check(mstk_svg_histograms(hs, labels, 1, title.c_str(), label.c_str(), prov.c_str(), ctx.path(file).c_str()));
}

}  // namespace

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, x >>= 4) out[static_cast<std::size_t>(i)] = digits[x & 0xf];
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

json num(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(MSTK_ERR_IO, "cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw CliError(MSTK_ERR_IO, "write to '" + path.string() + "' failed");
}

std::string Context::provenance() const {
  return std::string("mstkit ") + mstk_version() + " seed=" + std::to_string(seed) + " config=" + config_hash;
}

std::string Context::path(const std::string& file) const { return (out_dir / file).string(); }

void Context::write_json(const std::string& file, json j) const { write_file(path(file), j.dump(2) + "\n"); }

json load_config(const std::string& path, const std::string& section) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(MSTK_ERR_IO, "cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw CliError(MSTK_ERR_PARSE, "config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw CliError(MSTK_ERR_PARSE, "config '" + path + "' must be a JSON object");
  if (doc.contains(section) && doc[section].is_object()) {
    json sec = doc[section];
    // Shared top-level keys apply unless the section overrides them.
    for (const char* key : {"seed", "output_dir"}) {
      if (doc.contains(key) && !sec.contains(key)) sec[key] = doc[key];
    }
    return sec;
  }
  return doc;
}

Context finalize_config(json& effective, const std::string& command, const std::string& out_dir_flag) {
  std::string out = out_dir_flag;
  if (out.empty() && effective.contains("output_dir") && effective["output_dir"].is_string())
    out = effective["output_dir"].get<std::string>();
  effective.erase("output_dir");
  if (out.empty()) {
    if (const char* env = std::getenv("MSTKIT_OUTPUT_DIR"); env && *env) out = env;
  }
  if (out.empty()) out = ".";

  Context ctx;
  ctx.out_dir = out;
  if (effective.contains("output")) {
    if (effective["output"].is_string()) ctx.output = effective["output"].get<std::string>();
    effective.erase("output");
  }
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec) throw CliError(MSTK_ERR_IO, "cannot create output directory '" + out + "': " + ec.message());

  if (!effective.contains("seed")) effective["seed"] = 0;
  ctx.seed = effective["seed"].get<std::uint64_t>();
  effective["command"] = command;
  ctx.config_hash = hex64(fnv1a64(effective.dump()));

  std::cout << effective.dump(2) << "\n";
  ctx.write_json(command + ".config.json",
                 {{"config", effective}, {"config_hash", ctx.config_hash}, {"provenance", ctx.provenance()}});
  return ctx;
}

// ---- inputs ----

mstk_generator_spec generator_spec(const json& j, std::uint64_t fallback_seed) {
  mstk_generator_spec s{};
  s.count = 1;
  s.z_scale = 1.0;
  if (j.contains("preset")) {
    check(mstk_generator_preset(j["preset"].get<std::string>().c_str(), &s));
  } else if (!j.contains("kind")) {
    usage_error("generator spec needs \"preset\" or \"kind\"");
  }
  if (j.contains("kind")) check(mstk_generator_kind_parse(j["kind"].get<std::string>().c_str(), &s.kind));
  auto set = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
  };
  set("count", s.count);
  set("cols", s.cols);
  set("rows", s.rows);
  set("x0", s.x0);
  set("y0", s.y0);
  set("x_extent", s.x_extent);
  set("y_extent", s.y_extent);
  set("radius", s.radius);
  set("z_scale", s.z_scale);
  set("sigma", s.sigma);
  if (j.contains("z")) {
    const auto z = j["z"].get<std::string>();
    if (z == "uniform") {
      s.z_kind = MSTK_Z_UNIFORM;
    } else if (z == "exponential") {
      s.z_kind = MSTK_Z_EXPONENTIAL;
    } else {
      usage_error("unknown z distribution '" + z + "'");
    }
  }
  s.seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : fallback_seed;
  return s;
}

std::size_t feature_index(const mstk_pointset* ps, const json& feature) {
  if (feature.is_number_unsigned()) {
    auto idx = feature.get<std::size_t>();
    if (idx >= mstk_pointset_dimension(ps)) usage_error("feature index " + std::to_string(idx) + " out of range");
    return idx;
  }
  std::size_t idx = 0;
  check(mstk_pointset_feature_index(ps, feature.get<std::string>().c_str(), &idx));
  return idx;
}

Input load_input(const json& spec, const std::string& default_name, std::uint64_t master_seed) {
  const json s = spec.is_string() ? json{{"file", spec}} : spec;
  if (!s.is_object()) usage_error("input spec must be a file path or an object");

  Input in;
  in.name = s.value("name", std::string());
  if (s.contains("file")) {
    const auto path = s["file"].get<std::string>();
    if (in.name.empty()) in.name = std::filesystem::path(path).stem().string();
    in.points = make<PointSetPtr>(mstk_pointset_read, path.c_str());
  } else if (s.contains("mixture")) {
    if (in.name.empty()) in.name = default_name;
    const json& m = s["mixture"];
    const auto bg = generator_spec(m.at("background"), 0);
    const auto sig = generator_spec(m.at("signal"), 0);
    const std::uint64_t seed =
        m.contains("seed") ? m["seed"].get<std::uint64_t>() : mstk_derive_seed(master_seed, fnv1a64(in.name));
    in.points = make<PointSetPtr>(mstk_generate_mixture, m.at("count").get<std::size_t>(),
                                  m.at("alpha").get<double>(), &bg, &sig, seed);
  } else {
    if (in.name.empty()) in.name = s.contains("preset") ? s["preset"].get<std::string>() : default_name;
    const auto g = generator_spec(s, mstk_derive_seed(master_seed, fnv1a64(in.name)));
    in.points = make<PointSetPtr>(mstk_generate, &g);
  }

  if (s.contains("cut")) {
    const json& c = s["cut"];
    const auto fname = c.at("feature").get<std::string>();
    std::size_t idx = 0;
    if (mstk_pointset_feature_index(in.points.get(), fname.c_str(), &idx) == MSTK_OK) {
      in.points = make<PointSetPtr>(mstk_pointset_cut_min, in.points.get(), idx, c.at("min").get<double>());
    } else {
      std::cerr << "warning: cut feature '" << fname << "' not present in " << in.name << "; cut skipped\n";
    }
  }
  if (s.contains("region")) {
    const json& r = s["region"];
    std::vector<mstk_bound> bounds;
    for (const auto& b : r.at("bounds")) {
      bounds.push_back({feature_index(in.points.get(), b.at("feature")), bound_value(b, "lo", -kInf),
                        bound_value(b, "hi", kInf)});
    }
    const mstk_region region{bounds.data(), bounds.size(), r.value("inside_weight", 0.0),
                             r.value("outside_weight", 1.0)};
    in.points = make<PointSetPtr>(mstk_pointset_apply_region, in.points.get(), &region);
  }
  if (s.contains("features")) {
    std::vector<std::size_t> idx;
    for (const auto& f : s["features"]) idx.push_back(feature_index(in.points.get(), f));
    in.points = make<PointSetPtr>(mstk_pointset_select, in.points.get(), idx.data(), idx.size());
  }
  if (s.contains("rescale")) {
    const auto mode = parse_rescale(s["rescale"].get<std::string>());
    mstk_pointset* out = nullptr;
    check(mstk_pointset_rescale(in.points.get(), mode, &out, nullptr, nullptr));
    in.points.reset(out);
  }
  return in;
}

// ---- pipeline stages ----

TreePtr build_tree(const mstk_pointset* ps, const std::string& algorithm) {
  mstk_algorithm algo = MSTK_KRUSKAL;
  if (algorithm == "prim") {
    algo = MSTK_PRIM;
  } else if (algorithm != "kruskal") {
    usage_error("unknown algorithm '" + algorithm + "' (expected kruskal or prim)");
  }
  return make<TreePtr>(mstk_tree_build, ps, algo);
}

json stats_histogram_defaults() {
  return {
      {"length", {{"bins", 50}, {"lo", 0.0}, {"hi", "auto"}}},
      {"norm_length", {{"bins", 50}, {"lo", 0.0}, {"hi", 5.0}}},
      {"log_norm_length", {{"bins", 45}, {"lo", -6.0}, {"hi", 3.0}}},
      {"degree", {{"bins", 10}, {"lo", 0.0}, {"hi", 10.0}}},
      {"branch_length", {{"bins", 50}, {"lo", 0.0}, {"hi", "auto"}}},
      {"log_branch_length", {{"bins", 50}, {"lo", "auto"}, {"hi", "auto"}}},
  };
}

json compare_histogram_defaults() {
  return {
      {"c", {{"bins", 50}, {"lo", 0.0}, {"hi", "auto"}}},
      {"r", {{"bins", 50}, {"lo", 0.0}, {"hi", 10.0}}},
  };
}

HistogramPtr make_histogram(const mstk_values* values, const json& hcfg) {
  const auto v = to_vector(values);
  double mn = kInf, mx = -kInf;
  for (double x : v) {
    if (std::isfinite(x)) {
      mn = std::min(mn, x);
      mx = std::max(mx, x);
    }
  }
  if (mn > mx) {
    mn = 0.0;
    mx = 1.0;
  }
  auto edge = [&](const char* key, double automatic) {
    if (!hcfg.contains(key) || (hcfg[key].is_string() && hcfg[key].get<std::string>() == "auto")) return automatic;
    return hcfg[key].get<double>();
  };
  const double lo = edge("lo", mn);
  double hi = edge("hi", mx);
  if (!(hi > lo)) hi = lo + 1.0;
  auto h = make<HistogramPtr>(mstk_histogram_create, lo, hi, hcfg.value("bins", std::size_t{50}),
                              hcfg.value("overflow", true) ? 1 : 0);
  check(mstk_histogram_fill(h.get(), values));
  return h;
}

json write_tree_outputs(const Context& ctx, const std::string& name, const mstk_tree* tree) {
  const std::string prov = ctx.provenance();
  check(mstk_tree_write(tree, ctx.path(name + ".tree.csv").c_str(), prov.c_str()));

  mstk_summary s{};
  check(mstk_tree_summary(tree, &s));
  auto deg = make<ValuesPtr>(mstk_tree_statistic, tree, MSTK_STAT_DEGREE);
  std::map<long, double> degree_weight;
  for (std::size_t i = 0; i < mstk_values_size(deg.get()); ++i)
    degree_weight[std::lround(mstk_values_data(deg.get())[i])] += mstk_values_weights(deg.get())[i];
  json dj = json::object();
  for (const auto& [d, w] : degree_weight) dj[std::to_string(d)] = w;

  json j = {{"provenance", prov},
            {"name", name},
            {"vertices", s.vertex_count},
            {"edges", s.edge_count},
            {"branches", s.branch_count},
            {"total_length", num(s.total_length)},
            {"mean_edge_length", num(s.mean_edge_length)},
            {"mu_l", num(s.mean_log_norm_length)},
            {"skipped_zero_length", s.skipped_zero_length},
            {"degree_weight", dj}};
  ctx.write_json(name + ".summary.json", j);
  return j;
}

std::map<std::string, HistogramPtr> write_stat_histograms(const Context& ctx, const std::string& name,
                                                          const mstk_tree* tree, const json& histograms, bool plot) {
  std::map<std::string, HistogramPtr> out;
  const std::string prov = ctx.provenance();
  for (const auto& [key, hcfg] : histograms.items()) {
    const auto it = statistic_keys().find(key);
    if (it == statistic_keys().end()) usage_error("unknown statistic '" + key + "'");
    if (hcfg.is_null()) continue;
    auto values = make<ValuesPtr>(mstk_tree_statistic, tree, it->second);
    auto h = make_histogram(values.get(), hcfg);
    check(mstk_histogram_write(h.get(), ctx.path(name + "." + key + ".csv").c_str(), prov.c_str()));
    if (plot) write_histogram_svg(ctx, name + "." + key + ".svg", h.get(), key, name);
    out.emplace(key, std::move(h));
  }
  return out;
}

void write_tree_svg(const Context& ctx, const std::string& name, const mstk_pointset* ps, const mstk_tree* tree) {
  if (mstk_pointset_dimension(ps) < 2) return;
  std::vector<mstk_edge> edges(mstk_tree_edge_count(tree));
  for (std::size_t i = 0; i < edges.size(); ++i) check(mstk_tree_edge(tree, i, &edges[i]));
  const std::string prov = ctx.provenance();
  check(mstk_svg_tree(ps, edges.data(), edges.size(), 0, 1, name.c_str(), prov.c_str(),
                      ctx.path(name + ".tree.svg").c_str()));
}

json run_comparison(const Context& ctx, const std::string& subject, const mstk_tree* subject_tree,
                    const std::string& reference, const mstk_tree* reference_tree, std::size_t k,
                    const std::string& pool, const json& histograms, bool plot, ValuesPtr* c_values) {
  if (k == 0) usage_error("k must be at least 1");
  auto cmp = make<ComparisonPtr>(mstk_compare, subject_tree, reference_tree, k, parse_pool(pool));
  const std::string stem = subject + "_to_" + reference;
  const std::string prov = ctx.provenance();
  check(mstk_comparison_write(cmp.get(), ctx.path(stem + ".compare.csv").c_str(), prov.c_str()));

  auto c = make<ValuesPtr>(mstk_comparison_values, cmp.get(), 0);
  auto r = make<ValuesPtr>(mstk_comparison_values, cmp.get(), 1);
  json hc = compare_histogram_defaults();
  hc.merge_patch(histograms);
  for (const auto& [key, values] : {std::pair{"c", c.get()}, std::pair{"r", r.get()}}) {
    auto h = make_histogram(values, hc[key]);
    check(mstk_histogram_write(h.get(), ctx.path(stem + "." + key + ".csv").c_str(), prov.c_str()));
    if (plot) write_histogram_svg(ctx, stem + "." + key + ".svg", h.get(), key, subject + " to " + reference);
  }

  const auto cv = to_vector(c.get());
  const auto rv = to_vector(r.get());
  json j = {{"subject", subject},
            {"reference", reference},
            {"k", k},
            {"pool", pool},
            {"vertices", cv.size()},
            {"mean_c", num(finite_mean(cv))},
            {"p95_c", num(percentile(cv, 0.95))},
            {"mean_r", num(finite_mean(rv))},
            {"p95_r", num(percentile(rv, 0.95))},
            {"infinite_ratios", mstk_comparison_infinite_ratios(cmp.get())}};
  if (c_values) *c_values = std::move(c);
  return j;
}

json fit_defaults() {
  return {{"x_feature", 0},
          {"y_feature", 1},
          {"mode", "both"},
          {"grid_points", 1001},
          {"curve_points", 101},
          {"calibration", {{"alphas", {0.1, 0.2, 0.3, 0.4, 0.5}}, {"trials", 4}, {"sample_size", 0}}}};
}

json run_fit(const Context& ctx, const json& cfg, const std::map<std::string, json>& declared, bool plot) {
  auto resolve = [&](const char* role) {
    const json& spec = cfg.at(role);
    if (spec.is_string() && declared.count(spec.get<std::string>())) {
      const auto name = spec.get<std::string>();
      return load_input(declared.at(name), name, ctx.seed);
    }
    return load_input(spec, role, ctx.seed);
  };

  const auto mode = cfg.value("mode", std::string("both"));
  if (mode != "baseline" && mode != "augmented" && mode != "both")
    usage_error("unknown fit mode '" + mode + "' (expected baseline, augmented or both)");
  const bool want_base = mode != "augmented";
  const bool want_aug = mode != "baseline";

  Input bg = resolve("background");
  Input sig = resolve("signal");
  std::optional<Input> data;
  if (cfg.contains("data") && !cfg["data"].is_null()) data = resolve("data");

  const std::size_t xf = feature_index(bg.points.get(), cfg.at("x_feature"));
  const std::size_t yf = feature_index(bg.points.get(), cfg.at("y_feature"));
  const auto xe = cfg.at("x_edges").get<std::vector<double>>();
  const auto ye = cfg.at("y_edges").get<std::vector<double>>();

  ModelPtr model;
  const json asimov = cfg.value("asimov", json());
  if (asimov.is_object()) {
    model = make<ModelPtr>(mstk_model_asimov, xe.data(), xe.size(), ye.data(), ye.size(), xf, yf,
                           static_cast<const mstk_pointset*>(bg.points.get()),
                           static_cast<const mstk_pointset*>(sig.points.get()), asimov.at("alpha").get<double>(),
                           asimov.at("total").get<double>());
  } else {
    if (!data) usage_error("fit needs \"data\" or \"asimov\"");
    model = make<ModelPtr>(mstk_model_from_samples, xe.data(), xe.size(), ye.data(), ye.size(), xf, yf,
                           static_cast<const mstk_pointset*>(bg.points.get()),
                           static_cast<const mstk_pointset*>(sig.points.get()),
                           static_cast<const mstk_pointset*>(data->points.get()));
  }

  const std::string prov = ctx.provenance();
  json out = {{"provenance", prov}, {"mode", mode}};
  json bins = json::array();
  for (std::size_t j = 0; j < mstk_model_bin_count(model.get()); ++j) {
    double b = 0, s = 0, n = 0;
    check(mstk_model_bin(model.get(), j, &b, &s, &n));
    bins.push_back({{"background", num(b)}, {"signal", num(s)}, {"observed", num(n)}});
  }
  out["bins"] = bins;

  std::optional<mstk_constraint> constraint;
  if (want_aug) {
    if (!data) usage_error("augmented fit needs \"data\" for the observed mu_l");
    auto tree = build_tree(data->points.get(), "kruskal");
    mstk_summary s{};
    check(mstk_tree_summary(tree.get(), &s));

    const json& cc = cfg.at("calibration");
    const auto alphas = cc.at("alphas").get<std::vector<double>>();
    std::size_t sample_size = cc.value("sample_size", std::size_t{0});
    if (sample_size == 0) sample_size = mstk_pointset_size(data->points.get());
    const std::uint64_t seed = cc.contains("seed") ? cc["seed"].get<std::uint64_t>()
                                                   : mstk_derive_seed(ctx.seed, fnv1a64("calibration"));
    mstk_calibration cal{};
    std::vector<double> mean_mu(alphas.size()), sd_mu(alphas.size());
    check(mstk_calibrate(bg.points.get(), sig.points.get(), alphas.data(), alphas.size(),
                         cc.value("trials", std::size_t{4}), sample_size, seed, &cal, mean_mu.data(), sd_mu.data()));
    constraint = mstk_constraint{s.mean_log_norm_length, cal.slope, cal.intercept, cal.sigma_l};

    out["mu_obs"] = num(s.mean_log_norm_length);
    out["calibration"] = {{"slope", num(cal.slope)},
                          {"slope_se", num(cal.slope_se)},
                          {"intercept", num(cal.intercept)},
                          {"intercept_se", num(cal.intercept_se)},
                          {"sigma_l", num(cal.sigma_l)},
                          {"sample_size", cal.sample_size},
                          {"seed", seed}};

    std::ostringstream csv;
    csv << "# " << prov << "\nalpha,mean_mu,sd_mu,fitted_mu\n";
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      csv << format_number(alphas[i]) << ',' << format_number(mean_mu[i]) << ',' << format_number(sd_mu[i]) << ','
          << format_number(cal.intercept + cal.slope * alphas[i]) << '\n';
    }
    write_file(ctx.path("calibration.csv"), csv.str());
  }

  const auto grid = cfg.value("grid_points", std::size_t{1001});
  const auto curve = cfg.value("curve_points", std::size_t{101});
  std::vector<std::pair<std::string, FitPtr>> fits;
  if (want_base)
    fits.emplace_back("baseline", make<FitPtr>(mstk_fit_alpha, static_cast<const mstk_model*>(model.get()),
                                               static_cast<const mstk_constraint*>(nullptr), grid, curve));
  if (want_aug)
    fits.emplace_back("augmented", make<FitPtr>(mstk_fit_alpha, static_cast<const mstk_model*>(model.get()),
                                                static_cast<const mstk_constraint*>(&*constraint), grid, curve));

  for (const auto& [label, fit] : fits) {
    double lo = 0, hi = 0;
    mstk_fit_interval(fit.get(), &lo, &hi);
    out[label] = {{"alpha_hat", num(mstk_fit_alpha_hat(fit.get()))},
                  {"sigma_alpha", num(mstk_fit_sigma_alpha(fit.get()))},
                  {"q_min", num(mstk_fit_q_min(fit.get()))},
                  {"interval", {num(lo), num(hi)}}};
  }

  // Q(alpha) side by side; both fits sample the same alpha grid.
  const std::size_t n = mstk_fit_curve_size(fits.front().second.get());
  std::vector<double> alpha(n);
  std::vector<std::vector<double>> dq(fits.size(), std::vector<double>(n));
  std::ostringstream csv;
  csv << "# " << prov << "\nalpha";
  for (const auto& f : fits) csv << ",q_" << f.first << ",dq_" << f.first;
  csv << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    check(mstk_fit_curve_point(fits.front().second.get(), i, &alpha[i], nullptr));
    csv << format_number(alpha[i]);
    for (std::size_t f = 0; f < fits.size(); ++f) {
      double a = 0, q = 0;
      check(mstk_fit_curve_point(fits[f].second.get(), i, &a, &q));
      dq[f][i] = q - mstk_fit_q_min(fits[f].second.get());
      csv << ',' << format_number(q) << ',' << format_number(dq[f][i]);
    }
    csv << '\n';
  }
  write_file(ctx.path("q_curve.csv"), csv.str());

  if (plot) {
    std::vector<const double*> xs, ys;
    std::vector<std::size_t> sizes;
    std::vector<const char*> labels;
    for (std::size_t f = 0; f < fits.size(); ++f) {
      xs.push_back(alpha.data());
      ys.push_back(dq[f].data());
      sizes.push_back(n);
      labels.push_back(fits[f].first.c_str());
    }
    check(mstk_svg_curves(xs.data(), ys.data(), sizes.data(), labels.data(), fits.size(), "Q(alpha) - Q_min",
                          "alpha", "delta Q", prov.c_str(), ctx.path("q_curve.svg").c_str()));
  }

  ctx.write_json("fit.json", out);
  return out;
}

}  // namespace cli
