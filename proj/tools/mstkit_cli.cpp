// mstkit command-line tool. Links only the C API.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_common.hpp"

using namespace cli;

namespace {

struct Common {
  std::string config;
  std::string out_dir;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON config file (flags override its fields)");
  sub->add_option("--out-dir", c.out_dir, "Output directory (default: $MSTKIT_OUTPUT_DIR, else .)");
  c.seed_opt = sub->add_option("--seed", c.seed, "Master seed");
}

json base_config(const Common& c, const std::string& section, json defaults) {
  if (!c.config.empty()) defaults.merge_patch(load_config(c.config, section));
  if (c.seed_opt->count()) defaults["seed"] = c.seed;
  return defaults;
}

struct InputFlags {
  std::string algorithm;
  std::string rescale;
  std::vector<std::string> features;
  std::string cut;
};

void add_input_flags(CLI::App* sub, InputFlags& f) {
  sub->add_option("--algorithm", f.algorithm, "kruskal (default) or prim");
  sub->add_option("--rescale", f.rescale, "none, unit-range or unit-variance");
  sub->add_option("--features", f.features, "Feature columns to keep, e.g. x,y")->delimiter(',');
  sub->add_option("--cut", f.cut, "Keep events with FEATURE > VALUE, given as FEATURE=VALUE");
}

json apply_input_flags(json spec, const InputFlags& f) {
  if (f.rescale.empty() && f.features.empty() && f.cut.empty()) return spec;
  if (spec.is_string()) spec = json{{"file", spec}};
  if (!f.rescale.empty()) spec["rescale"] = f.rescale;
  if (!f.features.empty()) spec["features"] = f.features;
  if (!f.cut.empty()) {
    const auto eq = f.cut.find('=');
    if (eq == std::string::npos) usage_error("--cut expects FEATURE=VALUE");
    double v = 0;
    try {
      v = std::stod(f.cut.substr(eq + 1));
    } catch (const std::exception&) {
      usage_error("--cut value is not a number: " + f.cut);
    }
    spec["cut"] = {{"feature", f.cut.substr(0, eq)}, {"min", v}};
  }
  return spec;
}

void require_input(const json& eff, const char* key) {
  if (!eff.contains(key) || eff[key].is_null()) usage_error(std::string("missing input \"") + key + "\"");
}

// ---- gen ----

struct GenArgs {
  Common common;
  std::string preset, kind, name, output;
  std::size_t count = 0;
  bool list = false;
};

void cmd_gen(GenArgs& a, CLI::App* sub) {
  if (a.list) {
    for (std::size_t i = 0; i < mstk_generator_preset_count(); ++i) std::cout << mstk_generator_preset_name(i) << "\n";
    return;
  }
  json eff = base_config(a.common, "gen", {{"source", nullptr}, {"output", nullptr}});
  if (!eff["source"].is_object()) eff["source"] = json::object();
  json& src = eff["source"];
  if (!a.preset.empty()) {
    src.erase("kind");
    src["preset"] = a.preset;
  }
  if (!a.kind.empty()) src["kind"] = a.kind;
  if (sub->count("--count")) src["count"] = a.count;
  if (!a.name.empty()) src["name"] = a.name;
  if (!a.output.empty()) eff["output"] = a.output;
  if (src.empty()) usage_error("gen needs --preset, --kind or a \"source\" in the config");

  Context ctx = finalize_config(eff, "gen", a.common.out_dir);
  Input in = load_input(eff["source"], "events", ctx.seed);
  const std::string out = !ctx.output.empty() ? ctx.output : ctx.path(in.name + ".csv");
  const std::string prov = ctx.provenance();
  check(mstk_pointset_write(in.points.get(), out.c_str(), prov.c_str()));
  std::cout << "wrote " << out << " (" << mstk_pointset_size(in.points.get()) << " events)\n";
}

// ---- build / stats ----

struct TreeArgs {
  Common common;
  InputFlags flags;
  std::string input, name;
  bool plot = false;
};

void cmd_tree(TreeArgs& a, const std::string& command) {
  json defaults = {{"input", nullptr}, {"algorithm", "kruskal"}, {"plot", false}};
  if (command == "stats") defaults["histograms"] = stats_histogram_defaults();
  json eff = base_config(a.common, command, defaults);
  if (!a.input.empty()) eff["input"] = a.input;
  require_input(eff, "input");
  eff["input"] = apply_input_flags(eff["input"], a.flags);
  if (!a.name.empty()) {
    if (eff["input"].is_string()) eff["input"] = json{{"file", eff["input"]}};
    eff["input"]["name"] = a.name;
  }
  if (!a.flags.algorithm.empty()) eff["algorithm"] = a.flags.algorithm;
  if (a.plot) eff["plot"] = true;

  Context ctx = finalize_config(eff, command, a.common.out_dir);
  Input in = load_input(eff["input"], "events", ctx.seed);
  auto tree = build_tree(in.points.get(), eff["algorithm"].get<std::string>());
  json summary = write_tree_outputs(ctx, in.name, tree.get());
  const bool plot = eff["plot"].get<bool>();
  if (plot) write_tree_svg(ctx, in.name, in.points.get(), tree.get());
  if (command == "stats") write_stat_histograms(ctx, in.name, tree.get(), eff["histograms"], plot);
  std::cout << "tree " << in.name << ": " << summary["vertices"] << " vertices, " << summary["edges"]
            << " edges, mu_l = " << summary["mu_l"] << "\n";
}

// ---- compare ----

struct CompareArgs {
  Common common;
  InputFlags flags;
  std::string subject, reference, pool;
  std::size_t k = 5;
  bool both = false;
  bool plot = false;
};

void cmd_compare(CompareArgs& a, CLI::App* sub) {
  json eff = base_config(a.common, "compare",
                         {{"subject", nullptr},
                          {"reference", nullptr},
                          {"k", 5},
                          {"pool", "reference"},
                          {"both", false},
                          {"algorithm", "kruskal"},
                          {"histograms", json::object()},
                          {"plot", false}});
  if (!a.subject.empty()) eff["subject"] = a.subject;
  if (!a.reference.empty()) eff["reference"] = a.reference;
  require_input(eff, "subject");
  require_input(eff, "reference");
  eff["subject"] = apply_input_flags(eff["subject"], a.flags);
  eff["reference"] = apply_input_flags(eff["reference"], a.flags);
  if (sub->count("--k")) eff["k"] = a.k;
  if (!a.pool.empty()) eff["pool"] = a.pool;
  if (a.both) eff["both"] = true;
  if (a.plot) eff["plot"] = true;
  if (!a.flags.algorithm.empty()) eff["algorithm"] = a.flags.algorithm;

  Context ctx = finalize_config(eff, "compare", a.common.out_dir);
  Input s = load_input(eff["subject"], "subject", ctx.seed);
  Input r = load_input(eff["reference"], "reference", ctx.seed);
  if (s.name == r.name) {
    s.name += "_a";
    r.name += "_b";
  }
  const auto algo = eff["algorithm"].get<std::string>();
  auto ts = build_tree(s.points.get(), algo);
  auto tr = build_tree(r.points.get(), algo);
  const auto k = eff["k"].get<std::size_t>();
  const auto pool = eff["pool"].get<std::string>();
  const bool plot = eff["plot"].get<bool>();

  json out = {{"provenance", ctx.provenance()}, {"directions", json::array()}};
  ValuesPtr c_fwd, c_rev;
  out["directions"].push_back(
      run_comparison(ctx, s.name, ts.get(), r.name, tr.get(), k, pool, eff["histograms"], plot, &c_fwd));
  if (eff["both"].get<bool>()) {
    out["directions"].push_back(
        run_comparison(ctx, r.name, tr.get(), s.name, ts.get(), k, pool, eff["histograms"], plot, &c_rev));
    double d = 0, p = 0;
    check(mstk_ks_two_sample(c_fwd.get(), c_rev.get(), &d, &p));
    out["ks_c"] = {{"statistic", num(d)}, {"p_value", num(p)}};
  }
  ctx.write_json("compare.json", out);
  for (const auto& d : out["directions"]) {
    std::cout << d["subject"].get<std::string>() << " -> " << d["reference"].get<std::string>()
              << ": mean c = " << d["mean_c"] << ", p95 r = " << d["p95_r"] << "\n";
  }
}

// ---- fit ----

struct FitArgs {
  Common common;
  std::string mode;
  bool plot = false;
};

void print_fit(const json& out) {
  for (const char* label : {"baseline", "augmented"}) {
    if (!out.contains(label)) continue;
    std::cout << label << ": alpha = " << out[label]["alpha_hat"] << " +- " << out[label]["sigma_alpha"] << "\n";
  }
}

void cmd_fit(FitArgs& a) {
  json d = fit_defaults();
  d["plot"] = false;
  json eff = base_config(a.common, "fit", d);
  if (!a.mode.empty()) eff["mode"] = a.mode;
  if (a.plot) eff["plot"] = true;
  Context ctx = finalize_config(eff, "fit", a.common.out_dir);
  print_fit(run_fit(ctx, eff, {}, eff["plot"].get<bool>()));
}

// ---- plot ----

struct PlotArgs {
  Common common;
  std::vector<std::string> files;
  std::vector<std::string> axes;
  std::vector<std::string> labels;
  std::vector<std::string> columns;
  std::string output, title, x_label;
};

json axis_json(const std::string& s) {
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return std::stoull(s);
  return s;
}

void cmd_plot_tree(PlotArgs& a) {
  json eff = base_config(a.common, "plot",
                         {{"events", nullptr}, {"tree", nullptr}, {"axes", nullptr}, {"output", nullptr},
                          {"title", ""}});
  if (a.files.size() == 2) {
    eff["events"] = a.files[0];
    eff["tree"] = a.files[1];
  } else if (!a.files.empty()) {
    usage_error("plot tree expects EVENTS TREE");
  }
  require_input(eff, "events");
  require_input(eff, "tree");
  if (!a.axes.empty()) {
    if (a.axes.size() != 2) usage_error("--axes expects two features, e.g. --axes x,z");
    eff["axes"] = {axis_json(a.axes[0]), axis_json(a.axes[1])};
  }
  if (!a.output.empty()) eff["output"] = a.output;
  if (!a.title.empty()) eff["title"] = a.title;

  Context ctx = finalize_config(eff, "plot-tree", a.common.out_dir);
  auto ps = make<PointSetPtr>(mstk_pointset_read, eff["events"].get<std::string>().c_str());
  const std::size_t dim = mstk_pointset_dimension(ps.get());
  std::size_t xa = 0, ya = 1;
  if (eff["axes"].is_array()) {
    xa = feature_index(ps.get(), eff["axes"][0]);
    ya = feature_index(ps.get(), eff["axes"][1]);
  } else if (dim != 2) {
    usage_error("tree has " + std::to_string(dim) +
                " feature dimensions; choose a 2D projection with --axes, e.g. --axes x,z");
  }
  mstk_edge* raw = nullptr;
  std::size_t n = 0;
  check(mstk_tree_read_edges(eff["tree"].get<std::string>().c_str(), &raw, &n));
  EdgesPtr edges(raw);
  const std::string stem = std::filesystem::path(eff["tree"].get<std::string>()).stem().string();
  const std::string out = !ctx.output.empty() ? ctx.output : ctx.path(stem + ".svg");
  const std::string prov = ctx.provenance();
  check(mstk_svg_tree(ps.get(), edges.get(), n, xa, ya, eff["title"].get<std::string>().c_str(), prov.c_str(),
                      out.c_str()));
  std::cout << "wrote " << out << "\n";
}

void cmd_plot_hist(PlotArgs& a) {
  json eff = base_config(a.common, "plot",
                         {{"histograms", json::array()}, {"labels", json::array()}, {"output", nullptr},
                          {"title", ""}, {"x_label", ""}});
  if (!a.files.empty()) eff["histograms"] = a.files;
  if (!a.labels.empty()) eff["labels"] = a.labels;
  if (!a.output.empty()) eff["output"] = a.output;
  if (!a.title.empty()) eff["title"] = a.title;
  if (!a.x_label.empty()) eff["x_label"] = a.x_label;
  const auto files = eff["histograms"].get<std::vector<std::string>>();
  auto labels = eff["labels"].get<std::vector<std::string>>();
  if (files.empty()) usage_error("plot hist needs at least one histogram file");
  if (!labels.empty() && labels.size() != files.size()) usage_error("--labels count must match the histogram count");

  Context ctx = finalize_config(eff, "plot-hist", a.common.out_dir);
  std::vector<HistogramPtr> hs;
  std::vector<const mstk_histogram*> raw;
  std::vector<const char*> lab;
  for (std::size_t i = 0; i < files.size(); ++i) {
    hs.push_back(make<HistogramPtr>(mstk_histogram_read, files[i].c_str()));
    raw.push_back(hs.back().get());
    if (labels.size() < files.size()) labels.push_back(std::filesystem::path(files[i]).stem().string());
  }
  for (const auto& l : labels) lab.push_back(l.c_str());
  const std::string out =
      !ctx.output.empty() ? ctx.output : ctx.path(std::filesystem::path(files[0]).stem().string() + ".svg");
  const std::string prov = ctx.provenance();
  check(mstk_svg_histograms(raw.data(), lab.data(), raw.size(), eff["title"].get<std::string>().c_str(),
                            eff["x_label"].get<std::string>().c_str(), prov.c_str(), out.c_str()));
  std::cout << "wrote " << out << "\n";
}

// Reads a CSV whose first column is x; returns header and columns.
std::pair<std::vector<std::string>, std::vector<std::vector<double>>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(MSTK_ERR_IO, "cannot open '" + path + "'");
  std::vector<std::string> header;
  std::vector<std::vector<double>> cols;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (header.empty()) {
      header = fields;
      cols.resize(header.size());
      continue;
    }
    if (fields.size() != header.size())
      throw CliError(MSTK_ERR_PARSE, path + ": line " + std::to_string(lineno) + ": expected " +
                                         std::to_string(header.size()) + " fields");
    for (std::size_t i = 0; i < fields.size(); ++i) {
      try {
        std::size_t used = 0;
        cols[i].push_back(std::stod(fields[i], &used));
        if (used != fields[i].size()) throw std::invalid_argument(fields[i]);
      } catch (const std::exception&) {
        throw CliError(MSTK_ERR_PARSE, path + ": line " + std::to_string(lineno) + ": bad number '" + fields[i] + "'");
      }
    }
  }
  if (header.size() < 2) throw CliError(MSTK_ERR_PARSE, path + ": need a header with at least two columns");
  return {header, cols};
}

void cmd_plot_curve(PlotArgs& a) {
  json eff = base_config(a.common, "plot",
                         {{"table", nullptr}, {"columns", json::array()}, {"output", nullptr}, {"title", ""}});
  if (a.files.size() == 1) {
    eff["table"] = a.files[0];
  } else if (!a.files.empty()) {
    usage_error("plot curve expects one CSV table");
  }
  require_input(eff, "table");
  if (!a.columns.empty()) eff["columns"] = a.columns;
  if (!a.output.empty()) eff["output"] = a.output;
  if (!a.title.empty()) eff["title"] = a.title;

  Context ctx = finalize_config(eff, "plot-curve", a.common.out_dir);
  const auto table = eff["table"].get<std::string>();
  auto [header, cols] = read_table(table);
  auto wanted = eff["columns"].get<std::vector<std::string>>();
  if (wanted.empty()) wanted.assign(header.begin() + 1, header.end());
  std::vector<const double*> xs, ys;
  std::vector<std::size_t> sizes;
  std::vector<const char*> labels;
  for (const auto& w : wanted) {
    auto it = std::find(header.begin() + 1, header.end(), w);
    if (it == header.end()) usage_error("column '" + w + "' not in " + table);
    const auto idx = static_cast<std::size_t>(it - header.begin());
    xs.push_back(cols[0].data());
    ys.push_back(cols[idx].data());
    sizes.push_back(cols[0].size());
    labels.push_back(header[idx].c_str());
  }
  const std::string out =
      !ctx.output.empty() ? ctx.output : ctx.path(std::filesystem::path(table).stem().string() + ".svg");
  const std::string prov = ctx.provenance();
  check(mstk_svg_curves(xs.data(), ys.data(), sizes.data(), labels.data(), xs.size(),
                        eff["title"].get<std::string>().c_str(), header[0].c_str(), "", prov.c_str(), out.c_str()));
  std::cout << "wrote " << out << "\n";
}

// ---- run ----

struct RunArgs {
  Common common;
  std::string config_file;
};

bool is_generator(const json& spec) { return spec.is_object() && !spec.contains("file"); }

void cmd_run(RunArgs& a) {
  if (!a.config_file.empty()) a.common.config = a.config_file;
  if (a.common.config.empty()) usage_error("run needs a pipeline config");
  json eff = base_config(a.common, "run",
                         {{"inputs", json::object()},
                          {"write_inputs", true},
                          {"algorithm", "kruskal"},
                          {"plot", true},
                          {"stats", json::array()},
                          {"histograms", stats_histogram_defaults()},
                          {"compare", json::array()},
                          {"fit", nullptr}});
  if (!eff["inputs"].is_object() || eff["inputs"].empty()) usage_error("run config declares no \"inputs\"");

  std::map<std::string, json> declared;
  bool uses_generator = false;
  for (const auto& [name, spec] : eff["inputs"].items()) {
    declared[name] = spec;
    uses_generator = uses_generator || is_generator(spec);
  }
  if (eff["fit"].is_object()) {
    for (const char* role : {"background", "signal", "data"}) {
      if (eff["fit"].contains(role)) uses_generator = uses_generator || is_generator(eff["fit"][role]);
    }
  }
  if (uses_generator && !eff.contains("seed")) usage_error("run config uses generators but sets no \"seed\"");

  auto require_declared = [&](const json& n) {
    const auto name = n.get<std::string>();
    if (!declared.count(name)) usage_error("input '" + name + "' is referenced but not declared");
    return name;
  };
  std::vector<std::string> stats_names;
  for (const auto& n : eff["stats"]) stats_names.push_back(require_declared(n));
  for (const auto& c : eff["compare"]) {
    require_declared(c.at("subject"));
    require_declared(c.at("reference"));
  }

  Context ctx = finalize_config(eff, "run", a.common.out_dir);
  const bool plot = eff["plot"].get<bool>();
  const auto algo = eff["algorithm"].get<std::string>();

  std::map<std::string, Input> inputs;
  std::map<std::string, TreePtr> trees;
  auto input = [&](const std::string& name) -> Input& {
    auto it = inputs.find(name);
    if (it == inputs.end()) it = inputs.emplace(name, load_input(declared.at(name), name, ctx.seed)).first;
    it->second.name = name;
    return it->second;
  };
  auto tree = [&](const std::string& name) -> const mstk_tree* {
    auto it = trees.find(name);
    if (it == trees.end()) it = trees.emplace(name, build_tree(input(name).points.get(), algo)).first;
    return it->second.get();
  };

  json report = {{"provenance", ctx.provenance()}};
  if (eff["write_inputs"].get<bool>()) {
    const std::string prov = ctx.provenance();
    for (const auto& [name, spec] : declared)
      check(mstk_pointset_write(input(name).points.get(), ctx.path(name + ".events.csv").c_str(), prov.c_str()));
  }

  std::map<std::string, std::map<std::string, HistogramPtr>> hists;
  for (const auto& name : stats_names) {
    report["stats"][name] = write_tree_outputs(ctx, name, tree(name));
    hists[name] = write_stat_histograms(ctx, name, tree(name), eff["histograms"], plot);
    if (plot) write_tree_svg(ctx, name, input(name).points.get(), tree(name));
    std::cout << "stats " << name << ": mu_l = " << report["stats"][name]["mu_l"] << "\n";
  }
  if (plot && stats_names.size() > 1) {
    const std::string prov = ctx.provenance();
    for (const auto& [stat, unused] : eff["histograms"].items()) {
      std::vector<const mstk_histogram*> raw;
      std::vector<const char*> labels;
      for (const auto& name : stats_names) {
        auto it = hists[name].find(stat);
        if (it == hists[name].end()) continue;
        raw.push_back(it->second.get());
        labels.push_back(name.c_str());
      }
      if (raw.empty()) continue;
      check(mstk_svg_histograms(raw.data(), labels.data(), raw.size(), stat.c_str(), stat.c_str(), prov.c_str(),
                                ctx.path(stat + ".overlay.svg").c_str()));
    }
  }

  for (const auto& c : eff["compare"]) {
    const auto s = c.at("subject").get<std::string>();
    const auto r = c.at("reference").get<std::string>();
    const auto k = c.value("k", std::size_t{5});
    const auto pool = c.value("pool", std::string("reference"));
    const json h = c.value("histograms", json::object());
    ValuesPtr fwd, rev;
    json entry = {{"directions", json::array()}};
    entry["directions"].push_back(run_comparison(ctx, s, tree(s), r, tree(r), k, pool, h, plot, &fwd));
    if (c.value("both", false)) {
      entry["directions"].push_back(run_comparison(ctx, r, tree(r), s, tree(s), k, pool, h, plot, &rev));
      double d = 0, p = 0;
      check(mstk_ks_two_sample(fwd.get(), rev.get(), &d, &p));
      entry["ks_c"] = {{"statistic", num(d)}, {"p_value", num(p)}};
    }
    report["compare"].push_back(entry);
    std::cout << "compare " << s << " / " << r << " done\n";
  }

  if (eff["fit"].is_object()) {
    json fc = fit_defaults();
    fc.merge_patch(eff["fit"]);
    report["fit"] = run_fit(ctx, fc, declared, plot);
    print_fit(report["fit"]);
  }
  ctx.write_json("run.json", report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mstkit: minimal spanning tree statistics for point clouds"};
  app.set_version_flag("--version", std::string(mstk_version()));
  app.require_subcommand(1);

  GenArgs gen;
  auto* sgen = app.add_subcommand("gen", "Generate a synthetic event file");
  add_common(sgen, gen.common);
  sgen->add_option("--preset", gen.preset, "Named preset (see --list)");
  sgen->add_option("--kind", gen.kind, "Generator kind when no preset is used");
  sgen->add_option("-n,--count", gen.count, "Number of events");
  sgen->add_option("--name", gen.name, "Name used for the output file");
  sgen->add_option("-o,--output", gen.output, "Output event file");
  sgen->add_flag("--list", gen.list, "List presets and exit");
  sgen->callback([&] { cmd_gen(gen, sgen); });

  TreeArgs build, stats;
  for (auto [name, args, help] : {std::tuple{"build", &build, "Build the tree and write it with a summary"},
                                  std::tuple{"stats", &stats, "Build the tree and write statistic histograms"}}) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, args->common);
    add_input_flags(sub, args->flags);
    sub->add_option("input", args->input, "Event file");
    sub->add_option("--name", args->name, "Name used for output files");
    sub->add_flag("--plot", args->plot, "Also write SVG renderings");
    const std::string command = name;
    sub->callback([args, command] { cmd_tree(*args, command); });
  }

  CompareArgs cmp;
  auto* scmp = app.add_subcommand("compare", "Connection lengths and ratios between two trees");
  add_common(scmp, cmp.common);
  add_input_flags(scmp, cmp.flags);
  scmp->add_option("subject", cmp.subject, "Subject event file");
  scmp->add_option("reference", cmp.reference, "Reference event file");
  scmp->add_option("--k", cmp.k, "Edges averaged for the connection ratio (default 5)");
  scmp->add_option("--pool", cmp.pool, "Edge pool for the ratio: reference (default) or subject");
  scmp->add_flag("--both", cmp.both, "Also compute the reverse direction");
  scmp->add_flag("--plot", cmp.plot, "Also write SVG histograms");
  scmp->callback([&] { cmd_compare(cmp, scmp); });

  FitArgs fit;
  auto* sfit = app.add_subcommand("fit", "Binned signal-fraction fit, optionally with the tree constraint");
  add_common(sfit, fit.common);
  sfit->add_option("--mode", fit.mode, "baseline, augmented or both (default)");
  sfit->add_flag("--plot", fit.plot, "Also write the Q(alpha) SVG");
  sfit->callback([&] { cmd_fit(fit); });

  PlotArgs ptree, phist, pcurve;
  auto* splot = app.add_subcommand("plot", "Render SVG plots");
  splot->require_subcommand(1);
  auto* sptree = splot->add_subcommand("tree", "Render a tree file over its events");
  add_common(sptree, ptree.common);
  sptree->add_option("files", ptree.files, "EVENTS TREE");
  sptree->add_option("--axes", ptree.axes, "Projection axes, e.g. x,z")->delimiter(',');
  sptree->add_option("-o,--output", ptree.output, "Output SVG");
  sptree->add_option("--title", ptree.title, "Plot title");
  sptree->callback([&] { cmd_plot_tree(ptree); });
  auto* sphist = splot->add_subcommand("hist", "Overlay histogram CSV files");
  add_common(sphist, phist.common);
  sphist->add_option("files", phist.files, "Histogram CSV files");
  sphist->add_option("--labels", phist.labels, "Legend labels")->delimiter(',');
  sphist->add_option("-o,--output", phist.output, "Output SVG");
  sphist->add_option("--title", phist.title, "Plot title");
  sphist->add_option("--x-label", phist.x_label, "x axis label");
  sphist->callback([&] { cmd_plot_hist(phist); });
  auto* spcurve = splot->add_subcommand("curve", "Plot columns of a CSV table against its first column");
  add_common(spcurve, pcurve.common);
  spcurve->add_option("files", pcurve.files, "CSV table");
  spcurve->add_option("--columns", pcurve.columns, "Columns to plot (default: all)")->delimiter(',');
  spcurve->add_option("-o,--output", pcurve.output, "Output SVG");
  spcurve->add_option("--title", pcurve.title, "Plot title");
  spcurve->callback([&] { cmd_plot_curve(pcurve); });

  RunArgs run;
  auto* srun = app.add_subcommand("run", "Run a pipeline described by a config file");
  add_common(srun, run.common);
  srun->add_option("pipeline", run.config_file, "Pipeline config (same as --config)");
  srun->callback([&] { cmd_run(run); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const CliError& e) {
    std::cerr << "mstkit: " << e.what() << "\n";
    return e.code();
  } catch (const json::exception& e) {
    std::cerr << "mstkit: config: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "mstkit: internal error: " << e.what() << "\n";
    return MSTK_ERR_INTERNAL;
  }
  return 0;
}
