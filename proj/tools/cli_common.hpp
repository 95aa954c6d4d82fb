#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mstkit/mstkit.h"

namespace cli {

using json = nlohmann::json;

/// Exit codes: 0 ok, 1 usage/invalid argument, 2 parse, 3 numeric, 4 I/O, 5 internal.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

[[noreturn]] inline void usage_error(const std::string& msg) { throw CliError(1, msg); }

inline void check(mstk_status s) {
  if (s != MSTK_OK) throw CliError(static_cast<int>(s), mstk_last_error());
}

template <auto Free>
struct Deleter {
  template <class T>
  void operator()(T* p) const noexcept {
    Free(p);
  }
};

using PointSetPtr = std::unique_ptr<mstk_pointset, Deleter<mstk_pointset_free>>;
using TreePtr = std::unique_ptr<mstk_tree, Deleter<mstk_tree_free>>;
using ValuesPtr = std::unique_ptr<mstk_values, Deleter<mstk_values_free>>;
using HistogramPtr = std::unique_ptr<mstk_histogram, Deleter<mstk_histogram_free>>;
using ComparisonPtr = std::unique_ptr<mstk_comparison, Deleter<mstk_comparison_free>>;
using ModelPtr = std::unique_ptr<mstk_model, Deleter<mstk_model_free>>;
using FitPtr = std::unique_ptr<mstk_fit, Deleter<mstk_fit_free>>;
using EdgesPtr = std::unique_ptr<mstk_edge, Deleter<mstk_edges_free>>;

/// Calls a C API constructor whose last argument is the output handle.
template <class Ptr, class F, class... Args>
Ptr make(F f, Args... args) {
  typename Ptr::pointer p = nullptr;
  check(f(args..., &p));
  return Ptr(p);
}

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t x);

/// JSON number, or "inf" / "-inf" / "nan" for non-finite values.
json num(double x);

/// Output location and provenance shared by every file a command writes.
struct Context {
  std::filesystem::path out_dir;
  std::string output;  // explicit output file, if any; not part of the hash
  std::uint64_t seed = 0;
  std::string config_hash;

  std::string provenance() const;
  std::string path(const std::string& file) const;
  void write_json(const std::string& file, json j) const;
};

/// Loads a JSON config file. If it holds an object under `section`, that
/// object is returned, otherwise the whole document.
json load_config(const std::string& path, const std::string& section);

/// Removes "output_dir" and "output" from the effective config, resolves the output
/// directory (flag, then config, then MSTKIT_OUTPUT_DIR, then "."), hashes the
/// rest, echoes it to stdout and writes <command>.config.json.
Context finalize_config(json& effective, const std::string& command, const std::string& out_dir_flag);

// ---- inputs ----

struct Input {
  std::string name;
  PointSetPtr points;
};

/// Input spec: a file path string, or an object with one of "file", "preset",
/// "kind" (generator) or "mixture", plus optional transforms "cut",
/// "region", "features", "rescale" applied in that order.
Input load_input(const json& spec, const std::string& default_name, std::uint64_t master_seed);

mstk_generator_spec generator_spec(const json& j, std::uint64_t fallback_seed);

std::size_t feature_index(const mstk_pointset* ps, const json& feature);

// ---- pipeline stages ----

TreePtr build_tree(const mstk_pointset* ps, const std::string& algorithm);

json stats_histogram_defaults();
json compare_histogram_defaults();

/// Writes <name>.tree.csv and <name>.summary.json; returns the summary.
json write_tree_outputs(const Context& ctx, const std::string& name, const mstk_tree* tree);

/// Writes <name>.<stat>.csv (and .svg when plotting) for every entry of
/// `histograms`, keyed by statistic name.
std::map<std::string, HistogramPtr> write_stat_histograms(const Context& ctx, const std::string& name,
                                                          const mstk_tree* tree, const json& histograms, bool plot);

/// <name>.tree.svg on the first two axes; skipped for 1D inputs.
void write_tree_svg(const Context& ctx, const std::string& name, const mstk_pointset* ps, const mstk_tree* tree);

/// One direction of a comparison; writes <s>_to_<r>.compare.csv and its
/// c and r histograms. Returns a summary object; c_values receives the c
/// column when non-null.
json run_comparison(const Context& ctx, const std::string& subject, const mstk_tree* subject_tree,
                    const std::string& reference, const mstk_tree* reference_tree, std::size_t k,
                    const std::string& pool, const json& histograms, bool plot, ValuesPtr* c_values = nullptr);

/// Fit stage. String input specs naming an entry of `declared` resolve to
/// that entry; other strings are file paths. Writes fit.json, q_curve.csv and
/// (augmented) calibration.csv.
json fit_defaults();
json run_fit(const Context& ctx, const json& cfg, const std::map<std::string, json>& declared, bool plot);

HistogramPtr make_histogram(const mstk_values* values, const json& hcfg);

/// Shortest round-trip decimal; "inf", "-inf", "nan" otherwise.
std::string format_number(double x);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace cli
