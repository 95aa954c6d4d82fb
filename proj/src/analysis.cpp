#include "mstkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "mstkit/error.hpp"
#include "mstkit/mst.hpp"
#include "mstkit/random.hpp"
#include "mstkit/tree_stats.hpp"

namespace mstkit {

bool RegionWeight::contains(std::span<const double> coords) const {
  for (const auto& b : box) {
    const double x = coords[b.feature];
    if (!(x > b.lo && x < b.hi)) return false;
  }
  return true;
}

PointSet apply_region_weights(const PointSet& ps, const RegionWeight& rw) {
  for (const auto& b : rw.box)
    if (b.feature >= ps.dimension())
      fail(ErrorCode::InvalidArgument, "region references feature " + std::to_string(b.feature) +
                                           " but points have dimension " + std::to_string(ps.dimension()));
  if (!(rw.inside_weight >= 0.0) || !(rw.outside_weight >= 0.0))
    fail(ErrorCode::InvalidArgument, "region weights must be non-negative");
  std::vector<double> w(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    w[i] = ps.weight(i) * (rw.contains(ps.coords(i)) ? rw.inside_weight : rw.outside_weight);
  return ps.with_weights(w);
}

std::optional<std::size_t> BinLayout::locate(std::span<const double> coords) const {
  const double x = coords[x_feature];
  const double y = coords[y_feature];
  for (std::size_t j = 0; j < bins.size(); ++j) {
    const Bin& b = bins[j];
    if (x >= b.x_lo && x < b.x_hi && y >= b.y_lo && y < b.y_hi) return j;
  }
  return std::nullopt;
}

BinLayout grid_layout(std::span<const double> x_edges, std::span<const double> y_edges, std::size_t x_feature,
                      std::size_t y_feature) {
  if (x_edges.size() < 2 || y_edges.size() < 2) fail(ErrorCode::InvalidArgument, "bin grid needs >= 2 edges per axis");
  auto increasing = [](std::span<const double> e) { return std::adjacent_find(e.begin(), e.end(), std::greater_equal<>()) == e.end(); };
  if (!increasing(x_edges) || !increasing(y_edges))
    fail(ErrorCode::InvalidArgument, "bin edges must be strictly increasing");
  BinLayout layout{x_feature, y_feature, {}};
  for (std::size_t iy = 0; iy + 1 < y_edges.size(); ++iy)
    for (std::size_t ix = 0; ix + 1 < x_edges.size(); ++ix)
      layout.bins.push_back({x_edges[ix], x_edges[ix + 1], y_edges[iy], y_edges[iy + 1]});
  return layout;
}

std::vector<double> bin_contents(const BinLayout& layout, const PointSet& ps) {
  if (layout.x_feature >= ps.dimension() || layout.y_feature >= ps.dimension())
    fail(ErrorCode::InvalidArgument, "bin layout references a feature the points do not have");
  std::vector<double> n(layout.bins.size(), 0.0);
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (auto j = layout.locate(ps.coords(i))) n[*j] += ps.weight(i);
  return n;
}

namespace {

std::vector<double> normalized(std::vector<double> v, const char* what) {
  double total = 0.0;
  for (double x : v) {
    if (!(x >= 0.0)) fail(ErrorCode::InvalidArgument, std::string(what) + " template has a negative entry");
    total += x;
  }
  if (!(total > 0.0)) fail(ErrorCode::Numeric, std::string(what) + " template is empty inside the bin layout");
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

void BinnedModel::validate() const {
  const std::size_t n = observed.size();
  if (n < 2) fail(ErrorCode::InvalidArgument, "binned model needs at least two bins");
  if (background.size() != n || signal.size() != n)
    fail(ErrorCode::InvalidArgument, "template and observed bin counts differ");
  double sb = 0.0, ss = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(background[j] >= 0.0) || !(signal[j] >= 0.0) || !(observed[j] >= 0.0))
      fail(ErrorCode::InvalidArgument, "binned model entries must be non-negative");
    sb += background[j];
    ss += signal[j];
  }
  if (std::abs(sb - 1.0) > 1e-9 || std::abs(ss - 1.0) > 1e-9)
    fail(ErrorCode::InvalidArgument, "background and signal templates must each sum to 1");
  for (std::size_t j = 0; j < n; ++j)
    if (observed[j] > 0.0 && background[j] == 0.0 && signal[j] == 0.0)
      fail(ErrorCode::Numeric, "bin " + std::to_string(j) +
                                   " is occupied but has zero probability under both templates");
}

BinnedModel make_binned_model(const BinLayout& layout, const PointSet& background, const PointSet& signal,
                              const PointSet& data) {
  BinnedModel m{normalized(bin_contents(layout, background), "background"),
                normalized(bin_contents(layout, signal), "signal"), bin_contents(layout, data)};
  m.validate();
  return m;
}

BinnedModel make_asimov_model(std::vector<double> background, std::vector<double> signal, double alpha,
                              double total) {
  BinnedModel m{normalized(std::move(background), "background"), normalized(std::move(signal), "signal"), {}};
  m.observed.resize(m.background.size());
  for (std::size_t j = 0; j < m.observed.size(); ++j)
    m.observed[j] = total * ((1.0 - alpha) * m.background[j] + alpha * m.signal[j]);
  m.validate();
  return m;
}

double MstConstraint::penalty(double alpha) const {
  const double d = mu_obs - mu_at(alpha);
  return d * d / (sigma_l * sigma_l);
}

PointSet draw_mixture(const PointSet& background, const PointSet& signal, double alpha, std::size_t count,
                      std::uint64_t seed) {
  if (background.dimension() != signal.dimension())
    fail(ErrorCode::InvalidArgument, "background and signal pools have different dimensions");
  Rng rng(seed);
  std::vector<char> is_signal(count);
  std::size_t n_sig = 0;
  for (auto& f : is_signal) {
    f = rng.uniform() < alpha;
    n_sig += f;
  }
  const std::size_t n_bg = count - n_sig;
  if (n_sig > signal.size() || n_bg > background.size())
    fail(ErrorCode::InvalidArgument, "calibration pools are too small for a " + std::to_string(count) +
                                         "-event mixture at alpha = " + std::to_string(alpha));

  // Partial Fisher-Yates: the first n entries become a uniform draw without
  // replacement.
  auto pick = [&rng](std::size_t pool, std::size_t n) {
    std::vector<std::size_t> idx(pool);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) std::swap(idx[i], idx[i + rng.below(pool - i)]);
    idx.resize(n);
    return idx;
  };
  const auto bg_idx = pick(background.size(), n_bg);
  const auto sg_idx = pick(signal.size(), n_sig);

  PointSet out(background.dimension(), background.feature_names());
  out.reserve(count);
  std::size_t ib = 0, is = 0;
  for (char f : is_signal) {
    const PointSet& src = f ? signal : background;
    const std::size_t i = f ? sg_idx[is++] : bg_idx[ib++];
    out.add(src.coords(i), src.weight(i), src.label(i));
  }
  return out;
}

Calibration calibrate_mu_vs_alpha(const PointSet& background, const PointSet& signal,
                                  const CalibrationOptions& opt) {
  if (background.empty() || signal.empty()) fail(ErrorCode::InvalidArgument, "calibration pools must be non-empty");
  if (opt.alphas.size() < 2) fail(ErrorCode::InvalidArgument, "calibration needs at least two alpha values");
  for (double a : opt.alphas)
    if (!(a >= 0.0 && a <= 1.0)) fail(ErrorCode::InvalidArgument, "calibration alphas must lie in [0, 1]");
  if (std::all_of(opt.alphas.begin(), opt.alphas.end(), [&](double a) { return a == opt.alphas.front(); }))
    fail(ErrorCode::InvalidArgument, "calibration alphas are all equal; slope undefined");
  if (opt.trials < 2) fail(ErrorCode::InvalidArgument, "calibration needs at least two trials per alpha");

  Calibration cal;
  cal.sample_size = opt.sample_size ? opt.sample_size : background.size();
  cal.alphas = opt.alphas;
  if (cal.sample_size < 2) fail(ErrorCode::InvalidArgument, "calibration sample size must be >= 2");

  double pooled_var = 0.0;
  for (std::size_t ia = 0; ia < opt.alphas.size(); ++ia) {
    const double alpha = opt.alphas[ia];
    std::vector<double> mus;
    for (std::size_t t = 0; t < opt.trials; ++t) {
      const std::uint64_t s = derive_seed(opt.seed, ia * opt.trials + t);
      Tree tree = build_mst_kruskal(draw_mixture(background, signal, alpha, cal.sample_size, s));
      const double mu = mean_log_normalized_length(tree);
      mus.push_back(mu);
      cal.samples.push_back({alpha, mu});
    }
    const double mean = std::accumulate(mus.begin(), mus.end(), 0.0) / static_cast<double>(mus.size());
    double ss = 0.0;
    for (double mu : mus) ss += (mu - mean) * (mu - mean);
    const double var = ss / static_cast<double>(mus.size() - 1);
    cal.mean_mu.push_back(mean);
    cal.sd_mu.push_back(std::sqrt(var));
    pooled_var += var;
  }
  cal.sigma_l = std::sqrt(pooled_var / static_cast<double>(opt.alphas.size()));
  if (!(cal.sigma_l > 0.0)) fail(ErrorCode::Numeric, "mu_l has zero spread across trials; sigma_l undefined");

  // Ordinary least squares on every (alpha, mu) sample.
  const auto n = static_cast<double>(cal.samples.size());
  double ma = 0.0, mm = 0.0;
  for (const auto& s : cal.samples) {
    ma += s.alpha;
    mm += s.mu_l;
  }
  ma /= n;
  mm /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : cal.samples) {
    sxx += (s.alpha - ma) * (s.alpha - ma);
    sxy += (s.alpha - ma) * (s.mu_l - mm);
  }
  cal.slope = sxy / sxx;
  cal.intercept = mm - cal.slope * ma;
  double rss = 0.0;
  for (const auto& s : cal.samples) {
    const double r = s.mu_l - (cal.intercept + cal.slope * s.alpha);
    rss += r * r;
  }
  const double s2 = n > 2.0 ? rss / (n - 2.0) : 0.0;
  cal.slope_se = std::sqrt(s2 / sxx);
  cal.intercept_se = std::sqrt(s2 * (1.0 / n + ma * ma / sxx));
  return cal;
}

double q_baseline(const BinnedModel& model, double alpha) {
  double q = 0.0;
  for (std::size_t j = 0; j < model.observed.size(); ++j) {
    const double n = model.observed[j];
    if (n <= 0.0) continue;
    const double p = (1.0 - alpha) * model.background[j] + alpha * model.signal[j];
    if (!(p > 0.0)) return kInf;
    q -= 2.0 * n * std::log(p);
  }
  return q;
}

double q_value(const BinnedModel& model, const MstConstraint* constraint, double alpha) {
  const double q = q_baseline(model, alpha);
  return constraint ? q + constraint->penalty(alpha) : q;
}

namespace {

// Brent's localmin: golden-section search with parabolic interpolation steps.
double brent_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
  constexpr double golden = 0.3819660112501051;
  const double eps = 1e-10;
  double x = a + golden * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (a + b);
    const double tol1 = eps * std::abs(x) + tol;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) break;
    double p = 0.0, q = 0.0, r = 0.0;
    if (std::abs(e) > tol1) {
      r = (x - w) * (fx - fv);
      q = (x - v) * (fx - fw);
      p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0)
        p = -p;
      else
        q = -q;
      r = e;
      e = d;
    }
    if (std::abs(p) < std::abs(0.5 * q * r) && p > q * (a - x) && p < q * (b - x)) {
      d = p / q;
      const double u = x + d;
      if (u - a < tol2 || b - u < tol2) d = x < mid ? tol1 : -tol1;
    } else {
      e = (x < mid ? b : a) - x;
      d = golden * e;
    }
    const double u = x + (std::abs(d) >= tol1 ? d : (d > 0.0 ? tol1 : -tol1));
    const double fu = f(u);
    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return x;
}

// First point between `from` and `limit` where q reaches `target`, refined by
// bisection; nullopt when q stays below it.
std::optional<double> crossing(const std::function<double(double)>& q, double from, double limit, double target) {
  const int steps = 5000;
  const double h = (limit - from) / steps;
  double inside = from;
  for (int i = 1; i <= steps; ++i) {
    const double a = from + h * i;
    if (q(a) >= target) {
      double lo = inside, hi = a;
      for (int it = 0; it < 200 && lo != hi; ++it) {
        const double m = 0.5 * (lo + hi);
        if (m == lo || m == hi) break;
        (q(m) >= target ? hi : lo) = m;
      }
      return 0.5 * (lo + hi);
    }
    inside = a;
  }
  return std::nullopt;
}

}  // namespace

FitResult fit_alpha(const BinnedModel& model, const std::optional<MstConstraint>& constraint, const AlphaScan& scan) {
  model.validate();
  if (constraint && !(constraint->sigma_l > 0.0)) fail(ErrorCode::InvalidArgument, "sigma_l must be > 0");
  if (scan.grid_points < 3) fail(ErrorCode::InvalidArgument, "alpha scan needs at least 3 grid points");

  const MstConstraint* c = constraint ? &*constraint : nullptr;
  auto q = [&](double a) { return q_value(model, c, a); };

  FitResult out;
  out.mode = c ? FitMode::Augmented : FitMode::Baseline;

  const std::size_t g = scan.grid_points;
  std::size_t best = 0;
  double best_q = kInf;
  for (std::size_t i = 0; i < g; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(g - 1);
    const double qa = q(a);
    if (qa < best_q) {
      best_q = qa;
      best = i;
    }
  }
  if (!std::isfinite(best_q)) fail(ErrorCode::Numeric, "Q(alpha) is infinite over the whole [0, 1] scan");

  const double step = 1.0 / static_cast<double>(g - 1);
  const double lo = std::max(0.0, static_cast<double>(best) * step - step);
  const double hi = std::min(1.0, static_cast<double>(best) * step + step);
  auto finite_q = [&](double a) {
    const double v = q(a);
    return std::isfinite(v) ? v : 1e300;
  };
  const double refined = brent_minimize(finite_q, lo, hi, 1e-12);
  const double grid_alpha = static_cast<double>(best) * step;
  const double q_ref = q(refined);
  out.alpha_hat = q_ref <= best_q ? refined : grid_alpha;
  out.q_min = std::min(q_ref, best_q);

  const double target = out.q_min + 1.0;
  const auto right = crossing(q, out.alpha_hat, scan.search_hi, target);
  const auto left = crossing(q, out.alpha_hat, scan.search_lo, target);
  if (left) out.interval_lo = *left;
  if (right) out.interval_hi = *right;
  out.sigma_alpha = (left && right) ? 0.5 * (*right - *left) : kInf;

  const std::size_t cp = std::max<std::size_t>(scan.curve_points, 2);
  out.q_curve.reserve(cp);
  for (std::size_t i = 0; i < cp; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(cp - 1);
    out.q_curve.emplace_back(a, q(a));
    if (out.q_curve.back().second < out.q_min) {
      out.q_min = out.q_curve.back().second;
      out.alpha_hat = a;
    }
  }
  return out;
}

const char* to_string(FitMode mode) { return mode == FitMode::Augmented ? "augmented" : "baseline"; }

}  // namespace mstkit
