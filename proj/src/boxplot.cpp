#include "hddist/boxplot.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "hddist/error.hpp"
#include "hddist/parallel.hpp"
#include "hddist/quantile.hpp"

namespace hddist {

namespace {

constexpr double kTailTarget = 1.5;  // -0.5 - 1.5 == -2
constexpr int kMaxSolverIterations = 200;

// (1 - M^(-t)) / t with log M precomputed; continuous at t = 0.
double tail_ratio(double t, double log_m) {
  if (t == 0.0) return log_m;
  return -std::expm1(-t * log_m) / t;
}

double scaled_value(double x, const BoxplotVariable& v) {
  const double centred = x - v.median;
  if (centred < 0.0) return centred / (2.0 * v.lqr);
  if (centred > 0.0) return centred / (2.0 * v.uqr);
  return 0.0;
}

}  // namespace

double tail_offset(double y, double t) {
  const double log1py = std::log1p(y);
  if (t == 0.0) return log1py;
  return -std::expm1(-t * log1py) / t;
}

double solve_tail_exponent(double m) {
  if (!(m > 1.0) || !std::isfinite(m)) throw DomainError("solve_tail_exponent: need finite M > 1, got " + std::to_string(m));
  const double log_m = std::log(m);

  // g is strictly decreasing: g(lo) >= target >= g(hi) brackets the root.
  double lo = -1.0;
  double hi = 1.0;
  int iterations = 0;
  while (tail_ratio(lo, log_m) < kTailTarget && iterations < kMaxSolverIterations) {
    hi = lo;
    lo *= 2.0;
    ++iterations;
  }
  while (tail_ratio(hi, log_m) > kTailTarget && iterations < kMaxSolverIterations) {
    lo = hi;
    hi *= 2.0;
    ++iterations;
  }
  while (iterations < kMaxSolverIterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (tail_ratio(mid, log_m) > kTailTarget) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iterations;
  }
  // Return the bracket end with the smaller residual.
  const double r_lo = std::fabs(tail_ratio(lo, log_m) - kTailTarget);
  const double r_hi = std::fabs(tail_ratio(hi, log_m) - kTailTarget);
  return r_lo <= r_hi ? lo : hi;
}

BoxplotVariable fit_boxplot_variable(std::span<const double> column) {
  if (column.size() < 2) throw UsageError("fit_boxplot: need at least 2 observations");
  std::vector<double> sorted(column.begin(), column.end());
  std::sort(sorted.begin(), sorted.end());

  BoxplotVariable v;
  v.median = quantile_sorted(sorted, 0.5);
  double lqr = v.median - quantile_sorted(sorted, 0.25);
  double uqr = quantile_sorted(sorted, 0.75) - v.median;
  if (lqr <= 0.0 && uqr <= 0.0) {
    v.degenerate = true;
    return v;
  }
  // Heavy ties on one side: borrow the other half's quartile range.
  if (lqr <= 0.0) lqr = uqr;
  if (uqr <= 0.0) uqr = lqr;
  v.lqr = lqr;
  v.uqr = uqr;

  v.scaled_min = std::min(0.0, scaled_value(sorted.front(), v));
  v.scaled_max = std::max(0.0, scaled_value(sorted.back(), v));
  if (v.scaled_min < -2.0) v.t_lower = solve_tail_exponent(-v.scaled_min + 0.5);
  if (v.scaled_max > 2.0) v.t_upper = solve_tail_exponent(v.scaled_max + 0.5);
  return v;
}

BoxplotParams fit_boxplot(const DataMatrix& x) {
  if (x.n_rows() < 2) throw UsageError("fit_boxplot: need at least 2 observations");
  BoxplotParams params;
  params.variables.resize(x.n_cols());
  const auto p = static_cast<std::ptrdiff_t>(x.n_cols());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t j = 0; j < p; ++j) {
    params.variables[static_cast<std::size_t>(j)] = fit_boxplot_variable(x.column(static_cast<std::size_t>(j)));
  }
  return params;
}

double apply_boxplot_value(double x, const BoxplotVariable& v, bool cap) {
  if (v.degenerate) return 0.0;
  const double s = scaled_value(x, v);
  double out = s;
  if (s < -0.5 && v.t_lower) {
    out = -0.5 - tail_offset(-s - 0.5, *v.t_lower);
    // Inside the training range the exact image is within [-2, -0.5]; absorb
    // the solver's last-bit error at the minimum.
    if (s >= v.scaled_min) out = std::max(out, -2.0);
  } else if (s > 0.5 && v.t_upper) {
    out = 0.5 + tail_offset(s - 0.5, *v.t_upper);
    if (s <= v.scaled_max) out = std::min(out, 2.0);
  }
  if (cap) out = std::clamp(out, -2.0, 2.0);
  return out;
}

DataMatrix apply_boxplot(const DataMatrix& x, const BoxplotParams& params, bool cap) {
  if (params.variables.size() != x.n_cols()) {
    throw UsageError("apply_boxplot: params have " + std::to_string(params.variables.size()) +
                     " variables, data has " + std::to_string(x.n_cols()));
  }
  DataMatrix out(x.n_rows(), x.n_cols());
  const auto p = static_cast<std::ptrdiff_t>(x.n_cols());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t jj = 0; jj < p; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const auto src = x.column(j);
    auto dst = out.column(j);
    const auto& v = params.variables[j];
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = apply_boxplot_value(src[i], v, cap);
  }
  return out;
}

std::string BoxplotParams::to_json() const {
  nlohmann::json doc;
  doc["transform"] = "boxplot";
  auto& vars = doc["variables"] = nlohmann::json::array();
  for (const auto& v : variables) {
    nlohmann::json rec = {
        {"median", v.median},         {"lqr", v.lqr},
        {"uqr", v.uqr},               {"degenerate", v.degenerate},
        {"scaled_min", v.scaled_min}, {"scaled_max", v.scaled_max},
    };
    rec["t_lower"] = v.t_lower ? nlohmann::json(*v.t_lower) : nlohmann::json(nullptr);
    rec["t_upper"] = v.t_upper ? nlohmann::json(*v.t_upper) : nlohmann::json(nullptr);
    vars.push_back(std::move(rec));
  }
  return doc.dump(1);
}

BoxplotParams BoxplotParams::from_json(const std::string& text) {
  BoxplotParams params;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& rec : doc.at("variables")) {
      BoxplotVariable v;
      v.median = rec.at("median").get<double>();
      v.lqr = rec.at("lqr").get<double>();
      v.uqr = rec.at("uqr").get<double>();
      v.degenerate = rec.at("degenerate").get<bool>();
      v.scaled_min = rec.at("scaled_min").get<double>();
      v.scaled_max = rec.at("scaled_max").get<double>();
      if (!rec.at("t_lower").is_null()) v.t_lower = rec.at("t_lower").get<double>();
      if (!rec.at("t_upper").is_null()) v.t_upper = rec.at("t_upper").get<double>();
      if (v.lqr < 0.0 || v.uqr < 0.0) throw FormatError("boxplot params: negative quartile range");
      if (!v.degenerate && (v.lqr <= 0.0 || v.uqr <= 0.0)) throw FormatError("boxplot params: zero quartile range");
      params.variables.push_back(v);
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("boxplot params: ") + e.what());
  }
  return params;
}

}  // namespace hddist
