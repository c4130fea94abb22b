#include "lcsgeo/gamma.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lcsgeo/errors.hpp"
#include "lcsgeo/lcs.hpp"
#include "lcsgeo/parallel.hpp"

namespace lcsgeo {

double convert_p_to_q(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw UsageError(fmt::format("p = {} must be positive", p));
  return (p - 1.0) / (p + 1.0);
}

double convert_q_to_p(double q) {
  if (!(q > -1.0 && q < 1.0)) throw UsageError(fmt::format("q = {} must lie in (-1, 1)", q));
  return (1.0 + q) / (1.0 - q);
}

std::size_t floor_length(double v) {
  if (!(v >= 0.0)) return 0;
  return static_cast<std::size_t>(std::floor(v + 1e-9 * std::max(1.0, v)));
}

double GammaEstimate::hoeffding_tail(double t) const {
  if (!(t > 0.0)) throw UsageError("Hoeffding deviation must be positive");
  const double r = range();
  return 2.0 * std::exp(-2.0 * static_cast<double>(trials) * t * t / (r * r));
}

double GammaEstimate::hoeffding_halfwidth(double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
  return range() * std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(trials)));
}

namespace {

GammaEstimate run_trials(const AlphabetDistribution& dist, std::size_t len_x, std::size_t len_y, double scale,
                         std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw UsageError("trials must be >= 1");
  std::vector<std::uint64_t> scores(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    const auto pair = sample_pair(dist, len_x, len_y, seed, t);
    scores[t] = lcs_length(pair.x.symbols(), pair.y.symbols());
  });
  GammaEstimate est;
  est.len_x = len_x;
  est.len_y = len_y;
  est.scale = scale;
  est.trials = trials;
  est.seed = seed;
  for (auto s : scores) {
    est.score_sum += s;
    est.score_sq_sum += s * s;
  }
  const double tn = static_cast<double>(trials);
  const double raw_mean = static_cast<double>(est.score_sum) / tn;
  const double raw_var =
      trials > 1 ? std::max(0.0, (static_cast<double>(est.score_sq_sum) - tn * raw_mean * raw_mean) / (tn - 1)) : 0.0;
  est.mean = raw_mean / scale;
  est.stderr_mean = std::sqrt(raw_var / tn) / scale;
  est.ci_lo = est.mean - 1.96 * est.stderr_mean;
  est.ci_hi = est.mean + 1.96 * est.stderr_mean;
  return est;
}

}  // namespace

GammaEstimate estimate_gamma_star(const AlphabetDistribution& dist, double p, std::size_t n, std::size_t trials,
                                  std::uint64_t seed, unsigned threads) {
  const double q = convert_p_to_q(p);
  const std::size_t len_y = floor_length(p * static_cast<double>(n));
  if (n == 0 || len_y == 0) throw UsageError(fmt::format("floor(p n) = 0 for p = {}, n = {}", p, n));
  auto est = run_trials(dist, n, len_y, static_cast<double>(n) * (1.0 + p) / 2.0, trials, seed, threads);
  est.p = p;
  est.q = q;
  est.n = n;
  return est;
}

GammaEstimate estimate_gamma_q(const AlphabetDistribution& dist, double q, std::size_t n, std::size_t trials,
                               std::uint64_t seed, unsigned threads) {
  const double p = convert_q_to_p(q);
  const double nd = static_cast<double>(n);
  const std::size_t len_x = floor_length(nd - nd * q);
  const std::size_t len_y = floor_length(nd + nd * q);
  if (len_x == 0 || len_y == 0) {
    throw UsageError(fmt::format("degenerate lengths ({}, {}) for q = {}, n = {}", len_x, len_y, q, n));
  }
  auto est = run_trials(dist, len_x, len_y, nd, trials, seed, threads);
  est.p = p;
  est.q = q;
  est.n = n;
  return est;
}

GammaCurve sweep_curve(const AlphabetDistribution& dist, const std::vector<double>& grid, std::size_t n,
                       std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (grid.empty()) throw UsageError("empty p grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw UsageError(fmt::format("grid value {} must be positive", grid[i]));
    if (i > 0 && !(grid[i] > grid[i - 1])) throw UsageError("grid must be strictly increasing");
  }
  GammaCurve curve;
  curve.grid = grid;
  curve.n = n;
  curve.trials = trials;
  curve.seed = seed;
  for (double p : grid) curve.estimates.push_back(estimate_gamma_star(dist, p, n, trials, seed, threads));

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (curve.estimates[i].mean > curve.estimates[curve.argmax].mean) curve.argmax = i;
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const auto& a = curve.estimates[i];
    const auto& b = curve.estimates[i + 1];
    const double slack = 2.0 * std::hypot(a.stderr_mean, b.stderr_mean);
    double excess = 0.0;
    if (grid[i + 1] <= 1.0) {
      excess = a.mean - b.mean - slack;  // should be non-decreasing
    } else if (grid[i] >= 1.0) {
      excess = b.mean - a.mean - slack;  // should be non-increasing
    }
    if (excess > 0.0) curve.violations.push_back({i, i + 1, excess});
  }
  return curve;
}

DeltaEstimate estimate_delta(const AlphabetDistribution& dist, double p1, double p2, std::size_t n,
                             std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (!(p1 > 0.0 && p1 < 1.0 && p2 > 1.0)) {
    throw UsageError(fmt::format("need 0 < p1 < 1 < p2, got p1 = {}, p2 = {}", p1, p2));
  }
  DeltaEstimate d;
  d.p1 = p1;
  d.p2 = p2;
  d.at_one = estimate_gamma_star(dist, 1.0, n, trials, seed, threads);
  d.at_p1 = estimate_gamma_star(dist, p1, n, trials, seed, threads);
  d.at_p2 = estimate_gamma_star(dist, p2, n, trials, seed, threads);
  d.gap_p1 = d.at_one.mean - d.at_p1.mean;
  d.gap_p2 = d.at_one.mean - d.at_p2.mean;
  // Treated as independent; common random numbers make the true error smaller.
  d.gap_p1_stderr = std::hypot(d.at_one.stderr_mean, d.at_p1.stderr_mean);
  d.gap_p2_stderr = std::hypot(d.at_one.stderr_mean, d.at_p2.stderr_mean);
  const bool first = d.gap_p1 <= d.gap_p2;
  d.delta_star_hat = first ? d.gap_p1 : d.gap_p2;
  d.stderr_delta = first ? d.gap_p1_stderr : d.gap_p2_stderr;
  d.ci_lo = d.delta_star_hat - 1.96 * d.stderr_delta;
  d.ci_hi = d.delta_star_hat + 1.96 * d.stderr_delta;
  d.unverified = !(d.delta_star_hat > 0.0);
  return d;
}

}  // namespace lcsgeo
