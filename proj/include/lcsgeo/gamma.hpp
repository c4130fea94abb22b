#ifndef LCSGEO_GAMMA_HPP
#define LCSGEO_GAMMA_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lcsgeo/alphabet.hpp"

namespace lcsgeo {

/// q = (p - 1) / (p + 1), for p > 0.
double convert_p_to_q(double p);
/// p = (1 + q) / (1 - q), for q in (-1, 1).
double convert_q_to_p(double q);

/// floor(v) that tolerates representation error just below an integer.
std::size_t floor_length(double v);

/// Finite-n Monte Carlo estimate of the rescaled mean LCS. These are means at
/// a fixed n and sit below the n -> infinity limit; nothing is extrapolated.
struct GammaEstimate {
  double p = 1.0;
  double q = 0.0;
  std::size_t n = 0;
  std::size_t len_x = 0;
  std::size_t len_y = 0;
  double scale = 1.0;  // divisor applied to each LCS value
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t score_sum = 0;     // exact sum of LCS values
  std::uint64_t score_sq_sum = 0;  // exact sum of squared LCS values
  double mean = 0.0;
  double stderr_mean = 0.0;
  double ci_lo = 0.0;  // normal-approximation 95%
  double ci_hi = 0.0;

  /// Width of the range a single rescaled trial can take, 2 / (1 + p).
  double range() const { return 2.0 / (1.0 + p); }
  /// 2 exp(-2 trials t^2 / range^2): two-sided Hoeffding tail for a deviation t.
  double hoeffding_tail(double t) const;
  /// Half-width t with hoeffding_tail(t) = alpha.
  double hoeffding_halfwidth(double alpha = 0.05) const;
};

/// Mean of |LCS(X_1..X_n, Y_1..Y_floor(pn))| / (n (1 + p) / 2).
GammaEstimate estimate_gamma_star(const AlphabetDistribution& dist, double p, std::size_t n, std::size_t trials,
                                  std::uint64_t seed, unsigned threads = 0);

/// Mean of |LCS(X_1..X_floor(n - nq), Y_1..Y_floor(n + nq))| / n.
GammaEstimate estimate_gamma_q(const AlphabetDistribution& dist, double q, std::size_t n, std::size_t trials,
                               std::uint64_t seed, unsigned threads = 0);

struct MonotonicityViolation {
  std::size_t left = 0;  // grid indices of the offending neighbours
  std::size_t right = 0;
  double excess = 0.0;   // how far past the 2-stderr slack
};

/// Estimates along a grid of p values. Every grid point uses the same master
/// seed, so the curve is built from common random numbers.
struct GammaCurve {
  std::vector<double> grid;
  std::vector<GammaEstimate> estimates;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t argmax = 0;
  /// Neighbours breaking "non-decreasing up to p = 1, non-increasing after"
  /// by more than 2 joint standard errors. Flagged, never thrown.
  std::vector<MonotonicityViolation> violations;
};

GammaCurve sweep_curve(const AlphabetDistribution& dist, const std::vector<double>& grid, std::size_t n,
                       std::size_t trials, std::uint64_t seed, unsigned threads = 0);

struct DeltaEstimate {
  double p1 = 0.0;
  double p2 = 0.0;
  GammaEstimate at_one;
  GammaEstimate at_p1;
  GammaEstimate at_p2;
  double gap_p1 = 0.0;  // gamma(1) - gamma(p1)
  double gap_p2 = 0.0;  // gamma(1) - gamma(p2)
  double gap_p1_stderr = 0.0;
  double gap_p2_stderr = 0.0;
  double delta_star_hat = 0.0;  // min of the two gaps
  double stderr_delta = 0.0;    // of the minimising gap
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  /// The estimate is <= 0: the gap hypothesis cannot be confirmed at this n.
  bool unverified = false;
};

DeltaEstimate estimate_delta(const AlphabetDistribution& dist, double p1, double p2, std::size_t n,
                             std::size_t trials, std::uint64_t seed, unsigned threads = 0);

}  // namespace lcsgeo

#endif  // LCSGEO_GAMMA_HPP
