#ifndef LCSGEO_BOUNDS_HPP
#define LCSGEO_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lcsgeo {

/// Parameters shared by the probability bounds. All bounds are evaluated in
/// log space; n may go up to 1e18 and k up to 1e12.
struct TheoremParams {
  std::uint64_t n = 1000;
  std::uint64_t k = 2;
  double eps = 0.2;
  double eps1 = 0.1;
  double eps2 = 0.1;
  double p1 = 0.5;
  double p2 = 2.0;
  double delta = 0.1;
  /// Optional gap min(gamma*(1) - gamma*(p1), gamma*(1) - gamma*(p2)); when
  /// present delta must lie below it.
  std::optional<double> delta_star;

  std::uint64_t m() const { return n / k; }
  /// n = m k, 0 < p1 < 1 < p2, eps, eps1, eps2 in (0, 1), delta > 0.
  void validate() const;
};

/// A probability-scale quantity held as its natural log.
struct LogValue {
  double ln = 0.0;

  double log10() const;
  /// exp(ln); 0 or +inf outside double range.
  double value() const;
};

struct BoundTerm {
  std::string name;
  LogValue bound;
  bool vacuous = false;
};

/// value = exp(ln_value). A bound is vacuous when value >= 1; it is reported,
/// never clamped.
struct BoundReport {
  std::string name;
  LogValue bound;
  /// Rate r with bound = c exp(-n r) for the leading term, when meaningful.
  std::optional<double> rate;
  bool vacuous = false;
  std::vector<BoundTerm> terms;
  std::vector<std::string> notes;
  TheoremParams inputs;
};

/// -t ln t - (1 - t) ln(1 - t); 0 at both endpoints.
double entropy_e(double t);

/// ln(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

struct BinomialBound {
  double ln_bound = 0.0;  // m ln(e n / m)
  double ln_exact = 0.0;  // ln C(n, m)
};

/// C(n, m) <= (e n / m)^m, 1 <= m <= n.
BinomialBound binom_upper(std::uint64_t n, std::uint64_t m);

struct CardinalityBound {
  double ln_improved = 0.0;  // m ln((p2 - p1) k (e k / eps)^eps exp(H_e(eps)))
  double ln_basic = 0.0;     // m ln(e k)
  bool improved_is_smaller = false;
};

CardinalityBound cardinality_bound_improved(const TheoremParams& params);

/// exp(-n (-ln(e k)/k + delta^2 eps^2 / 16))
BoundReport thm1_bound(const TheoremParams& params);
/// Twice thm1_bound: the diagonal-band event.
BoundReport thm2_bound(const TheoremParams& params);
/// exp(-n (-ln(e k)/k + delta^2 eps^2 / 64)) + exp(n (H_e(eps/2) - ln 2) / k)
BoundReport thm3_bound(const TheoremParams& params);

/// Failure-probability bound for the length event with eps replaced by
/// `eps`; shared by thm1 and the property bounds.
LogValue length_event_bound(const TheoremParams& params, double eps);

/// (base k)^(-2/eps); the base defaults to 6.
LogValue required_q_basic(std::uint64_t k, double eps, double base = 6.0);

struct ImprovedConditions {
  bool k_condition = false;          // k > 16 ln(e k) / (eps1^2 delta^2)
  double k_condition_rhs = 0.0;
  LogValue q_threshold;              // required bound on q(k), k fixed
  LogValue combined;                 // k in (p2 - p1) k replaced by 16 ln(e k) / (eps1^2 delta^2)
  LogValue g;                        // simplified form, see g_function
};

ImprovedConditions improved_conditions(const TheoremParams& params);

/// (eps1^2 delta^2 / ((p2 - p1) 16 ln(3 k)))^(1 / eps2). It drops the
/// factors (e k / eps1)^eps1 exp(H_e(eps1) + H_e(eps2)) of the combined
/// condition and so sits above it.
LogValue g_function(std::uint64_t k, double eps1, double eps2, double delta, double p1, double p2);

/// Least integer k >= 1 with k > c ln(e k). Exponential then binary search.
std::uint64_t minimal_k(double c);

struct FeasibilityQuery {
  double eps = 0.2;
  double delta = 0.1;
  double p1 = 0.5;
  double p2 = 2.0;
  std::optional<double> eps1;
  std::optional<double> eps2;
  /// Evaluate the improved thresholds at this k instead of the minimal one.
  std::optional<std::uint64_t> k;
  std::optional<double> q_hat;
  double q_base = 6.0;
};

struct FeasibilityReport {
  FeasibilityQuery query;
  // basic route
  double k_rhs_thm1 = 0.0;  // 16 / (eps^2 delta^2)
  double k_rhs_thm3 = 0.0;  // 64 / (eps^2 delta^2)
  std::uint64_t k_min_thm1 = 0;
  std::uint64_t k_min_thm3 = 0;
  LogValue q_basic;  // at k_min_thm3
  // improved route, present when eps1 and eps2 are given
  bool has_improved = false;
  double k_rhs_improved = 0.0;  // 16 / (eps1^2 delta^2)
  std::uint64_t k_min_improved = 0;
  std::uint64_t k_used = 0;
  LogValue q_improved;    // per-k threshold at k_used
  LogValue q_combined;    // combined condition at k_used
  LogValue q_g;           // g at k_used
  LogValue q_simplified;  // ((p2 - p1) k)^(-1/eps2), the per-k threshold without the small factors
  // verdict
  LogValue governing;  // q_improved if present, else q_basic
  std::optional<double> margin_log10;  // log10(q_hat) - log10(governing)
  std::string verdict;
};

/// Thresholds on log10 q used by the verdict.
inline constexpr double kFeasibleLog10 = -8.0;
inline constexpr double kDifficultLog10 = -40.0;

FeasibilityReport feasibility_report(const FeasibilityQuery& query);

}  // namespace lcsgeo

#endif  // LCSGEO_BOUNDS_HPP
