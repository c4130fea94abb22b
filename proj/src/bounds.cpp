#include "lcsgeo/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "lcsgeo/errors.hpp"

namespace lcsgeo {

namespace {

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

double ln_ek(double k) { return 1.0 + std::log(k); }

void require_unit(double v, const char* name) {
  if (!in_open_unit(v)) throw UsageError(fmt::format("{} = {} must lie in (0, 1)", name, v));
}

}  // namespace

void TheoremParams::validate() const {
  if (k == 0) throw UsageError("k must be >= 1");
  if (n == 0 || n % k != 0) throw UsageError(fmt::format("n = {} is not a positive multiple of k = {}", n, k));
  if (!(p1 > 0.0 && p1 < 1.0 && p2 > 1.0)) {
    throw UsageError(fmt::format("need 0 < p1 < 1 < p2, got p1 = {}, p2 = {}", p1, p2));
  }
  require_unit(eps, "eps");
  require_unit(eps1, "eps1");
  require_unit(eps2, "eps2");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw UsageError(fmt::format("delta = {} must be positive", delta));
  if (delta_star && !(delta < *delta_star)) {
    throw UsageError(fmt::format("delta = {} must be below the gap delta* = {}", delta, *delta_star));
  }
}

double LogValue::log10() const { return ln / std::numbers::ln10; }

double LogValue::value() const { return std::exp(ln); }

double entropy_e(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw UsageError(fmt::format("entropy argument {} outside [0, 1]", t));
  if (t == 0.0 || t == 1.0) return 0.0;
  return -t * std::log(t) - (1.0 - t) * std::log1p(-t);
}

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

BinomialBound binom_upper(std::uint64_t n, std::uint64_t m) {
  if (m < 1 || m > n) throw UsageError(fmt::format("binomial bound needs 1 <= m <= n, got n = {}, m = {}", n, m));
  const double nd = static_cast<double>(n), md = static_cast<double>(m);
  BinomialBound b;
  b.ln_bound = md * (1.0 + std::log(nd / md));
  b.ln_exact = std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) - std::lgamma(nd - md + 1.0);
  return b;
}

CardinalityBound cardinality_bound_improved(const TheoremParams& params) {
  params.validate();
  const double k = static_cast<double>(params.k), m = static_cast<double>(params.m());
  const double eps = params.eps;
  CardinalityBound c;
  c.ln_improved =
      m * (std::log((params.p2 - params.p1) * k) + eps * (ln_ek(k) - std::log(eps)) + entropy_e(eps));
  c.ln_basic = m * ln_ek(k);
  c.improved_is_smaller = c.ln_improved < c.ln_basic;
  return c;
}

LogValue length_event_bound(const TheoremParams& params, double eps) {
  const double k = static_cast<double>(params.k), n = static_cast<double>(params.n);
  const double rate = -ln_ek(k) / k + params.delta * params.delta * eps * eps / 16.0;
  return {-n * rate};
}

BoundReport thm1_bound(const TheoremParams& params) {
  params.validate();
  const double k = static_cast<double>(params.k);
  BoundReport r;
  r.name = "thm1";
  r.inputs = params;
  r.rate = -ln_ek(k) / k + params.delta * params.delta * params.eps * params.eps / 16.0;
  r.bound = {-static_cast<double>(params.n) * *r.rate};
  r.vacuous = r.bound.ln >= 0.0;
  r.notes.push_back("bounds P(length event fails); non-vacuous iff k > 16 ln(e k) / (eps^2 delta^2)");
  return r;
}

BoundReport thm2_bound(const TheoremParams& params) {
  BoundReport r = thm1_bound(params);
  r.name = "thm2";
  r.bound.ln += std::numbers::ln2;
  r.vacuous = r.bound.ln >= 0.0;
  r.notes.clear();
  r.notes.push_back("bounds P(some optimal alignment leaves the diagonal band); twice the thm1 value");
  r.notes.push_back(
      "delta is checked against the gap range (0, delta*); the reading (0, min(gamma*(p1), gamma*(p2))) is not "
      "enforced");
  return r;
}

BoundReport thm3_bound(const TheoremParams& params) {
  params.validate();
  const double k = static_cast<double>(params.k), n = static_cast<double>(params.n);
  const double eps = params.eps;
  BoundReport r;
  r.name = "thm3";
  r.inputs = params;
  r.rate = -ln_ek(k) / k + params.delta * params.delta * eps * eps / 64.0;
  const LogValue alignment{-n * *r.rate};
  const LogValue counting{n * (entropy_e(0.5 * eps) - std::numbers::ln2) / k};
  r.terms.push_back({"length_event", alignment, alignment.ln >= 0.0});
  r.terms.push_back({"property_counting", counting, counting.ln >= 0.0});
  r.bound = {log_add(alignment.ln, counting.ln)};
  r.vacuous = r.bound.ln >= 0.0;
  r.notes.push_back("requires q(k) <= (6k)^(-2/eps); first term decays iff k > 64 ln(e k) / (eps^2 delta^2)");
  return r;
}

LogValue required_q_basic(std::uint64_t k, double eps, double base) {
  if (k < 1) throw UsageError("k must be >= 1");
  require_unit(eps, "eps");
  if (!(base > 0.0)) throw UsageError("q base must be positive");
  return {-(2.0 / eps) * std::log(base * static_cast<double>(k))};
}

LogValue g_function(std::uint64_t k, double eps1, double eps2, double delta, double p1, double p2) {
  if (k < 1) throw UsageError("k must be >= 1");
  require_unit(eps1, "eps1");
  require_unit(eps2, "eps2");
  if (!(delta > 0.0)) throw UsageError("delta must be positive");
  if (!(p2 > p1)) throw UsageError("need p2 > p1");
  const double lnk3 = std::log(3.0 * static_cast<double>(k));
  const double inner = std::log(eps1 * eps1 * delta * delta) - std::log(p2 - p1) - std::log(16.0) - std::log(lnk3);
  return {inner / eps2};
}

ImprovedConditions improved_conditions(const TheoremParams& params) {
  params.validate();
  const double k = static_cast<double>(params.k);
  const double e1 = params.eps1, e2 = params.eps2, d = params.delta, w = params.p2 - params.p1;
  const double small_factors = e1 * (ln_ek(k) - std::log(e1)) + entropy_e(e1) + entropy_e(e2);
  ImprovedConditions c;
  c.k_condition_rhs = 16.0 * ln_ek(k) / (e1 * e1 * d * d);
  c.k_condition = k > c.k_condition_rhs;
  c.q_threshold = {-(std::log(w * k) + small_factors) / e2};
  c.combined = {(std::log(e1 * e1 * d * d) - std::log(w) - std::log(16.0) - std::log(ln_ek(k)) - small_factors) / e2};
  c.g = g_function(params.k, e1, e2, d, params.p1, params.p2);
  return c;
}

std::uint64_t minimal_k(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw UsageError(fmt::format("bad constant {}", c));
  auto holds = [c](std::uint64_t k) {
    const double kd = static_cast<double>(k);
    return kd > c * ln_ek(kd);
  };
  if (holds(1)) return 1;
  std::uint64_t hi = 2;
  while (!holds(hi)) {
    if (hi > (std::uint64_t{1} << 62)) throw ResourceError("minimal k search overflowed");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // holds(lo) is false
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

FeasibilityReport feasibility_report(const FeasibilityQuery& query) {
  require_unit(query.eps, "eps");
  if (!(query.delta > 0.0)) throw UsageError("delta must be positive");
  if (!(query.p1 > 0.0 && query.p1 < 1.0 && query.p2 > 1.0)) throw UsageError("need 0 < p1 < 1 < p2");
  if (query.eps1.has_value() != query.eps2.has_value()) throw UsageError("eps1 and eps2 go together");
  if (query.q_hat && !(*query.q_hat >= 0.0 && *query.q_hat <= 1.0)) throw UsageError("q_hat must lie in [0, 1]");
  if (query.k && *query.k < 1) throw UsageError("k must be >= 1");

  FeasibilityReport r;
  r.query = query;
  const double e2d2 = query.eps * query.eps * query.delta * query.delta;
  r.k_rhs_thm1 = 16.0 / e2d2;
  r.k_rhs_thm3 = 64.0 / e2d2;
  r.k_min_thm1 = minimal_k(r.k_rhs_thm1);
  r.k_min_thm3 = minimal_k(r.k_rhs_thm3);
  r.q_basic = required_q_basic(query.k.value_or(r.k_min_thm3), query.eps, query.q_base);
  r.governing = r.q_basic;

  if (query.eps1) {
    r.has_improved = true;
    const double e1 = *query.eps1, e2 = *query.eps2;
    require_unit(e1, "eps1");
    require_unit(e2, "eps2");
    r.k_rhs_improved = 16.0 / (e1 * e1 * query.delta * query.delta);
    r.k_min_improved = minimal_k(r.k_rhs_improved);
    r.k_used = query.k.value_or(r.k_min_improved);
    TheoremParams params;
    params.k = r.k_used;
    params.n = r.k_used;
    params.eps = query.eps;
    params.eps1 = e1;
    params.eps2 = e2;
    params.p1 = query.p1;
    params.p2 = query.p2;
    params.delta = query.delta;
    const auto cond = improved_conditions(params);
    r.q_improved = cond.q_threshold;
    r.q_combined = cond.combined;
    r.q_g = cond.g;
    r.q_simplified = {-std::log((query.p2 - query.p1) * static_cast<double>(r.k_used)) / e2};
    r.governing = r.q_improved;
  } else {
    r.k_used = query.k.value_or(r.k_min_thm3);
  }

  if (query.q_hat) {
    const double ln_q = std::log(*query.q_hat);
    r.margin_log10 = (ln_q - r.governing.ln) / std::numbers::ln10;
    r.verdict = ln_q <= r.governing.ln ? "q_hat meets threshold" : "q_hat too large";
  } else {
    const double t = r.governing.log10();
    if (t >= kFeasibleLog10) {
      r.verdict = "feasible for Monte Carlo";
    } else if (t > kDifficultLog10) {
      r.verdict = "difficult for Monte Carlo";
    } else {
      r.verdict = "infeasible for Monte Carlo";
    }
  }
  return r;
}

}  // namespace lcsgeo
