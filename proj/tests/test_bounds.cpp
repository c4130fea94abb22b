#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lcsgeo/bounds.hpp"
#include "lcsgeo/errors.hpp"
#include "lcsgeo/property.hpp"
#include "mpfr_oracle.hpp"

using namespace lcsgeo;

namespace {

struct MpfrRange {
  MpfrRange() { oracle::widen_mpfr_range(); }
} const mpfr_range;

// ln values are compared with a relative tolerance scaled by the size of the
// terms that cancel inside them.
void check_ln(double got, const oracle::Big& want, double scale) {
  const double w = log(want).to_double();
  CHECK(std::abs(got - w) <= 1e-9 * std::max({1.0, std::abs(w), scale}));
}

double ln_ek(double k) { return 1.0 + std::log(k); }

TheoremParams make(std::uint64_t k, std::uint64_t m, double eps, double delta) {
  TheoremParams p;
  p.k = k;
  p.n = k * m;
  p.eps = eps;
  p.eps1 = eps;
  p.eps2 = std::min(0.9, eps * 1.5);
  p.delta = delta;
  return p;
}

}  // namespace

TEST_CASE("natural-log entropy") {
  CHECK(entropy_e(0.2) == doctest::Approx(0.500402).epsilon(1e-6));
  CHECK(entropy_e(0.5) == doctest::Approx(std::numbers::ln2));
  CHECK(entropy_e(0.0) == 0.0);
  CHECK(entropy_e(1.0) == 0.0);
  for (double t : {0.01, 0.1, 0.3, 0.45}) CHECK(entropy_e(t) == doctest::Approx(entropy_e(1.0 - t)));
  CHECK_THROWS_AS(entropy_e(1.5), UsageError);
}

TEST_CASE("log_add") {
  CHECK(log_add(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)));
  CHECK(log_add(-INFINITY, 1.5) == 1.5);
  CHECK(log_add(1000.0, 1000.0) == doctest::Approx(1000.0 + std::numbers::ln2));
}

TEST_CASE("binomial upper bound") {
  const auto b = binom_upper(10, 3);
  CHECK(std::exp(b.ln_exact) == doctest::Approx(120.0));
  CHECK(std::exp(b.ln_bound) == doctest::Approx(743.93).epsilon(1e-4));
  // exhaustively against the product formula
  for (std::uint64_t n = 1; n <= 60; ++n) {
    double ln_c = 0.0;
    for (std::uint64_t m = 1; m <= n; ++m) {
      ln_c += std::log(static_cast<double>(n - m + 1)) - std::log(static_cast<double>(m));
      const auto r = binom_upper(n, m);
      CHECK(r.ln_exact == doctest::Approx(ln_c).epsilon(1e-10));
      CHECK(r.ln_exact <= r.ln_bound + 1e-9);
    }
  }
  CHECK(binom_upper(5, 5).ln_bound == doctest::Approx(5.0));
  CHECK_THROWS_AS(binom_upper(3, 0), UsageError);
  CHECK_THROWS_AS(binom_upper(3, 4), UsageError);
}

TEST_CASE("bounds agree with 256-bit evaluation of the closed forms") {
  for (std::uint64_t k : {2ull, 10ull, 1000ull, 1000000ull}) {
    for (std::uint64_t m : {1ull, 100ull, 1000000ull}) {
      for (double eps : {0.1, 0.3, 0.7}) {
        for (double delta : {0.05, 0.5, 2.0}) {
          const auto p = make(k, m, eps, delta);
          const double n = static_cast<double>(p.n), kd = static_cast<double>(k), md = static_cast<double>(m);
          CAPTURE(k);
          CAPTURE(m);
          CAPTURE(eps);
          CAPTURE(delta);
          const double scale16 = n * (ln_ek(kd) / kd + delta * delta * eps * eps / 16.0);
          check_ln(thm1_bound(p).bound.ln, oracle::length_event(n, kd, eps, delta, 16.0), scale16);
          check_ln(thm2_bound(p).bound.ln, oracle::Big(2.0) * oracle::length_event(n, kd, eps, delta, 16.0), scale16);

          const oracle::Big counting3 =
              exp(oracle::Big(n / kd) * (oracle::entropy(oracle::Big(eps / 2)) - log(oracle::Big(2.0))));
          const double scale64 = n * (ln_ek(kd) / kd + delta * delta * eps * eps / 64.0);
          check_ln(thm3_bound(p).bound.ln, oracle::length_event(n, kd, eps, delta, 64.0) + counting3, scale64);

          const double card_scale = md * (std::abs(std::log(1.5 * kd)) + eps * (ln_ek(kd) + std::abs(std::log(eps))) + 1);
          check_ln(cardinality_bound_improved(p).ln_improved, oracle::cardinality(md, kd, eps, p.p1, p.p2), card_scale);

          for (double q : {0.5, 1e-3, 1e-30}) {
            const double e1 = p.eps1, e2 = p.eps2;
            const double scale_a = n * (ln_ek(kd) / kd + delta * delta * e1 * e1 / 16.0);
            const double scale_b = md * (ln_ek(kd) + e2 * std::abs(std::log(q)) + 2.0 + std::abs(std::log(1.5 * kd)) +
                                         e1 * std::abs(std::log(e1)));
            check_ln(bound_event_B(p, q, EventBMode::kImproved).bound.ln,
                     oracle::improved_property_bound(n, kd, e1, e2, delta, p.p1, p.p2, q), std::max(scale_a, scale_b));
            check_ln(bound_event_B(p, q, EventBMode::kBasic).bound.ln,
                     oracle::basic_property_bound(n, kd, e1, e2, delta, q, std::numbers::e), std::max(scale_a, scale_b));
            check_ln(bound_event_B(p, q, EventBMode::kBasic, 3.0).bound.ln,
                     oracle::basic_property_bound(n, kd, e1, e2, delta, q, 3.0), std::max(scale_a, scale_b));
          }

          const auto cond = improved_conditions(p);
          check_ln(cond.combined.ln,
                   oracle::combined_condition(kd, p.eps1, p.eps2, delta, p.p1, p.p2),
                   (ln_ek(kd) * p.eps1 + 20.0 + std::abs(std::log(p.eps1 * p.eps1 * delta * delta))) / p.eps2);
        }
      }
    }
  }
}

TEST_CASE("vacuity flips exactly at the minimal k") {
  for (double eps : {0.2, 0.5, 0.9}) {
    for (double delta : {0.3, 1.0, 3.0}) {
      const double c = 16.0 / (eps * eps * delta * delta);
      const std::uint64_t kmin = minimal_k(c);
      CAPTURE(eps);
      CAPTURE(delta);
      CHECK_FALSE(thm1_bound(make(kmin, 1, eps, delta)).vacuous);
      if (kmin > 1) CHECK(thm1_bound(make(kmin - 1, 1, eps, delta)).vacuous);
      const double c3 = 64.0 / (eps * eps * delta * delta);
      const std::uint64_t k3 = minimal_k(c3);
      CHECK(thm3_bound(make(k3, 1, eps, delta)).rate.value() > 0.0);
      if (k3 > 1) CHECK(thm3_bound(make(k3 - 1, 1, eps, delta)).rate.value() <= 0.0);
    }
  }
}

TEST_CASE("minimal k is the least k with k > c ln(e k)") {
  for (double c : {0.0, 0.5, 1.0, 2.0, 10.0, 1600.0, 64.0 / (0.04 * 0.01), 1e9}) {
    const std::uint64_t k = minimal_k(c);
    const double kd = static_cast<double>(k);
    CAPTURE(c);
    CHECK(kd > c * ln_ek(kd));
    if (k > 1) CHECK_FALSE(kd - 1 > c * ln_ek(kd - 1));
  }
  CHECK(minimal_k(64.0 / (0.04 * 0.01)) == 2518253);
  CHECK_THROWS_AS(minimal_k(-1.0), UsageError);
}

TEST_CASE("extreme sizes stay finite in log space") {
  TheoremParams p;
  p.k = 1000000000000ull;
  p.n = 1000000ull * p.k;
  p.eps = 0.5;
  p.delta = 0.5;
  for (const auto& r : {thm1_bound(p), thm2_bound(p), thm3_bound(p), bound_event_B(p, 1e-300, EventBMode::kImproved)}) {
    CHECK(std::isfinite(r.bound.ln));
    CHECK(r.bound.value() == 0.0);
  }
  p.k = 2;
  p.n = 1000000000000000000ull;
  const auto r = thm1_bound(p);
  CHECK(std::isfinite(r.bound.ln));
  CHECK(r.vacuous);
  CHECK(std::isinf(r.bound.value()));
}

TEST_CASE("parameter validation") {
  TheoremParams p;
  p.n = 7;
  p.k = 2;
  CHECK_THROWS_AS(p.validate(), UsageError);
  p.n = 8;
  p.eps = 1.0;
  CHECK_THROWS_AS(p.validate(), UsageError);
  p.eps = 0.2;
  p.p1 = 1.2;
  CHECK_THROWS_AS(p.validate(), UsageError);
  p.p1 = 0.5;
  p.delta_star = 0.05;
  CHECK_THROWS_AS(p.validate(), UsageError);
  p.delta_star = 0.2;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("required q for the basic route") {
  CHECK(required_q_basic(1, 0.5).value() == doctest::Approx(1.0 / 1296.0));
  CHECK(required_q_basic(1260000, 0.2).log10() == doctest::Approx(-68.79).epsilon(1e-4));
  CHECK(required_q_basic(2, 0.5, 3.0).value() == doctest::Approx(1.0 / 1296.0));
  CHECK_THROWS_AS(required_q_basic(1, 2.0), UsageError);
  CHECK_THROWS_AS(required_q_basic(0, 0.5), UsageError);
}

TEST_CASE("g sits above the combined condition") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> eps(0.05, 0.5), delta(0.01, 1.0), logk(std::log(10.0), std::log(1e12));
  for (int t = 0; t < 2000; ++t) {
    TheoremParams p;
    p.k = static_cast<std::uint64_t>(std::exp(logk(rng)));
    p.n = p.k;
    p.eps1 = eps(rng);
    p.eps2 = eps(rng);
    p.delta = delta(rng);
    const auto c = improved_conditions(p);
    CHECK(c.g.ln >= c.combined.ln);
    CHECK(c.combined.ln < 0.0);
  }
  CHECK(g_function(10000000000ull, 0.1, 0.1, 0.2, 0.7, 1.3).log10() == doctest::Approx(-57.63).epsilon(1e-4));
}

TEST_CASE("improved conditions at the minimal k") {
  TheoremParams p;
  p.eps1 = 0.1;
  p.eps2 = 0.2;
  p.delta = 0.2;
  p.p1 = 0.8;
  p.p2 = 1.2;
  p.k = minimal_k(16.0 / (0.01 * 0.04));
  p.n = p.k;
  CHECK(p.k == 570146);
  const auto c = improved_conditions(p);
  CHECK(c.k_condition);
  CHECK(c.g.log10() == doctest::Approx(-26.805).epsilon(1e-4));
  CHECK(c.g.ln >= c.combined.ln);
  p.k -= 1;
  p.n = p.k;
  CHECK_FALSE(improved_conditions(p).k_condition);
}

TEST_CASE("feasibility verdicts") {
  FeasibilityQuery q;
  q.eps = 0.2;
  q.delta = 0.1;
  auto r = feasibility_report(q);
  CHECK(r.k_min_thm3 == 2518253);
  CHECK(r.verdict == "infeasible for Monte Carlo");
  CHECK_FALSE(r.has_improved);

  q.eps = 0.5;
  q.k = 1;
  r = feasibility_report(q);
  CHECK(r.governing.value() == doctest::Approx(1.0 / 1296.0));
  CHECK(r.verdict == "feasible for Monte Carlo");

  q.eps = 0.1;
  r = feasibility_report(q);
  CHECK(r.governing.log10() == doctest::Approx(-20.0 * std::log10(6.0)));
  CHECK(r.verdict == "difficult for Monte Carlo");

  q.eps = 0.5;
  q.q_hat = 1e-4;
  r = feasibility_report(q);
  CHECK(r.verdict == "q_hat meets threshold");
  CHECK(r.margin_log10.value() < 0.0);
  q.q_hat = 1e-3;
  r = feasibility_report(q);
  CHECK(r.verdict == "q_hat too large");
  CHECK(r.margin_log10.value() == doctest::Approx(-3.0 + 4.0 * std::log10(6.0)));

  FeasibilityQuery imp;
  imp.eps = 0.2;
  imp.eps1 = 0.1;
  imp.eps2 = 0.2;
  imp.delta = 0.2;
  r = feasibility_report(imp);
  CHECK(r.has_improved);
  CHECK(r.k_min_improved == 570146);
  CHECK(r.k_used == 570146);
  CHECK(r.governing.ln == r.q_improved.ln);
  CHECK(r.q_g.ln >= r.q_combined.ln);
  CHECK(r.q_simplified.ln >= r.q_improved.ln);

  imp.eps2.reset();
  CHECK_THROWS_AS(feasibility_report(imp), UsageError);
  FeasibilityQuery bad;
  bad.q_hat = 2.0;
  CHECK_THROWS_AS(feasibility_report(bad), UsageError);
}
