#include <doctest.h>

#include <cmath>

#include "lcsgeo/errors.hpp"
#include "lcsgeo/gamma.hpp"
#include "oracles.hpp"

using namespace lcsgeo;

TEST_CASE("p and q conversions are inverse") {
  CHECK(convert_p_to_q(1.0) == 0.0);
  CHECK(convert_p_to_q(3.0) == doctest::Approx(0.5));
  for (double p : {0.1, 0.5, 1.0, 2.0, 7.5}) CHECK(convert_q_to_p(convert_p_to_q(p)) == doctest::Approx(p));
  CHECK_THROWS_AS(convert_p_to_q(0.0), UsageError);
  CHECK_THROWS_AS(convert_p_to_q(-1.0), UsageError);
  CHECK_THROWS_AS(convert_q_to_p(1.0), UsageError);
  CHECK_THROWS_AS(convert_q_to_p(-1.0), UsageError);
}

TEST_CASE("floor_length absorbs representation error") {
  CHECK(floor_length(0.7 * 10) == 7);
  CHECK(floor_length(6.9999999999999) == 7);
  CHECK(floor_length(6.99) == 6);
  CHECK(floor_length(-0.5) == 0);
  CHECK(floor_length(1.1 * 100) == 110);
}

TEST_CASE("n = 1, p = 1 has mean exactly one half") {
  const auto d = AlphabetDistribution::named("binary-uniform");
  const auto est = estimate_gamma_star(d, 1.0, 1, 40000, 1);
  // one trial is 0 or 1: the sample mean is within 5 stderr of 1/2
  CHECK(std::abs(est.mean - 0.5) < 5.0 * std::sqrt(0.25 / 40000));
  CHECK(est.len_x == 1);
  CHECK(est.len_y == 1);
}

TEST_CASE("small n agrees with exact enumeration") {
  const auto d = AlphabetDistribution::named("binary-uniform");
  for (std::size_t n : {2u, 3u, 4u}) {
    const double exact = oracle::exact_mean_lcs_binary(n, n) / static_cast<double>(n);
    const auto est = estimate_gamma_star(d, 1.0, n, 50000, 3);
    CHECK(std::abs(est.mean - exact) < 4.0 * est.stderr_mean);
  }
  // p = 2 at n = 2: lengths 2 and 4, scale 3
  const double exact = oracle::exact_mean_lcs_binary(2, 4) / 3.0;
  const auto est = estimate_gamma_star(d, 2.0, 2, 50000, 3);
  CHECK(est.len_y == 4);
  CHECK(est.scale == doctest::Approx(3.0));
  CHECK(std::abs(est.mean - exact) < 4.0 * est.stderr_mean);
}

TEST_CASE("estimates are identical across thread counts") {
  const auto d = AlphabetDistribution::named("binary-uniform");
  const auto a = estimate_gamma_star(d, 0.7, 200, 300, 9, 1);
  const auto b = estimate_gamma_star(d, 0.7, 200, 300, 9, 4);
  CHECK(a.score_sum == b.score_sum);
  CHECK(a.score_sq_sum == b.score_sq_sum);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_mean == b.stderr_mean);
  const auto c = estimate_gamma_star(d, 0.7, 200, 300, 10, 4);
  CHECK(c.score_sum != a.score_sum);
}

TEST_CASE("q parametrisation uses lengths n - nq and n + nq") {
  const auto d = AlphabetDistribution::named("binary-uniform");
  const auto est = estimate_gamma_q(d, 0.2, 100, 50, 2);
  CHECK(est.len_x == 80);
  CHECK(est.len_y == 120);
  CHECK(est.scale == 100.0);
  CHECK(est.p == doctest::Approx(1.5));
  CHECK_THROWS_AS(estimate_gamma_q(d, 0.9999, 10, 5, 2), UsageError);
  CHECK_THROWS_AS(estimate_gamma_star(d, 0.01, 10, 5, 2), UsageError);
  CHECK_THROWS_AS(estimate_gamma_star(d, 1.0, 10, 0, 2), UsageError);
}

TEST_CASE("Hoeffding tail and half-width are inverse") {
  GammaEstimate est;
  est.p = 1.0;
  est.trials = 1000;
  const double t = est.hoeffding_halfwidth(0.05);
  CHECK(est.hoeffding_tail(t) == doctest::Approx(0.05));
  CHECK(est.range() == 1.0);
  CHECK_THROWS_AS(est.hoeffding_tail(0.0), UsageError);
  CHECK_THROWS_AS(est.hoeffding_halfwidth(1.5), UsageError);
}

TEST_CASE("sweep peaks near p = 1 and uses common random numbers") {
  const auto d = AlphabetDistribution::named("binary-uniform");
  const std::vector<double> grid{0.5, 0.75, 1.0, 1.5, 2.0};
  const auto curve = sweep_curve(d, grid, 200, 200, 5);
  REQUIRE(curve.estimates.size() == grid.size());
  CHECK(curve.violations.empty());
  // the argmax is within 2 joint stderr of p = 1
  const auto& best = curve.estimates[curve.argmax];
  const auto& one = curve.estimates[2];
  CHECK(best.mean - one.mean <= 2.0 * std::hypot(best.stderr_mean, one.stderr_mean));
  CHECK(curve.estimates[1].seed == curve.estimates[3].seed);
  CHECK_THROWS_AS(sweep_curve(d, {1.0, 0.5}, 10, 5, 1), UsageError);
  CHECK_THROWS_AS(sweep_curve(d, {}, 10, 5, 1), UsageError);
}

TEST_CASE("delta estimate is the smaller gap") {
  const auto d = AlphabetDistribution::named("binary-uniform");
  const auto est = estimate_delta(d, 0.5, 2.0, 300, 200, 4);
  CHECK(est.delta_star_hat == std::min(est.gap_p1, est.gap_p2));
  CHECK(est.delta_star_hat > 0.0);
  CHECK_FALSE(est.unverified);
  CHECK(est.ci_lo < est.delta_star_hat);
  CHECK_THROWS_AS(estimate_delta(d, 1.5, 2.0, 10, 5, 1), UsageError);
}
