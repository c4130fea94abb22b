// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails, except those named with --known-failure N; their FAIL line
// is still printed.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "lcsgeo/blocks.hpp"
#include "lcsgeo/bounds.hpp"
#include "lcsgeo/cli.hpp"
#include "lcsgeo/gamma.hpp"
#include "lcsgeo/geometry.hpp"
#include "lcsgeo/lcs.hpp"
#include "lcsgeo/property.hpp"
#include "mpfr_oracle.hpp"
#include "oracles.hpp"

using namespace lcsgeo;

namespace {

// Tolerances and sizes, pinned.
constexpr double kEntropyTol = 1e-12;
constexpr double kRelTol = 1e-9;
constexpr double kStderrs = 3.0;
constexpr double kSweepSlack = 2.0;
constexpr double kMaxDeviation = 0.15;
constexpr std::size_t kGammaTrials = 100000;
constexpr std::size_t kRandomPairs = 10000;
constexpr std::uint64_t kGoldenSeed = 7;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::set<std::pair<std::size_t, std::size_t>> as_set(const std::vector<MatchPoint>& v) {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (auto p : v) s.insert({p.i, p.j});
  return s;
}

std::string common_text(const Sequence& x, const std::vector<IndexPair>& pairs) {
  std::string s;
  for (auto p : pairs) s += x.alphabet()->symbol(x[p.i - 1]);
  return s;
}

Outcome criterion1() {
  auto lcs_of = [](std::string_view a, std::string_view b) {
    auto alpha = alphabet_from_texts({a, b});
    return lcs_length(Sequence::from_text(a, alpha), Sequence::from_text(b, alpha));
  };
  auto alpha = alphabet_from_texts({"mother", "mutter"});
  const auto x = Sequence::from_text("mother", alpha), y = Sequence::from_text("mutter", alpha);
  const auto spelled = common_text(x, backtrace(x, y));
  const std::vector<MatchPoint> want{{1, 1}, {3, 3}, {3, 4}, {5, 5}, {6, 6}};
  Outcome o;
  o.pass = lcs_of("christian", "krystyan") == 5 && lcs_of("0010", "0110") == 3 && lcs_length(x, y) == 4 &&
           spelled == "mter" && match_points(x, y) == want;
  o.detail = fmt::format("christian/krystyan {}, 0010/0110 {}, mother/mutter {} spelling {}, {} match points",
                         lcs_of("christian", "krystyan"), lcs_of("0010", "0110"), lcs_length(x, y), spelled,
                         match_points(x, y).size());
  return o;
}

struct PairChecker {
  std::size_t pairs = 0;
  std::size_t partition_checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what, const oracle::Letters& x, const oracle::Letters& y) {
    if (failures++ == 0) {
      std::string s;
      for (auto c : x) s += std::to_string(c);
      s += "/";
      for (auto c : y) s += std::to_string(c);
      first_failure = what + " on " + s;
    }
  }

  // (b) match points against the union of every optimal alignment
  void alignments(const oracle::Letters& xv, const oracle::Letters& yv, const Sequence& x, const Sequence& y) {
    oracle::SuffixLcs f(xv, yv);
    if (as_set(match_points(x, y)) != f.alignment_union()) fail("match points", xv, yv);
  }

  // (c) and (d): best partition, events A and B against enumeration
  void partitions(const oracle::Letters& xv, const oracle::Letters& yv, const Sequence& x, const Sequence& y,
                  std::size_t lcs, bool with_strict) {
    const std::size_t n = xv.size();
    for (std::size_t k : {2u, 3u}) {
      if (n == 0 || n % k != 0) continue;
      ++partition_checks;
      if (best_partition(x, y, k).score != lcs) fail(fmt::format("best partition k={}", k), xv, yv);
      const EventAParams a_params{0.3, 0.5, 2.0, k};
      const auto spec = PropertySpec::lcs_ratio(0.5);
      const double kd = static_cast<double>(k);
      for (bool strict : {false, true}) {
        if (strict && !with_strict) continue;
        const auto policy = strict ? CutPolicy::kStrict : CutPolicy::kWeak;
        const auto sa = oracle::summarise_partitions(xv, yv, k, strict, [&](auto, std::size_t a, std::size_t b, auto) {
          const double l = static_cast<double>(b - a);
          return kd * a_params.p1 <= l && l <= kd * a_params.p2 ? 1 : 0;
        });
        const auto ea = check_event_A(x, y, a_params, policy);
        if (ea.optimal_exists != (sa.optimal_count > 0) ||
            (sa.optimal_count > 0 && ea.min_good_over_optimal != sa.min_count)) {
          fail(fmt::format("event A k={} strict={}", k, strict), xv, yv);
        }
        const auto sb = oracle::summarise_partitions(
            xv, yv, k, strict, [&](auto, auto, auto, std::size_t block_lcs) { return 2 * block_lcs >= k ? 1 : 0; });
        const auto eb = check_event_B(x, y, k, 0.3, spec, policy);
        if (eb.optimal_exists != (sb.optimal_count > 0) ||
            (sb.optimal_count > 0 && eb.min_satisfying_over_optimal != sb.min_count)) {
          fail(fmt::format("event B k={} strict={}", k, strict), xv, yv);
        }
      }
    }
  }
};

Outcome criterion2() {
  PairChecker check;
  auto binary = oracle::digits(2);
  for (std::size_t n = 0; n <= 10; ++n) {
    const std::uint32_t count = 1u << n;
    std::vector<oracle::SubsequenceSet> subs(count);
    std::vector<oracle::Letters> letters(count);
    std::vector<Sequence> seqs;
    for (std::uint32_t c = 0; c < count; ++c) {
      subs[c] = oracle::SubsequenceSet::of(c, n);
      letters[c] = oracle::from_code(c, n);
      seqs.push_back(oracle::seq(letters[c], binary));
    }
    for (std::uint32_t a = 0; a < count; ++a) {
      for (std::uint32_t b = 0; b < count; ++b) {
        ++check.pairs;
        const std::size_t want = oracle::SubsequenceSet::longest_common(subs[a], subs[b]);
        const std::size_t got = lcs_length(seqs[a], seqs[b]);
        if (got != want) check.fail("LCS", letters[a], letters[b]);
        check.alignments(letters[a], letters[b], seqs[a], seqs[b]);
        check.partitions(letters[a], letters[b], seqs[a], seqs[b], want, n <= 8);
      }
    }
  }
  const std::size_t binary_pairs = check.pairs;

  auto ternary = oracle::digits(3);
  std::mt19937_64 rng(kGoldenSeed);
  for (std::size_t t = 0; t < kRandomPairs; ++t) {
    const auto xv = oracle::random_letters(rng, rng() % 13, 3);
    const auto yv = oracle::random_letters(rng, rng() % 13, 3);
    const auto x = oracle::seq(xv, ternary), y = oracle::seq(yv, ternary);
    ++check.pairs;
    if (lcs_length(x, y) != oracle::brute_lcs(xv, yv)) check.fail("LCS", xv, yv);
    check.alignments(xv, yv, x, y);
    // equal lengths for the block machinery
    const auto len = 1 + rng() % 12;
    const auto xe = oracle::random_letters(rng, len, 3), ye = oracle::random_letters(rng, len, 3);
    const auto sx = oracle::seq(xe, ternary), sy = oracle::seq(ye, ternary);
    check.partitions(xe, ye, sx, sy, oracle::table_lcs(xe, 0, len, ye, 0, len), true);
  }
  Outcome o;
  o.pass = check.failures == 0;
  o.detail = fmt::format("{} binary pairs (|x| = |y| <= 10) and {} ternary pairs, {} partition checks, {} mismatches{}",
                         binary_pairs, kRandomPairs, check.partition_checks, check.failures,
                         check.failures ? ", first: " + check.first_failure : "");
  return o;
}

Outcome criterion3(const std::filesystem::path& out_dir) {
  const auto dist = AlphabetDistribution::named("binary-uniform");
  const std::size_t n = 1000;
  const auto pair = sample_pair(dist, n, n, kGoldenSeed, 0);
  const auto env = envelope(pair.x, pair.y);
  const DiagonalBand band{0.5, 0.05, 2, n};
  const auto diag = check_diagonal_event(env, band);
  const double dev = max_rescaled_deviation(env);
  const auto svg_path = out_dir / "envelope_seed7.svg";
  write_text_file(svg_path, export_figure(env, band, FigureFormat::kSvg));
  const bool svg_ok = std::filesystem::file_size(svg_path) > 0;
  Outcome o;
  o.pass = diag.holds && dev < kMaxDeviation && svg_ok && !env.rows.empty();
  o.detail = fmt::format("seed {}, LCS {}, {} envelope rows, {} band violations, max deviation {:.4f} (< {}), svg {}",
                         kGoldenSeed, env.lcs, env.rows.size(), diag.violations.size(), dev, kMaxDeviation,
                         svg_path.string());
  return o;
}

Outcome criterion4() {
  const auto dist = AlphabetDistribution::named("binary-uniform");
  Outcome o;
  std::string parts;
  for (std::size_t n : {1u, 2u, 3u}) {
    const double exact = oracle::exact_mean_lcs_binary(n, n) / static_cast<double>(n);
    const auto est = estimate_gamma_star(dist, 1.0, n, kGammaTrials, kGoldenSeed);
    const double z = std::abs(est.mean - exact) / est.stderr_mean;
    const bool ok = z <= kStderrs && (n != 1 || exact == 0.5);
    o.pass = o.pass && ok;
    parts += fmt::format("n={} exact {:.6f} mc {:.6f} ({:.2f} se); ", n, exact, est.mean, z);
  }
  const std::vector<double> grid{0.5, 0.8, 1.0, 1.25, 2.0};
  const auto curve = sweep_curve(dist, grid, 300, 400, kGoldenSeed);
  const auto& best = curve.estimates[curve.argmax];
  const auto& one = curve.estimates[2];
  const double gap = best.mean - one.mean;
  const double slack = kSweepSlack * std::hypot(best.stderr_mean, one.stderr_mean);
  o.pass = o.pass && gap <= slack;
  parts += fmt::format("sweep n=300 argmax p={} ({:.4f}), gamma(1) {:.4f}, gap {:.4f} <= {:.4f}", grid[curve.argmax],
                       best.mean, one.mean, gap, slack);
  o.detail = parts;
  return o;
}

bool rel_close(double got, const oracle::Big& want, double scale) {
  const double w = log(want).to_double();
  return std::abs(got - w) <= kRelTol * std::max({1.0, std::abs(w), scale});
}

Outcome criterion5() {
  Outcome o;
  const bool entropy_ok = std::abs(entropy_e(0.5) - std::numbers::ln2) <= kEntropyTol;

  std::size_t grid = 0, binom_bad = 0;
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    for (std::uint64_t m = 1; m <= n; ++m) {
      const auto b = binom_upper(n, m);
      ++grid;
      if (b.ln_exact > b.ln_bound + 1e-9 * b.ln_bound) ++binom_bad;
    }
  }

  oracle::widen_mpfr_range();
  std::size_t evals = 0, mismatches = 0;
  auto expect = [&](double got, const oracle::Big& want, double scale) {
    ++evals;
    if (!rel_close(got, want, scale)) ++mismatches;
  };
  for (std::uint64_t k : {2ull, 50ull, 100000ull}) {
    for (std::uint64_t m : {1ull, 1000ull, 1000000000ull}) {
      for (double eps : {0.1, 0.2, 0.5}) {
        for (double delta : {0.1, 0.2, 1.0}) {
          TheoremParams p;
          p.k = k;
          p.n = k * m;
          p.eps = eps;
          p.eps1 = eps;
          p.eps2 = 0.2;
          p.delta = delta;
          const double n = static_cast<double>(p.n), kd = static_cast<double>(k), md = static_cast<double>(m);
          const double lek = 1.0 + std::log(kd);
          const double s16 = n * (lek / kd + delta * delta * eps * eps / 16.0);
          const double s64 = n * (lek / kd + delta * delta * eps * eps / 64.0);
          expect(thm1_bound(p).bound.ln, oracle::length_event(n, kd, eps, delta, 16.0), s16);
          expect(thm2_bound(p).bound.ln, oracle::Big(2.0) * oracle::length_event(n, kd, eps, delta, 16.0), s16);
          const oracle::Big counting =
              exp(oracle::Big(md) * (oracle::entropy(oracle::Big(eps / 2)) - log(oracle::Big(2.0))));
          expect(thm3_bound(p).bound.ln, oracle::length_event(n, kd, eps, delta, 64.0) + counting, s64);
          expect(cardinality_bound_improved(p).ln_improved, oracle::cardinality(md, kd, eps, p.p1, p.p2),
                 md * (std::log(1.5 * kd) + eps * (lek - std::log(eps)) + 1.0));
          for (double q : {1e-2, 1e-40}) {
            expect(bound_event_B(p, q, EventBMode::kImproved).bound.ln,
                   oracle::improved_property_bound(n, kd, eps, 0.2, delta, p.p1, p.p2, q),
                   std::max(s16, md * (lek + std::log(1.5 * kd) + 0.2 * -std::log(q) + 2.0 - eps * std::log(eps))));
          }
        }
      }
    }
  }
  o.pass = entropy_ok && binom_bad == 0 && mismatches == 0;
  o.detail = fmt::format("H_e(1/2) = ln 2 {}; binomial bound on {} (n, m) pairs, {} violations; {} 256-bit "
                         "comparisons, {} beyond {} relative",
                         entropy_ok ? "to 1e-12" : "MISMATCH", grid, binom_bad, evals, mismatches, kRelTol);
  return o;
}

bool within(double log10_value, double target, double orders) { return std::abs(log10_value - target) <= orders; }

Outcome criterion6() {
  Outcome o;
  std::vector<std::string> parts;
  auto record = [&](bool ok, std::string text) {
    o.pass = o.pass && ok;
    parts.push_back(fmt::format("{} [{}]", text, ok ? "ok" : "FAIL"));
  };

  FeasibilityQuery basic;
  basic.eps = 0.2;
  basic.delta = 0.1;
  const auto r = feasibility_report(basic);
  const double k_order = std::floor(std::log10(static_cast<double>(r.k_min_thm3)));
  record(within(k_order, 6.0, 3.0), fmt::format("k_min {} (order 1e{})", r.k_min_thm3, k_order));
  const auto q_paper_k = required_q_basic(1260000, 0.2);
  record(q_paper_k.log10() <= -66.0 && within(q_paper_k.log10(), -66.0, 3.0),
         fmt::format("q at k 1.26e6: 1e{:.2f}", q_paper_k.log10()));
  record(r.q_basic.log10() <= -66.0, fmt::format("q at k_min: 1e{:.2f}", r.q_basic.log10()));

  for (const double eps2 : {0.2, 0.3}) {
    FeasibilityQuery q;
    q.eps = 0.1 + eps2;
    q.delta = 0.2;
    q.p1 = 0.8;
    q.p2 = 1.2;
    q.eps1 = 0.1;
    q.eps2 = eps2;
    const auto imp = feasibility_report(q);
    const double target = eps2 == 0.2 ? -25.0 : -15.0;
    record(within(imp.q_g.log10(), target, 2.0),
           fmt::format("eps2 {}: g 1e{:.2f} vs 1e{} (full threshold 1e{:.2f})", eps2, imp.q_g.log10(), target,
                       imp.q_improved.log10()));
  }
  const double simplified = -std::log10(100.0) / 0.3;
  record(within(simplified, -5.0, 2.0), fmt::format("k 1000, (p2-p1)k 100: 1e{:.2f}", simplified));
  o.detail = fmt::format("{}", fmt::join(parts, "; "));
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto dist = AlphabetDistribution::named("binary-uniform");
  struct Instance {
    std::size_t n, k;
    double eps, p1, p2, delta;
  };
  const std::vector<Instance> instances{
      {60, 2, 0.2, 0.5, 2.0, 0.1}, {60, 3, 0.3, 0.5, 2.0, 0.1}, {96, 4, 0.1, 0.6, 1.6, 0.05}, {120, 6, 0.5, 0.5, 2.0, 0.2}};
  const std::size_t trials = 300;
  std::size_t flag_errors = 0, exceed = 0, non_vacuous = 0;
  std::vector<std::string> parts;
  for (const auto& in : instances) {
    std::size_t failures = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto pair = sample_pair(dist, in.n, in.n, kGoldenSeed, t);
      if (!check_event_A(pair.x, pair.y, EventAParams{in.eps, in.p1, in.p2, in.k}).holds) ++failures;
    }
    const double freq = static_cast<double>(failures) / static_cast<double>(trials);
    TheoremParams p;
    p.n = in.n;
    p.k = in.k;
    p.eps = in.eps;
    p.p1 = in.p1;
    p.p2 = in.p2;
    p.delta = in.delta;
    const auto b = thm1_bound(p);
    const double kd = static_cast<double>(in.k);
    const bool should_be_vacuous = kd <= 16.0 * (1.0 + std::log(kd)) / (in.eps * in.eps * in.delta * in.delta);
    if (b.vacuous != should_be_vacuous || b.vacuous != (b.bound.ln >= 0.0)) ++flag_errors;
    if (!b.vacuous) {
      ++non_vacuous;
      if (freq > b.bound.value()) ++exceed;
    }
    parts.push_back(fmt::format("n={} k={} freq {:.3f} bound 1e{:.1f}{}", in.n, in.k, freq, b.bound.log10(),
                                b.vacuous ? " (vacuous)" : ""));
  }
  // a large instance far beyond simulation must be flagged non-vacuous
  TheoremParams big;
  big.k = 10000000;
  big.n = big.k * 1000;
  big.eps = 0.5;
  big.delta = 0.5;
  const auto bb = thm1_bound(big);
  if (bb.vacuous) ++flag_errors;
  o.pass = flag_errors == 0 && exceed == 0;
  o.detail = fmt::format("{}; {} non-vacuous simulated, {} exceeded, {} flag errors; k=1e7 n=1e10 bound 1e{:.0f}",
                         fmt::join(parts, "; "), non_vacuous, exceed, flag_errors, bb.bound.log10());
  return o;
}

std::string run_to_string(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

Outcome criterion8(const std::filesystem::path& out_dir) {
  const auto cfg = out_dir / "determinism.json";
  {
    std::ofstream(cfg) << R"({"n": 150, "trials": 40, "seed": 11})";
  }
  const std::vector<std::vector<std::string>> commands{
      {"lcs", "--dist", "binary-uniform", "--n", "500", "--seed", "3", "--trial", "2", "--trace"},
      {"envelope", "--n", "400", "--seed", "7", "--csv", "-"},
      {"envelope", "--n", "300", "--seed", "7", "--svg", "-"},
      {"event-a", "--n", "64", "--seed", "5", "--k", "4"},
      {"event-b", "--n", "48", "--seed", "5", "--k", "4", "--property", "unique_lcs"},
      {"lemma-gap", "--n", "32", "--k", "4", "--cuts", "0,0,0,0,0,0,0,0,32", "--trials", "60", "--seed", "2"},
      {"gamma", "star", "--p", "0.8", "--n", "200", "--trials", "80", "--seed", "4"},
      {"gamma", "q", "--q", "0.2", "--n", "200", "--trials", "80", "--seed", "4"},
      {"gamma", "sweep", "--grid", "0.5,1,2", "--n", "120", "--trials", "40", "--seed", "4", "--format", "csv"},
      {"gamma", "delta", "--n", "150", "--trials", "60", "--seed", "4"},
      {"gamma", "star", "--config", cfg.string()},
      {"qk", "--property", "unique_lcs", "--k", "10", "--trials", "300", "--seed", "9", "--exact-below", "1000"},
      {"feasibility", "--eps", "0.2", "--delta", "0.1", "--eps1", "0.1", "--eps2", "0.2"},
      {"bounds", "thm3", "--k", "100", "--n", "10000", "--eps", "0.3", "--delta", "0.2"},
  };
  std::size_t mismatched = 0, errors = 0;
  std::string first;
  for (const auto& c : commands) {
    auto one = c, many = c;
    one.insert(one.end(), {"--threads", "1"});
    many.insert(many.end(), {"--threads", "3"});
    int c1 = 0, c2 = 0, c3 = 0;
    const auto a = run_to_string(one, c1), b = run_to_string(one, c2), d = run_to_string(many, c3);
    if (c1 == kExitUsage || c1 == kExitIo || a.empty()) {
      ++errors;
      if (first.empty()) first = c[0];
    }
    if (a != b || a != d || c1 != c2 || c1 != c3) {
      ++mismatched;
      if (first.empty()) first = c[0];
    }
  }
  Outcome o;
  o.pass = mismatched == 0 && errors == 0;
  o.detail = fmt::format("{} seeded commands run three times (1 and 3 threads): {} differ, {} errored{}",
                         commands.size(), mismatched, errors, first.empty() ? "" : ", first: " + first);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path out_dir = std::filesystem::temp_directory_path() / "lcsgeo_acceptance";
  std::set<std::size_t> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--out-dir" && i + 1 < argc) {
      out_dir = argv[++i];
    } else if (arg == "--known-failure" && i + 1 < argc) {
      known.insert(std::stoul(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--out-dir DIR] [--known-failure N]...\n";
      return 2;
    }
  }
  std::filesystem::create_directories(out_dir);
  const std::vector<std::function<Outcome()>> criteria{
      criterion1,
      criterion2,
      [&] { return criterion3(out_dir); },
      criterion4,
      criterion5,
      criterion6,
      criterion7,
      [&] { return criterion8(out_dir); },
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool is_known = known.count(i + 1) > 0;
    std::cout << fmt::format("{} criterion {}: {} ({:.1f} s){}\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail, secs,
                             !o.pass && is_known ? " [known failure]" : "")
              << std::flush;
    if (!o.pass && !is_known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
