#include "lcsgeo/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "lcsgeo/errors.hpp"
#include "lcsgeo/lcs.hpp"
#include "lcsgeo/parallel.hpp"

namespace lcsgeo {

BlockPartition::BlockPartition(std::vector<std::size_t> cuts, std::size_t k) : cuts_(std::move(cuts)), k_(k) {
  if (k_ == 0) throw UsageError("block length k must be >= 1");
  if (cuts_.size() < 2) throw UsageError("a cut vector needs at least r_0 and r_m");
  if (cuts_.front() != 0) throw UsageError("cut vector must start at r_0 = 0");
  for (std::size_t i = 1; i < cuts_.size(); ++i) {
    if (cuts_[i] < cuts_[i - 1]) throw UsageError(fmt::format("cut r_{} decreases", i));
  }
  if (cuts_.back() != m() * k_) {
    throw UsageError(fmt::format("r_m = {} but m k = {}", cuts_.back(), m() * k_));
  }
}

bool BlockPartition::is_strict() const {
  for (std::size_t i = 1; i < cuts_.size(); ++i) {
    if (cuts_[i] == cuts_[i - 1]) return false;
  }
  return true;
}

BlockPartition BlockPartition::diagonal(std::size_t n, std::size_t k) {
  if (k == 0 || n % k != 0) throw UsageError(fmt::format("k = {} does not divide n = {}", k, n));
  std::vector<std::size_t> cuts;
  for (std::size_t r = 0; r <= n; r += k) cuts.push_back(r);
  return BlockPartition(std::move(cuts), k);
}

void EventAParams::validate() const {
  if (!(p1 > 0.0 && p1 < 1.0 && p2 > 1.0)) {
    throw UsageError(fmt::format("need 0 < p1 < 1 < p2, got p1 = {}, p2 = {}", p1, p2));
  }
  if (!(eps >= 0.0 && eps < 1.0)) throw UsageError(fmt::format("eps = {} must lie in [0, 1)", eps));
  if (k < 1) throw UsageError("k must be >= 1");
}

bool EventAParams::is_good_length(std::size_t l) const {
  const double kd = static_cast<double>(k);
  const double ld = static_cast<double>(l);
  const double tol = 1e-9 * kd;
  return kd * p1 - tol <= ld && ld <= kd * p2 + tol;
}

std::size_t proportion_threshold(double eps, std::size_t m) {
  const double target = (1.0 - eps) * static_cast<double>(m);
  return static_cast<std::size_t>(std::max(0.0, std::ceil(target - 1e-9)));
}

std::size_t count_good_lengths(const BlockPartition& part, const EventAParams& params) {
  std::size_t good = 0;
  for (std::size_t i = 1; i <= part.m(); ++i) good += params.is_good_length(part.length(i)) ? 1 : 0;
  return good;
}

namespace {

struct Shape {
  std::size_t n;
  std::size_t k;
  std::size_t m;
};

Shape check_shape(const Sequence& x, const Sequence& y, std::size_t k) {
  require_same_alphabet(x, y);
  if (x.size() != y.size()) {
    throw UsageError(fmt::format("block machinery needs |x| = |y|, got {} and {}", x.size(), y.size()));
  }
  if (x.empty()) throw UsageError("block machinery needs nonempty strings");
  if (k == 0 || x.size() % k != 0) throw UsageError(fmt::format("k = {} does not divide n = {}", k, x.size()));
  return {x.size(), k, x.size() / k};
}

// prefix(ik, .) and suffix(ik, .) for i = 0..m.
struct CutRows {
  std::vector<std::vector<std::uint32_t>> pre;
  std::vector<std::vector<std::uint32_t>> suf;
  std::size_t lcs = 0;
};

CutRows cut_rows(std::span<const Symbol> x, std::span<const Symbol> y, std::size_t k) {
  const std::size_t n = x.size(), cols = y.size() + 1, m = n / k;
  CutRows rows;
  rows.pre.assign(m + 1, {});
  rows.suf.assign(m + 1, {});
  std::vector<std::uint32_t> prev(cols, 0), cur(cols, 0);
  rows.pre[0] = prev;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = 0;
    for (std::size_t j = 1; j < cols; ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
    if (i % k == 0) rows.pre[i / k] = prev;
  }
  std::fill(prev.begin(), prev.end(), 0);
  rows.suf[m] = prev;
  for (std::size_t i = n; i-- > 0;) {
    cur[cols - 1] = 0;
    for (std::size_t j = cols - 1; j-- > 0;) {
      cur[j] = x[i] == y[j] ? prev[j + 1] + 1 : std::max(prev[j], cur[j + 1]);
    }
    std::swap(prev, cur);
    if (i % k == 0) rows.suf[i / k] = prev;
  }
  rows.lcs = rows.pre[m][cols - 1];
  return rows;
}

struct Cell {
  bool reached = false;
  std::size_t score = 0;
  std::int64_t secondary = 0;
};

bool better(std::size_t score, std::int64_t secondary, const Cell& cur) {
  if (!cur.reached) return true;
  if (score != cur.score) return score > cur.score;
  return secondary < cur.secondary;
}

}  // namespace

std::size_t constrained_score(const Sequence& x, const Sequence& y, const BlockPartition& part) {
  const Shape shape = check_shape(x, y, part.k());
  if (part.n() != shape.n) throw UsageError(fmt::format("partition covers {} letters, strings have {}", part.n(), shape.n));
  const auto xs = x.symbols();
  const auto ys = y.symbols();
  std::size_t total = 0;
  for (std::size_t i = 1; i <= part.m(); ++i) {
    total += lcs_length(xs.subspan((i - 1) * part.k(), part.k()),
                        ys.subspan(part.cuts()[i - 1], part.length(i)));
  }
  return total;
}

LexicographicResult lexicographic_partition(const Sequence& x, const Sequence& y, std::size_t k,
                                            const BlockCost& cost, bool optimal_cuts_only, CutPolicy policy) {
  const Shape shape = check_shape(x, y, k);
  const std::size_t n = shape.n, m = shape.m;
  const auto xs = x.symbols();
  const auto ys = y.symbols();
  const bool strict = policy == CutPolicy::kStrict;

  CutRows rows;
  if (optimal_cuts_only) rows = cut_rows(xs, ys, k);
  auto allowed = [&](std::size_t i, std::size_t b) {
    return !optimal_cuts_only || rows.pre[i][b] + rows.suf[i][b] == rows.lcs;
  };
  // Admissible cut positions for r_i.
  auto lo_cut = [&](std::size_t i) { return strict ? i : std::size_t{0}; };
  auto hi_cut = [&](std::size_t i) { return strict ? n - (m - i) : n; };

  std::vector<Cell> prev(n + 1), cur(n + 1);
  std::vector<std::uint32_t> back((m + 1) * (n + 1), 0);
  prev[0] = {true, 0, 0};

  for (std::size_t i = 1; i <= m; ++i) {
    std::fill(cur.begin(), cur.end(), Cell{});
    const auto block = xs.subspan((i - 1) * k, k);
    const std::size_t b_lo = i == m ? n : lo_cut(i);
    const std::size_t b_hi = hi_cut(i);
    std::size_t last_allowed = 0;
    bool any_allowed = false;
    for (std::size_t b = b_lo; b <= b_hi; ++b) {
      if (allowed(i, b)) {
        last_allowed = b;
        any_allowed = true;
      }
    }
    if (!any_allowed) return {};
    for (std::size_t a = lo_cut(i - 1); a <= hi_cut(i - 1); ++a) {
      if (!prev[a].reached) continue;
      const std::size_t first_b = std::max(b_lo, strict ? a + 1 : a);
      if (first_b > last_allowed) continue;
      const auto w = block_row(block, ys, a, last_allowed);
      for (std::size_t b = first_b; b <= last_allowed; ++b) {
        if (!allowed(i, b)) continue;
        // Under the restriction only tight edges can lie on a maximiser.
        if (optimal_cuts_only && w[b] != rows.pre[i][b] - rows.pre[i - 1][a]) continue;
        const std::size_t score = prev[a].score + w[b];
        if (optimal_cuts_only || !cur[b].reached || score >= cur[b].score) {
          const std::int64_t secondary = prev[a].secondary + (cost ? cost(i, a, b, w[b]) : 0);
          if (better(score, secondary, cur[b])) {
            cur[b] = {true, score, secondary};
            back[i * (n + 1) + b] = static_cast<std::uint32_t>(a);
          }
        }
      }
    }
    std::swap(prev, cur);
  }
  if (!prev[n].reached) return {};

  LexicographicResult result;
  result.feasible = true;
  result.score = prev[n].score;
  result.secondary = prev[n].secondary;
  std::vector<std::size_t> cuts(m + 1, 0);
  cuts[m] = n;
  for (std::size_t i = m; i > 0; --i) cuts[i - 1] = back[i * (n + 1) + cuts[i]];
  result.witness = BlockPartition(std::move(cuts), k);
  return result;
}

BestPartition best_partition(const Sequence& x, const Sequence& y, std::size_t k, CutPolicy policy) {
  const auto result = lexicographic_partition(x, y, k, nullptr, false, policy);
  if (!result.feasible) throw UsageError("no admissible cut vector");
  return {result.score, result.witness};
}

EventAReport check_event_A(const Sequence& x, const Sequence& y, const EventAParams& params, CutPolicy policy) {
  params.validate();
  const Shape shape = check_shape(x, y, params.k);
  const std::size_t lcs = lcs_length(x, y);
  const auto result = lexicographic_partition(
      x, y, params.k,
      [&](std::size_t, std::size_t a, std::size_t b, std::size_t) -> std::int64_t {
        return params.is_good_length(b - a) ? 1 : 0;
      },
      true, policy);

  EventAReport report;
  report.m = shape.m;
  report.lcs = lcs;
  report.threshold = proportion_threshold(params.eps, shape.m);
  report.optimal_exists = result.feasible && result.score == lcs;
  if (!report.optimal_exists) {
    report.holds = true;
    return report;
  }
  report.min_good_over_optimal = static_cast<std::size_t>(result.secondary);
  report.witness = result.witness;
  report.holds = report.min_good_over_optimal >= report.threshold;
  return report;
}

std::vector<BlockPartition> enumerate_optimal_partitions(const Sequence& x, const Sequence& y, std::size_t k,
                                                         std::size_t cap, CutPolicy policy) {
  const Shape shape = check_shape(x, y, k);
  const std::size_t n = shape.n, m = shape.m;
  const auto xs = x.symbols();
  const auto ys = y.symbols();
  const CutRows rows = cut_rows(xs, ys, k);
  const bool strict = policy == CutPolicy::kStrict;

  std::vector<BlockPartition> found;
  std::size_t total = 0;
  std::vector<std::size_t> cuts(m + 1, 0);

  // score: L of the first i blocks under cuts[0..i]
  auto recurse = [&](auto&& self, std::size_t i, std::size_t score) -> void {
    if (score + rows.suf[i][cuts[i]] < rows.lcs) return;
    if (i == m) {
      if (cuts[m] != n) return;
      ++total;
      if (found.size() < cap) found.emplace_back(cuts, k);
      return;
    }
    const auto block = xs.subspan(i * k, k);
    const std::size_t a = cuts[i];
    const std::size_t first = i + 1 == m ? n : (strict ? a + 1 : a);
    const std::size_t last = strict ? n - (m - i - 1) : n;
    for (std::size_t b = first; b <= last; ++b) {
      cuts[i + 1] = b;
      self(self, i + 1, score + lcs_length(block, ys.subspan(a, b - a)));
    }
  };
  recurse(recurse, 0, 0);
  if (total > cap) {
    throw ResourceError(fmt::format("{} optimal cut vectors exceed the cap of {}", total, cap));
  }
  return found;
}

LemmaGapReport empirical_lemma_gap(const AlphabetDistribution& dist, std::size_t n, const EventAParams& params,
                                   const BlockPartition& r, std::size_t trials, std::uint64_t seed, double delta,
                                   unsigned threads) {
  params.validate();
  if (trials == 0) throw UsageError("trials must be >= 1");
  if (r.k() != params.k || r.n() != n) {
    throw UsageError(fmt::format("partition shape (n = {}, k = {}) does not match n = {}, k = {}", r.n(), r.k(), n,
                                 params.k));
  }
  const std::size_t threshold = proportion_threshold(params.eps, r.m());
  const std::size_t good = count_good_lengths(r, params);
  if (good >= threshold) {
    throw UsageError(fmt::format("cut vector has {} good lengths (threshold {}): it satisfies the length "
                                 "condition, the gap estimate needs one that fails it",
                                 good, threshold));
  }
  std::vector<std::int64_t> gaps(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    const auto pair = sample_pair(dist, n, n, seed, t);
    gaps[t] = static_cast<std::int64_t>(constrained_score(pair.x, pair.y, r)) -
              static_cast<std::int64_t>(lcs_length(pair.x, pair.y));
  });
  std::int64_t sum = 0, sum_sq = 0;
  for (auto g : gaps) {
    sum += g;
    sum_sq += g * g;
  }
  const double tn = static_cast<double>(trials);
  LemmaGapReport rep;
  rep.trials = trials;
  rep.mean_gap = static_cast<double>(sum) / tn;
  const double var = trials > 1 ? (static_cast<double>(sum_sq) - tn * rep.mean_gap * rep.mean_gap) / (tn - 1) : 0.0;
  rep.stderr_gap = std::sqrt(std::max(0.0, var) / tn);
  rep.ci_lo = rep.mean_gap - 1.96 * rep.stderr_gap;
  rep.ci_hi = rep.mean_gap + 1.96 * rep.stderr_gap;
  rep.delta = delta;
  rep.reference = -0.5 * delta * params.eps * static_cast<double>(n);
  rep.mean_below_reference = rep.mean_gap <= rep.reference;
  return rep;
}

}  // namespace lcsgeo
