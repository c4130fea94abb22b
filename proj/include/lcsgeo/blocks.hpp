#ifndef LCSGEO_BLOCKS_HPP
#define LCSGEO_BLOCKS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "lcsgeo/alphabet.hpp"

namespace lcsgeo {

/// Whether consecutive cuts may coincide. Under kStrict every block gets a
/// nonempty y-interval (0 = r_0 < r_1 < ... < r_m = n). Some optimal
/// alignments leave a whole block unmatched and squeezed between matched
/// neighbours; only kWeak (r_{i-1} <= r_i) can represent those, so it is the
/// default.
enum class CutPolicy { kWeak, kStrict };

/// Cut vector r_0 = 0 <= r_1 <= ... <= r_m = n. Block i of x (1-based),
/// x[k(i-1)+1 .. ki], is aligned with y[r_{i-1}+1 .. r_i].
class BlockPartition {
 public:
  BlockPartition() = default;
  /// Throws UsageError unless cuts are nondecreasing from 0 to m k.
  BlockPartition(std::vector<std::size_t> cuts, std::size_t k);

  bool is_strict() const;
  bool admits(CutPolicy policy) const { return policy == CutPolicy::kWeak || is_strict(); }

  /// r_i = i k.
  static BlockPartition diagonal(std::size_t n, std::size_t k);

  const std::vector<std::size_t>& cuts() const { return cuts_; }
  std::size_t k() const { return k_; }
  std::size_t m() const { return cuts_.empty() ? 0 : cuts_.size() - 1; }
  std::size_t n() const { return cuts_.empty() ? 0 : cuts_.back(); }
  /// r_i - r_{i-1}, i in [1, m].
  std::size_t length(std::size_t i) const { return cuts_[i] - cuts_[i - 1]; }

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;
  friend auto operator<=>(const BlockPartition&, const BlockPartition&) = default;

 private:
  std::vector<std::size_t> cuts_;
  std::size_t k_ = 0;
};

struct EventAParams {
  double eps = 0.1;
  double p1 = 0.5;
  double p2 = 2.0;
  std::size_t k = 2;

  void validate() const;
  /// k p1 <= l <= k p2, compared as reals.
  bool is_good_length(std::size_t l) const;
};

/// ceil((1 - eps) m), with a 1e-9 guard against representation error in (1 - eps) m.
std::size_t proportion_threshold(double eps, std::size_t m);

/// L_n(r): sum over blocks of |LCS(x-block i, y[r_{i-1}+1 .. r_i])|.
std::size_t constrained_score(const Sequence& x, const Sequence& y, const BlockPartition& part);

struct BestPartition {
  std::size_t score = 0;
  BlockPartition witness;
};

/// max over all cut vectors of L_n(r), by DP over (block, cut position).
BestPartition best_partition(const Sequence& x, const Sequence& y, std::size_t k,
                             CutPolicy policy = CutPolicy::kWeak);

/// Secondary cost of aligning block `block` (1-based) with y[a+1 .. b], whose
/// LCS with the block is `lcs`.
using BlockCost = std::function<std::int64_t(std::size_t block, std::size_t a, std::size_t b, std::size_t lcs)>;

struct LexicographicResult {
  bool feasible = false;         // some cut vector exists under the policy
  std::size_t score = 0;         // max L_n(r)
  std::int64_t secondary = 0;    // min total cost among maximisers
  BlockPartition witness;
};

/// Maximises L_n(r), then minimises the summed block cost among maximisers.
/// With `optimal_cuts_only` the state space is restricted to cut positions
/// (i, b) with prefix(ik, b) + suffix(ik, b) = LCS; every maximiser lives
/// there, so the result is unchanged and the DP runs in a narrow band.
LexicographicResult lexicographic_partition(const Sequence& x, const Sequence& y, std::size_t k,
                                            const BlockCost& cost, bool optimal_cuts_only,
                                            CutPolicy policy = CutPolicy::kWeak);

struct EventAReport {
  bool holds = false;
  /// False when no admissible cut vector reaches LC_n (possible only under
  /// kStrict); the event then holds vacuously.
  bool optimal_exists = true;
  std::size_t min_good_over_optimal = 0;
  std::size_t threshold = 0;
  std::size_t m = 0;
  std::size_t lcs = 0;
  BlockPartition witness;  // an optimal r attaining min_good_over_optimal
};

/// Exact decision of the event that every optimal cut vector has at least
/// ceil((1 - eps) m) good interval lengths.
EventAReport check_event_A(const Sequence& x, const Sequence& y, const EventAParams& params,
                           CutPolicy policy = CutPolicy::kWeak);

/// Search over all cut vectors for those with L_n(r) = LCS, in lexicographic
/// order. Branches are cut once the partial score plus the LCS of the
/// remaining suffixes falls below LCS. Throws ResourceError when more than
/// `cap` exist; the message carries the full count.
std::vector<BlockPartition> enumerate_optimal_partitions(const Sequence& x, const Sequence& y, std::size_t k,
                                                         std::size_t cap, CutPolicy policy = CutPolicy::kWeak);

/// Number of i with k p1 <= r_i - r_{i-1} <= k p2.
std::size_t count_good_lengths(const BlockPartition& part, const EventAParams& params);

struct LemmaGapReport {
  std::size_t trials = 0;
  double mean_gap = 0.0;  // mean of L_n(r) - LC_n
  double stderr_gap = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double delta = 0.0;
  double reference = 0.0;  // -0.5 delta eps n
  bool mean_below_reference = false;
};

/// Monte Carlo estimate of E[L_n(r) - LC_n] for a fixed r outside the good
/// set (fewer than ceil((1 - eps) m) good lengths).
LemmaGapReport empirical_lemma_gap(const AlphabetDistribution& dist, std::size_t n, const EventAParams& params,
                                   const BlockPartition& r, std::size_t trials, std::uint64_t seed, double delta,
                                   unsigned threads = 0);

}  // namespace lcsgeo

#endif  // LCSGEO_BLOCKS_HPP
