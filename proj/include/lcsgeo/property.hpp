#ifndef LCSGEO_PROPERTY_HPP
#define LCSGEO_PROPERTY_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcsgeo/alphabet.hpp"
#include "lcsgeo/blocks.hpp"
#include "lcsgeo/bounds.hpp"

namespace lcsgeo {

/// A built-in 0/1 predicate on string pairs (x, y), with k = |x|, l = |y|:
///   constant      {value: bool}
///   lcs_at_least  {value: int}             LCS >= value
///   lcs_ratio     {theta}                  LCS >= theta k
///   score_gap     {theta, gamma}           LCS >= (gamma - theta) (k + l) / 2
///   unique_lcs    {}                       exactly one optimal alignment
///   length_window {lo, hi}                 lo k <= l <= hi k
struct PropertySpec {
  std::string id = "constant";
  nlohmann::json params = nlohmann::json::object({{"value", true}});

  /// Throws ConfigError on an unknown id or missing/ill-typed parameters.
  void validate() const;
  std::string description() const;
  nlohmann::json to_json() const;
  /// {"id": ..., "params": {...}}
  static PropertySpec from_json(const nlohmann::json& j);
  /// JSON text, or a bare id for the parameterless properties.
  static PropertySpec parse(std::string_view text);

  static PropertySpec always(bool value);
  static PropertySpec lcs_at_least(std::size_t value);
  static PropertySpec lcs_ratio(double theta);
};

bool evaluate_property(const PropertySpec& spec, std::span<const Symbol> x, std::span<const Symbol> y);
bool evaluate_property(const PropertySpec& spec, const Sequence& x, const Sequence& y);

struct QkRow {
  std::size_t l = 0;
  double q_l = 0.0;  // failure probability
  double stderr_q = 0.0;
  bool exact = false;
};

struct QkEstimate {
  std::size_t k = 0;
  double p1 = 0.0;
  double p2 = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<QkRow> per_l;  // every l with k p1 <= l <= k p2
  double q_hat = 0.0;        // max over per_l
};

/// Failure probability of the property on (X_1..X_k, Y_1..Y_l) for every l in
/// the window. A length l is enumerated exactly when |A|^(k + l) <=
/// exact_below, otherwise sampled with `trials` pairs keyed (seed, trial, 2l)
/// and (seed, trial, 2l + 1).
QkEstimate estimate_qk(const AlphabetDistribution& dist, const PropertySpec& spec, std::size_t k, double p1,
                       double p2, std::size_t trials, std::uint64_t seed,
                       std::uint64_t exact_below = std::uint64_t{1} << 20, unsigned threads = 0);

enum class EventBMode { kBasic, kImproved };

EventBMode parse_event_b_mode(std::string_view name);

/// Failure-probability bound for the property event with proportion eps2:
///   basic:    A(eps1) + (C k)^m q^(eps2 m) exp(H_e(eps2) m), C = counting_base
///   improved: A(eps1) + ((p2 - p1) k (e k / eps1)^eps1 exp(H_e(eps1)) q^eps2 exp(H_e(eps2)))^m
/// where A(eps1) = exp(-n (-ln(e k)/k + delta^2 eps1^2 / 16)).
BoundReport bound_event_B(const TheoremParams& params, double q_hat, EventBMode mode,
                          double counting_base = 2.718281828459045);

struct EventBReport {
  bool holds = false;
  bool optimal_exists = true;  // see EventAReport
  std::size_t min_satisfying_over_optimal = 0;
  std::size_t threshold = 0;
  std::size_t m = 0;
  std::size_t lcs = 0;
  BlockPartition witness;
};

/// Exact decision: among all optimal cut vectors, the least number of blocks
/// whose aligned pair satisfies the property, against ceil((1 - eps) m).
EventBReport check_event_B(const Sequence& x, const Sequence& y, std::size_t k, double eps,
                           const PropertySpec& spec, CutPolicy policy = CutPolicy::kWeak);

}  // namespace lcsgeo

#endif  // LCSGEO_PROPERTY_HPP
