#include "lcsgeo/property.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "lcsgeo/errors.hpp"
#include "lcsgeo/lcs.hpp"
#include "lcsgeo/parallel.hpp"

namespace lcsgeo {

namespace {

double number_param(const PropertySpec& spec, const char* key) {
  if (!spec.params.is_object() || !spec.params.contains(key) || !spec.params.at(key).is_number()) {
    throw ConfigError(fmt::format("property '{}' needs numeric parameter '{}'", spec.id, key));
  }
  const double v = spec.params.at(key).get<double>();
  if (!std::isfinite(v)) throw ConfigError(fmt::format("property '{}': '{}' is not finite", spec.id, key));
  return v;
}

// Number of alignments realising the LCS is one iff every match point is used
// by that alignment, i.e. there are exactly LCS match points.
bool has_unique_alignment(std::span<const Symbol> x, std::span<const Symbol> y) {
  const auto pre = prefix_table(x, y);
  const auto suf = suffix_table(x, y);
  const std::size_t lcs = pre(x.size(), y.size());
  std::size_t points = 0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      if (x[i - 1] == y[j - 1] && pre(i - 1, j - 1) + 1 + suf(i, j) == lcs) {
        if (++points > lcs) return false;
      }
    }
  }
  return points == lcs;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

}  // namespace

void PropertySpec::validate() const {
  if (!params.is_object()) throw ConfigError(fmt::format("property '{}': params must be an object", id));
  if (id == "constant") {
    if (!params.contains("value") || !params.at("value").is_boolean()) {
      throw ConfigError("property 'constant' needs boolean parameter 'value'");
    }
  } else if (id == "lcs_at_least") {
    if (!params.contains("value") || !params.at("value").is_number_integer() || params.at("value").get<long long>() < 0) {
      throw ConfigError("property 'lcs_at_least' needs a nonnegative integer 'value'");
    }
  } else if (id == "lcs_ratio") {
    number_param(*this, "theta");
  } else if (id == "score_gap") {
    number_param(*this, "theta");
    number_param(*this, "gamma");
  } else if (id == "unique_lcs") {
  } else if (id == "length_window") {
    if (number_param(*this, "lo") > number_param(*this, "hi")) {
      throw ConfigError("property 'length_window' needs lo <= hi");
    }
  } else {
    throw ConfigError(fmt::format("unknown property id '{}'", id));
  }
}

std::string PropertySpec::description() const {
  validate();
  if (id == "constant") return params.at("value").get<bool>() ? "always true" : "always false";
  if (id == "lcs_at_least") return fmt::format("LCS >= {}", params.at("value").get<long long>());
  if (id == "lcs_ratio") return fmt::format("LCS >= {} * |x|", number_param(*this, "theta"));
  if (id == "score_gap") {
    return fmt::format("LCS >= ({} - {}) * (|x| + |y|) / 2", number_param(*this, "gamma"), number_param(*this, "theta"));
  }
  if (id == "unique_lcs") return "unique optimal alignment";
  return fmt::format("{} <= |y| / |x| <= {}", number_param(*this, "lo"), number_param(*this, "hi"));
}

nlohmann::json PropertySpec::to_json() const { return {{"id", id}, {"params", params}}; }

PropertySpec PropertySpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("id") || !j.at("id").is_string()) {
    throw ConfigError("property spec must be an object with a string 'id'");
  }
  PropertySpec spec;
  spec.id = j.at("id").get<std::string>();
  spec.params = j.contains("params") ? j.at("params") : nlohmann::json::object();
  spec.validate();
  return spec;
}

PropertySpec PropertySpec::parse(std::string_view text) {
  if (text == "always" || text == "true") return always(true);
  if (text == "never" || text == "false") return always(false);
  if (text == "unique_lcs") return from_json({{"id", "unique_lcs"}});
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("cannot parse property spec '{}': {}", text, e.what()));
  }
  return from_json(j);
}

PropertySpec PropertySpec::always(bool value) { return {"constant", {{"value", value}}}; }

PropertySpec PropertySpec::lcs_at_least(std::size_t value) { return {"lcs_at_least", {{"value", value}}}; }

PropertySpec PropertySpec::lcs_ratio(double theta) { return {"lcs_ratio", {{"theta", theta}}}; }

bool evaluate_property(const PropertySpec& spec, std::span<const Symbol> x, std::span<const Symbol> y) {
  const double k = static_cast<double>(x.size()), l = static_cast<double>(y.size());
  if (spec.id == "constant") {
    if (!spec.params.contains("value") || !spec.params.at("value").is_boolean()) spec.validate();
    return spec.params.at("value").get<bool>();
  }
  if (spec.id == "lcs_at_least") {
    spec.validate();
    return lcs_length(x, y) >= spec.params.at("value").get<std::size_t>();
  }
  if (spec.id == "lcs_ratio") {
    return static_cast<double>(lcs_length(x, y)) >= number_param(spec, "theta") * k;
  }
  if (spec.id == "score_gap") {
    const double bar = (number_param(spec, "gamma") - number_param(spec, "theta")) * (k + l) / 2.0;
    return static_cast<double>(lcs_length(x, y)) >= bar;
  }
  if (spec.id == "unique_lcs") return has_unique_alignment(x, y);
  if (spec.id == "length_window") {
    const double lo = number_param(spec, "lo"), hi = number_param(spec, "hi");
    return lo * k <= l && l <= hi * k;
  }
  throw ConfigError(fmt::format("unknown property id '{}'", spec.id));
}

bool evaluate_property(const PropertySpec& spec, const Sequence& x, const Sequence& y) {
  require_same_alphabet(x, y);
  return evaluate_property(spec, x.symbols(), y.symbols());
}

QkEstimate estimate_qk(const AlphabetDistribution& dist, const PropertySpec& spec, std::size_t k, double p1,
                       double p2, std::size_t trials, std::uint64_t seed, std::uint64_t exact_below,
                       unsigned threads) {
  spec.validate();
  if (k < 1) throw UsageError("k must be >= 1");
  if (!(p1 > 0.0 && p1 <= p2) || !std::isfinite(p2)) {
    throw UsageError(fmt::format("need 0 < p1 <= p2, got p1 = {}, p2 = {}", p1, p2));
  }
  const double kd = static_cast<double>(k);
  const double tol = 1e-9 * kd;
  const double lo_real = std::max(0.0, std::ceil(kd * p1 - tol));
  const double hi_real = std::floor(kd * p2 + tol);
  if (lo_real > hi_real) throw UsageError(fmt::format("empty length window [{} p1, {} p2]", k, k));
  const auto l_lo = static_cast<std::size_t>(lo_real), l_hi = static_cast<std::size_t>(hi_real);

  QkEstimate est;
  est.k = k;
  est.p1 = p1;
  est.p2 = p2;
  est.trials = trials;
  est.seed = seed;
  const std::uint64_t letters = dist.size();

  for (std::size_t l = l_lo; l <= l_hi; ++l) {
    QkRow row;
    row.l = l;
    if (saturating_pow(letters, k + l, exact_below) <= exact_below) {
      row.exact = true;
      const std::uint64_t x_count = saturating_pow(letters, k, exact_below);
      const std::uint64_t y_count = saturating_pow(letters, l, exact_below);
      std::vector<double> fail(x_count, 0.0);
      parallel_for(x_count, threads, [&](std::size_t xi) {
        std::vector<Symbol> xs(k), ys(l);
        double px = 1.0;
        std::uint64_t code = xi;
        for (std::size_t t = 0; t < k; ++t, code /= letters) {
          xs[t] = static_cast<Symbol>(code % letters);
          px *= dist.probability(xs[t]);
        }
        double acc = 0.0;
        for (std::uint64_t yi = 0; yi < y_count; ++yi) {
          double py = 1.0;
          code = yi;
          for (std::size_t t = 0; t < l; ++t, code /= letters) {
            ys[t] = static_cast<Symbol>(code % letters);
            py *= dist.probability(ys[t]);
          }
          if (!evaluate_property(spec, xs, ys)) acc += py;
        }
        fail[xi] = px * acc;
      });
      for (double f : fail) row.q_l += f;
    } else {
      if (trials == 0) throw UsageError("trials must be >= 1 when a length needs sampling");
      std::vector<unsigned char> failed(trials, 0);
      parallel_for(trials, threads, [&](std::size_t t) {
        CounterRng rx(seed, t, 2 * l), ry(seed, t, 2 * l + 1);
        const auto x = sample_sequence(dist, k, rx);
        const auto y = sample_sequence(dist, l, ry);
        failed[t] = evaluate_property(spec, x.symbols(), y.symbols()) ? 0 : 1;
      });
      std::size_t count = 0;
      for (auto f : failed) count += f;
      const double tn = static_cast<double>(trials);
      row.q_l = static_cast<double>(count) / tn;
      row.stderr_q = std::sqrt(row.q_l * (1.0 - row.q_l) / tn);
    }
    est.q_hat = std::max(est.q_hat, row.q_l);
    est.per_l.push_back(row);
  }
  return est;
}

EventBMode parse_event_b_mode(std::string_view name) {
  if (name == "basic") return EventBMode::kBasic;
  if (name == "improved") return EventBMode::kImproved;
  throw UsageError(fmt::format("unknown mode '{}', expected basic or improved", name));
}

BoundReport bound_event_B(const TheoremParams& params, double q_hat, EventBMode mode, double counting_base) {
  params.validate();
  if (!(q_hat >= 0.0 && q_hat <= 1.0)) throw UsageError(fmt::format("q_hat = {} must lie in [0, 1]", q_hat));
  if (!(counting_base > 0.0) || !std::isfinite(counting_base)) throw UsageError("counting base must be positive");
  const double k = static_cast<double>(params.k), m = static_cast<double>(params.m());
  const double e1 = params.eps1, e2 = params.eps2;

  const LogValue a_term = length_event_bound(params, e1);
  const double ln_q = q_hat > 0.0 ? std::log(q_hat) : -std::numeric_limits<double>::infinity();
  double per_block = 0.0;
  BoundReport r;
  if (mode == EventBMode::kBasic) {
    r.name = "event_b_basic";
    per_block = std::log(counting_base * k);
    r.notes.push_back(fmt::format("cut-vector count bounded by ({} k)^m", counting_base));
  } else {
    r.name = "event_b_improved";
    per_block = std::log((params.p2 - params.p1) * k) + e1 * (1.0 + std::log(k) - std::log(e1)) + entropy_e(e1);
  }
  const LogValue counting{q_hat > 0.0 ? m * (per_block + e2 * ln_q + entropy_e(e2)) : ln_q};
  r.inputs = params;
  r.rate = -(1.0 + std::log(k)) / k + params.delta * params.delta * e1 * e1 / 16.0;
  r.terms.push_back({"length_event", a_term, a_term.ln >= 0.0});
  r.terms.push_back({"property_counting", counting, counting.ln >= 0.0});
  r.bound = {log_add(a_term.ln, counting.ln)};
  r.vacuous = r.bound.ln >= 0.0;
  r.notes.push_back("length event evaluated at eps1; the alternative reading evaluates it at eps2");
  return r;
}

EventBReport check_event_B(const Sequence& x, const Sequence& y, std::size_t k, double eps,
                           const PropertySpec& spec, CutPolicy policy) {
  spec.validate();
  if (!(eps >= 0.0 && eps <= 1.0)) throw UsageError(fmt::format("eps = {} must lie in [0, 1]", eps));
  const auto xs = x.symbols();
  const auto ys = y.symbols();
  const auto result = lexicographic_partition(
      x, y, k,
      [&](std::size_t block, std::size_t a, std::size_t b, std::size_t) -> std::int64_t {
        return evaluate_property(spec, xs.subspan((block - 1) * k, k), ys.subspan(a, b - a)) ? 1 : 0;
      },
      true, policy);

  EventBReport report;
  report.m = x.size() / k;
  report.lcs = lcs_length(x, y);
  report.threshold = proportion_threshold(eps, report.m);
  report.optimal_exists = result.feasible && result.score == report.lcs;
  if (!report.optimal_exists) {
    report.holds = true;
    return report;
  }
  report.min_satisfying_over_optimal = static_cast<std::size_t>(result.secondary);
  report.witness = result.witness;
  report.holds = report.min_satisfying_over_optimal >= report.threshold;
  return report;
}

}  // namespace lcsgeo
