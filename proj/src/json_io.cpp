#include "lcsgeo/json_io.hpp"

#include <cmath>

namespace lcsgeo {

Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const LogValue& v) {
  return {{"ln", json_number(v.ln)}, {"log10", json_number(v.log10())}, {"value", json_number(v.value())}};
}

Json to_json(const TheoremParams& p) {
  Json j = {{"n", p.n},         {"k", p.k},       {"m", p.m()},     {"eps", p.eps},
            {"eps1", p.eps1},   {"eps2", p.eps2}, {"p1", p.p1},     {"p2", p.p2},
            {"delta", p.delta}, {"delta_star", nullptr}};
  if (p.delta_star) j["delta_star"] = *p.delta_star;
  return j;
}

Json to_json(const BoundReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back({{"name", t.name}, {"bound", to_json(t.bound)}, {"vacuous", t.vacuous}});
  return {{"name", r.name},
          {"bound", to_json(r.bound)},
          {"rate", r.rate ? json_number(*r.rate) : Json(nullptr)},
          {"vacuous", r.vacuous},
          {"terms", terms},
          {"notes", r.notes},
          {"inputs", to_json(r.inputs)}};
}

Json to_json(const BinomialBound& b) {
  return {{"ln_bound", json_number(b.ln_bound)},
          {"ln_exact", json_number(b.ln_exact)},
          {"log10_bound", json_number(b.ln_bound / std::log(10.0))},
          {"log10_exact", json_number(b.ln_exact / std::log(10.0))}};
}

Json to_json(const CardinalityBound& c) {
  return {{"improved", to_json(LogValue{c.ln_improved})},
          {"basic", to_json(LogValue{c.ln_basic})},
          {"improved_is_smaller", c.improved_is_smaller}};
}

Json to_json(const ImprovedConditions& c) {
  return {{"k_condition", c.k_condition},
          {"k_condition_rhs", json_number(c.k_condition_rhs)},
          {"q_threshold", to_json(c.q_threshold)},
          {"combined", to_json(c.combined)},
          {"g", to_json(c.g)}};
}

Json to_json(const FeasibilityReport& r) {
  const auto& q = r.query;
  Json query = {{"eps", q.eps},         {"delta", q.delta}, {"p1", q.p1},         {"p2", q.p2},
                {"eps1", nullptr},      {"eps2", nullptr},  {"k", nullptr},       {"q_hat", nullptr},
                {"q_base", q.q_base}};
  if (q.eps1) query["eps1"] = *q.eps1;
  if (q.eps2) query["eps2"] = *q.eps2;
  if (q.k) query["k"] = *q.k;
  if (q.q_hat) query["q_hat"] = *q.q_hat;
  Json j = {{"query", query},
            {"k_rhs_thm1", json_number(r.k_rhs_thm1)},
            {"k_rhs_thm3", json_number(r.k_rhs_thm3)},
            {"k_min_thm1", r.k_min_thm1},
            {"k_min_thm3", r.k_min_thm3},
            {"q_basic", to_json(r.q_basic)},
            {"has_improved", r.has_improved},
            {"k_used", r.k_used},
            {"governing", to_json(r.governing)},
            {"margin_log10", r.margin_log10 ? json_number(*r.margin_log10) : Json(nullptr)},
            {"verdict", r.verdict}};
  if (r.has_improved) {
    j["improved"] = {{"k_rhs", json_number(r.k_rhs_improved)},
                     {"k_min", r.k_min_improved},
                     {"q_threshold", to_json(r.q_improved)},
                     {"combined", to_json(r.q_combined)},
                     {"g", to_json(r.q_g)},
                     {"simplified", to_json(r.q_simplified)}};
  }
  return j;
}

Json to_json(const BlockPartition& p) { return {{"k", p.k()}, {"m", p.m()}, {"cuts", p.cuts()}}; }

Json to_json(const EventAReport& r) {
  return {{"event", "A"},
          {"holds", r.holds},
          {"optimal_exists", r.optimal_exists},
          {"min_good_over_optimal", r.min_good_over_optimal},
          {"threshold", r.threshold},
          {"m", r.m},
          {"lcs", r.lcs},
          {"witness", r.optimal_exists ? to_json(r.witness) : Json(nullptr)}};
}

Json to_json(const LemmaGapReport& r) {
  return {{"trials", r.trials},
          {"mean_gap", json_number(r.mean_gap)},
          {"stderr_gap", json_number(r.stderr_gap)},
          {"ci_lo", json_number(r.ci_lo)},
          {"ci_hi", json_number(r.ci_hi)},
          {"delta", json_number(r.delta)},
          {"reference", json_number(r.reference)},
          {"mean_below_reference", r.mean_below_reference}};
}

Json to_json(const EventBReport& r) {
  return {{"event", "B"},
          {"holds", r.holds},
          {"optimal_exists", r.optimal_exists},
          {"min_satisfying_over_optimal", r.min_satisfying_over_optimal},
          {"threshold", r.threshold},
          {"m", r.m},
          {"lcs", r.lcs},
          {"witness", r.optimal_exists ? to_json(r.witness) : Json(nullptr)}};
}

Json to_json(const QkEstimate& q) {
  Json rows = Json::array();
  for (const auto& row : q.per_l) {
    rows.push_back({{"l", row.l}, {"q_l", row.q_l}, {"stderr", row.stderr_q}, {"exact", row.exact}});
  }
  return {{"k", q.k},
          {"p1", q.p1},
          {"p2", q.p2},
          {"trials", q.trials},
          {"seed", q.seed},
          {"per_l", rows},
          {"q_hat", q.q_hat},
          {"q_hat_log10", json_number(std::log10(q.q_hat))}};
}

Json to_json(const GammaEstimate& g) {
  return {{"p", g.p},
          {"q", g.q},
          {"n", g.n},
          {"len_x", g.len_x},
          {"len_y", g.len_y},
          {"scale", g.scale},
          {"trials", g.trials},
          {"seed", g.seed},
          {"score_sum", g.score_sum},
          {"score_sq_sum", g.score_sq_sum},
          {"mean", json_number(g.mean)},
          {"stderr", json_number(g.stderr_mean)},
          {"ci95", {json_number(g.ci_lo), json_number(g.ci_hi)}},
          {"hoeffding_halfwidth95", json_number(g.hoeffding_halfwidth(0.05))}};
}

Json to_json(const GammaCurve& c) {
  Json points = Json::array();
  for (const auto& e : c.estimates) points.push_back(to_json(e));
  Json violations = Json::array();
  for (const auto& v : c.violations) {
    violations.push_back({{"p_left", c.grid[v.left]}, {"p_right", c.grid[v.right]}, {"excess", v.excess}});
  }
  return {{"n", c.n},
          {"trials", c.trials},
          {"seed", c.seed},
          {"grid", c.grid},
          {"points", points},
          {"argmax_p", c.grid.empty() ? Json(nullptr) : Json(c.grid[c.argmax])},
          {"monotonicity_violations", violations}};
}

Json to_json(const DeltaEstimate& d) {
  return {{"p1", d.p1},
          {"p2", d.p2},
          {"at_one", to_json(d.at_one)},
          {"at_p1", to_json(d.at_p1)},
          {"at_p2", to_json(d.at_p2)},
          {"gap_p1", json_number(d.gap_p1)},
          {"gap_p2", json_number(d.gap_p2)},
          {"gap_p1_stderr", json_number(d.gap_p1_stderr)},
          {"gap_p2_stderr", json_number(d.gap_p2_stderr)},
          {"delta_star_hat", json_number(d.delta_star_hat)},
          {"stderr", json_number(d.stderr_delta)},
          {"ci95", {json_number(d.ci_lo), json_number(d.ci_hi)}},
          {"unverified", d.unverified}};
}

Json to_json(const Envelope& e) {
  Json rows = Json::array();
  for (const auto& r : e.rows) rows.push_back({{"i", r.i}, {"lo", r.lo}, {"hi", r.hi}});
  return {{"n", e.n}, {"n_y", e.n_y}, {"lcs", e.lcs}, {"rows", rows}};
}

Json to_json(const DiagonalCheck& d) {
  Json v = Json::array();
  for (const auto& p : d.violations) v.push_back({p.i, p.j});
  return {{"holds", d.holds}, {"violations", v}};
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lcsgeo
