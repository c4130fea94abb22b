#include "lcsgeo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lcsgeo/blocks.hpp"
#include "lcsgeo/bounds.hpp"
#include "lcsgeo/errors.hpp"
#include "lcsgeo/gamma.hpp"
#include "lcsgeo/geometry.hpp"
#include "lcsgeo/json_io.hpp"
#include "lcsgeo/lcs.hpp"
#include "lcsgeo/property.hpp"

namespace lcsgeo {

namespace {

// Pulls `--config FILE` out of the argument list and appends the file's
// entries as `--key value`. Options take their last occurrence, so config
// entries win over flags given on the command line.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  std::vector<std::string> paths;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      paths.push_back(args[++i]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      paths.push_back(args[i].substr(9));
    } else {
      kept.push_back(args[i]);
    }
  }
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot read config file '{}'", path));
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ConfigError(fmt::format("config '{}' is not valid JSON: {}", path, e.what()));
    }
    if (!j.is_object()) throw ConfigError(fmt::format("config '{}' must hold a JSON object", path));
    for (const auto& [key, value] : j.items()) {
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (value.is_null()) continue;
      if (value.is_boolean()) {
        kept.push_back(flag + (value.get<bool>() ? "=true" : "=false"));
      } else if (value.is_string()) {
        kept.push_back(flag);
        kept.push_back(value.get<std::string>());
      } else if (value.is_array() && std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_number(); })) {
        std::string joined;
        for (const auto& v : value) joined += (joined.empty() ? "" : ",") + v.dump();
        kept.push_back(flag);
        kept.push_back(joined);
      } else {
        kept.push_back(flag);
        kept.push_back(value.dump());
      }
    }
  }
  return kept;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("'{}' is not a number in list '{}'", item, text));
    }
  }
  if (values.empty()) throw UsageError("empty number list");
  return values;
}

std::vector<std::size_t> parse_cut_list(const std::string& text) {
  std::vector<std::size_t> cuts;
  for (double v : parse_number_list(text)) {
    if (v < 0 || v != std::floor(v)) throw UsageError(fmt::format("cut {} is not a nonnegative integer", v));
    cuts.push_back(static_cast<std::size_t>(v));
  }
  return cuts;
}

void emit(const std::string& payload, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << payload;
  } else {
    write_text_file(path, payload);
  }
}

// Flattens a report into "key  value" lines.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& lines) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, lines);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], fmt::format("{}[{}]", prefix, i), lines);
  } else {
    lines.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string render(const Json& report, const std::string& format) {
  if (format == "table") {
    std::vector<std::pair<std::string, std::string>> lines;
    flatten(report, "", lines);
    std::size_t width = 0;
    for (const auto& l : lines) width = std::max(width, l.first.size());
    std::string s;
    for (const auto& [k, v] : lines) s += fmt::format("{:<{}}  {}\n", k, width, v);
    return s;
  }
  return dump_report(report);
}

struct Common {
  std::string out = "-";
  unsigned threads = 0;
  std::string format = "json";
};

void add_common(CLI::App* app, Common& c, bool with_format = true) {
  app->add_option("--out", c.out, "Report destination, '-' for stdout");
  app->add_option("--threads", c.threads, "Worker threads (0: LCSGEO_THREADS or hardware)");
  if (with_format) app->add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));
}

struct PairOptions {
  std::string x;
  std::string y;
  std::string dist = "binary-uniform";
  std::size_t n = 0;
  std::size_t len_y = 0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  CLI::Option* x_opt = nullptr;
  CLI::Option* y_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* len_y_opt = nullptr;
};

void add_pair_options(CLI::App* app, PairOptions& p) {
  p.x_opt = app->add_option("--x", p.x, "Literal first string (code points are letters)");
  p.y_opt = app->add_option("--y", p.y, "Literal second string; defaults to --x");
  app->add_option("--dist", p.dist, "Letter distribution for sampled pairs (name or JSON)");
  p.n_opt = app->add_option("--n", p.n, "Length of a sampled x");
  p.len_y_opt = app->add_option("--len-y", p.len_y, "Length of a sampled y (default n)");
  app->add_option("--seed", p.seed, "Master seed for sampled pairs");
  app->add_option("--trial", p.trial, "Trial index within the seed");
}

StringPair load_pair(const PairOptions& p) {
  if (p.x_opt->count() > 0) {
    if (p.n_opt->count() > 0) throw UsageError("give either --x or --n, not both");
    const std::string& y = p.y_opt->count() > 0 ? p.y : p.x;
    auto alphabet = alphabet_from_texts({p.x, y});
    return {Sequence::from_text(p.x, alphabet), Sequence::from_text(y, alphabet), std::nullopt};
  }
  if (p.y_opt->count() > 0) throw UsageError("--y needs --x");
  if (p.n_opt->count() == 0) throw UsageError("give --x (literal pair) or --n (sampled pair)");
  const auto dist = AlphabetDistribution::parse(p.dist);
  const std::size_t len_y = p.len_y_opt->count() > 0 ? p.len_y : p.n;
  return sample_pair(dist, p.n, len_y, p.seed, p.trial);
}

Json pair_json(const StringPair& pair) {
  Json j = {{"len_x", pair.x.size()}, {"len_y", pair.y.size()}, {"seed", nullptr}};
  if (pair.seed) j["seed"] = *pair.seed;
  return j;
}

struct TheoremOptions {
  TheoremParams params;
  double delta_star = std::numeric_limits<double>::quiet_NaN();  // NaN: not given

  TheoremParams get() const {
    TheoremParams p = params;
    if (!std::isnan(delta_star)) p.delta_star = delta_star;
    return p;
  }
};

void add_theorem_options(CLI::App* app, TheoremOptions& t) {
  app->add_option("--n", t.params.n, "Total length n = m k");
  app->add_option("--k", t.params.k, "Block length");
  app->add_option("--eps", t.params.eps, "Proportion of bad blocks");
  app->add_option("--eps1", t.params.eps1, "Proportion for the length event");
  app->add_option("--eps2", t.params.eps2, "Proportion for the property event");
  app->add_option("--p1", t.params.p1, "Lower length ratio");
  app->add_option("--p2", t.params.p2, "Upper length ratio");
  app->add_option("--delta", t.params.delta, "Gap below delta*");
  app->add_option("--delta-star", t.delta_star, "Known gap; delta must be below it");
}

CutPolicy parse_policy(const std::string& s) { return s == "strict" ? CutPolicy::kStrict : CutPolicy::kWeak; }

std::string qk_csv(const QkEstimate& est) {
  std::string s = "l,q_l,stderr,exact\n";
  for (const auto& r : est.per_l) s += fmt::format("{},{},{},{}\n", r.l, r.q_l, r.stderr_q, r.exact ? 1 : 0);
  return s;
}

std::string curve_csv(const GammaCurve& c) {
  std::string s = "p,len_x,len_y,trials,mean,stderr,ci_lo,ci_hi\n";
  for (const auto& e : c.estimates) {
    s += fmt::format("{},{},{},{},{},{},{},{}\n", e.p, e.len_x, e.len_y, e.trials, e.mean, e.stderr_mean, e.ci_lo,
                     e.ci_hi);
  }
  return s;
}

std::string paper_check_table(const std::vector<PaperCheckRow>& rows) {
  std::size_t wn = 5, we = 8, wg = 3;
  for (const auto& r : rows) {
    wn = std::max(wn, r.name.size());
    we = std::max(we, r.expected.size());
    wg = std::max(wg, r.got.size());
  }
  std::string s = fmt::format("{:<{}}  {:<{}}  {:<{}}  {}\n", "check", wn, "expected", we, "got", wg, "status");
  std::size_t passed = 0;
  for (const auto& r : rows) {
    s += fmt::format("{:<{}}  {:<{}}  {:<{}}  {}\n", r.name, wn, r.expected, we, r.got, wg, r.pass ? "PASS" : "FAIL");
    passed += r.pass ? 1 : 0;
  }
  s += fmt::format("{}/{} checks pass\n", passed, rows.size());
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!args.empty() && args.front() == "--paper-check") args.front() = "paper-check";

  CLI::App app{"Optimal-alignment geometry of longest common subsequences", "lcsgeo"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  Common common;
  std::function<int()> action;

  // lcs
  PairOptions lcs_pair;
  bool trace = false;
  auto* lcs_cmd = app.add_subcommand("lcs", "LCS length and an optimal alignment");
  add_pair_options(lcs_cmd, lcs_pair);
  add_common(lcs_cmd, common, false);
  lcs_cmd->add_flag("--trace", trace, "Also print one optimal alignment as 1-based pairs");
  bool lcs_json = false;
  lcs_cmd->add_flag("--json", lcs_json, "Print a JSON report instead of text");
  lcs_cmd->callback([&] {
    action = [&] {
      const auto pair = load_pair(lcs_pair);
      const auto len = lcs_length(pair.x, pair.y);
      if (lcs_json) {
        Json j = {{"lcs", len}, {"pair", pair_json(pair)}};
        if (trace) {
          Json pairs = Json::array();
          std::string common_text;
          for (const auto& p : backtrace(pair.x, pair.y)) {
            pairs.push_back({p.i, p.j});
            common_text += pair.x.alphabet()->symbol(pair.x[p.i - 1]);
          }
          j["alignment"] = pairs;
          j["common"] = common_text;
        }
        emit(dump_report(j), common.out, out);
      } else {
        std::string s = fmt::format("{}\n", len);
        if (trace) {
          for (const auto& p : backtrace(pair.x, pair.y)) {
            s += fmt::format("{} {} {}\n", p.i, p.j, pair.x.alphabet()->symbol(pair.x[p.i - 1]));
          }
        }
        emit(s, common.out, out);
      }
      return kExitOk;
    };
  });

  // envelope
  PairOptions env_pair;
  DiagonalBand band;
  std::string csv_path, json_path, svg_path;
  auto* env_cmd = app.add_subcommand("envelope", "Match-point envelope, diagonal band check and figure export");
  add_pair_options(env_cmd, env_pair);
  add_common(env_cmd, common, false);
  env_cmd->add_option("--k", band.k, "Block length in the band offsets");
  env_cmd->add_option("--p1", band.p1, "Band slope parameter in (0, 1)");
  env_cmd->add_option("--eps", band.eps, "Band width parameter");
  auto* csv_opt = env_cmd->add_option("--csv", csv_path, "Write the envelope as CSV ('-' for stdout)");
  auto* json_opt = env_cmd->add_option("--json", json_path, "Write the envelope as JSON ('-' for stdout)");
  auto* svg_opt = env_cmd->add_option("--svg", svg_path, "Write an SVG plot ('-' for stdout)");
  env_cmd->callback([&] {
    action = [&] {
      const auto pair = load_pair(env_pair);
      const auto env = envelope(pair.x, pair.y);
      band.n = env.n;
      band.validate();
      const auto check = check_diagonal_event(env, band);
      bool figure_on_stdout = false;
      Json written = Json::array();
      auto write = [&](CLI::Option* opt, const std::string& path, FigureFormat format) {
        if (opt->count() == 0) return;
        if (path.empty()) throw UsageError(fmt::format("{} needs an output path", opt->get_name()));
        emit(export_figure(env, band, format), path, out);
        if (path == "-") {
          figure_on_stdout = true;
        } else {
          written.push_back(path);
        }
      };
      write(csv_opt, csv_path, FigureFormat::kCsv);
      write(json_opt, json_path, FigureFormat::kJson);
      write(svg_opt, svg_path, FigureFormat::kSvg);
      if (!figure_on_stdout) {
        Json j = {{"pair", pair_json(pair)},
                  {"n", env.n},
                  {"n_y", env.n_y},
                  {"lcs", env.lcs},
                  {"matched_rows", env.rows.size()},
                  {"max_rescaled_deviation", max_rescaled_deviation(env)},
                  {"band", {{"p1", band.p1}, {"eps", band.eps}, {"k", band.k}}},
                  {"diagonal_event", to_json(check)},
                  {"written", written}};
        emit(dump_report(j), common.out, out);
      }
      return kExitOk;
    };
  });

  // event-a
  PairOptions a_pair;
  EventAParams a_params;
  std::string a_policy = "weak";
  auto* a_cmd = app.add_subcommand("event-a", "Exact check that optimal cut vectors have mostly good lengths");
  add_pair_options(a_cmd, a_pair);
  add_common(a_cmd, common);
  a_cmd->add_option("--k", a_params.k, "Block length");
  a_cmd->add_option("--eps", a_params.eps, "Allowed proportion of bad lengths");
  a_cmd->add_option("--p1", a_params.p1, "Lower length ratio");
  a_cmd->add_option("--p2", a_params.p2, "Upper length ratio");
  a_cmd->add_option("--policy", a_policy, "weak or strict cuts")->check(CLI::IsMember({"weak", "strict"}));
  a_cmd->callback([&] {
    action = [&] {
      const auto pair = load_pair(a_pair);
      const auto report = check_event_A(pair.x, pair.y, a_params, parse_policy(a_policy));
      Json j = to_json(report);
      j["pair"] = pair_json(pair);
      j["params"] = {{"k", a_params.k}, {"eps", a_params.eps}, {"p1", a_params.p1}, {"p2", a_params.p2},
                     {"policy", a_policy}};
      emit(render(j, common.format), common.out, out);
      return report.holds ? kExitOk : kExitEventFailed;
    };
  });

  // event-b
  PairOptions b_pair;
  std::size_t b_k = 2;
  double b_eps = 0.1;
  std::string b_property = "always";
  std::string b_policy = "weak";
  auto* b_cmd = app.add_subcommand("event-b", "Exact check that optimal cut vectors mostly satisfy a property");
  add_pair_options(b_cmd, b_pair);
  add_common(b_cmd, common);
  b_cmd->add_option("--k", b_k, "Block length");
  b_cmd->add_option("--eps", b_eps, "Allowed proportion of failing blocks");
  b_cmd->add_option("--property", b_property, "Property spec: JSON {id, params} or always/never/unique_lcs");
  b_cmd->add_option("--policy", b_policy, "weak or strict cuts")->check(CLI::IsMember({"weak", "strict"}));
  b_cmd->callback([&] {
    action = [&] {
      const auto pair = load_pair(b_pair);
      const auto spec = PropertySpec::parse(b_property);
      const auto report = check_event_B(pair.x, pair.y, b_k, b_eps, spec, parse_policy(b_policy));
      Json j = to_json(report);
      j["pair"] = pair_json(pair);
      j["params"] = {{"k", b_k}, {"eps", b_eps}, {"policy", b_policy}};
      j["property"] = spec.to_json();
      emit(render(j, common.format), common.out, out);
      return report.holds ? kExitOk : kExitEventFailed;
    };
  });

  // lemma-gap
  std::string lg_dist = "binary-uniform", lg_cuts;
  std::size_t lg_n = 0, lg_trials = 1000;
  std::uint64_t lg_seed = 0;
  double lg_delta = 0.0;
  EventAParams lg_params;
  auto* lg_cmd = app.add_subcommand("lemma-gap", "Monte Carlo mean of L_n(r) - LC_n for a fixed bad cut vector");
  add_common(lg_cmd, common);
  lg_cmd->add_option("--dist", lg_dist, "Letter distribution");
  lg_cmd->add_option("--n", lg_n, "String length")->required();
  lg_cmd->add_option("--cuts", lg_cuts, "Comma separated cut vector r_0,...,r_m")->required();
  lg_cmd->add_option("--k", lg_params.k, "Block length");
  lg_cmd->add_option("--eps", lg_params.eps, "Proportion parameter");
  lg_cmd->add_option("--p1", lg_params.p1, "Lower length ratio");
  lg_cmd->add_option("--p2", lg_params.p2, "Upper length ratio");
  lg_cmd->add_option("--trials", lg_trials, "Monte Carlo trials");
  lg_cmd->add_option("--seed", lg_seed, "Master seed");
  lg_cmd->add_option("--delta", lg_delta, "Gap used for the reference slope");
  lg_cmd->callback([&] {
    action = [&] {
      const auto dist = AlphabetDistribution::parse(lg_dist);
      const BlockPartition r(parse_cut_list(lg_cuts), lg_params.k);
      const auto report =
          empirical_lemma_gap(dist, lg_n, lg_params, r, lg_trials, lg_seed, lg_delta, common.threads);
      Json j = to_json(report);
      j["cuts"] = to_json(r);
      j["seed"] = lg_seed;
      emit(render(j, common.format), common.out, out);
      return kExitOk;
    };
  });

  // gamma
  auto* gamma_cmd = app.add_subcommand("gamma", "Monte Carlo estimates of the rescaled mean LCS");
  gamma_cmd->require_subcommand(1);
  std::string g_dist = "binary-uniform", g_grid = "0.5,0.8,1,1.25,2";
  std::size_t g_n = 100, g_trials = 1000;
  std::uint64_t g_seed = 0;
  double g_p = 1.0, g_q = 0.0, g_p1 = 0.5, g_p2 = 2.0;
  auto add_gamma_common = [&](CLI::App* sub) {
    add_common(sub, common);
    sub->add_option("--dist", g_dist, "Letter distribution");
    sub->add_option("--n", g_n, "Base length n");
    sub->add_option("--trials", g_trials, "Monte Carlo trials");
    sub->add_option("--seed", g_seed, "Master seed");
  };
  auto* star_cmd = gamma_cmd->add_subcommand("star", "Estimate at one length ratio p");
  add_gamma_common(star_cmd);
  star_cmd->add_option("--p", g_p, "Length ratio |y| / |x|");
  star_cmd->callback([&] {
    action = [&] {
      const auto est = estimate_gamma_star(AlphabetDistribution::parse(g_dist), g_p, g_n, g_trials, g_seed,
                                           common.threads);
      emit(render(to_json(est), common.format), common.out, out);
      return kExitOk;
    };
  });
  auto* q_cmd = gamma_cmd->add_subcommand("q", "Estimate in the q parametrisation");
  add_gamma_common(q_cmd);
  q_cmd->add_option("--q", g_q, "q in (-1, 1)");
  q_cmd->callback([&] {
    action = [&] {
      const auto est =
          estimate_gamma_q(AlphabetDistribution::parse(g_dist), g_q, g_n, g_trials, g_seed, common.threads);
      emit(render(to_json(est), common.format), common.out, out);
      return kExitOk;
    };
  });
  auto* sweep_cmd = gamma_cmd->add_subcommand("sweep", "Estimates along a grid of p with common random numbers");
  add_common(sweep_cmd, common, false);
  sweep_cmd->add_option("--dist", g_dist, "Letter distribution");
  sweep_cmd->add_option("--n", g_n, "Base length n");
  sweep_cmd->add_option("--trials", g_trials, "Monte Carlo trials");
  sweep_cmd->add_option("--seed", g_seed, "Master seed");
  sweep_cmd->add_option("--grid", g_grid, "Comma separated increasing p values");
  sweep_cmd->add_option("--format", common.format, "json, table or csv")
      ->check(CLI::IsMember({"json", "table", "csv"}));
  sweep_cmd->callback([&] {
    action = [&] {
      const auto curve = sweep_curve(AlphabetDistribution::parse(g_dist), parse_number_list(g_grid), g_n, g_trials,
                                     g_seed, common.threads);
      emit(common.format == "csv" ? curve_csv(curve) : render(to_json(curve), common.format), common.out, out);
      return kExitOk;
    };
  });
  auto* delta_cmd = gamma_cmd->add_subcommand("delta", "Estimate the gap min(gamma(1) - gamma(p1), gamma(1) - gamma(p2))");
  add_gamma_common(delta_cmd);
  delta_cmd->add_option("--p1", g_p1, "Lower ratio");
  delta_cmd->add_option("--p2", g_p2, "Upper ratio");
  delta_cmd->callback([&] {
    action = [&] {
      const auto d = estimate_delta(AlphabetDistribution::parse(g_dist), g_p1, g_p2, g_n, g_trials, g_seed,
                                    common.threads);
      if (d.unverified) err << "warning: estimated gap is not positive at this n\n";
      emit(render(to_json(d), common.format), common.out, out);
      return kExitOk;
    };
  });

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form probability and counting bounds (log space)");
  bounds_cmd->require_subcommand(1);
  TheoremOptions theorem;
  auto theorem_sub = [&](const char* name, const char* help, std::function<Json(const TheoremParams&)> fn) {
    auto* sub = bounds_cmd->add_subcommand(name, help);
    add_common(sub, common);
    add_theorem_options(sub, theorem);
    sub->callback([&, fn] {
      action = [&, fn] {
        emit(render(fn(theorem.get()), common.format), common.out, out);
        return kExitOk;
      };
    });
    return sub;
  };
  theorem_sub("thm1", "Failure bound for the length event", [](const TheoremParams& p) { return to_json(thm1_bound(p)); });
  theorem_sub("thm2", "Failure bound for the diagonal event",
              [&err](const TheoremParams& p) {
                auto r = thm2_bound(p);
                err << "note: " << r.notes.back() << "\n";
                return to_json(r);
              });
  theorem_sub("thm3", "Failure bound with the property counting term",
              [](const TheoremParams& p) { return to_json(thm3_bound(p)); });
  theorem_sub("card", "Improved cardinality bound on good cut vectors", [](const TheoremParams& p) {
    Json j = to_json(cardinality_bound_improved(p));
    j["inputs"] = to_json(p);
    return j;
  });
  theorem_sub("improved", "Conditions on k and q(k) from the improved counting", [](const TheoremParams& p) {
    Json j = to_json(improved_conditions(p));
    j["inputs"] = to_json(p);
    return j;
  });
  double q_hat = 0.0, counting_base = std::numbers::e;
  std::string b_mode = "basic";
  auto* eb_sub = theorem_sub("event-b", "Failure bound for the property event", [&](const TheoremParams& p) {
    Json j = to_json(bound_event_B(p, q_hat, parse_event_b_mode(b_mode), counting_base));
    j["q_hat"] = q_hat;
    j["mode"] = b_mode;
    j["counting_base"] = counting_base;
    return j;
  });
  eb_sub->add_option("--q-hat", q_hat, "Estimated q(k)")->required();
  eb_sub->add_option("--mode", b_mode, "basic or improved")->check(CLI::IsMember({"basic", "improved"}));
  eb_sub->add_option("--counting-base", counting_base, "C in the (C k)^m count (e or 3)");

  std::uint64_t binom_n = 10, binom_m = 3;
  auto* binom_sub = bounds_cmd->add_subcommand("binom", "C(n, m) against (e n / m)^m");
  add_common(binom_sub, common);
  binom_sub->add_option("--n", binom_n, "n")->required();
  binom_sub->add_option("--m", binom_m, "m")->required();
  binom_sub->callback([&] {
    action = [&] {
      Json j = to_json(binom_upper(binom_n, binom_m));
      j["n"] = binom_n;
      j["m"] = binom_m;
      emit(render(j, common.format), common.out, out);
      return kExitOk;
    };
  });
  double entropy_t = 0.5;
  auto* entropy_sub = bounds_cmd->add_subcommand("entropy", "Natural-log binary entropy");
  add_common(entropy_sub, common);
  entropy_sub->add_option("--t", entropy_t, "Argument in [0, 1]")->required();
  entropy_sub->callback([&] {
    action = [&] {
      emit(render(Json{{"t", entropy_t}, {"entropy", entropy_e(entropy_t)}}, common.format), common.out, out);
      return kExitOk;
    };
  });
  std::uint64_t qb_k = 1;
  double qb_eps = 0.5, qb_base = 6.0;
  auto* qb_sub = bounds_cmd->add_subcommand("q-basic", "Required q(k) <= (base k)^(-2/eps)");
  add_common(qb_sub, common);
  qb_sub->add_option("--k", qb_k, "Block length")->required();
  qb_sub->add_option("--eps", qb_eps, "Proportion in (0, 1)")->required();
  qb_sub->add_option("--base", qb_base, "Base constant (6; 12 is the other reading)");
  qb_sub->callback([&] {
    action = [&] {
      Json j = {{"k", qb_k}, {"eps", qb_eps}, {"base", qb_base}, {"q", to_json(required_q_basic(qb_k, qb_eps, qb_base))}};
      emit(render(j, common.format), common.out, out);
      return kExitOk;
    };
  });
  auto* g_sub = bounds_cmd->add_subcommand("g", "Simplified combined q threshold");
  add_common(g_sub, common);
  add_theorem_options(g_sub, theorem);
  g_sub->callback([&] {
    action = [&] {
      const auto p = theorem.get();
      Json j = {{"g", to_json(g_function(p.k, p.eps1, p.eps2, p.delta, p.p1, p.p2))},
                {"k", p.k},
                {"eps1", p.eps1},
                {"eps2", p.eps2},
                {"delta", p.delta},
                {"p1", p.p1},
                {"p2", p.p2}};
      emit(render(j, common.format), common.out, out);
      return kExitOk;
    };
  });

  // feasibility
  FeasibilityQuery fq;
  double f_eps1 = 0, f_eps2 = 0, f_q_hat = 0;
  std::uint64_t f_k = 0;
  auto* f_cmd = app.add_subcommand("feasibility", "Minimal k, q thresholds and a Monte Carlo verdict");
  add_common(f_cmd, common);
  f_cmd->add_option("--eps", fq.eps, "Proportion parameter");
  f_cmd->add_option("--delta", fq.delta, "Gap");
  f_cmd->add_option("--p1", fq.p1, "Lower length ratio");
  f_cmd->add_option("--p2", fq.p2, "Upper length ratio");
  auto* f_eps1_opt = f_cmd->add_option("--eps1", f_eps1, "Improved route: length-event proportion");
  auto* f_eps2_opt = f_cmd->add_option("--eps2", f_eps2, "Improved route: property proportion");
  auto* f_k_opt = f_cmd->add_option("--k", f_k, "Evaluate thresholds at this k");
  auto* f_q_opt = f_cmd->add_option("--q-hat", f_q_hat, "Estimated q(k) to compare");
  f_cmd->add_option("--q-base", fq.q_base, "Base constant of the basic threshold");
  f_cmd->callback([&] {
    action = [&] {
      if (f_eps1_opt->count() > 0) fq.eps1 = f_eps1;
      if (f_eps2_opt->count() > 0) fq.eps2 = f_eps2;
      if (f_k_opt->count() > 0) fq.k = f_k;
      if (f_q_opt->count() > 0) fq.q_hat = f_q_hat;
      emit(render(to_json(feasibility_report(fq)), common.format), common.out, out);
      return kExitOk;
    };
  });

  // qk
  std::string qk_dist = "binary-uniform", qk_property = "always";
  std::size_t qk_k = 3, qk_trials = 10000;
  double qk_p1 = 0.5, qk_p2 = 2.0;
  std::uint64_t qk_seed = 0, qk_exact_below = std::uint64_t{1} << 20;
  auto* qk_cmd = app.add_subcommand("qk", "Property failure probability over the length window");
  add_common(qk_cmd, common, false);
  qk_cmd->add_option("--dist", qk_dist, "Letter distribution");
  qk_cmd->add_option("--property", qk_property, "Property spec");
  qk_cmd->add_option("--k", qk_k, "Block length");
  qk_cmd->add_option("--p1", qk_p1, "Lower length ratio");
  qk_cmd->add_option("--p2", qk_p2, "Upper length ratio");
  qk_cmd->add_option("--trials", qk_trials, "Monte Carlo trials per length");
  qk_cmd->add_option("--seed", qk_seed, "Master seed");
  qk_cmd->add_option("--exact-below", qk_exact_below, "Enumerate exactly when |A|^(k+l) is at most this");
  qk_cmd->add_option("--format", common.format, "json, table or csv")->check(CLI::IsMember({"json", "table", "csv"}));
  qk_cmd->callback([&] {
    action = [&] {
      const auto spec = PropertySpec::parse(qk_property);
      const auto est = estimate_qk(AlphabetDistribution::parse(qk_dist), spec, qk_k, qk_p1, qk_p2, qk_trials,
                                   qk_seed, qk_exact_below, common.threads);
      if (common.format == "csv") {
        emit(qk_csv(est), common.out, out);
      } else {
        Json j = to_json(est);
        j["property"] = spec.to_json();
        emit(render(j, common.format), common.out, out);
      }
      return kExitOk;
    };
  });

  // paper-check
  auto* pc_cmd = app.add_subcommand("paper-check", "Recompute the worked examples and print a conformance table");
  add_common(pc_cmd, common, false);
  pc_cmd->callback([&] {
    action = [&] {
      const auto rows = run_paper_check();
      emit(paper_check_table(rows), common.out, out);
      const bool all = std::all_of(rows.begin(), rows.end(), [](const PaperCheckRow& r) { return r.pass; });
      return all ? kExitOk : kExitEventFailed;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (!action) throw UsageError("no command given");
    return action();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace lcsgeo
