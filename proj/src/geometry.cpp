#include "lcsgeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <utility>

#include <fmt/format.h>
#include <json.hpp>

#include "lcsgeo/errors.hpp"

namespace lcsgeo {

std::vector<MatchPoint> match_points(const Sequence& x, const Sequence& y) {
  require_same_alphabet(x, y);
  const ScoreTable pre = prefix_table(x, y);
  const ScoreTable suf = suffix_table(x, y);
  const std::uint32_t total = pre(x.size(), y.size());
  std::vector<MatchPoint> points;
  if (total == 0) return points;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      if (x[i - 1] == y[j - 1] && pre(i - 1, j - 1) + 1 + suf(i, j) == total) points.push_back({i, j});
    }
  }
  return points;
}

const EnvelopeRow* Envelope::find(std::size_t i) const {
  const auto it = std::lower_bound(rows.begin(), rows.end(), i,
                                   [](const EnvelopeRow& r, std::size_t v) { return r.i < v; });
  return it != rows.end() && it->i == i ? &*it : nullptr;
}

Envelope envelope_from_points(std::size_t n, std::size_t n_y, std::size_t lcs,
                              const std::vector<MatchPoint>& points) {
  Envelope env{n, n_y, lcs, {}};
  for (const auto& p : points) {
    if (!env.rows.empty() && env.rows.back().i == p.i) {
      env.rows.back().lo = std::min(env.rows.back().lo, p.j);
      env.rows.back().hi = std::max(env.rows.back().hi, p.j);
    } else {
      if (!env.rows.empty() && env.rows.back().i > p.i) throw UsageError("match points must be sorted by i");
      env.rows.push_back({p.i, p.j, p.j});
    }
  }
  return env;
}

Envelope envelope(const Sequence& x, const Sequence& y) {
  const auto points = match_points(x, y);
  return envelope_from_points(x.size(), y.size(), lcs_length(x, y), points);
}

void DiagonalBand::validate() const {
  if (!(p1 > 0.0 && p1 < 1.0)) throw UsageError(fmt::format("band p1 = {} must lie in (0, 1)", p1));
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError(fmt::format("band eps = {} must lie in (0, 1)", eps));
  if (k < 1) throw UsageError("band k must be >= 1");
}

double DiagonalBand::lower(double x) const {
  const double nd = static_cast<double>(n);
  return p1 * x - p1 * nd * eps - p1 * static_cast<double>(k);
}

double DiagonalBand::upper(double x) const {
  const double nd = static_cast<double>(n);
  return x / p1 + nd * eps / p1 + static_cast<double>(k) / p1;
}

DiagonalCheck check_diagonal_event(const Envelope& env, const DiagonalBand& band) {
  band.validate();
  if (band.n != env.n) {
    throw UsageError(fmt::format("band built for n = {} but envelope has n = {}", band.n, env.n));
  }
  DiagonalCheck result;
  for (const auto& row : env.rows) {
    const double xi = static_cast<double>(row.i);
    if (!band.contains(xi, static_cast<double>(row.lo))) result.violations.push_back({row.i, row.lo});
    if (row.hi != row.lo && !band.contains(xi, static_cast<double>(row.hi))) {
      result.violations.push_back({row.i, row.hi});
    }
  }
  result.holds = result.violations.empty();
  return result;
}

double max_rescaled_deviation(const Envelope& env) {
  if (env.n == 0) return 0.0;
  std::size_t worst = 0;
  for (const auto& row : env.rows) {
    const auto dev = [&](std::size_t j) { return j > row.i ? j - row.i : row.i - j; };
    worst = std::max({worst, dev(row.lo), dev(row.hi)});
  }
  return static_cast<double>(worst) / static_cast<double>(env.n);
}

FigureFormat parse_figure_format(std::string_view name) {
  if (name == "csv") return FigureFormat::kCsv;
  if (name == "json") return FigureFormat::kJson;
  if (name == "svg") return FigureFormat::kSvg;
  throw UsageError(fmt::format("unknown figure format '{}'", name));
}

namespace {

std::string export_csv(const Envelope& env, const DiagonalBand& band) {
  std::string out = fmt::format("# n={},lcs={},p1={},eps={},k={}\n", env.n, env.lcs, band.p1, band.eps, band.k);
  out += "i,lo,hi\n";
  for (const auto& r : env.rows) out += fmt::format("{},{},{}\n", r.i, r.lo, r.hi);
  return out;
}

std::string export_json(const Envelope& env, const DiagonalBand& band) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& r : env.rows) points.push_back({{"i", r.i}, {"lo", r.lo}, {"hi", r.hi}});
  const nlohmann::json j = {{"n", env.n},
                            {"lcs", env.lcs},
                            {"points", std::move(points)},
                            {"band", {{"p1", band.p1}, {"eps", band.eps}, {"k", band.k}}}};
  return j.dump(2) + "\n";
}

// Plot box inside the 1000 x 1000 viewbox.
constexpr double kMargin = 50.0;
constexpr double kSide = 900.0;

// Segment of y = slope * x + offset inside [0, extent]^2, if any.
std::optional<std::pair<double, double>> clip_line(double slope, double offset, double extent) {
  double lo = 0.0, hi = extent;
  // 0 <= slope * x + offset <= extent, slope > 0
  lo = std::max(lo, -offset / slope);
  hi = std::min(hi, (extent - offset) / slope);
  if (!(lo < hi)) return std::nullopt;
  return std::make_pair(lo, hi);
}

std::string export_svg(const Envelope& env, const DiagonalBand& band) {
  const double extent = static_cast<double>(std::max<std::size_t>({env.n, env.n_y, 1}));
  const double scale = kSide / extent;
  auto px = [&](double x) { return kMargin + x * scale; };
  auto py = [&](double y) { return kMargin + kSide - y * scale; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1000\" height=\"1000\" "
         "viewBox=\"0 0 1000 1000\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  out += fmt::format("<rect id=\"plot-box\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
                     "fill=\"none\" stroke=\"black\"/>\n",
                     kMargin, kMargin, kSide, kSide);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"16\">0</text>\n", kMargin - 15, kMargin + kSide + 20);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"16\">{}</text>\n", kMargin + kSide - 20,
                     kMargin + kSide + 20, static_cast<std::size_t>(extent));
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"16\">{}</text>\n", 5.0, kMargin + 5,
                     static_cast<std::size_t>(extent));

  auto line = [&](std::string_view id, double x0, double y0, double x1, double y1, std::string_view style) {
    out += fmt::format("<line id=\"{}\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" {}/>\n", id, px(x0),
                       py(y0), px(x1), py(y1), style);
  };
  line("diagonal", 0.0, 0.0, extent, extent, "stroke=\"gray\" stroke-dasharray=\"4 4\"");

  const double nd = static_cast<double>(band.n);
  const double kd = static_cast<double>(band.k);
  const double lower_offset = -band.p1 * nd * band.eps - band.p1 * kd;
  const double upper_offset = (nd * band.eps + kd) / band.p1;
  if (auto seg = clip_line(band.p1, lower_offset, extent)) {
    line("band-lower", seg->first, band.lower(seg->first), seg->second, band.lower(seg->second), "stroke=\"red\"");
  }
  if (auto seg = clip_line(1.0 / band.p1, upper_offset, extent)) {
    line("band-upper", seg->first, band.upper(seg->first), seg->second, band.upper(seg->second), "stroke=\"red\"");
  }

  auto polyline = [&](std::string_view id, auto pick, std::string_view color) {
    out += fmt::format("<polyline id=\"{}\" fill=\"none\" stroke=\"{}\" points=\"", id, color);
    bool first = true;
    for (const auto& r : env.rows) {
      out += fmt::format("{}{:.2f},{:.2f}", first ? "" : " ", px(static_cast<double>(r.i)),
                         py(static_cast<double>(pick(r))));
      first = false;
    }
    out += "\"/>\n";
  };
  polyline("envelope-lo", [](const EnvelopeRow& r) { return r.lo; }, "blue");
  polyline("envelope-hi", [](const EnvelopeRow& r) { return r.hi; }, "green");
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string export_figure(const Envelope& env, const DiagonalBand& band, FigureFormat format) {
  switch (format) {
    case FigureFormat::kCsv:
      return export_csv(env, band);
    case FigureFormat::kJson:
      return export_json(env, band);
    case FigureFormat::kSvg:
      return export_svg(env, band);
  }
  throw UsageError("unknown figure format");
}

void write_text_file(const std::filesystem::path& path, std::string_view payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace lcsgeo
