#ifndef LCSGEO_GEOMETRY_HPP
#define LCSGEO_GEOMETRY_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lcsgeo/alphabet.hpp"
#include "lcsgeo/lcs.hpp"

namespace lcsgeo {

/// (i, j), 1-based, with x_i = y_j and lying on at least one optimal alignment.
using MatchPoint = IndexPair;

/// All pairs contained in some optimal alignment, sorted by (i, j).
/// (i, j) qualifies iff x_i = y_j and prefix(i-1, j-1) + 1 + suffix(i, j) = LCS.
std::vector<MatchPoint> match_points(const Sequence& x, const Sequence& y);

struct EnvelopeRow {
  std::size_t i = 0;
  std::size_t lo = 0;
  std::size_t hi = 0;
  friend bool operator==(const EnvelopeRow&, const EnvelopeRow&) = default;
};

/// Per x-index min/max y-index over all match points. Only matched x-indices
/// are stored.
struct Envelope {
  std::size_t n = 0;    // |x|
  std::size_t n_y = 0;  // |y|
  std::size_t lcs = 0;
  std::vector<EnvelopeRow> rows;  // increasing i

  const EnvelopeRow* find(std::size_t i) const;
};

Envelope envelope(const Sequence& x, const Sequence& y);
Envelope envelope_from_points(std::size_t n, std::size_t n_y, std::size_t lcs,
                              const std::vector<MatchPoint>& points);

/// The strip between y = p1 x - p1 n eps - p1 k and y = (x + n eps + k) / p1.
struct DiagonalBand {
  double p1 = 0.5;
  double eps = 0.05;
  std::size_t k = 2;
  std::size_t n = 0;

  void validate() const;
  double lower(double x) const;
  double upper(double x) const;
  bool contains(double x, double y) const { return lower(x) <= y && y <= upper(x); }
};

struct DiagonalCheck {
  bool holds = true;
  std::vector<MatchPoint> violations;  // every offending (i, lo) / (i, hi)
};

/// Decides the diagonal event on the envelope's extreme points.
DiagonalCheck check_diagonal_event(const Envelope& env, const DiagonalBand& band);

/// max over stored rows of max(|lo - i|, |hi - i|) / n; 0 for an empty envelope.
double max_rescaled_deviation(const Envelope& env);

enum class FigureFormat { kCsv, kJson, kSvg };

FigureFormat parse_figure_format(std::string_view name);

std::string export_figure(const Envelope& env, const DiagonalBand& band, FigureFormat format);

/// Writes the payload to `path`; "-" is not handled here. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view payload);

}  // namespace lcsgeo

#endif  // LCSGEO_GEOMETRY_HPP
