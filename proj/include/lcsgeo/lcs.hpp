#ifndef LCSGEO_LCS_HPP
#define LCSGEO_LCS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lcsgeo/alphabet.hpp"

namespace lcsgeo {

enum class Orientation { kPrefix, kSuffix };

/// Dense (|x|+1) x (|y|+1) table of LCS lengths.
///
/// Prefix orientation: cell(i, j) = |LCS(x[1..i], y[1..j])|.
/// Suffix orientation: cell(i, j) = |LCS(x[i+1..], y[j+1..])|.
class ScoreTable {
 public:
  ScoreTable(std::size_t rows, std::size_t cols, Orientation orientation)
      : rows_(rows), cols_(cols), orientation_(orientation), cells_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Orientation orientation() const { return orientation_; }

  std::uint32_t operator()(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  std::uint32_t& operator()(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  Orientation orientation_;
  std::vector<std::uint32_t> cells_;
};

/// 1-based aligned position pair: x_i is matched with y_j.
struct IndexPair {
  std::size_t i = 0;
  std::size_t j = 0;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

// Span-level kernels; symbols are compared by index only.

/// Two rolling rows, O(|y|) memory.
std::size_t lcs_length_rows(std::span<const Symbol> x, std::span<const Symbol> y);
/// Bit-vector LCS over 64-bit words (Allison-Dix / Hyyro recurrence).
std::size_t lcs_length_bitparallel(std::span<const Symbol> x, std::span<const Symbol> y);
/// Picks the bit-parallel kernel when the alphabet is small.
std::size_t lcs_length(std::span<const Symbol> x, std::span<const Symbol> y);

std::size_t lcs_length(const Sequence& x, const Sequence& y);
ScoreTable prefix_table(const Sequence& x, const Sequence& y);
ScoreTable suffix_table(const Sequence& x, const Sequence& y);
ScoreTable prefix_table(std::span<const Symbol> x, std::span<const Symbol> y);
ScoreTable suffix_table(std::span<const Symbol> x, std::span<const Symbol> y);

/// One canonical optimal alignment, increasing in both coordinates.
/// Walking back from (|x|, |y|): take a match whenever x_i = y_j, otherwise
/// step to i-1 when that keeps the score, else to j-1.
std::vector<IndexPair> backtrace(const Sequence& x, const Sequence& y);

/// w[b] = |LCS(block, y[a+1..b])| for b in [a, last]; entries below a are 0.
/// `last` is clamped to |y|.
std::vector<std::uint32_t> block_row(std::span<const Symbol> block, std::span<const Symbol> y,
                                     std::size_t a, std::size_t last);

}  // namespace lcsgeo

#endif  // LCSGEO_LCS_HPP
