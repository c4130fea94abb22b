#include "lcsgeo/lcs.hpp"

#include <algorithm>
#include <bit>

#include "lcsgeo/errors.hpp"

namespace lcsgeo {

namespace {

constexpr std::size_t kBitParallelMaxAlphabet = 256;

Symbol max_symbol(std::span<const Symbol> s) {
  Symbol m = 0;
  for (Symbol c : s) m = std::max(m, c);
  return m;
}

}  // namespace

std::size_t lcs_length_rows(std::span<const Symbol> x, std::span<const Symbol> y) {
  if (x.empty() || y.empty()) return 0;
  std::vector<std::uint32_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const Symbol xi = x[i - 1];
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = xi == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

std::size_t lcs_length_bitparallel(std::span<const Symbol> x, std::span<const Symbol> y) {
  if (x.empty() || y.empty()) return 0;
  const std::size_t words = (x.size() + 63) / 64;
  const std::size_t sigma = static_cast<std::size_t>(std::max(max_symbol(x), max_symbol(y))) + 1;
  // match[c * words + w] has bit t set iff x[64 w + t] == c
  std::vector<std::uint64_t> match(sigma * words, 0);
  for (std::size_t t = 0; t < x.size(); ++t) {
    match[x[t] * words + t / 64] |= std::uint64_t{1} << (t % 64);
  }
  std::vector<std::uint64_t> v(words, ~std::uint64_t{0});
  for (Symbol c : y) {
    const std::uint64_t* m = &match[c * words];
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t u = v[w] & m[w];
      // V' = (V + U) | (V - U); U is a subset of V so V - U = V & ~U.
      const std::uint64_t sum = v[w] + u;
      const std::uint64_t c1 = sum < v[w] ? 1 : 0;
      const std::uint64_t sum2 = sum + carry;
      const std::uint64_t c2 = sum2 < sum ? 1 : 0;
      v[w] = sum2 | (v[w] & ~u);
      carry = c1 | c2;
    }
  }
  std::size_t zeros = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t word = ~v[w];
    if (w + 1 == words && x.size() % 64 != 0) word &= (std::uint64_t{1} << (x.size() % 64)) - 1;
    zeros += static_cast<std::size_t>(std::popcount(word));
  }
  return zeros;
}

std::size_t lcs_length(std::span<const Symbol> x, std::span<const Symbol> y) {
  if (x.empty() || y.empty()) return 0;
  if (x.size() > y.size()) std::swap(x, y);
  if (std::max(max_symbol(x), max_symbol(y)) < kBitParallelMaxAlphabet) {
    return lcs_length_bitparallel(x, y);
  }
  return lcs_length_rows(x, y);
}

std::size_t lcs_length(const Sequence& x, const Sequence& y) {
  require_same_alphabet(x, y);
  return lcs_length(x.symbols(), y.symbols());
}

ScoreTable prefix_table(std::span<const Symbol> x, std::span<const Symbol> y) {
  ScoreTable t(x.size() + 1, y.size() + 1, Orientation::kPrefix);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      t(i, j) = x[i - 1] == y[j - 1] ? t(i - 1, j - 1) + 1 : std::max(t(i - 1, j), t(i, j - 1));
    }
  }
  return t;
}

ScoreTable suffix_table(std::span<const Symbol> x, std::span<const Symbol> y) {
  ScoreTable t(x.size() + 1, y.size() + 1, Orientation::kSuffix);
  for (std::size_t i = x.size(); i-- > 0;) {
    for (std::size_t j = y.size(); j-- > 0;) {
      t(i, j) = x[i] == y[j] ? t(i + 1, j + 1) + 1 : std::max(t(i + 1, j), t(i, j + 1));
    }
  }
  return t;
}

ScoreTable prefix_table(const Sequence& x, const Sequence& y) {
  require_same_alphabet(x, y);
  return prefix_table(x.symbols(), y.symbols());
}

ScoreTable suffix_table(const Sequence& x, const Sequence& y) {
  require_same_alphabet(x, y);
  return suffix_table(x.symbols(), y.symbols());
}

std::vector<IndexPair> backtrace(const Sequence& x, const Sequence& y) {
  const ScoreTable t = prefix_table(x, y);
  std::vector<IndexPair> pairs;
  pairs.reserve(t(x.size(), y.size()));
  std::size_t i = x.size(), j = y.size();
  while (i > 0 && j > 0) {
    if (x[i - 1] == y[j - 1]) {
      pairs.push_back({i, j});
      --i;
      --j;
    } else if (t(i - 1, j) == t(i, j)) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<std::uint32_t> block_row(std::span<const Symbol> block, std::span<const Symbol> y,
                                     std::size_t a, std::size_t last) {
  last = std::min(last, y.size());
  std::vector<std::uint32_t> row(last + 1, 0);
  if (a >= last) return row;
  // column over the block, advanced one y letter at a time
  std::vector<std::uint32_t> col(block.size() + 1, 0);
  for (std::size_t j = a; j < last; ++j) {
    const Symbol c = y[j];
    std::uint32_t diag = 0;  // col[t-1] before this step
    for (std::size_t t = 1; t <= block.size(); ++t) {
      const std::uint32_t up = col[t];
      col[t] = block[t - 1] == c ? diag + 1 : std::max(up, col[t - 1]);
      diag = up;
    }
    row[j + 1] = col[block.size()];
  }
  return row;
}

}  // namespace lcsgeo
