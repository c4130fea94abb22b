#ifndef LCSGEO_ALPHABET_HPP
#define LCSGEO_ALPHABET_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lcsgeo {

using Symbol = std::uint32_t;

/// Ordered list of distinct symbol identifiers. Sequences store indices into it.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Symbol index) const { return symbols_.at(index); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<Symbol> index_of(std::string_view symbol) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Splits UTF-8 text into code points, one string per code point.
std::vector<std::string> split_code_points(std::string_view utf8);

/// Sorted union of the code points occurring in the given texts.
AlphabetPtr alphabet_from_texts(std::initializer_list<std::string_view> texts);

class Sequence {
 public:
  Sequence() = default;
  Sequence(AlphabetPtr alphabet, std::vector<Symbol> data);

  static Sequence from_text(std::string_view utf8, AlphabetPtr alphabet);

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  Symbol operator[](std::size_t i) const { return data_[i]; }
  std::span<const Symbol> symbols() const { return data_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t alphabet_size() const { return alphabet_ ? alphabet_->size() : 0; }

  std::string to_text() const;

 private:
  AlphabetPtr alphabet_;
  std::vector<Symbol> data_;
};

/// Throws UsageError unless both sequences index the same alphabet.
void require_same_alphabet(const Sequence& x, const Sequence& y);

struct StringPair {
  Sequence x;
  Sequence y;
  std::optional<std::uint64_t> seed;
};

/// Counter-based generator: output number c of the stream keyed by
/// (seed, trial, stream) is a pure function of those four integers, so any
/// trial can be regenerated independently of execution order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();
  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class StreamId : std::uint64_t { kX = 0, kY = 1 };

/// Letter distribution over an alphabet.
class AlphabetDistribution {
 public:
  AlphabetDistribution(AlphabetPtr alphabet, std::vector<double> probabilities);

  /// Built-in names: "binary-uniform", "unary", "uniform:K", "bernoulli:P"
  /// (P is the probability of symbol "1").
  static AlphabetDistribution named(std::string_view name);
  /// {"symbols": [...], "probs": [...]}
  static AlphabetDistribution from_json(const nlohmann::json& j);
  /// Either a built-in name or an inline JSON object.
  static AlphabetDistribution parse(std::string_view text);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t size() const { return probabilities_.size(); }
  const std::vector<double>& probabilities() const { return probabilities_; }
  double probability(Symbol s) const { return probabilities_.at(s); }

  Symbol draw(CounterRng& rng) const;

  nlohmann::json to_json() const;

 private:
  AlphabetPtr alphabet_;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

Sequence sample_sequence(const AlphabetDistribution& dist, std::size_t length, CounterRng& rng);

/// x and y are drawn from independent streams keyed by (seed, trial).
StringPair sample_pair(const AlphabetDistribution& dist, std::size_t len_x, std::size_t len_y,
                       std::uint64_t seed, std::uint64_t trial = 0);

}  // namespace lcsgeo

#endif  // LCSGEO_ALPHABET_HPP
