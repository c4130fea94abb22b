#include "lcsgeo/alphabet.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "lcsgeo/errors.hpp"

namespace lcsgeo {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t code_point_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 0;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (!seen.insert(s).second) {
      throw ConfigError(fmt::format("alphabet symbol '{}' listed twice", s));
    }
  }
}

std::optional<Symbol> Alphabet::index_of(std::string_view symbol) const {
  const auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<Symbol>(it - symbols_.begin());
}

std::vector<std::string> split_code_points(std::string_view utf8) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < utf8.size()) {
    const std::size_t len = code_point_length(static_cast<unsigned char>(utf8[pos]));
    if (len == 0 || pos + len > utf8.size()) {
      throw UsageError(fmt::format("invalid UTF-8 at byte {}", pos));
    }
    for (std::size_t c = 1; c < len; ++c) {
      if ((static_cast<unsigned char>(utf8[pos + c]) >> 6) != 0x2) {
        throw UsageError(fmt::format("invalid UTF-8 at byte {}", pos + c));
      }
    }
    out.emplace_back(utf8.substr(pos, len));
    pos += len;
  }
  return out;
}

AlphabetPtr alphabet_from_texts(std::initializer_list<std::string_view> texts) {
  std::set<std::string> all;
  for (auto text : texts) {
    for (auto& cp : split_code_points(text)) all.insert(std::move(cp));
  }
  return std::make_shared<const Alphabet>(std::vector<std::string>(all.begin(), all.end()));
}

Sequence::Sequence(AlphabetPtr alphabet, std::vector<Symbol> data)
    : alphabet_(std::move(alphabet)), data_(std::move(data)) {
  if (!alphabet_) throw UsageError("sequence without alphabet");
  for (Symbol s : data_) {
    if (s >= alphabet_->size()) {
      throw UsageError(fmt::format("symbol index {} outside alphabet of size {}", s, alphabet_->size()));
    }
  }
}

Sequence Sequence::from_text(std::string_view utf8, AlphabetPtr alphabet) {
  std::vector<Symbol> data;
  for (const auto& cp : split_code_points(utf8)) {
    const auto idx = alphabet->index_of(cp);
    if (!idx) throw UsageError(fmt::format("symbol '{}' not in alphabet", cp));
    data.push_back(*idx);
  }
  return Sequence(std::move(alphabet), std::move(data));
}

std::string Sequence::to_text() const {
  std::string out;
  for (Symbol s : data_) out += alphabet_->symbol(s);
  return out;
}

void require_same_alphabet(const Sequence& x, const Sequence& y) {
  if (x.alphabet() == y.alphabet()) return;
  if (x.alphabet() && y.alphabet() && *x.alphabet() == *y.alphabet()) return;
  throw UsageError("sequences use different alphabets");
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream)
    : key_(mix64(mix64(mix64(seed + kGolden) ^ (trial * 0xd1b54a32d192ed03ULL)) ^
                 (stream * 0x8cb92ba72f3d8dd7ULL + 1))) {}

CounterRng::result_type CounterRng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

AlphabetDistribution::AlphabetDistribution(AlphabetPtr alphabet, std::vector<double> probabilities)
    : alphabet_(std::move(alphabet)), probabilities_(std::move(probabilities)) {
  if (!alphabet_ || alphabet_->size() == 0) throw ConfigError("distribution needs at least one symbol");
  if (probabilities_.size() != alphabet_->size()) {
    throw ConfigError(fmt::format("{} probabilities for {} symbols", probabilities_.size(), alphabet_->size()));
  }
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError(fmt::format("probability {} is not positive", p));
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError(fmt::format("probabilities sum to {}, not 1", total));
  cumulative_.resize(probabilities_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    acc += probabilities_[i];
    cumulative_[i] = acc;
  }
  cumulative_.back() = 1.0;
}

AlphabetDistribution AlphabetDistribution::named(std::string_view name) {
  auto uniform = [](std::size_t k) {
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < k; ++i) symbols.push_back(std::to_string(i));
    return AlphabetDistribution(std::make_shared<const Alphabet>(std::move(symbols)),
                                std::vector<double>(k, 1.0 / static_cast<double>(k)));
  };
  if (name == "binary-uniform") return uniform(2);
  if (name == "unary") return uniform(1);
  if (name.starts_with("uniform:")) {
    const std::string arg(name.substr(8));
    std::size_t k = 0;
    try {
      k = std::stoul(arg);
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("bad alphabet size in '{}'", name));
    }
    if (k == 0) throw ConfigError("uniform:K needs K >= 1");
    return uniform(k);
  }
  if (name.starts_with("bernoulli:")) {
    const std::string arg(name.substr(10));
    double p = 0.0;
    try {
      p = std::stod(arg);
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("bad probability in '{}'", name));
    }
    return AlphabetDistribution(std::make_shared<const Alphabet>(std::vector<std::string>{"0", "1"}),
                                {1.0 - p, p});
  }
  throw ConfigError(fmt::format("unknown distribution '{}'", name));
}

AlphabetDistribution AlphabetDistribution::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("symbols") || !j.contains("probs")) {
    throw ConfigError("distribution JSON needs 'symbols' and 'probs'");
  }
  std::vector<std::string> symbols;
  std::vector<double> probs;
  try {
    for (const auto& s : j.at("symbols")) symbols.push_back(s.is_string() ? s.get<std::string>() : s.dump());
    probs = j.at("probs").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("distribution JSON: {}", e.what()));
  }
  return AlphabetDistribution(std::make_shared<const Alphabet>(std::move(symbols)), std::move(probs));
}

AlphabetDistribution AlphabetDistribution::parse(std::string_view text) {
  if (!text.empty() && text.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(fmt::format("distribution JSON: {}", e.what()));
    }
    return from_json(j);
  }
  return named(text);
}

Symbol AlphabetDistribution::draw(CounterRng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<Symbol>(std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                                       static_cast<std::ptrdiff_t>(cumulative_.size()) - 1));
}

nlohmann::json AlphabetDistribution::to_json() const {
  return {{"symbols", alphabet_->symbols()}, {"probs", probabilities_}};
}

Sequence sample_sequence(const AlphabetDistribution& dist, std::size_t length, CounterRng& rng) {
  std::vector<Symbol> data(length);
  for (auto& s : data) s = dist.draw(rng);
  return Sequence(dist.alphabet(), std::move(data));
}

StringPair sample_pair(const AlphabetDistribution& dist, std::size_t len_x, std::size_t len_y,
                       std::uint64_t seed, std::uint64_t trial) {
  CounterRng rx(seed, trial, static_cast<std::uint64_t>(StreamId::kX));
  CounterRng ry(seed, trial, static_cast<std::uint64_t>(StreamId::kY));
  StringPair pair{sample_sequence(dist, len_x, rx), sample_sequence(dist, len_y, ry), seed};
  return pair;
}

}  // namespace lcsgeo
