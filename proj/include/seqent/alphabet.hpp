#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace seqent {

// Symbols are dense small-integer indices; one byte suffices because
// alphabets are capped at 256 letters. The scanning kernels compare these
// raw bytes directly.
using symbol_t = std::uint8_t;

inline constexpr std::size_t kMaxAlphabetSize = 256;

// Ordered set of distinct printable tokens. Tokens are usually single
// characters ("0", "A"); multi-character tokens appear for lifted alphabets
// built from k-grams.
class FiniteAlphabet {
 public:
  explicit FiniteAlphabet(std::vector<std::string> tokens);

  static std::shared_ptr<const FiniteAlphabet> make(
      std::vector<std::string> tokens);
  // One token per character: from_chars("ACGT") == {"A","C","G","T"}.
  static std::shared_ptr<const FiniteAlphabet> from_chars(
      std::string_view chars);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(symbol_t i) const { return tokens_[i]; }
  std::optional<symbol_t> index_of(std::string_view token) const;
  // Fast path used by text encoding; valid only when all tokens are
  // single characters.
  bool single_char_tokens() const { return single_char_; }
  std::optional<symbol_t> index_of_char(char c) const;

  bool operator==(const FiniteAlphabet& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::array<std::int16_t, 256> char_index_{};
  bool single_char_ = false;
};

using AlphabetPtr = std::shared_ptr<const FiniteAlphabet>;

// Self-inverse letter map theta. Word reversal maps a_1...a_n to
// theta(a_n)...theta(a_1); theta = id gives plain time reversal, the
// Chargaff map C<->G, A<->T gives the reverse complement.
class Involution {
 public:
  Involution(AlphabetPtr alphabet, std::vector<symbol_t> mapping);

  static Involution identity(AlphabetPtr alphabet);
  // Pairs like {"C","G"} swap; letters not mentioned are fixed points.
  static Involution from_pairs(
      AlphabetPtr alphabet,
      const std::vector<std::pair<std::string, std::string>>& pairs);

  symbol_t operator()(symbol_t a) const { return mapping_[a]; }
  const FiniteAlphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  std::span<const symbol_t> mapping() const { return mapping_; }
  bool is_identity() const;

 private:
  AlphabetPtr alphabet_;
  std::vector<symbol_t> mapping_;
};

}  // namespace seqent
