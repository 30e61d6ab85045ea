#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqent/alphabet.hpp"

namespace seqent {

// Dense run of symbol indices over one alphabet. Storage is 0-based; all
// reported positions (error messages, CSV) are 1-based.
class SymbolSequence {
 public:
  SymbolSequence(AlphabetPtr alphabet, std::vector<symbol_t> data);

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  symbol_t operator[](std::size_t i) const { return data_[i]; }
  std::span<const symbol_t> symbols() const { return data_; }
  // Window of `len` symbols starting at 0-based `pos`; bounds-checked.
  std::span<const symbol_t> window(std::size_t pos, std::size_t len) const;
  std::span<const symbol_t> tail(std::size_t pos) const;

  const FiniteAlphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }

 private:
  AlphabetPtr alphabet_;
  std::vector<symbol_t> data_;
};

// Encode a text where every character is a single-character alphabet token.
// Unknown characters raise an error naming the character and its 1-based
// offset.
SymbolSequence encode_text(std::string_view text, AlphabetPtr alphabet,
                           bool fold_case = false);
std::string decode_text(const SymbolSequence& seq);

// theta(a_n)...theta(a_1).
std::vector<symbol_t> reverse_word(std::span<const symbol_t> word,
                                   const Involution& theta);
SymbolSequence reverse_word(const SymbolSequence& word,
                            const Involution& theta);

// Words over `alphabet` and `theta`'s alphabet must agree.
void require_same_alphabet(const FiniteAlphabet& a, const FiniteAlphabet& b,
                           const char* what);

}  // namespace seqent
