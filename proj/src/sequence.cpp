#include "seqent/sequence.hpp"

#include <cctype>
#include <stdexcept>

namespace seqent {

SymbolSequence::SymbolSequence(AlphabetPtr alphabet,
                               std::vector<symbol_t> data)
    : alphabet_(std::move(alphabet)), data_(std::move(data)) {
  if (!alphabet_) throw std::invalid_argument("sequence needs an alphabet");
  for (symbol_t s : data_)
    if (s >= alphabet_->size())
      throw std::invalid_argument("symbol index out of alphabet range");
}

std::span<const symbol_t> SymbolSequence::window(std::size_t pos,
                                                 std::size_t len) const {
  if (pos > data_.size() || len > data_.size() - pos)
    throw std::out_of_range("sequence window past end of data");
  return std::span<const symbol_t>(data_).subspan(pos, len);
}

std::span<const symbol_t> SymbolSequence::tail(std::size_t pos) const {
  if (pos > data_.size())
    throw std::out_of_range("sequence tail past end of data");
  return std::span<const symbol_t>(data_).subspan(pos);
}

SymbolSequence encode_text(std::string_view text, AlphabetPtr alphabet,
                           bool fold_case) {
  if (!alphabet->single_char_tokens())
    throw std::invalid_argument(
        "text encoding requires single-character tokens");
  std::vector<symbol_t> data;
  data.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (fold_case) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    auto s = alphabet->index_of_char(c);
    if (!s)
      throw std::invalid_argument("unknown character '" + std::string(1, c) +
                                  "' at offset " + std::to_string(i + 1));
    data.push_back(*s);
  }
  return SymbolSequence(std::move(alphabet), std::move(data));
}

std::string decode_text(const SymbolSequence& seq) {
  std::string out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i)
    out += seq.alphabet().token(seq[i]);
  return out;
}

std::vector<symbol_t> reverse_word(std::span<const symbol_t> word,
                                   const Involution& theta) {
  std::vector<symbol_t> out(word.size());
  for (std::size_t i = 0; i < word.size(); ++i)
    out[i] = theta(word[word.size() - 1 - i]);
  return out;
}

SymbolSequence reverse_word(const SymbolSequence& word,
                            const Involution& theta) {
  require_same_alphabet(word.alphabet(), theta.alphabet(), "reverse_word");
  return SymbolSequence(word.alphabet_ptr(),
                        reverse_word(word.symbols(), theta));
}

void require_same_alphabet(const FiniteAlphabet& a, const FiniteAlphabet& b,
                           const char* what) {
  if (!(a == b))
    throw std::invalid_argument(std::string(what) + ": alphabet mismatch");
}

}  // namespace seqent
