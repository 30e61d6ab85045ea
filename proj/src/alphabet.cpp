#include "seqent/alphabet.hpp"

#include <stdexcept>
#include <unordered_set>

namespace seqent {

FiniteAlphabet::FiniteAlphabet(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  if (tokens_.size() < 2)
    throw std::invalid_argument("alphabet needs at least 2 symbols");
  if (tokens_.size() > kMaxAlphabetSize)
    throw std::invalid_argument("alphabet larger than 256 symbols");
  std::unordered_set<std::string_view> seen;
  for (const auto& t : tokens_) {
    if (t.empty()) throw std::invalid_argument("empty alphabet token");
    if (!seen.insert(t).second)
      throw std::invalid_argument("duplicate alphabet token '" + t + "'");
  }
  char_index_.fill(-1);
  single_char_ = true;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].size() != 1) {
      single_char_ = false;
      continue;
    }
    char_index_[static_cast<unsigned char>(tokens_[i][0])] =
        static_cast<std::int16_t>(i);
  }
}

AlphabetPtr FiniteAlphabet::make(std::vector<std::string> tokens) {
  return std::make_shared<const FiniteAlphabet>(std::move(tokens));
}

AlphabetPtr FiniteAlphabet::from_chars(std::string_view chars) {
  std::vector<std::string> tokens;
  tokens.reserve(chars.size());
  for (char c : chars) tokens.emplace_back(1, c);
  return make(std::move(tokens));
}

std::optional<symbol_t> FiniteAlphabet::index_of(
    std::string_view token) const {
  if (token.size() == 1 && single_char_) return index_of_char(token[0]);
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    if (tokens_[i] == token) return static_cast<symbol_t>(i);
  return std::nullopt;
}

std::optional<symbol_t> FiniteAlphabet::index_of_char(char c) const {
  std::int16_t i = char_index_[static_cast<unsigned char>(c)];
  if (i < 0) return std::nullopt;
  return static_cast<symbol_t>(i);
}

Involution::Involution(AlphabetPtr alphabet, std::vector<symbol_t> mapping)
    : alphabet_(std::move(alphabet)), mapping_(std::move(mapping)) {
  if (!alphabet_) throw std::invalid_argument("involution needs an alphabet");
  if (mapping_.size() != alphabet_->size())
    throw std::invalid_argument("involution mapping size mismatch");
  for (std::size_t a = 0; a < mapping_.size(); ++a) {
    if (mapping_[a] >= mapping_.size())
      throw std::invalid_argument("involution maps outside the alphabet");
    if (mapping_[mapping_[a]] != a)
      throw std::invalid_argument(
          "not an involution: theta(theta(" + alphabet_->token(a) +
          ")) != " + alphabet_->token(a));
  }
}

Involution Involution::identity(AlphabetPtr alphabet) {
  std::vector<symbol_t> map(alphabet->size());
  for (std::size_t i = 0; i < map.size(); ++i)
    map[i] = static_cast<symbol_t>(i);
  return Involution(std::move(alphabet), std::move(map));
}

Involution Involution::from_pairs(
    AlphabetPtr alphabet,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<symbol_t> map(alphabet->size());
  for (std::size_t i = 0; i < map.size(); ++i)
    map[i] = static_cast<symbol_t>(i);
  std::vector<bool> touched(alphabet->size(), false);
  for (const auto& [lhs, rhs] : pairs) {
    auto a = alphabet->index_of(lhs);
    auto b = alphabet->index_of(rhs);
    if (!a || !b)
      throw std::invalid_argument("involution pair uses unknown token '" +
                                  (a ? rhs : lhs) + "'");
    if (touched[*a] || touched[*b])
      throw std::invalid_argument("conflicting involution pair for token '" +
                                  (touched[*a] ? lhs : rhs) + "'");
    touched[*a] = touched[*b] = true;
    map[*a] = *b;
    map[*b] = *a;
  }
  return Involution(std::move(alphabet), std::move(map));
}

bool Involution::is_identity() const {
  for (std::size_t a = 0; a < mapping_.size(); ++a)
    if (mapping_[a] != a) return false;
  return true;
}

}  // namespace seqent
