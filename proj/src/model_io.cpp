#include "seqent/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace seqent {

namespace {

struct Tokenized {
  std::vector<std::string> header;
  std::vector<double> numbers;
};

Tokenized tokenize(std::istream& in, const std::string& origin) {
  Tokenized out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (out.header.empty()) {
        out.header.push_back(tok);
        continue;
      }
      bool in_header = out.numbers.empty() &&
                       ((out.header[0] == "markov" && out.header.size() < 2) ||
                        (out.header[0] == "pmp" && out.header.size() < 3));
      if (in_header) {
        out.header.push_back(tok);
        continue;
      }
      try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.numbers.push_back(v);
      } catch (const std::exception&) {
        throw model_parse_error(origin + ":" + std::to_string(lineno) +
                                ": expected a number, got '" + tok + "'");
      }
    }
  }
  if (out.header.empty())
    throw model_parse_error(origin + ": empty model file");
  return out;
}

void renormalize_row(std::vector<double*>& cells, const std::string& origin,
                     std::size_t row) {
  double sum = 0.0;
  for (double* c : cells) {
    if (*c < 0.0)
      throw model_parse_error(origin + ": negative probability in row " +
                              std::to_string(row));
    sum += *c;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw model_parse_error(origin + ": row " + std::to_string(row) +
                            " sums to " + std::to_string(sum) +
                            " (more than 1e-9 from 1)");
  for (double* c : cells) *c /= sum;
}

}  // namespace

AnySource parse_model(std::istream& in, const std::string& origin) {
  Tokenized t = tokenize(in, origin);
  const std::string& kind = t.header[0];
  if (kind == "markov") {
    if (t.header.size() != 2)
      throw model_parse_error(origin + ": expected 'markov <alphabet>'");
    auto alphabet = FiniteAlphabet::from_chars(t.header[1]);
    std::size_t k = alphabet->size();
    if (t.numbers.size() != k * k)
      throw model_parse_error(origin + ": expected " + std::to_string(k * k) +
                              " transition entries, got " +
                              std::to_string(t.numbers.size()));
    Mat P(k, k);
    P.a = std::move(t.numbers);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double*> cells;
      for (std::size_t j = 0; j < k; ++j) cells.push_back(&P.at(i, j));
      renormalize_row(cells, origin, i + 1);
    }
    return MarkovModel::from_transitions(std::move(alphabet), std::move(P));
  }
  if (kind == "pmp") {
    if (t.header.size() != 3)
      throw model_parse_error(origin + ": expected 'pmp <alphabet> <d>'");
    auto alphabet = FiniteAlphabet::from_chars(t.header[1]);
    std::size_t k = alphabet->size();
    std::size_t d = 0;
    try {
      d = std::stoul(t.header[2]);
    } catch (const std::exception&) {
      throw model_parse_error(origin + ": bad hidden dimension '" +
                              t.header[2] + "'");
    }
    if (d == 0) throw model_parse_error(origin + ": hidden dimension 0");
    if (t.numbers.size() != k * d * d)
      throw model_parse_error(origin + ": expected " +
                              std::to_string(k * d * d) + " entries, got " +
                              std::to_string(t.numbers.size()));
    std::vector<Mat> mats(k, Mat(d, d));
    std::size_t idx = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) mats[a].at(i, j) = t.numbers[idx++];
    // hidden-row stochasticity across all letters
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<double*> cells;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t j = 0; j < d; ++j) cells.push_back(&mats[a].at(i, j));
      renormalize_row(cells, origin, i + 1);
    }
    Mat P(d, d, 0.0);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) P.at(i, j) += mats[a].at(i, j);
    auto pi = stationary_distribution(P);
    return PmpModel(std::move(alphabet), std::move(pi), std::move(mats));
  }
  throw model_parse_error(origin + ": unknown model kind '" + kind +
                          "' (expected markov or pmp)");
}

AnySource load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path);
  return parse_model(in, path);
}

}  // namespace seqent
