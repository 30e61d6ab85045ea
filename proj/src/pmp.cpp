#include "seqent/pmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "seqent/rng.hpp"

namespace seqent {

PmpModel::PmpModel(AlphabetPtr alphabet, std::vector<double> pi,
                   std::vector<Mat> letter_matrices)
    : alphabet_(std::move(alphabet)),
      pi_(std::move(pi)),
      letter_matrices_(std::move(letter_matrices)) {
  if (!alphabet_) throw std::invalid_argument("PmpModel: null alphabet");
  if (letter_matrices_.size() != alphabet_->size())
    throw std::invalid_argument("PmpModel: one matrix per letter required");
  const std::size_t d = pi_.size();
  if (d == 0) throw std::invalid_argument("PmpModel: empty hidden space");
  double s = 0.0;
  for (double v : pi_) {
    if (v <= 0.0)
      throw std::invalid_argument(
          "PmpModel: stationary vector must be strictly positive");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw std::invalid_argument("PmpModel: pi sums to " + std::to_string(s));
  for (const Mat& m : letter_matrices_) {
    if (m.rows != d || m.cols != d)
      throw std::invalid_argument("PmpModel: letter matrix shape mismatch");
    for (double v : m.a)
      if (v < 0.0)
        throw std::invalid_argument("PmpModel: negative matrix entry");
  }
  for (std::size_t i = 0; i < d; ++i) {
    double row = 0.0;
    for (const Mat& m : letter_matrices_)
      for (std::size_t j = 0; j < d; ++j) row += m.at(i, j);
    if (std::abs(row - 1.0) > 1e-12)
      throw std::invalid_argument("PmpModel: sum of letter matrices row " +
                                  std::to_string(i + 1) + " sums to " +
                                  std::to_string(row));
  }
  for (std::size_t j = 0; j < d; ++j) {
    double r = -pi_[j];
    for (std::size_t i = 0; i < d; ++i)
      for (const Mat& m : letter_matrices_) r += pi_[i] * m.at(i, j);
    if (std::abs(r) > 1e-10)
      throw std::invalid_argument("PmpModel: pi (sum_a P_a) != pi");
  }
}

double marginal(const PmpModel& model, std::span<const symbol_t> word) {
  if (word.empty()) throw std::invalid_argument("marginal: empty word");
  const std::size_t d = model.hidden_dim();
  std::vector<double> v(model.pi().begin(), model.pi().end()), w(d);
  for (symbol_t a : word) {
    if (a >= model.letters())
      throw std::invalid_argument("marginal: word outside the alphabet");
    const Mat& m = model.letter_matrix(a);
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += v[i] * m.at(i, j);
      w[j] = s;
    }
    v.swap(w);
  }
  double p = 0.0;
  for (double x : v) p += x;
  return p;
}

PmpSampler::PmpSampler(const PmpModel& model, std::uint64_t seed)
    : model_(&model),
      gen_(seed),
      forward_(model.pi().begin(), model.pi().end()),
      scratch_(model.hidden_dim()),
      weights_(model.letters()) {}

void PmpSampler::extend(std::vector<symbol_t>& out, std::size_t target_len) {
  const std::size_t d = model_->hidden_dim();
  const std::size_t k = model_->letters();
  out.reserve(target_len);
  while (out.size() < target_len) {
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      const Mat& m = model_->letter_matrix(a);
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) s += forward_[i] * m.at(i, j);
      weights_[a] = s;
      total += s;
    }
    double u = gen_.uniform() * total;
    std::size_t a = 0;
    double cum = weights_[0];
    while (a + 1 < k && u >= cum) cum += weights_[++a];
    out.push_back(static_cast<symbol_t>(a));
    // advance and renormalize the forward vector; conditionals never
    // underflow even when the word probability would
    const Mat& m = model_->letter_matrix(a);
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += forward_[i] * m.at(i, j);
      scratch_[j] = s;
    }
    double norm = 0.0;
    for (double x : scratch_) norm += x;
    for (std::size_t j = 0; j < d; ++j) forward_[j] = scratch_[j] / norm;
  }
}

SymbolSequence sample(const PmpModel& model, std::size_t length,
                      std::uint64_t seed) {
  if (length == 0)
    throw std::invalid_argument("sample: length must be >= 1");
  PmpSampler sampler(model, seed);
  std::vector<symbol_t> data;
  sampler.extend(data, length);
  return SymbolSequence(model.alphabet_ptr(), std::move(data));
}

double psi_star_zero_bound(const PmpModel& model) {
  double m = *std::min_element(model.pi().begin(), model.pi().end());
  return 1.0 / (m * m);
}

PmpModel embed_markov(const MarkovModel& model) {
  const std::size_t k = model.size();
  std::vector<Mat> mats(k, Mat(k, k, 0.0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t i = 0; i < k; ++i) mats[a].at(i, a) = model.transition(i, a);
  std::vector<double> pi(model.pi().begin(), model.pi().end());
  return PmpModel(model.alphabet_ptr(), std::move(pi), std::move(mats));
}

double brute_force_cross_entropy(const PmpModel& p, const PmpModel& q,
                                 std::size_t n) {
  require_same_alphabet(p.alphabet(), q.alphabet(),
                        "brute_force_cross_entropy");
  if (n == 0)
    throw std::invalid_argument("brute_force_cross_entropy: n must be >= 1");
  const std::size_t k = p.letters();
  double words = std::pow(static_cast<double>(k), static_cast<double>(n));
  if (words > static_cast<double>(1u << 24))
    throw std::invalid_argument(
        "brute_force_cross_entropy: |A|^n exceeds the enumeration guard");
  bool violation = false;
  double acc = 0.0;
  std::vector<symbol_t> word(n, 0);
  for (;;) {
    double pp = marginal(p, word);
    if (pp > 0.0) {
      double qp = marginal(q, word);
      if (qp == 0.0)
        violation = true;
      else
        acc += pp * std::log(qp);
    }
    std::size_t i = n;
    while (i > 0) {
      if (static_cast<std::size_t>(++word[i - 1]) < k) break;
      word[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  if (violation) return std::numeric_limits<double>::infinity();
  return -acc / static_cast<double>(n);
}

}  // namespace seqent
