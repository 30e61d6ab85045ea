#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "seqent/alphabet.hpp"
#include "seqent/linalg.hpp"
#include "seqent/markov.hpp"
#include "seqent/rng.hpp"
#include "seqent/sequence.hpp"

namespace seqent {

// Positive-matrix-product representation of a hidden Markov source: a
// strictly positive stationary row vector pi over d hidden states and one
// nonnegative d x d matrix per letter, with sum_a P_a row-stochastic and
// pi (sum_a P_a) = pi. Word probabilities are pi P_{a_1} ... P_{a_n} 1.
class PmpModel {
 public:
  PmpModel(AlphabetPtr alphabet, std::vector<double> pi,
           std::vector<Mat> letter_matrices);

  const FiniteAlphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  std::size_t letters() const { return letter_matrices_.size(); }
  std::size_t hidden_dim() const { return pi_.size(); }
  std::span<const double> pi() const { return pi_; }
  const Mat& letter_matrix(std::size_t a) const { return letter_matrices_[a]; }

 private:
  AlphabetPtr alphabet_;
  std::vector<double> pi_;
  std::vector<Mat> letter_matrices_;
};

double marginal(const PmpModel& model, std::span<const symbol_t> word);

// Sequential sampling through the normalized forward vector, so arbitrarily
// long sequences never underflow.
SymbolSequence sample(const PmpModel& model, std::size_t length,
                      std::uint64_t seed);

// Upper-decoupling constant (1/min(pi))^2.
double psi_star_zero_bound(const PmpModel& model);

// Markov chain as a PMP source with d = |A| and (P_a)_ij = P_ij [j == a].
PmpModel embed_markov(const MarkovModel& model);

// Incremental sampler matching sample() draw for draw; the model must
// outlive the sampler.
class PmpSampler {
 public:
  PmpSampler(const PmpModel& model, std::uint64_t seed);
  void extend(std::vector<symbol_t>& out, std::size_t target_len);

 private:
  const PmpModel* model_;
  SplitMix64 gen_;
  std::vector<double> forward_;
  std::vector<double> scratch_;
  std::vector<double> weights_;
};

double brute_force_cross_entropy(const PmpModel& p, const PmpModel& q,
                                 std::size_t n);

}  // namespace seqent
