#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seqent/alphabet.hpp"
#include "seqent/linalg.hpp"
#include "seqent/rng.hpp"
#include "seqent/sequence.hpp"

namespace seqent {

// Digraph diagnostics of a stochastic matrix (edges where P_ab > 0).
struct ChainStructure {
  bool irreducible = false;
  bool aperiodic = false;
  std::uint32_t period = 0;  // meaningful when irreducible
  // Strongly connected components, each a list of state indices; a single
  // class means irreducible.
  std::vector<std::vector<std::size_t>> classes;
};

ChainStructure analyze_chain(const Mat& P);

// Unique stationary law of an irreducible row-stochastic matrix, by direct
// linear solve. Throws on reducible chains, listing the communicating
// classes.
std::vector<double> stationary_distribution(const Mat& P);

// Power iteration on the lazy chain (P+I)/2, used in tests as a second
// route to the stationary law.
std::vector<double> stationary_distribution_power(const Mat& P,
                                                  double tol = 1e-12,
                                                  std::size_t max_iter = 1000000);

// Stationary Markov chain (pi, P) with exact closed-form oracles.
class MarkovModel {
 public:
  MarkovModel(AlphabetPtr alphabet, std::vector<double> pi, Mat P);
  static MarkovModel from_transitions(AlphabetPtr alphabet, Mat P);

  const FiniteAlphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  std::size_t size() const { return pi_.size(); }
  std::span<const double> pi() const { return pi_; }
  const Mat& transitions() const { return P_; }
  double transition(std::size_t a, std::size_t b) const { return P_.at(a, b); }
  bool full_support() const { return full_support_; }

 private:
  AlphabetPtr alphabet_;
  std::vector<double> pi_;
  Mat P_;
  bool full_support_;
};

// P_n(a) = pi_{a_1} p_{a_1 a_2} ... p_{a_{n-1} a_n}.
double marginal(const MarkovModel& model, std::span<const symbol_t> word);

// Natural-log entropy rate -sum_a pi_a sum_b P_ab log P_ab.
double entropy_rate(const MarkovModel& model);

// Time reversal composed with theta: Q_ab = pi_theta(b) P_theta(b)theta(a)
// / pi_theta(a), stationary law pi_theta(a). Requires full support.
MarkovModel reversed_model(const MarkovModel& model, const Involution& theta);

// Relative entropy rate of the chain with respect to its theta-reversal.
// theta = id uses the flux form sum (pi_a P_ab - pi_b P_ba)/2 log(...);
// general theta goes through the reversed chain (cross entropy minus
// entropy). Conventions: 0 log(0/0) = 0, positive flux against zero flux
// gives +inf, and a chain without full support reverses outside the Markov
// class, also +inf.
double entropy_production(const MarkovModel& model, const Involution& theta);

// -sum_ab pi^P_a P_ab log Q_ab; +inf when P moves where Q cannot.
double cross_entropy(const MarkovModel& p, const MarkovModel& q);

// Finite-n truncation -(1/n) sum_{|a|=n} P_n(a) log Q_n(a), enumerated over
// all words (guard |A|^n <= 2^24).
double brute_force_cross_entropy(const MarkovModel& p, const MarkovModel& q,
                                 std::size_t n);

// Upper-decoupling constant 1/min(pi).
double psi_star_zero_bound(const MarkovModel& model);

// Bit-stable sampling with a SplitMix64 stream; see rng.hpp.
SymbolSequence sample(const MarkovModel& model, std::size_t length,
                      std::uint64_t seed);

// Incremental sampler: extending a buffer in steps yields exactly the
// sequence that a single longer sample() call would, one RNG draw per
// symbol. The model must outlive the sampler.
class MarkovSampler {
 public:
  MarkovSampler(const MarkovModel& model, std::uint64_t seed);
  void extend(std::vector<symbol_t>& out, std::size_t target_len);

 private:
  const MarkovModel* model_;
  std::vector<double> cum_pi_;
  std::vector<double> cum_rows_;
  SplitMix64 gen_;
  bool started_ = false;
  symbol_t last_ = 0;
};

// Lift an order-k conditional table (rows indexed by k-grams in
// lexicographic symbol order, columns by the next letter) to an ordinary
// chain on the k-gram alphabet.
MarkovModel multi_step_to_markov(const AlphabetPtr& base, std::size_t order,
                                 const Mat& cond);

}  // namespace seqent
