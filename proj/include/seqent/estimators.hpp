#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "seqent/scan.hpp"
#include "seqent/sequence.hpp"

namespace seqent {

enum class EstimatorKind {
  ep_recurrence,       // (1/n) log(R^_n / R_n)
  entropy_recurrence,  // (1/n) log R_n
  cross_waiting,       // (1/n) log W_n
  ep_match,            // log m / L^_m - log m / L_m
};

const char* to_string(EstimatorKind kind);
EstimatorKind estimator_kind_from(std::string_view name);

// A single estimator evaluation: either a value or a censored outcome
// (some underlying scan ran out of data). Censored points carry no value.
struct Estimate {
  double value = 0.0;
  bool censored = true;

  static Estimate of(double v) { return {v, false}; }
  static Estimate censor() { return {}; }
};

struct EstimatePoint {
  std::uint64_t grid;  // n for recurrence/waiting kinds, m for match kinds
  double value;
  bool censored;
};

// Per-realization values along a grid, strictly increasing in grid.
struct EstimateSeries {
  EstimatorKind kind;
  std::vector<EstimatePoint> points;
};

Estimate ep_estimate_recurrence(const SymbolSequence& x, std::size_t n,
                                const Involution& theta);
Estimate entropy_estimate_recurrence(const SymbolSequence& x, std::size_t n);
Estimate cross_entropy_estimate_waiting(const SymbolSequence& x,
                                        const SymbolSequence& y,
                                        std::size_t n);
// m >= 2; censored when either match length is 0 or data-exhausted.
Estimate ep_estimate_match_length(const SymbolSequence& x, std::uint64_t m,
                                  const Involution& theta);

// Span-level batched versions used by the ensemble runner; one pass per
// realization regardless of grid size. Grid values beyond what the data
// can host come back censored.
std::vector<Estimate> batch_recurrence_estimates(
    std::span<const symbol_t> x, std::span<const std::uint64_t> grid,
    const Involution& theta, bool with_reversed);
std::vector<Estimate> batch_waiting_estimates(
    std::span<const symbol_t> x, std::span<const symbol_t> y,
    std::span<const std::uint64_t> grid);
std::vector<Estimate> batch_match_length_estimates(
    std::span<const symbol_t> x, std::span<const std::uint64_t> grid,
    const Involution& theta);

}  // namespace seqent
