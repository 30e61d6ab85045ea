#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "seqent/estimators.hpp"
#include "seqent/markov.hpp"
#include "seqent/pmp.hpp"

namespace seqent {

// Cross-realization aggregate for one grid point. mean and sem cover only
// the realizations that produced a value; censored ones are counted, never
// averaged. SEM is the sample standard deviation (divisor count-1) over
// sqrt(count); a single value is reported with sem = 0 and the degenerate
// flag raised.
struct EnsemblePointStats {
  std::uint64_t grid = 0;
  std::uint64_t count = 0;
  std::uint64_t censored = 0;
  double mean = 0.0;
  double sem = 0.0;
  bool degenerate = true;
};

struct EnsembleStats {
  EstimatorKind kind = EstimatorKind::ep_recurrence;
  std::vector<EnsemblePointStats> points;
};

// Evaluates `realizations` independent realizations, possibly across OpenMP
// workers, and aggregates in realization order so the output bytes do not
// depend on the worker count. The evaluator must be a pure function of the
// realization index (it derives its own RNG streams from the index).
EnsembleStats run_ensemble(
    EstimatorKind kind, std::span<const std::uint64_t> grid,
    std::uint64_t realizations, int threads,
    const std::function<std::vector<Estimate>(std::uint64_t)>& evaluator);

using AnySource = std::variant<MarkovModel, PmpModel>;

SymbolSequence sample_any(const AnySource& source, std::size_t length,
                          std::uint64_t seed);
const FiniteAlphabet& alphabet_of(const AnySource& source);

struct EnsembleOptions {
  std::vector<std::uint64_t> grid;
  std::uint64_t realizations = 1;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = library default
};

// Model mode: realization r samples fresh data with RNG streams (2r, 2r+1).
// For cross-waiting, `source` generates the pattern sequence and `source_y`
// (default: same model) the scanned one of `sample_length` symbols.
EnsembleStats ensemble_from_model(const AnySource& source,
                                  const std::optional<AnySource>& source_y,
                                  std::size_t sample_length,
                                  EstimatorKind kind, const Involution& theta,
                                  const EnsembleOptions& opt);

// Fixed-sequence mode: realization r starts its window uniformly in the
// first half of the data (from the beginning when realizations == 1) and
// the scans extend right as far as they need; running out of data censors
// the realization.
EnsembleStats ensemble_from_sequence(const SymbolSequence& x,
                                     EstimatorKind kind,
                                     const Involution& theta,
                                     const EnsembleOptions& opt);
// Fixed-sequence cross-waiting over a pair.
EnsembleStats ensemble_from_sequence_pair(const SymbolSequence& x,
                                          const SymbolSequence& y,
                                          const EnsembleOptions& opt);

// ---------------------------------------------------------------------------
// Table output. CSV columns are grid,kind,count,censored,mean,sem plus any
// extra columns appended by the caller; numbers carry 12 significant digits.
// The JSON mirror has exactly the same fields per row.
// ---------------------------------------------------------------------------

std::string format_sig12(double v);
std::string csv_header(std::span<const std::string> extra_names);
void append_csv_rows(std::string& out, const EnsembleStats& stats,
                     std::span<const std::string> extra_values);

}  // namespace seqent
