#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "seqent/sequence.hpp"

namespace seqent {

// Outcome of a time search. Finite data cannot witness an infinite time, so
// a scan that runs out of data reports Censored(horizon) instead; downstream
// estimators treat censored points as missing values, never as numbers.
class ScanResult {
 public:
  static ScanResult found(std::uint64_t k) { return ScanResult(true, k); }
  static ScanResult censored(std::uint64_t horizon) {
    return ScanResult(false, horizon);
  }

  bool is_found() const { return found_; }
  // First offset k >= 1 at which the defining pattern equality holds.
  std::uint64_t value() const { return value_; }
  // Number of data symbols the failed scan was allowed to see.
  std::uint64_t horizon() const { return value_; }

  bool operator==(const ScanResult&) const = default;

 private:
  ScanResult(bool found, std::uint64_t v) : found_(found), value_(v) {}
  bool found_;
  std::uint64_t value_;
};

struct MatchCurveRow {
  std::uint64_t n;
  ScanResult r;      // recurrence time R_n
  ScanResult r_hat;  // reversed recurrence time R^_n
};

struct MatchCurve {
  std::vector<MatchCurveRow> rows;
};

// Thrown when a match-length supremum cannot be certified within the data:
// the crossing scan would have needed symbols beyond the end of the input.
class data_exhausted_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Span-level kernels. These are the production scanners: single-pattern
// queries run a failure-function (KMP) scan, batched queries run one
// Z-array / matching-statistics pass over the data.
// ---------------------------------------------------------------------------

// R_n: first k >= 1 with x[n+k .. n+k+n-1] == x[1..n] (1-based, occurrence
// window fully inside the data).
ScanResult scan_recurrence(std::span<const symbol_t> x, std::size_t n);

// R'_n: overlap-allowing variant, first k >= 1 with
// x[1+k .. k+n] == x[1..n].
ScanResult scan_recurrence_overlapping(std::span<const symbol_t> x,
                                       std::size_t n);

// R^_n: first k >= 1 with x[n+k .. n+k+n-1] equal to the theta-reversal of
// x[1..n]. The occurrence may overlap positions beyond n.
ScanResult scan_reversed_recurrence(std::span<const symbol_t> x,
                                    std::size_t n, const Involution& theta);

// W_n: first k >= 1 with y[k .. k+n-1] == x[1..n].
ScanResult scan_waiting(std::span<const symbol_t> x,
                        std::span<const symbol_t> y, std::size_t n);

// All of R_1..R_n_max and R^_1..R^_n_max in one accelerated pass; rows agree
// exactly with the per-n scans above.
MatchCurve scan_match_curve(std::span<const symbol_t> x, std::size_t n_max,
                            const Involution& theta);

// W_n for every n = 1..n_max in one pass.
std::vector<ScanResult> scan_waiting_curve(std::span<const symbol_t> x,
                                           std::span<const symbol_t> y,
                                           std::size_t n_max);

// Resumable variants: first occurrence whose 0-based start position is
// >= `from`. A censored scan can be continued after the data grew by
// resuming at max(n, old_length - n + 1), which covers exactly the
// occurrences that touch the new region.
ScanResult scan_recurrence_resumed(std::span<const symbol_t> x,
                                   std::size_t n, std::size_t from);
ScanResult scan_reversed_recurrence_resumed(std::span<const symbol_t> x,
                                            std::size_t n,
                                            const Involution& theta,
                                            std::size_t from);
ScanResult scan_waiting_resumed(std::span<const symbol_t> x,
                                std::span<const symbol_t> y, std::size_t n,
                                std::size_t from);

// Match lengths by duality with the recurrence times: L is the largest n
// such that R_1..R_n are all found with offset <= m, certified by a
// crossing R_{n+1} that is either found beyond m or censored with every
// offset <= m examined inside the data. An uncertifiable crossing yields
// an empty optional (data exhausted). `reversed` is the same with R^.
struct MatchLengthScan {
  std::optional<std::uint64_t> plain;
  std::optional<std::uint64_t> reversed;
};

MatchLengthScan scan_match_lengths(std::span<const symbol_t> x,
                                   std::uint64_t m, const Involution* theta);
// One shared pass for a whole grid of window sizes.
std::vector<MatchLengthScan> scan_match_lengths_grid(
    std::span<const symbol_t> x, std::span<const std::uint64_t> ms,
    const Involution* theta);

// ---------------------------------------------------------------------------
// Naive reference scanners: direct quadratic double loops kept as the test
// oracle for the production kernels.
// ---------------------------------------------------------------------------
namespace naive {

ScanResult scan_recurrence(std::span<const symbol_t> x, std::size_t n);
ScanResult scan_recurrence_overlapping(std::span<const symbol_t> x,
                                       std::size_t n);
ScanResult scan_reversed_recurrence(std::span<const symbol_t> x,
                                    std::size_t n, const Involution& theta);
ScanResult scan_waiting(std::span<const symbol_t> x,
                        std::span<const symbol_t> y, std::size_t n);
MatchCurve scan_match_curve(std::span<const symbol_t> x, std::size_t n_max,
                            const Involution& theta);
MatchLengthScan scan_match_lengths(std::span<const symbol_t> x,
                                   std::uint64_t m, const Involution* theta);

}  // namespace naive

// ---------------------------------------------------------------------------
// Validated sequence-level operations.
// ---------------------------------------------------------------------------

ScanResult recurrence_time(const SymbolSequence& x, std::size_t n);
ScanResult recurrence_time_overlapping(const SymbolSequence& x,
                                       std::size_t n);
ScanResult reversed_recurrence_time(const SymbolSequence& x, std::size_t n,
                                    const Involution& theta);
ScanResult waiting_time(const SymbolSequence& x, const SymbolSequence& y,
                        std::size_t n);
MatchCurve match_curve(const SymbolSequence& x, std::size_t n_max,
                       const Involution& theta);
// Throw data_exhausted_error when the supremum cannot be certified.
std::uint64_t match_length(const SymbolSequence& x, std::uint64_t m);
std::uint64_t reversed_match_length(const SymbolSequence& x, std::uint64_t m,
                                    const Involution& theta);

namespace detail {

// z[i] = length of the longest common prefix of s and s[i..]; z[0] = |s|.
std::vector<std::int32_t> z_array(std::span<const symbol_t> s);
// ms[i] = length of the longest prefix of `pattern` starting at text[i].
std::vector<std::int32_t> matching_statistics(
    std::span<const symbol_t> pattern, std::span<const symbol_t> text);
// First 1-based start >= n+1 of an occurrence of the n-prefix, for every
// n = 1..n_max; 0 when none fits in the data.
std::vector<std::uint64_t> first_recurrence_starts(
    std::span<const symbol_t> x, std::size_t n_max);
// Same for the theta-reversed n-prefix.
std::vector<std::uint64_t> first_reversed_starts(std::span<const symbol_t> x,
                                                 std::size_t n_max,
                                                 const Involution& theta);

}  // namespace detail

}  // namespace seqent
