#include "seqent/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seqent {

const char* to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::ep_recurrence: return "ep-recurrence";
    case EstimatorKind::entropy_recurrence: return "entropy-recurrence";
    case EstimatorKind::cross_waiting: return "cross-waiting";
    case EstimatorKind::ep_match: return "ep-match";
  }
  return "?";
}

EstimatorKind estimator_kind_from(std::string_view name) {
  if (name == "ep-recurrence") return EstimatorKind::ep_recurrence;
  if (name == "entropy-recurrence") return EstimatorKind::entropy_recurrence;
  if (name == "cross-waiting") return EstimatorKind::cross_waiting;
  if (name == "ep-match") return EstimatorKind::ep_match;
  throw std::invalid_argument("unknown estimator kind '" + std::string(name) +
                              "'");
}

Estimate ep_estimate_recurrence(const SymbolSequence& x, std::size_t n,
                                const Involution& theta) {
  require_same_alphabet(x.alphabet(), theta.alphabet(),
                        "ep_estimate_recurrence");
  if (n == 0)
    throw std::invalid_argument("ep_estimate_recurrence: n must be >= 1");
  if (x.size() < 2 * n)
    throw std::invalid_argument(
        "ep_estimate_recurrence: need at least 2n symbols");
  ScanResult r = scan_recurrence(x.symbols(), n);
  ScanResult rh = scan_reversed_recurrence(x.symbols(), n, theta);
  if (!r.is_found() || !rh.is_found()) return Estimate::censor();
  return Estimate::of(std::log(static_cast<double>(rh.value()) /
                               static_cast<double>(r.value())) /
                      static_cast<double>(n));
}

Estimate entropy_estimate_recurrence(const SymbolSequence& x, std::size_t n) {
  ScanResult r = scan_recurrence(x.symbols(), n);
  if (!r.is_found()) return Estimate::censor();
  return Estimate::of(std::log(static_cast<double>(r.value())) /
                      static_cast<double>(n));
}

Estimate cross_entropy_estimate_waiting(const SymbolSequence& x,
                                        const SymbolSequence& y,
                                        std::size_t n) {
  require_same_alphabet(x.alphabet(), y.alphabet(),
                        "cross_entropy_estimate_waiting");
  ScanResult w = scan_waiting(x.symbols(), y.symbols(), n);
  if (!w.is_found()) return Estimate::censor();
  return Estimate::of(std::log(static_cast<double>(w.value())) /
                      static_cast<double>(n));
}

Estimate ep_estimate_match_length(const SymbolSequence& x, std::uint64_t m,
                                  const Involution& theta) {
  require_same_alphabet(x.alphabet(), theta.alphabet(),
                        "ep_estimate_match_length");
  if (m < 2)
    throw std::invalid_argument(
        "ep_estimate_match_length: m must be >= 2 (log m > 0)");
  MatchLengthScan s = scan_match_lengths(x.symbols(), m, &theta);
  if (!s.plain || !s.reversed || *s.plain == 0 || *s.reversed == 0)
    return Estimate::censor();
  double lm = std::log(static_cast<double>(m));
  return Estimate::of(lm / static_cast<double>(*s.reversed) -
                      lm / static_cast<double>(*s.plain));
}

std::vector<Estimate> batch_recurrence_estimates(
    std::span<const symbol_t> x, std::span<const std::uint64_t> grid,
    const Involution& theta, bool with_reversed) {
  std::uint64_t n_max = 0;
  for (std::uint64_t n : grid) {
    if (n == 0) throw std::invalid_argument("grid values must be >= 1");
    n_max = std::max(n_max, n);
  }
  std::size_t n_lim = std::min<std::uint64_t>(n_max, x.size());
  std::vector<std::uint64_t> occ, occ_hat;
  if (n_lim > 0) {
    occ = detail::first_recurrence_starts(x, n_lim);
    if (with_reversed)
      occ_hat = detail::first_reversed_starts(x, n_lim, theta);
  }
  std::vector<Estimate> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::uint64_t n = grid[i];
    if (n > n_lim || occ[n] == 0) continue;  // censored
    double r = static_cast<double>(occ[n] - n);
    if (!with_reversed) {
      out[i] = Estimate::of(std::log(r) / static_cast<double>(n));
      continue;
    }
    if (occ_hat[n] == 0) continue;
    double rh = static_cast<double>(occ_hat[n] - n);
    out[i] = Estimate::of(std::log(rh / r) / static_cast<double>(n));
  }
  return out;
}

std::vector<Estimate> batch_waiting_estimates(
    std::span<const symbol_t> x, std::span<const symbol_t> y,
    std::span<const std::uint64_t> grid) {
  std::uint64_t n_max = 0;
  for (std::uint64_t n : grid) {
    if (n == 0) throw std::invalid_argument("grid values must be >= 1");
    n_max = std::max(n_max, n);
  }
  std::size_t n_lim = std::min<std::uint64_t>(n_max, x.size());
  std::vector<ScanResult> w;
  if (n_lim > 0) w = scan_waiting_curve(x, y, n_lim);
  std::vector<Estimate> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::uint64_t n = grid[i];
    if (n > n_lim || !w[n - 1].is_found()) continue;
    out[i] = Estimate::of(std::log(static_cast<double>(w[n - 1].value())) /
                          static_cast<double>(n));
  }
  return out;
}

std::vector<Estimate> batch_match_length_estimates(
    std::span<const symbol_t> x, std::span<const std::uint64_t> grid,
    const Involution& theta) {
  for (std::uint64_t m : grid)
    if (m < 2)
      throw std::invalid_argument("match-length grid values must be >= 2");
  std::vector<Estimate> out(grid.size());
  if (x.empty()) return out;
  auto scans = scan_match_lengths_grid(x, grid, &theta);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const MatchLengthScan& s = scans[i];
    if (!s.plain || !s.reversed || *s.plain == 0 || *s.reversed == 0)
      continue;
    double lm = std::log(static_cast<double>(grid[i]));
    out[i] = Estimate::of(lm / static_cast<double>(*s.reversed) -
                          lm / static_cast<double>(*s.plain));
  }
  return out;
}

}  // namespace seqent
