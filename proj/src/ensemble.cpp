#include "seqent/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seqent/rng.hpp"

namespace seqent {

EnsembleStats run_ensemble(
    EstimatorKind kind, std::span<const std::uint64_t> grid,
    std::uint64_t realizations, int threads,
    const std::function<std::vector<Estimate>(std::uint64_t)>& evaluator) {
  if (grid.empty()) throw std::invalid_argument("ensemble: empty grid");
  if (realizations == 0)
    throw std::invalid_argument("ensemble: need at least one realization");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1])
      throw std::invalid_argument("ensemble: grid must be strictly increasing");

  std::vector<std::vector<Estimate>> results(realizations);
  std::exception_ptr failure = nullptr;
#ifdef _OPENMP
  int requested = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(requested)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(realizations); ++r) {
    try {
      results[r] = evaluator(static_cast<std::uint64_t>(r));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
#else
  (void)threads;
  for (std::uint64_t r = 0; r < realizations; ++r)
    results[r] = evaluator(r);
#endif
  if (failure) std::rethrow_exception(failure);

  EnsembleStats stats;
  stats.kind = kind;
  stats.points.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EnsemblePointStats& pt = stats.points[i];
    pt.grid = grid[i];
    double sum = 0.0;
    for (const auto& row : results) {
      if (row.size() != grid.size())
        throw std::logic_error("ensemble: evaluator grid size mismatch");
      if (row[i].censored) {
        ++pt.censored;
      } else {
        ++pt.count;
        sum += row[i].value;
      }
    }
    if (pt.count == 0) {
      pt.mean = std::numeric_limits<double>::quiet_NaN();
      pt.sem = std::numeric_limits<double>::quiet_NaN();
      pt.degenerate = true;
      continue;
    }
    pt.mean = sum / static_cast<double>(pt.count);
    if (pt.count < 2) {
      pt.sem = 0.0;
      pt.degenerate = true;
      continue;
    }
    double ss = 0.0;
    for (const auto& row : results)
      if (!row[i].censored) {
        double d = row[i].value - pt.mean;
        ss += d * d;
      }
    pt.sem = std::sqrt(ss / static_cast<double>(pt.count - 1)) /
             std::sqrt(static_cast<double>(pt.count));
    pt.degenerate = false;
  }
  return stats;
}

SymbolSequence sample_any(const AnySource& source, std::size_t length,
                          std::uint64_t seed) {
  return std::visit(
      [&](const auto& m) { return sample(m, length, seed); }, source);
}

const FiniteAlphabet& alphabet_of(const AnySource& source) {
  return std::visit(
      [](const auto& m) -> const FiniteAlphabet& { return m.alphabet(); },
      source);
}

namespace {

bool any_censored(const std::vector<Estimate>& est) {
  for (const auto& e : est)
    if (e.censored) return true;
  return false;
}

// One realization's data stream, extendable on demand.
class StreamSampler {
 public:
  StreamSampler(const AnySource& src, std::uint64_t seed)
      : impl_(make(src, seed)) {}
  void extend(std::vector<symbol_t>& out, std::size_t len) {
    std::visit([&](auto& s) { s.extend(out, len); }, impl_);
  }

 private:
  using Impl = std::variant<MarkovSampler, PmpSampler>;
  static Impl make(const AnySource& src, std::uint64_t seed) {
    if (std::holds_alternative<MarkovModel>(src))
      return Impl(std::in_place_type<MarkovSampler>,
                  std::get<MarkovModel>(src), seed);
    return Impl(std::in_place_type<PmpSampler>, std::get<PmpModel>(src),
                seed);
  }
  Impl impl_;
};

}  // namespace

EnsembleStats ensemble_from_model(const AnySource& source,
                                  const std::optional<AnySource>& source_y,
                                  std::size_t sample_length,
                                  EstimatorKind kind, const Involution& theta,
                                  const EnsembleOptions& opt) {
  if (sample_length == 0)
    throw std::invalid_argument("ensemble: sample length must be >= 1");
  std::span<const std::uint64_t> grid = opt.grid;
  std::uint64_t seed = opt.seed;
  std::uint64_t n_max =
      grid.empty() ? 0 : *std::max_element(grid.begin(), grid.end());
  // A generative source can always produce more data, so a scan that runs
  // past the nominal sample keeps the realization and extends its own
  // stream instead of censoring. The 64x cap keeps genuinely infinite
  // times (e.g. an unreachable reversed word) from running away; a scan
  // still open at the cap censors.
  const std::size_t cap =
      sample_length > std::numeric_limits<std::size_t>::max() / 64
          ? std::numeric_limits<std::size_t>::max()
          : sample_length * 64;

  auto evaluator = [&, kind, sample_length, seed,
                    n_max](std::uint64_t r) -> std::vector<Estimate> {
    std::uint64_t s0 = derive_stream_seed(seed, 2 * r);
    std::uint64_t s1 = derive_stream_seed(seed, 2 * r + 1);
    switch (kind) {
      case EstimatorKind::ep_recurrence:
      case EstimatorKind::entropy_recurrence: {
        bool reversed = kind == EstimatorKind::ep_recurrence;
        StreamSampler sampler(source, s0);
        std::vector<symbol_t> buf;
        sampler.extend(buf, sample_length);
        // cache found offsets per grid point; 0 = still open
        std::vector<std::uint64_t> rv(grid.size(), 0), rhv(grid.size(), 0);
        {
          std::size_t n_lim = std::min<std::uint64_t>(n_max, buf.size());
          auto occ = detail::first_recurrence_starts(buf, n_lim);
          std::vector<std::uint64_t> occh;
          if (reversed)
            occh = detail::first_reversed_starts(buf, n_lim, theta);
          for (std::size_t i = 0; i < grid.size(); ++i) {
            std::size_t n = grid[i];
            if (n == 0 || n > n_lim) continue;
            if (occ[n]) rv[i] = occ[n] - n;
            if (reversed && occh[n]) rhv[i] = occh[n] - n;
          }
        }
        auto open = [&](std::size_t i) {
          return rv[i] == 0 || (reversed && rhv[i] == 0);
        };
        auto any_open = [&]() {
          for (std::size_t i = 0; i < grid.size(); ++i)
            if (open(i)) return true;
          return false;
        };
        std::size_t scanned = buf.size();
        while (any_open() && buf.size() < cap) {
          sampler.extend(buf, std::min(cap, buf.size() * 2));
          for (std::size_t i = 0; i < grid.size(); ++i) {
            std::size_t n = grid[i];
            if (!open(i) || n > buf.size()) continue;
            // only occurrences touching the fresh region can be new
            std::size_t from = scanned > n ? scanned - n + 1 : n;
            if (rv[i] == 0) {
              ScanResult r = scan_recurrence_resumed(buf, n, from);
              if (r.is_found()) rv[i] = r.value();
            }
            if (reversed && rhv[i] == 0) {
              ScanResult rh =
                  scan_reversed_recurrence_resumed(buf, n, theta, from);
              if (rh.is_found()) rhv[i] = rh.value();
            }
          }
          scanned = buf.size();
        }
        std::vector<Estimate> est(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
          if (open(i)) continue;  // censored at the cap
          double n = static_cast<double>(grid[i]);
          est[i] = reversed
                       ? Estimate::of(std::log(static_cast<double>(rhv[i]) /
                                               static_cast<double>(rv[i])) /
                                      n)
                       : Estimate::of(
                             std::log(static_cast<double>(rv[i])) / n);
        }
        return est;
      }
      case EstimatorKind::cross_waiting: {
        SymbolSequence x =
            sample_any(source, std::max<std::size_t>(n_max, 1), s0);
        const AnySource& src_y = source_y ? *source_y : source;
        StreamSampler sampler(src_y, s1);
        std::vector<symbol_t> buf;
        sampler.extend(buf, sample_length);
        auto est = batch_waiting_estimates(x.symbols(), buf, grid);
        std::size_t scanned = buf.size();
        while (any_censored(est) && buf.size() < cap) {
          sampler.extend(buf, std::min(cap, buf.size() * 2));
          for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!est[i].censored) continue;
            std::size_t n = grid[i];
            if (n > x.size() || n > buf.size()) continue;
            std::size_t from = scanned > n ? scanned - n + 1 : 0;
            ScanResult w =
                scan_waiting_resumed(x.symbols(), buf, n, from);
            if (w.is_found())
              est[i] = Estimate::of(
                  std::log(static_cast<double>(w.value())) /
                  static_cast<double>(n));
          }
          scanned = buf.size();
        }
        return est;
      }
      case EstimatorKind::ep_match: {
        // the match-length pass is windowed to O(m_max) itself, so
        // re-running it after each extension stays cheap
        StreamSampler sampler(source, s0);
        std::vector<symbol_t> buf;
        sampler.extend(buf, sample_length);
        auto est = batch_match_length_estimates(buf, grid, theta);
        while (any_censored(est) && buf.size() < cap) {
          sampler.extend(buf, std::min(cap, buf.size() * 2));
          est = batch_match_length_estimates(buf, grid, theta);
        }
        return est;
      }
    }
    throw std::logic_error("unreachable estimator kind");
  };
  return run_ensemble(kind, grid, opt.realizations, opt.threads, evaluator);
}

EnsembleStats ensemble_from_sequence(const SymbolSequence& x,
                                     EstimatorKind kind,
                                     const Involution& theta,
                                     const EnsembleOptions& opt) {
  if (kind == EstimatorKind::cross_waiting)
    throw std::invalid_argument(
        "cross-waiting needs two sequences; see ensemble_from_sequence_pair");
  if (x.empty()) throw std::invalid_argument("ensemble: empty sequence");
  std::span<const std::uint64_t> grid = opt.grid;
  bool single = opt.realizations == 1;
  std::uint64_t seed = opt.seed;

  auto evaluator = [&, kind, single, seed](std::uint64_t r) {
    std::size_t start = 0;
    if (!single) {
      SplitMix64 g(derive_stream_seed(seed, 2 * r));
      start = static_cast<std::size_t>(
          g.below(std::max<std::uint64_t>(1, x.size() / 2)));
    }
    auto window = x.tail(start);
    if (kind == EstimatorKind::ep_match)
      return batch_match_length_estimates(window, grid, theta);
    return batch_recurrence_estimates(window, grid, theta,
                                      kind == EstimatorKind::ep_recurrence);
  };
  return run_ensemble(kind, grid, opt.realizations, opt.threads, evaluator);
}

EnsembleStats ensemble_from_sequence_pair(const SymbolSequence& x,
                                          const SymbolSequence& y,
                                          const EnsembleOptions& opt) {
  require_same_alphabet(x.alphabet(), y.alphabet(), "ensemble");
  if (x.empty() || y.empty())
    throw std::invalid_argument("ensemble: empty sequence");
  std::span<const std::uint64_t> grid = opt.grid;
  bool single = opt.realizations == 1;
  std::uint64_t seed = opt.seed;

  auto evaluator = [&, single, seed](std::uint64_t r) {
    std::size_t sx = 0, sy = 0;
    if (!single) {
      SplitMix64 g(derive_stream_seed(seed, 2 * r));
      sx = static_cast<std::size_t>(
          g.below(std::max<std::uint64_t>(1, x.size() / 2)));
      sy = static_cast<std::size_t>(
          g.below(std::max<std::uint64_t>(1, y.size() / 2)));
    }
    return batch_waiting_estimates(x.tail(sx), y.tail(sy), grid);
  };
  return run_ensemble(EstimatorKind::cross_waiting, grid, opt.realizations,
                      opt.threads, evaluator);
}

std::string format_sig12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_header(std::span<const std::string> extra_names) {
  std::string out = "grid,kind,count,censored,mean,sem";
  for (const auto& name : extra_names) out += "," + name;
  out += "\n";
  return out;
}

void append_csv_rows(std::string& out, const EnsembleStats& stats,
                     std::span<const std::string> extra_values) {
  for (const auto& pt : stats.points) {
    out += std::to_string(pt.grid);
    out += ",";
    out += to_string(stats.kind);
    out += ",";
    out += std::to_string(pt.count);
    out += ",";
    out += std::to_string(pt.censored);
    out += ",";
    out += format_sig12(pt.mean);
    out += ",";
    out += format_sig12(pt.sem);
    for (const auto& v : extra_values) out += "," + v;
    out += "\n";
  }
}

}  // namespace seqent
