// Benchmark comparing the naive quadratic scanners against the production
// kernels, and the serial ensemble against the OpenMP one.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seqent/ensemble.hpp"
#include "seqent/rng.hpp"
#include "seqent/scan.hpp"

using namespace seqent;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<symbol_t> random_symbols(std::size_t len, std::size_t k,
                                     std::uint64_t seed) {
  SplitMix64 g(seed);
  std::vector<symbol_t> v(len);
  for (auto& s : v) s = static_cast<symbol_t>(g.below(k));
  return v;
}

void bench_kernels() {
  std::printf("kernel comparison (binary data, n = 16, R_n + R^_n)\n");
  std::printf("%10s %14s %14s %10s\n", "length", "naive ns/sym",
              "fast ns/sym", "speedup");
  auto alphabet = FiniteAlphabet::from_chars("01");
  Involution id = Involution::identity(alphabet);
  for (std::size_t len : {1u << 12, 1u << 14, 1u << 16, 1u << 18}) {
    auto data = random_symbols(len, 2, 0xbeef + len);
    std::span<const symbol_t> x(data);

    auto t0 = clock_type::now();
    auto nr = naive::scan_recurrence(x, 16);
    auto nh = naive::scan_reversed_recurrence(x, 16, id);
    double naive_s = seconds_since(t0);

    t0 = clock_type::now();
    auto fr = scan_recurrence(x, 16);
    auto fh = scan_reversed_recurrence(x, 16, id);
    double fast_s = seconds_since(t0);

    if (!(nr == fr) || !(nh == fh)) {
      std::printf("MISMATCH at length %zu\n", len);
      return;
    }
    std::printf("%10zu %14.2f %14.2f %9.1fx\n", len, 1e9 * naive_s / len,
                1e9 * fast_s / len, naive_s / fast_s);
  }

  std::printf("\nmatch curve, n_max = 32 (per-n naive calls vs one pass)\n");
  std::printf("%10s %14s %14s %10s\n", "length", "naive ns/sym",
              "fast ns/sym", "speedup");
  for (std::size_t len : {1u << 12, 1u << 14, 1u << 16}) {
    auto data = random_symbols(len, 2, 0xfeed + len);
    std::span<const symbol_t> x(data);
    auto t0 = clock_type::now();
    auto nc = naive::scan_match_curve(x, 32, id);
    double naive_s = seconds_since(t0);
    t0 = clock_type::now();
    auto fc = scan_match_curve(x, 32, id);
    double fast_s = seconds_since(t0);
    bool ok = nc.rows.size() == fc.rows.size();
    for (std::size_t i = 0; ok && i < nc.rows.size(); ++i)
      ok = nc.rows[i].r == fc.rows[i].r && nc.rows[i].r_hat == fc.rows[i].r_hat;
    if (!ok) {
      std::printf("MISMATCH at length %zu\n", len);
      return;
    }
    std::printf("%10zu %14.2f %14.2f %9.1fx\n", len, 1e9 * naive_s / len,
                1e9 * fast_s / len, naive_s / fast_s);
  }
}

void bench_ensemble() {
  Mat P(3, 3, 0.0);
  P.at(0, 1) = 0.75; P.at(0, 2) = 0.25;
  P.at(1, 2) = 0.75; P.at(1, 0) = 0.25;
  P.at(2, 0) = 0.75; P.at(2, 1) = 0.25;
  MarkovModel cycle =
      MarkovModel::from_transitions(FiniteAlphabet::from_chars("012"), P);
  AnySource src{cycle};
  Involution id = Involution::identity(cycle.alphabet_ptr());

  EnsembleOptions opt;
  opt.grid = {12};
  opt.realizations = 64;
  opt.seed = 7;

  std::printf("\nensemble: ep-recurrence, 64 realizations of 10^5 symbols\n");
  for (int threads : {1, 0}) {
    opt.threads = threads;
    auto t0 = clock_type::now();
    EnsembleStats stats = ensemble_from_model(src, std::nullopt, 100000,
                                              EstimatorKind::ep_recurrence,
                                              id, opt);
    double s = seconds_since(t0);
    int effective = threads;
#ifdef _OPENMP
    if (threads == 0) effective = omp_get_max_threads();
#else
    if (threads == 0) effective = 1;
#endif
    std::printf("  threads=%d: %.3f s (mean at n=12: %.4f)\n", effective, s,
                stats.points[0].mean);
  }
}

}  // namespace

int main() {
  bench_kernels();
  bench_ensemble();
  return 0;
}
