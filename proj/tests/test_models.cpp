#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "seqent/model_io.hpp"
#include "seqent/pmp.hpp"
#include "seqent/rng.hpp"

using namespace seqent;

namespace {

AlphabetPtr bin() {
  static AlphabetPtr a = FiniteAlphabet::from_chars("01");
  return a;
}

Mat mat(std::size_t n, std::initializer_list<double> vals) {
  Mat m(n, n);
  std::size_t i = 0;
  for (double v : vals) m.a[i++] = v;
  REQUIRE(i == n * n);
  return m;
}

MarkovModel biased_cycle() {
  return MarkovModel::from_transitions(
      FiniteAlphabet::from_chars("012"),
      mat(3, {0, 0.75, 0.25, 0.25, 0, 0.75, 0.75, 0.25, 0}));
}

MarkovModel iid_uniform_binary() {
  return MarkovModel::from_transitions(bin(), mat(2, {0.5, 0.5, 0.5, 0.5}));
}

// random full-support chain: rows of positive entries, normalized
MarkovModel random_chain(SplitMix64& g, std::size_t k) {
  Mat P(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < k; ++j) s += (P.at(i, j) = 0.05 + g.uniform());
    for (std::size_t j = 0; j < k; ++j) P.at(i, j) /= s;
  }
  auto tokens = std::string("0123456789").substr(0, k);
  return MarkovModel::from_transitions(FiniteAlphabet::from_chars(tokens),
                                       std::move(P));
}

// random reversible chain built from a symmetric positive flux matrix
MarkovModel random_reversible_chain(SplitMix64& g, std::size_t k) {
  Mat F(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j)
      F.at(i, j) = F.at(j, i) = 0.05 + g.uniform();
  std::vector<double> row(k, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) total += F.at(i, j), row[i] += F.at(i, j);
  Mat P(k, k);
  std::vector<double> pi(k);
  for (std::size_t i = 0; i < k; ++i) {
    pi[i] = row[i] / total;
    for (std::size_t j = 0; j < k; ++j) P.at(i, j) = F.at(i, j) / row[i];
  }
  auto tokens = std::string("0123456789").substr(0, k);
  return MarkovModel(FiniteAlphabet::from_chars(tokens), std::move(pi),
                     std::move(P));
}

void for_each_word(std::size_t k, std::size_t len,
                   const std::function<void(std::span<const symbol_t>)>& fn) {
  std::vector<symbol_t> w(len, 0);
  for (;;) {
    fn(w);
    std::size_t i = len;
    while (i > 0) {
      if (static_cast<std::size_t>(++w[i - 1]) < k) break;
      w[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
}

PmpModel hidden_example() {
  Mat p0 = mat(2, {0.4, 0.1, 0.2, 0.1});
  Mat p1 = mat(2, {0.1, 0.4, 0.3, 0.4});
  return PmpModel(bin(), {0.5, 0.5}, {p0, p1});
}

}  // namespace

TEST_CASE("stationary distribution closed cases") {
  // symmetric two-state chain
  auto pi = stationary_distribution(mat(2, {0.7, 0.3, 0.3, 0.7}));
  CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-12));

  // doubly stochastic biased cycle
  auto cyc = stationary_distribution(
      mat(3, {0, 0.75, 0.25, 0.25, 0, 0.75, 0.75, 0.25, 0}));
  for (double v : cyc) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("stationary distribution: solve and power iteration agree") {
  SplitMix64 g(42);
  for (int rep = 0; rep < 40; ++rep) {
    MarkovModel m = random_chain(g, 5);
    auto direct = stationary_distribution(m.transitions());
    auto power = stationary_distribution_power(m.transitions());
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(std::abs(direct[i] - power[i]) <= 1e-10);
  }
}

TEST_CASE("reducible chain reports communicating classes") {
  // two absorbing blocks
  Mat P = mat(4, {0.5, 0.5, 0, 0,
                  0.5, 0.5, 0, 0,
                  0, 0, 0.5, 0.5,
                  0, 0, 0.5, 0.5});
  try {
    stationary_distribution(P);
    FAIL("expected reducible-chain error");
  } catch (const std::domain_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("reducible") != std::string::npos);
    CHECK(msg.find("{0,1}") != std::string::npos);
    CHECK(msg.find("{2,3}") != std::string::npos);
  }
}

TEST_CASE("chain structure flags") {
  auto cyc = analyze_chain(
      mat(3, {0, 0.75, 0.25, 0.25, 0, 0.75, 0.75, 0.25, 0}));
  CHECK(cyc.irreducible);
  CHECK(cyc.aperiodic);
  CHECK(cyc.period == 1);

  auto swap2 = analyze_chain(mat(2, {0, 1, 1, 0}));
  CHECK(swap2.irreducible);
  CHECK(!swap2.aperiodic);
  CHECK(swap2.period == 2);
}

TEST_CASE("marginals: base case and normalization") {
  MarkovModel m = biased_cycle();
  for (symbol_t a = 0; a < 3; ++a) {
    std::vector<symbol_t> w{a};
    CHECK(marginal(m, w) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }

  SplitMix64 g(5);
  for (std::size_t k : {2u, 4u}) {
    MarkovModel r = random_chain(g, k);
    double total = 0.0;
    for_each_word(k, 3, [&](std::span<const symbol_t> w) { total += marginal(r, w); });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("marginal consistency and shift stationarity") {
  SplitMix64 g(6);
  MarkovModel m = random_chain(g, 3);
  for (std::size_t n = 1; n <= 7; ++n) {
    for_each_word(3, n, [&](std::span<const symbol_t> w) {
      double pw = marginal(m, w);
      std::vector<symbol_t> ext(w.begin(), w.end());
      ext.push_back(0);
      double right = 0.0, left = 0.0;
      for (symbol_t b = 0; b < 3; ++b) {
        ext.back() = b;
        right += marginal(m, ext);
      }
      std::vector<symbol_t> pre(1, 0);
      pre.insert(pre.end(), w.begin(), w.end());
      for (symbol_t b = 0; b < 3; ++b) {
        pre[0] = b;
        left += marginal(m, pre);
      }
      CHECK(std::abs(right - pw) <= 1e-12);
      CHECK(std::abs(left - pw) <= 1e-12);
    });
  }
}

TEST_CASE("sampling determinism and degenerate chains") {
  MarkovModel m = biased_cycle();
  auto a = sample(m, 1000, 7);
  auto b = sample(m, 1000, 7);
  CHECK(std::ranges::equal(a.symbols(), b.symbols()));
  auto c = sample(m, 1000, 8);
  CHECK(!std::ranges::equal(a.symbols(), c.symbols()));

  // deterministic cyclic permutation: the orbit from the initial state
  MarkovModel perm = MarkovModel::from_transitions(
      FiniteAlphabet::from_chars("012"),
      mat(3, {0, 1, 0, 0, 0, 1, 1, 0, 0}));
  auto orbit = sample(perm, 100, 3);
  for (std::size_t i = 1; i < orbit.size(); ++i)
    CHECK(orbit[i] == (orbit[i - 1] + 1) % 3);
  CHECK(entropy_rate(perm) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("iid sampling matches multinomial statistics") {
  MarkovModel m = iid_uniform_binary();
  auto x = sample(m, 1000000, 17);
  // disjoint 3-word counts
  std::size_t counts[8] = {0};
  std::size_t triples = x.size() / 3;
  for (std::size_t t = 0; t < triples; ++t) {
    std::size_t c = 4 * x[3 * t] + 2 * x[3 * t + 1] + x[3 * t + 2];
    counts[c]++;
  }
  double se = std::sqrt(0.125 * 0.875 / static_cast<double>(triples));
  for (std::size_t c = 0; c < 8; ++c) {
    double freq = static_cast<double>(counts[c]) / triples;
    CHECK(std::abs(freq - 0.125) <= 4 * se);
  }
}

TEST_CASE("entropy rate closed cases") {
  CHECK(entropy_rate(iid_uniform_binary()) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-13));
  // agrees with the finite-n enumeration through the affine relation
  MarkovModel m = biased_cycle();
  double b10 = brute_force_cross_entropy(m, m, 10);
  double b9 = brute_force_cross_entropy(m, m, 9);
  CHECK(10 * b10 - 9 * b9 == doctest::Approx(entropy_rate(m)).epsilon(1e-12));
}

TEST_CASE("reversed model") {
  Involution id3 =
      Involution::identity(FiniteAlphabet::from_chars("012"));
  // two-state detailed balance is automatic: Q == P
  SplitMix64 g(9);
  for (int rep = 0; rep < 20; ++rep) {
    MarkovModel m = random_chain(g, 2);
    MarkovModel q = reversed_model(m, Involution::identity(bin()));
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        CHECK(q.transition(a, b) ==
              doctest::Approx(m.transition(a, b)).epsilon(1e-10));
  }

  // biased cycle reverses to the cycle with 3/4 and 1/4 swapped
  MarkovModel cyc = biased_cycle();
  MarkovModel rc = reversed_model(cyc, id3);
  CHECK(rc.transition(0, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rc.transition(0, 2) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(rc.transition(1, 0) == doctest::Approx(0.75).epsilon(1e-12));

  // marginal identity Q_n(a) = P_n(reverse(a)), exhaustive to n = 5
  auto theta = Involution::from_pairs(FiniteAlphabet::from_chars("012"),
                                      {{"0", "1"}});
  MarkovModel qt = reversed_model(cyc, theta);
  for (std::size_t n = 1; n <= 5; ++n)
    for_each_word(3, n, [&](std::span<const symbol_t> w) {
      double lhs = marginal(qt, w);
      double rhs = marginal(cyc, reverse_word(w, theta));
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    });

  // reversal is an involution on full-support chains
  MarkovModel back = reversed_model(qt, theta);
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(back.pi()[a] == doctest::Approx(cyc.pi()[a]).epsilon(1e-12));
    for (std::size_t b = 0; b < 3; ++b)
      CHECK(back.transition(a, b) ==
            doctest::Approx(cyc.transition(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("reversed model requires full support") {
  // absorbing-ish chain with a zero stationary component is reducible, so
  // build full P but pass an explicit pi with a zero entry
  Mat P = mat(2, {1.0, 0.0, 1.0, 0.0});  // state 1 never revisited
  MarkovModel m(bin(), {1.0, 0.0}, std::move(P));
  CHECK(!m.full_support());
  CHECK_THROWS_AS(reversed_model(m, Involution::identity(bin())),
                  std::domain_error);
  CHECK_THROWS_AS(psi_star_zero_bound(m), std::domain_error);
  CHECK(std::isinf(entropy_production(
      m, Involution::from_pairs(bin(), {{"0", "1"}}))));
}

TEST_CASE("entropy production closed cases") {
  Involution id2 = Involution::identity(bin());
  Involution id3 = Involution::identity(FiniteAlphabet::from_chars("012"));

  // any 2-state chain obeys detailed balance
  SplitMix64 g(10);
  for (int rep = 0; rep < 50; ++rep)
    CHECK(entropy_production(random_chain(g, 2), id2) <= 1e-12);

  // biased cycle: three unordered pairs, each contributing (1/6) log 3
  CHECK(entropy_production(biased_cycle(), id3) ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-13));

  // positive flux against zero reverse flux
  MarkovModel perm = MarkovModel::from_transitions(
      FiniteAlphabet::from_chars("012"),
      mat(3, {0, 1, 0, 0, 0, 1, 1, 0, 0}));
  CHECK(std::isinf(entropy_production(perm, id3)));
}

TEST_CASE("entropy production: detailed balance in both directions") {
  SplitMix64 g(11);
  Involution id3 = Involution::identity(FiniteAlphabet::from_chars("012"));
  for (int rep = 0; rep < 50; ++rep) {
    MarkovModel rev = random_reversible_chain(g, 3);
    CHECK(entropy_production(rev, id3) <= 1e-12);
    MarkovModel irr = random_chain(g, 3);
    double asym = 0.0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        asym = std::max(asym,
                        std::abs(irr.pi()[a] * irr.transition(a, b) -
                                 irr.pi()[b] * irr.transition(b, a)));
    if (asym > 1e-6) CHECK(entropy_production(irr, id3) > 1e-9);
  }
}

TEST_CASE("entropy production for iid under a letter swap") {
  // iid letters with p != p o theta: ep = sum (p_a - p_theta(a))/2 log(...)
  auto dna = FiniteAlphabet::from_chars("ACGT");
  auto chargaff = Involution::from_pairs(dna, {{"C", "G"}, {"A", "T"}});
  std::vector<double> p = {0.4, 0.3, 0.2, 0.1};
  Mat P(4, 4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) P.at(a, b) = p[b];
  MarkovModel m(dna, p, std::move(P));

  double expect = 0.0;
  for (std::size_t a = 0; a < 4; ++a)
    expect += 0.5 * (p[a] - p[chargaff(a)]) * std::log(p[a] / p[chargaff(a)]);
  double ep = entropy_production(m, chargaff);
  CHECK(ep == doctest::Approx(expect).epsilon(1e-12));

  // brute-force finite-n relative entropy is exact for iid sources
  MarkovModel rev = reversed_model(m, chargaff);
  for (std::size_t n : {1u, 4u, 8u}) {
    double rel = brute_force_cross_entropy(m, rev, n) -
                 brute_force_cross_entropy(m, m, n);
    CHECK(rel == doctest::Approx(ep).epsilon(1e-11));
  }
}

TEST_CASE("both entropy-production routes agree for theta = id") {
  SplitMix64 g(12);
  Involution id3 = Involution::identity(FiniteAlphabet::from_chars("012"));
  for (int rep = 0; rep < 25; ++rep) {
    MarkovModel m = random_chain(g, 3);
    double closed = entropy_production(m, id3);
    double routed = cross_entropy(m, reversed_model(m, id3)) - entropy_rate(m);
    CHECK(closed == doctest::Approx(routed).epsilon(1e-10));
  }
}

TEST_CASE("cross entropy identities") {
  SplitMix64 g(13);
  Involution id3 = Involution::identity(FiniteAlphabet::from_chars("012"));
  for (int rep = 0; rep < 25; ++rep) {
    MarkovModel p = random_chain(g, 3);
    CHECK(cross_entropy(p, p) ==
          doctest::Approx(entropy_rate(p)).epsilon(1e-12));
    CHECK(cross_entropy(p, reversed_model(p, id3)) ==
          doctest::Approx(entropy_rate(p) + entropy_production(p, id3))
              .epsilon(1e-10));
    // Gibbs inequality against an independent chain
    MarkovModel q = random_chain(g, 3);
    CHECK(cross_entropy(p, q) >= entropy_rate(p) - 1e-12);
  }

  // support violation: q never walks 1 -> 1 while p does
  MarkovModel p2 = MarkovModel::from_transitions(
      bin(), mat(2, {0.5, 0.5, 0.5, 0.5}));
  MarkovModel q2 = MarkovModel::from_transitions(
      bin(), mat(2, {0.9, 0.1, 1.0, 0.0}));
  CHECK(std::isinf(cross_entropy(p2, q2)));
}

TEST_CASE("brute-force cross entropy") {
  SplitMix64 g(14);
  MarkovModel p = random_chain(g, 3);
  MarkovModel q = random_chain(g, 3);

  // n = 1 reduces to the single-letter sum
  double direct = 0.0;
  for (std::size_t a = 0; a < 3; ++a)
    direct -= p.pi()[a] * std::log(q.pi()[a]);
  CHECK(brute_force_cross_entropy(p, q, 1) ==
        doctest::Approx(direct).epsilon(1e-13));

  // exact telescoping: n b(n) - (n-1) b(n-1) equals the per-step value
  double analytic = cross_entropy(p, q);
  for (std::size_t n = 2; n <= 10; ++n) {
    double lhs = n * brute_force_cross_entropy(p, q, n) -
                 (n - 1) * brute_force_cross_entropy(p, q, n - 1);
    CHECK(lhs == doctest::Approx(analytic).epsilon(1e-10));
  }

  CHECK_THROWS_AS(brute_force_cross_entropy(p, q, 40),
                  std::invalid_argument);
}

TEST_CASE("psi-star bound and the upper-decoupling witness") {
  // uniform stationary law on k states gives the bound k
  CHECK(psi_star_zero_bound(biased_cycle()) ==
        doctest::Approx(3.0).epsilon(1e-12));

  SplitMix64 g(15);
  for (int rep = 0; rep < 10; ++rep) {
    MarkovModel m = random_chain(g, 3);
    double c = psi_star_zero_bound(m);
    for (std::size_t total = 2; total <= 8; ++total)
      for_each_word(3, total, [&](std::span<const symbol_t> w) {
        double joint = marginal(m, w);
        for (std::size_t n = 1; n < total; ++n) {
          double pa = marginal(m, w.first(n));
          double pb = marginal(m, w.subspan(n));
          CHECK(joint <= c * pa * pb * (1 + 1e-12));
        }
      });
  }
}

TEST_CASE("multi-step lift") {
  SplitMix64 g(16);
  // order 1 is the identity embedding
  MarkovModel base = random_chain(g, 2);
  MarkovModel lift1 = multi_step_to_markov(bin(), 1, base.transitions());
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      CHECK(lift1.transition(a, b) ==
            doctest::Approx(base.transition(a, b)).epsilon(1e-12));

  // order 2 binary: 4 states, exactly 2 reachable targets per row
  Mat cond(4, 2);
  for (std::size_t s = 0; s < 4; ++s) {
    double u = 0.2 + 0.15 * static_cast<double>(s);
    cond.at(s, 0) = u;
    cond.at(s, 1) = 1 - u;
  }
  MarkovModel lift2 = multi_step_to_markov(bin(), 2, cond);
  CHECK(lift2.size() == 4);
  CHECK(lift2.alphabet().token(1) == "01");
  for (std::size_t s = 0; s < 4; ++s) {
    std::size_t nonzero = 0;
    for (std::size_t t = 0; t < 4; ++t)
      if (lift2.transition(s, t) > 0) ++nonzero;
    CHECK(nonzero == 2);
  }

  // projected word marginals match the direct multi-step computation
  for (std::size_t len = 2; len <= 6; ++len)
    for_each_word(2, len, [&](std::span<const symbol_t> w) {
      // direct: stationary law of the first pair, then conditionals
      std::size_t s0 = 2 * w[0] + w[1];
      double direct = lift2.pi()[s0];
      for (std::size_t i = 2; i < len; ++i) {
        std::size_t s = 2 * w[i - 2] + w[i - 1];
        direct *= cond.at(s, w[i]);
      }
      // lifted-chain marginal over the state path
      std::vector<symbol_t> path;
      for (std::size_t i = 0; i + 1 < len; ++i)
        path.push_back(static_cast<symbol_t>(2 * w[i] + w[i + 1]));
      CHECK(marginal(lift2, path) == doctest::Approx(direct).epsilon(1e-12));
    });

  Mat bad(2, 2);
  bad.at(0, 0) = 0.6;
  bad.at(0, 1) = 0.6;
  bad.at(1, 0) = 0.5;
  bad.at(1, 1) = 0.5;
  CHECK_THROWS_AS(multi_step_to_markov(bin(), 1, bad), std::invalid_argument);
}

TEST_CASE("pmp validation and marginals") {
  PmpModel m = hidden_example();
  CHECK(m.hidden_dim() == 2);
  CHECK(psi_star_zero_bound(m) == doctest::Approx(4.0).epsilon(1e-12));

  // single letters sum to 1
  double p0 = marginal(m, std::vector<symbol_t>{0});
  double p1 = marginal(m, std::vector<symbol_t>{1});
  CHECK(p0 + p1 == doctest::Approx(1.0).epsilon(1e-12));

  // consistency in both directions up to n = 6
  for (std::size_t n = 1; n <= 6; ++n)
    for_each_word(2, n, [&](std::span<const symbol_t> w) {
      double pw = marginal(m, w);
      std::vector<symbol_t> ext(w.begin(), w.end());
      ext.push_back(0);
      double right = 0.0, left = 0.0;
      for (symbol_t b = 0; b < 2; ++b) {
        ext.back() = b;
        right += marginal(m, ext);
      }
      std::vector<symbol_t> pre(1, 0);
      pre.insert(pre.end(), w.begin(), w.end());
      for (symbol_t b = 0; b < 2; ++b) {
        pre[0] = b;
        left += marginal(m, pre);
      }
      CHECK(std::abs(right - pw) <= 1e-12);
      CHECK(std::abs(left - pw) <= 1e-12);
    });

  // decoupling witness with the squared bound
  double c = psi_star_zero_bound(m);
  for (std::size_t total = 2; total <= 8; ++total)
    for_each_word(2, total, [&](std::span<const symbol_t> w) {
      double joint = marginal(m, w);
      for (std::size_t n = 1; n < total; ++n)
        CHECK(joint <= c * marginal(m, w.first(n)) *
                           marginal(m, w.subspan(n)) * (1 + 1e-12));
    });

  CHECK_THROWS_AS(PmpModel(bin(), {0.5, 0.5},
                           {mat(2, {0.9, 0.1, 0.1, 0.1}),
                            mat(2, {0.1, 0.4, 0.3, 0.4})}),
                  std::invalid_argument);
}

TEST_CASE("pmp embedding of a Markov chain") {
  SplitMix64 g(18);
  MarkovModel m = random_chain(g, 3);
  PmpModel e = embed_markov(m);
  for (std::size_t n = 1; n <= 8; ++n) {
    // spot-check random words at every length; exhaustive for short ones
    if (n <= 5) {
      for_each_word(3, n, [&](std::span<const symbol_t> w) {
        CHECK(std::abs(marginal(e, w) - marginal(m, w)) <= 1e-12);
      });
    } else {
      for (int rep = 0; rep < 50; ++rep) {
        std::vector<symbol_t> w(n);
        for (auto& s : w) s = static_cast<symbol_t>(g.below(3));
        CHECK(std::abs(marginal(e, w) - marginal(m, w)) <= 1e-12);
      }
    }
  }

  // sampled marginals agree within multinomial error
  auto x = sample(e, 200000, 21);
  std::map<std::pair<symbol_t, symbol_t>, std::size_t> counts;
  std::size_t pairs = x.size() / 2;
  for (std::size_t t = 0; t < pairs; ++t)
    counts[{x[2 * t], x[2 * t + 1]}]++;
  for (symbol_t a = 0; a < 3; ++a)
    for (symbol_t b = 0; b < 3; ++b) {
      double expect = marginal(m, std::vector<symbol_t>{a, b});
      double freq = static_cast<double>(counts[{a, b}]) / pairs;
      double se = std::sqrt(expect * (1 - expect) / pairs);
      CHECK(std::abs(freq - expect) <= 5 * se + 1e-9);
    }
}

TEST_CASE("pmp brute-force cross entropy telescopes for embedded chains") {
  SplitMix64 g(19);
  MarkovModel mp = random_chain(g, 2);
  MarkovModel mq = random_chain(g, 2);
  PmpModel ep = embed_markov(mp);
  PmpModel eq = embed_markov(mq);
  for (std::size_t n : {1u, 3u, 6u})
    CHECK(brute_force_cross_entropy(ep, eq, n) ==
          doctest::Approx(brute_force_cross_entropy(mp, mq, n))
              .epsilon(1e-12));
}

TEST_CASE("model file parsing") {
  std::istringstream good(
      "# comment\n"
      "markov 012\n"
      "0 0.75 0.25\n"
      "0.25 0 0.75\n"
      "0.75 0.25 0\n");
  AnySource m = parse_model(good, "good");
  REQUIRE(std::holds_alternative<MarkovModel>(m));
  CHECK(std::get<MarkovModel>(m).pi()[0] ==
        doctest::Approx(1.0 / 3).epsilon(1e-10));

  // drift below 1e-9 is renormalized
  std::istringstream drift(
      "markov 01\n"
      "0.3333333333333 0.6666666666666\n"
      "0.5 0.5\n");
  CHECK_NOTHROW(parse_model(drift, "drift"));

  // drift above 1e-9 is rejected
  std::istringstream off(
      "markov 01\n"
      "0.4 0.7\n"
      "0.5 0.5\n");
  CHECK_THROWS_AS(parse_model(off, "off"), model_parse_error);

  std::istringstream short_file("markov 01\n0.5 0.5\n");
  CHECK_THROWS_AS(parse_model(short_file, "short"), model_parse_error);

  std::istringstream bad_kind("gibbs 01\n");
  CHECK_THROWS_AS(parse_model(bad_kind, "bad"), model_parse_error);

  std::istringstream pmp_file(
      "pmp 01 2\n"
      "0.4 0.1\n0.2 0.1\n"
      "0.1 0.4\n0.3 0.4\n");
  AnySource pm = parse_model(pmp_file, "pmp");
  REQUIRE(std::holds_alternative<PmpModel>(pm));
  CHECK(std::get<PmpModel>(pm).hidden_dim() == 2);
}
