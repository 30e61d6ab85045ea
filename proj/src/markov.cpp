#include "seqent/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "seqent/rng.hpp"

namespace seqent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const Mat& P) {
  const std::size_t n = P.rows;
  // Kosaraju: first pass records finish order, second pass walks the
  // transposed graph.
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [u, j] = stack.back();
      bool advanced = false;
      while (j < n) {
        std::size_t v = j++;
        if (P.at(u, v) > 0.0 && !seen[v]) {
          seen[v] = 1;
          stack.emplace_back(v, 0);
          advanced = true;
          break;
        }
      }
      if (!advanced && j >= n) {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<std::vector<std::size_t>> classes;
  std::vector<char> assigned(n, 0);
  for (std::size_t idx = n; idx-- > 0;) {
    std::size_t s = order[idx];
    if (assigned[s]) continue;
    std::vector<std::size_t> cls;
    std::vector<std::size_t> stack{s};
    assigned[s] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      cls.push_back(u);
      for (std::size_t v = 0; v < n; ++v)
        if (P.at(v, u) > 0.0 && !assigned[v]) {
          assigned[v] = 1;
          stack.push_back(v);
        }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

void check_stochastic(const Mat& P, double tol, const char* what) {
  if (P.rows != P.cols || P.rows == 0)
    throw std::invalid_argument(std::string(what) + ": matrix must be square");
  for (std::size_t i = 0; i < P.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < P.cols; ++j) {
      double v = P.at(i, j);
      if (v < 0.0)
        throw std::invalid_argument(std::string(what) +
                                    ": negative entry in row " +
                                    std::to_string(i + 1));
      s += v;
    }
    if (std::abs(s - 1.0) > tol)
      throw std::invalid_argument(std::string(what) + ": row " +
                                  std::to_string(i + 1) +
                                  " sums to " + std::to_string(s));
  }
}

}  // namespace

ChainStructure analyze_chain(const Mat& P) {
  if (P.rows != P.cols || P.rows == 0)
    throw std::invalid_argument("analyze_chain: matrix must be square");
  ChainStructure st;
  st.classes = strongly_connected_components(P);
  st.irreducible = st.classes.size() == 1;
  if (!st.irreducible) return st;

  // Period = gcd over all edges (u,v) of level(u) + 1 - level(v) for BFS
  // levels; the chain is aperiodic iff the gcd is 1.
  const std::size_t n = P.rows;
  std::vector<std::int64_t> level(n, -1);
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    std::size_t u = queue[h];
    for (std::size_t v = 0; v < n; ++v)
      if (P.at(u, v) > 0.0 && level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
  }
  std::int64_t g = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (P.at(u, v) > 0.0)
        g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
  st.period = static_cast<std::uint32_t>(g);
  st.aperiodic = (g == 1);
  return st;
}

std::vector<double> stationary_distribution(const Mat& P) {
  check_stochastic(P, 1e-9, "stationary_distribution");
  auto st = analyze_chain(P);
  if (!st.irreducible) {
    std::string msg = "stationary_distribution: reducible chain; "
                      "communicating classes:";
    for (const auto& cls : st.classes) {
      msg += " {";
      for (std::size_t i = 0; i < cls.size(); ++i)
        msg += (i ? "," : "") + std::to_string(cls[i]);
      msg += "}";
    }
    throw std::domain_error(msg);
  }
  const std::size_t n = P.rows;
  // (P^T - I) pi = 0 with the last equation replaced by normalization.
  Mat A(n, n);
  std::vector<double> b(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      A.at(i, j) = P.at(j, i) - (i == j ? 1.0 : 0.0);
  for (std::size_t j = 0; j < n; ++j) A.at(n - 1, j) = 1.0;
  b[n - 1] = 1.0;
  auto pi = solve_dense(std::move(A), std::move(b));
  double s = 0.0;
  for (double& v : pi) {
    if (v < 0.0 && v > -1e-12) v = 0.0;
    s += v;
  }
  for (double& v : pi) v /= s;
  for (std::size_t j = 0; j < n; ++j) {
    double r = -pi[j];
    for (std::size_t i = 0; i < n; ++i) r += pi[i] * P.at(i, j);
    if (std::abs(r) > 1e-10)
      throw std::runtime_error(
          "stationary_distribution: residual above 1e-10");
  }
  return pi;
}

std::vector<double> stationary_distribution_power(const Mat& P, double tol,
                                                  std::size_t max_iter) {
  check_stochastic(P, 1e-9, "stationary_distribution_power");
  const std::size_t n = P.rows;
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
  for (std::size_t it = 0; it < max_iter; ++it) {
    // lazy chain (P+I)/2 has the same stationary law and always converges
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.5 * x[j];
      for (std::size_t i = 0; i < n; ++i) s += 0.5 * x[i] * P.at(i, j);
      y[j] = s;
    }
    double norm = std::accumulate(y.begin(), y.end(), 0.0);
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      y[j] /= norm;
      diff = std::max(diff, std::abs(y[j] - x[j]));
    }
    x.swap(y);
    if (diff <= tol) return x;
  }
  throw std::runtime_error("stationary_distribution_power: no convergence");
}

MarkovModel::MarkovModel(AlphabetPtr alphabet, std::vector<double> pi, Mat P)
    : alphabet_(std::move(alphabet)), pi_(std::move(pi)), P_(std::move(P)) {
  if (!alphabet_) throw std::invalid_argument("MarkovModel: null alphabet");
  const std::size_t n = alphabet_->size();
  if (pi_.size() != n || P_.rows != n || P_.cols != n)
    throw std::invalid_argument("MarkovModel: shape mismatch with alphabet");
  check_stochastic(P_, 1e-12, "MarkovModel");
  double s = 0.0;
  for (double v : pi_) {
    if (v < 0.0)
      throw std::invalid_argument("MarkovModel: negative stationary mass");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw std::invalid_argument("MarkovModel: stationary law sums to " +
                                std::to_string(s));
  for (std::size_t j = 0; j < n; ++j) {
    double r = -pi_[j];
    for (std::size_t i = 0; i < n; ++i) r += pi_[i] * P_.at(i, j);
    if (std::abs(r) > 1e-10)
      throw std::invalid_argument("MarkovModel: pi P != pi (residual " +
                                  std::to_string(r) + " at state " +
                                  std::to_string(j + 1) + ")");
  }
  full_support_ =
      *std::min_element(pi_.begin(), pi_.end()) > 0.0;
}

MarkovModel MarkovModel::from_transitions(AlphabetPtr alphabet, Mat P) {
  auto pi = stationary_distribution(P);
  return MarkovModel(std::move(alphabet), std::move(pi), std::move(P));
}

double marginal(const MarkovModel& model, std::span<const symbol_t> word) {
  if (word.empty())
    throw std::invalid_argument("marginal: empty word");
  for (symbol_t a : word)
    if (a >= model.size())
      throw std::invalid_argument("marginal: word outside the alphabet");
  double p = model.pi()[word[0]];
  for (std::size_t i = 1; i < word.size(); ++i)
    p *= model.transition(word[i - 1], word[i]);
  return p;
}

double entropy_rate(const MarkovModel& model) {
  double h = 0.0;
  for (std::size_t a = 0; a < model.size(); ++a)
    for (std::size_t b = 0; b < model.size(); ++b) {
      double p = model.transition(a, b);
      if (p > 0.0) h -= model.pi()[a] * p * std::log(p);
    }
  return h;
}

MarkovModel reversed_model(const MarkovModel& model, const Involution& theta) {
  require_same_alphabet(model.alphabet(), theta.alphabet(), "reversed_model");
  if (!model.full_support())
    throw std::domain_error(
        "reversed_model: reversal leaves the Markov class without full "
        "stationary support");
  const std::size_t n = model.size();
  std::vector<double> qpi(n);
  Mat Q(n, n);
  for (std::size_t a = 0; a < n; ++a) qpi[a] = model.pi()[theta(a)];
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      Q.at(a, b) = model.pi()[theta(b)] *
                   model.transition(theta(b), theta(a)) / model.pi()[theta(a)];
  // guard against roundoff in the row sums before revalidation
  for (std::size_t a = 0; a < n; ++a) {
    double s = 0.0;
    for (std::size_t b = 0; b < n; ++b) s += Q.at(a, b);
    for (std::size_t b = 0; b < n; ++b) Q.at(a, b) /= s;
  }
  MarkovModel rev(model.alphabet_ptr(), std::move(qpi), std::move(Q));
#ifndef NDEBUG
  if (n <= 6) {
    std::vector<symbol_t> w;
    for (std::size_t len = 1; len <= 3; ++len) {
      w.assign(len, 0);
      for (;;) {
        double lhs = marginal(rev, w);
        double rhs = marginal(model, reverse_word(w, theta));
        if (std::abs(lhs - rhs) > 1e-12)
          throw std::logic_error("reversed_model: marginal identity failed");
        std::size_t i = len;
        while (i > 0) {
          if (static_cast<std::size_t>(++w[i - 1]) < n) break;
          w[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
    }
  }
#endif
  return rev;
}

double entropy_production(const MarkovModel& model, const Involution& theta) {
  require_same_alphabet(model.alphabet(), theta.alphabet(),
                        "entropy_production");
  if (theta.is_identity()) {
    double s = 0.0;
    for (std::size_t a = 0; a < model.size(); ++a)
      for (std::size_t b = 0; b < model.size(); ++b) {
        double f = model.pi()[a] * model.transition(a, b);
        double g = model.pi()[b] * model.transition(b, a);
        if (f > 0.0 && g == 0.0) return kInf;
        if (f > 0.0 && g > 0.0) s += 0.5 * (f - g) * std::log(f / g);
      }
    return s < 0.0 ? 0.0 : s;
  }
  if (!model.full_support()) return kInf;
  MarkovModel rev = reversed_model(model, theta);
  double ce = cross_entropy(model, rev);
  if (std::isinf(ce)) return kInf;
  double ep = ce - entropy_rate(model);
  return ep < 0.0 ? 0.0 : ep;
}

double cross_entropy(const MarkovModel& p, const MarkovModel& q) {
  require_same_alphabet(p.alphabet(), q.alphabet(), "cross_entropy");
  double s = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      double f = p.pi()[a] * p.transition(a, b);
      if (f == 0.0) continue;
      double qab = q.transition(a, b);
      if (qab == 0.0) return kInf;
      s -= f * std::log(qab);
    }
  return s;
}

double brute_force_cross_entropy(const MarkovModel& p, const MarkovModel& q,
                                 std::size_t n) {
  require_same_alphabet(p.alphabet(), q.alphabet(),
                        "brute_force_cross_entropy");
  if (n == 0)
    throw std::invalid_argument("brute_force_cross_entropy: n must be >= 1");
  const std::size_t k = p.size();
  double words = std::pow(static_cast<double>(k), static_cast<double>(n));
  if (words > static_cast<double>(1u << 24))
    throw std::invalid_argument(
        "brute_force_cross_entropy: |A|^n exceeds the enumeration guard");
  bool violation = false;
  double acc = 0.0;
  // depth-first over all words with running prefix probabilities
  struct Frame {
    std::size_t depth;
    std::size_t last;
    double pp;
    double qlog;
  };
  std::vector<Frame> stack;
  stack.reserve(n * k);
  for (std::size_t b = k; b-- > 0;)
    stack.push_back({1, b, p.pi()[b], std::log(q.pi()[b])});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.pp == 0.0) continue;
    if (f.depth == n) {
      if (std::isinf(f.qlog))
        violation = true;
      else
        acc += f.pp * f.qlog;
      continue;
    }
    for (std::size_t b = k; b-- > 0;)
      stack.push_back({f.depth + 1, b, f.pp * p.transition(f.last, b),
                       f.qlog + std::log(q.transition(f.last, b))});
  }
  if (violation) return kInf;
  return -acc / static_cast<double>(n);
}

double psi_star_zero_bound(const MarkovModel& model) {
  if (!model.full_support())
    throw std::domain_error(
        "psi_star_zero_bound: unavailable, min(pi) = 0");
  double m = *std::min_element(model.pi().begin(), model.pi().end());
  return 1.0 / m;
}

MarkovSampler::MarkovSampler(const MarkovModel& model, std::uint64_t seed)
    : model_(&model),
      cum_pi_(model.size()),
      cum_rows_(model.size() * model.size()),
      gen_(seed) {
  const std::size_t k = model.size();
  // cumulative tables; last entry pinned to 1 so a draw cannot fall out
  double s = 0.0;
  for (std::size_t b = 0; b < k; ++b) cum_pi_[b] = (s += model.pi()[b]);
  cum_pi_[k - 1] = 1.0;
  for (std::size_t a = 0; a < k; ++a) {
    s = 0.0;
    for (std::size_t b = 0; b < k; ++b)
      cum_rows_[a * k + b] = (s += model.transition(a, b));
    cum_rows_[a * k + k - 1] = 1.0;
  }
}

void MarkovSampler::extend(std::vector<symbol_t>& out,
                           std::size_t target_len) {
  const std::size_t k = model_->size();
  auto draw = [&](const double* cum) {
    double u = gen_.uniform();
    std::size_t i = 0;
    while (i + 1 < k && u >= cum[i]) ++i;
    return static_cast<symbol_t>(i);
  };
  std::size_t at = out.size();
  if (at >= target_len) return;
  out.resize(target_len);
  if (!started_) {
    last_ = draw(cum_pi_.data());
    out[at++] = last_;
    started_ = true;
  }
  const double* rows = cum_rows_.data();
  symbol_t last = last_;
  for (; at < target_len; ++at) {
    last = draw(rows + last * k);
    out[at] = last;
  }
  last_ = last;
}

SymbolSequence sample(const MarkovModel& model, std::size_t length,
                      std::uint64_t seed) {
  if (length == 0)
    throw std::invalid_argument("sample: length must be >= 1");
  MarkovSampler sampler(model, seed);
  std::vector<symbol_t> data;
  sampler.extend(data, length);
  return SymbolSequence(model.alphabet_ptr(), std::move(data));
}

MarkovModel multi_step_to_markov(const AlphabetPtr& base, std::size_t order,
                                 const Mat& cond) {
  if (order == 0)
    throw std::invalid_argument("multi_step_to_markov: order must be >= 1");
  const std::size_t k = base->size();
  std::size_t states = 1;
  for (std::size_t i = 0; i < order; ++i) {
    states *= k;
    if (states > kMaxAlphabetSize)
      throw std::invalid_argument(
          "multi_step_to_markov: lifted alphabet exceeds 256 states");
  }
  if (cond.rows != states || cond.cols != k)
    throw std::invalid_argument("multi_step_to_markov: table shape mismatch");
  for (std::size_t s = 0; s < states; ++s) {
    double sum = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
      if (cond.at(s, b) < 0.0)
        throw std::invalid_argument(
            "multi_step_to_markov: negative conditional probability");
      sum += cond.at(s, b);
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("multi_step_to_markov: row " +
                                  std::to_string(s + 1) + " sums to " +
                                  std::to_string(sum));
  }

  std::vector<std::string> tokens(states);
  for (std::size_t s = 0; s < states; ++s) {
    std::string t;
    std::size_t rem = s;
    for (std::size_t i = order; i-- > 0;) {
      std::size_t div = 1;
      for (std::size_t j = 0; j < i; ++j) div *= k;
      t += base->token(static_cast<symbol_t>(rem / div));
      rem %= div;
    }
    tokens[s] = t;
  }
  std::size_t tail_states = states / k;  // k^(order-1)
  Mat P(states, states, 0.0);
  for (std::size_t s = 0; s < states; ++s)
    for (std::size_t b = 0; b < k; ++b)
      P.at(s, (s % tail_states) * k + b) = cond.at(s, b);
  return MarkovModel::from_transitions(FiniteAlphabet::make(std::move(tokens)),
                                       std::move(P));
}

}  // namespace seqent
