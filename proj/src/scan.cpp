#include "seqent/scan.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace seqent {

namespace detail {

std::vector<std::int32_t> z_array(std::span<const symbol_t> s) {
  const std::size_t n = s.size();
  if (n > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw std::invalid_argument("sequence too long for the factor index");
  std::vector<std::int32_t> z(n, 0);
  if (n == 0) return z;
  z[0] = static_cast<std::int32_t>(n);
  std::size_t l = 0, r = 0;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = 0;
    if (i < r) k = std::min<std::size_t>(z[i - l], r - i);
    while (i + k < n && s[k] == s[i + k]) ++k;
    z[i] = static_cast<std::int32_t>(k);
    if (i + k > r) {
      l = i;
      r = i + k;
    }
  }
  return z;
}

std::vector<std::int32_t> matching_statistics(
    std::span<const symbol_t> pattern, std::span<const symbol_t> text) {
  const std::size_t m = pattern.size();
  const std::size_t n = text.size();
  if (n > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw std::invalid_argument("sequence too long for the factor index");
  auto zp = z_array(pattern);
  std::vector<std::int32_t> ms(n, 0);
  std::size_t l = 0, r = 0;  // text[l..r) matches pattern[0..r-l)
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 0;
    if (i < r) k = std::min<std::size_t>(zp[i - l], r - i);
    while (k < m && i + k < n && pattern[k] == text[i + k]) ++k;
    ms[i] = static_cast<std::int32_t>(k);
    if (i + k > r) {
      l = i;
      r = i + k;
    }
  }
  return ms;
}

namespace {

// Matching-statistics recurrence streamed over a text accessor; only the
// pattern's own z-array is stored, so arbitrarily long texts cost no
// memory. The sink gets (text position, match length) and may stop the
// scan by returning false.
template <class TextAt, class Sink>
void matching_statistics_stream(std::span<const symbol_t> pattern,
                                std::size_t text_len, TextAt text_at,
                                Sink sink) {
  const std::size_t m = pattern.size();
  auto zp = z_array(pattern);
  std::size_t l = 0, r = 0;
  for (std::size_t i = 0; i < text_len; ++i) {
    std::size_t k = 0;
    if (i < r) k = std::min<std::size_t>(zp[i - l], r - i);
    while (k < m && i + k < text_len && pattern[k] == text_at(i + k)) ++k;
    if (!sink(i, k)) return;
    if (i + k > r) {
      l = i;
      r = i + k;
    }
  }
}

}  // namespace

std::vector<std::uint64_t> first_recurrence_starts(
    std::span<const symbol_t> x, std::size_t n_max) {
  std::vector<std::uint64_t> occ(n_max + 1, 0);
  if (x.empty() || n_max == 0) return occ;
  std::size_t plen = std::min(n_max, x.size());
  std::size_t next = 1;
  matching_statistics_stream(
      x.first(plen), x.size(), [x](std::size_t j) { return x[j]; },
      [&](std::size_t p, std::size_t k) {
        // position p (0-based) covers pattern lengths up to min(k, p): the
        // start must be at least n+1 (1-based), i.e. p >= n
        std::size_t c = std::min({k, p, n_max});
        while (next <= c) occ[next++] = p + 1;
        return next <= n_max;
      });
  return occ;
}

std::vector<std::uint64_t> first_reversed_starts(std::span<const symbol_t> x,
                                                 std::size_t n_max,
                                                 const Involution& theta) {
  const std::size_t len = x.size();
  std::vector<std::uint64_t> occ(n_max + 1, 0);
  if (len == 0 || n_max == 0) return occ;
  // An occurrence of the reversed n-prefix ending at q (1-based) means
  // x[q-j+1] == theta(x[j]) for j = 1..n. Reading x backwards and the
  // theta-image of the prefix forwards turns this into a prefix match at
  // reversed position i = len - q; ascending i means descending q, so per
  // n the last writer holds the earliest end.
  std::size_t plen = std::min(n_max, len);
  std::vector<symbol_t> pat(plen);
  for (std::size_t i = 0; i < plen; ++i) pat[i] = theta(x[i]);
  std::vector<std::uint64_t> last_i(n_max + 1, 0);  // i+1; 0 = none
  matching_statistics_stream(
      pat, len, [x, len](std::size_t j) { return x[len - 1 - j]; },
      [&](std::size_t i, std::size_t k) {
        std::size_t q = len - i;
        std::size_t c = std::min({k, q / 2, n_max});
        for (std::size_t n = 1; n <= c; ++n) last_i[n] = i + 1;
        return true;
      });
  for (std::size_t n = 1; n <= n_max; ++n)
    if (last_i[n]) {
      std::uint64_t q = len - (last_i[n] - 1);
      occ[n] = q - n + 1;
    }
  return occ;
}

namespace {

// First occurrence of `pattern` in `text`, 0-based index, by the classic
// failure-function scan.
std::optional<std::size_t> kmp_find(std::span<const symbol_t> pattern,
                                    std::span<const symbol_t> text) {
  const std::size_t m = pattern.size();
  if (m == 0) return 0;
  if (text.size() < m) return std::nullopt;
  std::vector<std::size_t> fail(m, 0);
  for (std::size_t i = 1; i < m; ++i) {
    std::size_t j = fail[i - 1];
    while (j > 0 && pattern[i] != pattern[j]) j = fail[j - 1];
    if (pattern[i] == pattern[j]) ++j;
    fail[i] = j;
  }
  std::size_t j = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    while (j > 0 && text[i] != pattern[j]) j = fail[j - 1];
    if (text[i] == pattern[j]) ++j;
    if (j == m) return i + 1 - m;
  }
  return std::nullopt;
}

void check_n(std::span<const symbol_t> x, std::size_t n, const char* op) {
  if (n == 0)
    throw std::invalid_argument(std::string(op) + ": n must be >= 1");
  if (n > x.size())
    throw std::invalid_argument(std::string(op) + ": n = " +
                                std::to_string(n) +
                                " exceeds data length " +
                                std::to_string(x.size()));
}

}  // namespace
}  // namespace detail

using detail::kmp_find;

ScanResult scan_recurrence(std::span<const symbol_t> x, std::size_t n) {
  detail::check_n(x, n, "recurrence_time");
  auto pos = kmp_find(x.first(n), x.subspan(n));
  if (pos) return ScanResult::found(*pos + 1);
  return ScanResult::censored(x.size());
}

ScanResult scan_recurrence_overlapping(std::span<const symbol_t> x,
                                       std::size_t n) {
  detail::check_n(x, n, "recurrence_time_overlapping");
  auto pos = kmp_find(x.first(n), x.subspan(1));
  if (pos) return ScanResult::found(*pos + 1);
  return ScanResult::censored(x.size());
}

ScanResult scan_reversed_recurrence(std::span<const symbol_t> x,
                                    std::size_t n, const Involution& theta) {
  detail::check_n(x, n, "reversed_recurrence_time");
  auto pattern = reverse_word(x.first(n), theta);
  auto pos = kmp_find(pattern, x.subspan(n));
  if (pos) return ScanResult::found(*pos + 1);
  return ScanResult::censored(x.size());
}

ScanResult scan_waiting(std::span<const symbol_t> x,
                        std::span<const symbol_t> y, std::size_t n) {
  detail::check_n(x, n, "waiting_time");
  if (n > y.size())
    throw std::invalid_argument("waiting_time: n exceeds target length");
  auto pos = kmp_find(x.first(n), y);
  if (pos) return ScanResult::found(*pos + 1);
  return ScanResult::censored(y.size());
}

ScanResult scan_recurrence_resumed(std::span<const symbol_t> x,
                                   std::size_t n, std::size_t from) {
  detail::check_n(x, n, "recurrence_time");
  from = std::max(from, n);
  if (from >= x.size()) return ScanResult::censored(x.size());
  auto pos = kmp_find(x.first(n), x.subspan(from));
  if (pos) return ScanResult::found(from + *pos + 1 - n);
  return ScanResult::censored(x.size());
}

ScanResult scan_reversed_recurrence_resumed(std::span<const symbol_t> x,
                                            std::size_t n,
                                            const Involution& theta,
                                            std::size_t from) {
  detail::check_n(x, n, "reversed_recurrence_time");
  from = std::max(from, n);
  if (from >= x.size()) return ScanResult::censored(x.size());
  auto pattern = reverse_word(x.first(n), theta);
  auto pos = kmp_find(pattern, x.subspan(from));
  if (pos) return ScanResult::found(from + *pos + 1 - n);
  return ScanResult::censored(x.size());
}

ScanResult scan_waiting_resumed(std::span<const symbol_t> x,
                                std::span<const symbol_t> y, std::size_t n,
                                std::size_t from) {
  detail::check_n(x, n, "waiting_time");
  if (from >= y.size()) return ScanResult::censored(y.size());
  auto pos = kmp_find(x.first(n), y.subspan(from));
  if (pos) return ScanResult::found(from + *pos + 1);
  return ScanResult::censored(y.size());
}

MatchCurve scan_match_curve(std::span<const symbol_t> x, std::size_t n_max,
                            const Involution& theta) {
  detail::check_n(x, n_max, "match_curve");
  auto occ = detail::first_recurrence_starts(x, n_max);
  auto occ_hat = detail::first_reversed_starts(x, n_max, theta);
  MatchCurve curve;
  curve.rows.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    ScanResult r = occ[n] ? ScanResult::found(occ[n] - n)
                          : ScanResult::censored(x.size());
    ScanResult rh = occ_hat[n] ? ScanResult::found(occ_hat[n] - n)
                               : ScanResult::censored(x.size());
    curve.rows.push_back({n, r, rh});
  }
  return curve;
}

std::vector<ScanResult> scan_waiting_curve(std::span<const symbol_t> x,
                                           std::span<const symbol_t> y,
                                           std::size_t n_max) {
  detail::check_n(x, n_max, "waiting_time");
  std::vector<std::uint64_t> occ(n_max + 1, 0);
  std::size_t next = 1;
  detail::matching_statistics_stream(
      x.first(n_max), y.size(), [y](std::size_t j) { return y[j]; },
      [&](std::size_t p, std::size_t k) {
        std::size_t c = std::min<std::size_t>(k, n_max);
        while (next <= c) occ[next++] = p + 1;
        return next <= n_max;
      });
  std::vector<ScanResult> out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n)
    out.push_back(occ[n] ? ScanResult::found(occ[n])
                         : ScanResult::censored(y.size()));
  return out;
}

namespace {

enum class CrossState { certified, exhausted, widen };

struct Crossing {
  CrossState state;
  std::uint64_t value = 0;
};

// Walk the recurrence values upward while they stay within offset m. The
// crossing R_{L+1} certifies the result when it is found beyond m, or when
// it is censored with every offset <= m examined inside the data
// (window end 2(L+1)+m-1 within the horizon). `occ` holds first starts over
// a prefix window of length W of data of total length data_len.
Crossing resolve_crossing(const std::vector<std::uint64_t>& occ,
                          std::size_t n_lim, std::uint64_t m, std::size_t W,
                          std::size_t data_len) {
  std::uint64_t L = 0;
  for (;;) {
    std::uint64_t c = L + 1;
    if (c > n_lim) return {CrossState::widen};
    if (occ[c] != 0) {
      std::uint64_t k = occ[c] - c;
      if (k <= m) {
        L = c;
        continue;
      }
      return {CrossState::certified, L};
    }
    bool covered = W >= m && 2 * c <= W - m + 1;
    if (covered) return {CrossState::certified, L};
    if (W == data_len) return {CrossState::exhausted};
    return {CrossState::widen};
  }
}

}  // namespace

std::vector<MatchLengthScan> scan_match_lengths_grid(
    std::span<const symbol_t> x, std::span<const std::uint64_t> ms,
    const Involution* theta) {
  if (ms.empty()) return {};
  std::uint64_t m_max = 0;
  for (std::uint64_t m : ms) {
    if (m == 0)
      throw std::invalid_argument("match_length: m must be >= 1");
    m_max = std::max(m_max, m);
  }
  const std::size_t data_len = x.size();
  if (data_len == 0)
    throw std::invalid_argument("match_length: empty sequence");

  std::size_t n_cap = 32;
  for (;;) {
    std::size_t W = data_len;
    if (m_max < data_len &&
        2 * static_cast<std::uint64_t>(n_cap) < data_len - m_max)
      W = static_cast<std::size_t>(2 * n_cap + m_max);
    auto window = x.first(W);
    std::size_t n_lim = std::min(n_cap, W);
    auto occ = detail::first_recurrence_starts(window, n_lim);
    std::vector<std::uint64_t> occ_hat;
    if (theta) occ_hat = detail::first_reversed_starts(window, n_lim, *theta);

    std::vector<MatchLengthScan> out(ms.size());
    bool widen = false;
    for (std::size_t i = 0; i < ms.size() && !widen; ++i) {
      Crossing c = resolve_crossing(occ, n_lim, ms[i], W, data_len);
      switch (c.state) {
        case CrossState::certified: out[i].plain = c.value; break;
        case CrossState::exhausted: out[i].plain = std::nullopt; break;
        case CrossState::widen: widen = true; break;
      }
      if (widen || !theta) continue;
      Crossing ch = resolve_crossing(occ_hat, n_lim, ms[i], W, data_len);
      switch (ch.state) {
        case CrossState::certified: out[i].reversed = ch.value; break;
        case CrossState::exhausted: out[i].reversed = std::nullopt; break;
        case CrossState::widen: widen = true; break;
      }
    }
    if (!widen) return out;
    if (n_cap >= data_len)
      throw std::logic_error("match-length crossing not reachable");
    n_cap = std::min(data_len, n_cap * 2);
  }
}

MatchLengthScan scan_match_lengths(std::span<const symbol_t> x,
                                   std::uint64_t m, const Involution* theta) {
  std::uint64_t ms[1] = {m};
  return scan_match_lengths_grid(x, ms, theta)[0];
}

// ---------------------------------------------------------------------------
// Naive reference scanners.
// ---------------------------------------------------------------------------
namespace naive {
namespace {

bool window_equals(std::span<const symbol_t> x, std::size_t at,
                   std::span<const symbol_t> pattern) {
  for (std::size_t j = 0; j < pattern.size(); ++j)
    if (x[at + j] != pattern[j]) return false;
  return true;
}

ScanResult first_window(std::span<const symbol_t> x, std::size_t from,
                        std::span<const symbol_t> pattern) {
  const std::size_t n = pattern.size();
  for (std::size_t p = from; p + n <= x.size(); ++p)
    if (window_equals(x, p, pattern))
      return ScanResult::found(p - from + 1);
  return ScanResult::censored(x.size());
}

}  // namespace

ScanResult scan_recurrence(std::span<const symbol_t> x, std::size_t n) {
  detail::check_n(x, n, "recurrence_time");
  return first_window(x, n, x.first(n));
}

ScanResult scan_recurrence_overlapping(std::span<const symbol_t> x,
                                       std::size_t n) {
  detail::check_n(x, n, "recurrence_time_overlapping");
  return first_window(x, 1, x.first(n));
}

ScanResult scan_reversed_recurrence(std::span<const symbol_t> x,
                                    std::size_t n, const Involution& theta) {
  detail::check_n(x, n, "reversed_recurrence_time");
  auto pattern = reverse_word(x.first(n), theta);
  return first_window(x, n, pattern);
}

ScanResult scan_waiting(std::span<const symbol_t> x,
                        std::span<const symbol_t> y, std::size_t n) {
  detail::check_n(x, n, "waiting_time");
  if (n > y.size())
    throw std::invalid_argument("waiting_time: n exceeds target length");
  return first_window(y, 0, x.first(n));
}

MatchCurve scan_match_curve(std::span<const symbol_t> x, std::size_t n_max,
                            const Involution& theta) {
  detail::check_n(x, n_max, "match_curve");
  MatchCurve curve;
  for (std::size_t n = 1; n <= n_max; ++n)
    curve.rows.push_back({n, naive::scan_recurrence(x, n),
                          naive::scan_reversed_recurrence(x, n, theta)});
  return curve;
}

MatchLengthScan scan_match_lengths(std::span<const symbol_t> x,
                                   std::uint64_t m, const Involution* theta) {
  if (m == 0) throw std::invalid_argument("match_length: m must be >= 1");
  if (x.empty()) throw std::invalid_argument("match_length: empty sequence");
  auto resolve = [&](auto&& scan) -> std::optional<std::uint64_t> {
    std::uint64_t L = 0;
    for (;;) {
      std::uint64_t c = L + 1;
      if (c > x.size()) return std::nullopt;
      ScanResult r = scan(x, static_cast<std::size_t>(c));
      if (r.is_found()) {
        if (r.value() <= m) {
          L = c;
          continue;
        }
        return L;
      }
      bool covered = x.size() >= m && 2 * c <= x.size() - m + 1;
      if (covered) return L;
      return std::nullopt;
    }
  };
  MatchLengthScan out;
  out.plain = resolve([](std::span<const symbol_t> s, std::size_t n) {
    return naive::scan_recurrence(s, n);
  });
  if (theta)
    out.reversed = resolve([&](std::span<const symbol_t> s, std::size_t n) {
      return naive::scan_reversed_recurrence(s, n, *theta);
    });
  return out;
}

}  // namespace naive

// ---------------------------------------------------------------------------
// Validated sequence-level operations.
// ---------------------------------------------------------------------------

ScanResult recurrence_time(const SymbolSequence& x, std::size_t n) {
  return scan_recurrence(x.symbols(), n);
}

ScanResult recurrence_time_overlapping(const SymbolSequence& x,
                                       std::size_t n) {
  return scan_recurrence_overlapping(x.symbols(), n);
}

ScanResult reversed_recurrence_time(const SymbolSequence& x, std::size_t n,
                                    const Involution& theta) {
  require_same_alphabet(x.alphabet(), theta.alphabet(),
                        "reversed_recurrence_time");
  return scan_reversed_recurrence(x.symbols(), n, theta);
}

ScanResult waiting_time(const SymbolSequence& x, const SymbolSequence& y,
                        std::size_t n) {
  require_same_alphabet(x.alphabet(), y.alphabet(), "waiting_time");
  return scan_waiting(x.symbols(), y.symbols(), n);
}

MatchCurve match_curve(const SymbolSequence& x, std::size_t n_max,
                       const Involution& theta) {
  require_same_alphabet(x.alphabet(), theta.alphabet(), "match_curve");
  return scan_match_curve(x.symbols(), n_max, theta);
}

std::uint64_t match_length(const SymbolSequence& x, std::uint64_t m) {
  auto s = scan_match_lengths(x.symbols(), m, nullptr);
  if (!s.plain)
    throw data_exhausted_error(
        "match_length: supremum not certifiable within " +
        std::to_string(x.size()) + " symbols (m = " + std::to_string(m) +
        ")");
  return *s.plain;
}

std::uint64_t reversed_match_length(const SymbolSequence& x, std::uint64_t m,
                                    const Involution& theta) {
  require_same_alphabet(x.alphabet(), theta.alphabet(),
                        "reversed_match_length");
  auto s = scan_match_lengths(x.symbols(), m, &theta);
  if (!s.reversed)
    throw data_exhausted_error(
        "reversed_match_length: supremum not certifiable within " +
        std::to_string(x.size()) + " symbols (m = " + std::to_string(m) +
        ")");
  return *s.reversed;
}

}  // namespace seqent
