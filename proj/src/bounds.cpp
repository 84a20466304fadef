// Analytical rate characterizations.  Everything here is plain combinatorics
// over doubles; the structure mirrors the helper decomposition documented in
// bounds.hpp so each layer can be validated in isolation.

#include "cacm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cacm {

namespace {

constexpr int kMaxBinomialN = 64;

void check_static(const StaticBoundParams& p) {
  if (p.K < 1 || p.K > 32) throw std::invalid_argument("bounds: K must lie in [1, 32]");
  if (p.N < 1) throw std::invalid_argument("bounds: N must be >= 1");
  if (!(p.M >= 0.0 && p.M <= static_cast<double>(p.N)))
    throw std::invalid_argument("bounds: M must lie in [0, N]");
  if (!(p.delta >= 0.0 && p.delta <= 1.0))
    throw std::invalid_argument("bounds: delta must lie in [0, 1]");
  if (p.cluster_size < 1) throw std::invalid_argument("bounds: cluster_size must be >= 1");
}

}  // namespace

double ipow(double x, int n) {
  if (n < 0) throw std::invalid_argument("ipow: negative exponent");
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n > kMaxBinomialN) throw std::invalid_argument("binomial: n too large");
  double row[kMaxBinomialN + 1] = {1.0};
  for (int i = 1; i <= n; ++i) {
    row[i] = 1.0;
    for (int j = i - 1; j >= 1; --j) row[j] += row[j - 1];
  }
  return row[k];
}

double expected_distinct(double kappa, double nu) {
  if (kappa < 0.0) throw std::invalid_argument("expected_distinct: kappa must be >= 0");
  if (kappa == 0.0) return 0.0;
  if (!(nu > 0.0)) throw std::invalid_argument("expected_distinct: nu must be > 0");
  return nu * (1.0 - std::pow(1.0 - 1.0 / nu, kappa));
}

namespace {

// Multinomial coefficient t!/(t_1!..t_d!).  Exact factorial table up to 20!,
// log-gamma beyond (t > 20 only occurs in stress tests).
double multinomial(int t, const std::vector<int>& parts) {
  static const auto factorial = [] {
    std::vector<double> f(21, 1.0);
    for (int i = 1; i <= 20; ++i) f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)] * i;
    return f;
  }();
  if (t <= 20) {
    double r = factorial[static_cast<std::size_t>(t)];
    for (int part : parts) r /= factorial[static_cast<std::size_t>(part)];
    return r;
  }
  double lg = std::lgamma(static_cast<double>(t) + 1.0);
  for (int part : parts) lg -= std::lgamma(static_cast<double>(part) + 1.0);
  return std::exp(lg);
}

// Recursive composition walk: parts[0..depth) are fixed, `remaining` items
// must still be split into `slots` positive parts.
double composition_sum(int t, int remaining, int slots, std::vector<int>& parts) {
  if (slots == 1) {
    parts.push_back(remaining);
    const double r = multinomial(t, parts);
    parts.pop_back();
    return r;
  }
  double total = 0.0;
  for (int first = 1; first <= remaining - (slots - 1); ++first) {
    parts.push_back(first);
    total += composition_sum(t, remaining - first, slots - 1, parts);
    parts.pop_back();
  }
  return total;
}

}  // namespace

double composition_multinomial_sum(int t, int d) {
  if (t < 0 || d < 0) throw std::invalid_argument("composition sum: negative argument");
  if (d == 0) return t == 0 ? 1.0 : 0.0;
  if (t < d) return 0.0;
  std::vector<int> parts;
  parts.reserve(static_cast<std::size_t>(d));
  return composition_sum(t, t, d, parts);
}

std::vector<double> pattern_prob(int K, double m) {
  std::vector<double> P(static_cast<std::size_t>(K) + 1, 0.0);
  for (int l = 1; l <= K; ++l) {
    P[static_cast<std::size_t>(l)] = ipow(1.0 - m, K - l) * ipow(m, l - 1);
  }
  return P;
}

std::vector<double> subpattern_prob(int K, double m) {
  const std::vector<double> P = pattern_prob(K, m);
  std::vector<double> Phat(static_cast<std::size_t>(K) + 1, 0.0);
  for (int l = 2; l <= K; ++l) {
    double acc = 0.0;
    for (int i = 1; i < l; ++i) acc += binomial(K - 1, i - 1) * P[static_cast<std::size_t>(i)];
    Phat[static_cast<std::size_t>(l)] = acc;
  }
  return Phat;
}

double pattern_count(int K, int l) { return binomial(K - 1, l - 1); }

double expected_color_classes(int K, int l, int t) {
  if (t < 1) throw std::invalid_argument("expected_color_classes: t must be >= 1");
  const double x = pattern_count(K, l);
  const int xi = static_cast<int>(x + 0.5);
  double total = 0.0;
  for (int d = 1; d <= std::min(t, xi); ++d) {
    total += (1.0 / d) * binomial(xi - 1, d - 1) * composition_multinomial_sum(t, d);
  }
  return total;
}

double slot_color_count(int K, int l, int g, double m) {
  const std::vector<double> P = pattern_prob(K, m);
  const std::vector<double> Phat = subpattern_prob(K, m);
  const double Pl = P[static_cast<std::size_t>(l)];
  const double Pe = Phat[static_cast<std::size_t>(l)];
  double total = 0.0;
  for (int t = 1; t <= g + 1; ++t) {
    total += binomial(g + 1, t) * expected_color_classes(K, l, t) * ipow(Pl, t) *
             ipow(Pe, g + 1 - t);
  }
  return total;
}

double slot_refine_count(int K, int l, int g, double m) {
  const std::vector<double> P = pattern_prob(K, m);
  const std::vector<double> Phat = subpattern_prob(K, m);
  const double Pl = P[static_cast<std::size_t>(l)];
  const double Pe = Phat[static_cast<std::size_t>(l)];
  double total = 0.0;
  for (int t = 1; t <= g; ++t) {
    total += binomial(g, t) * expected_color_classes(K, l, t) * ipow(Pl, t) *
             ipow(Pe, g + 1 - t);
  }
  return total;
}

double ensemble_color_count(int K, int l, int G, double m) {
  double total = 0.0;
  for (int g = 0; g <= G - 1; ++g) {
    total += binomial(G - 1, g) * ipow(1.0 - m, g) * ipow(m, G - 1 - g) *
             slot_color_count(K, l, g, m);
  }
  return total;
}

double ensemble_refine_count(int K, int l, int G, double m) {
  double total = 0.0;
  for (int g = 1; g <= G - 1; ++g) {
    total += binomial(G - 1, g) * ipow(1.0 - m, g) * ipow(m, G - 1 - g) *
             slot_refine_count(K, l, g, m);
  }
  return total;
}

double expected_refining_receivers(int K, int l, double m) {
  const std::vector<double> P = pattern_prob(K, m);
  const std::vector<double> Phat = subpattern_prob(K, m);
  const double Pl = P[static_cast<std::size_t>(l)];
  const double Pe = Phat[static_cast<std::size_t>(l)];
  double total = 0.0;
  for (int i = 1; i <= l; ++i) {
    total += i * binomial(l, i) * ipow(Pe, i) * ipow(Pl, l - i);
  }
  return total;
}

double static_coded_bound(const StaticBoundParams& p) {
  check_static(p);
  const double m = p.M / static_cast<double>(p.N);
  const int G = p.cluster_size;
  double total = 0.0;
  for (int l = 1; l <= p.K; ++l) {
    const double lam = ensemble_color_count(p.K, l, G, m);
    const double dlam = ensemble_refine_count(p.K, l, G, m);
    const double xi = expected_refining_receivers(p.K, l, m);
    total += binomial(p.K, l) * (1.0 - m) * (lam + p.delta * xi * dlam);
  }
  return total;
}

double static_naive_bound(const StaticBoundParams& p) {
  check_static(p);
  if (p.N % p.cluster_size != 0)
    throw std::invalid_argument("bounds: cluster_size must divide N");
  // cluster_size == 1 collapses both terms to the same quantity; return it
  // directly (the identity is exact, the floating-point split is not).
  if (p.cluster_size == 1) return expected_distinct(p.K, p.N);
  const double per_cluster = expected_distinct(p.K, static_cast<double>(p.N) / p.cluster_size);
  const double per_file = expected_distinct(p.K, p.N);
  return (1.0 - p.delta) * per_cluster + p.delta * per_file;
}

double static_rate_bound(const StaticBoundParams& p) {
  check_static(p);
  StaticBoundParams ignorant = p;
  ignorant.cluster_size = 1;
  const double coded = static_coded_bound(p);
  const double naive = static_naive_bound(p);
  const double coded_ignorant = static_coded_bound(ignorant);
  const double multicast = expected_distinct(p.K, p.N);
  return std::min(std::min(coded, naive), std::min(coded_ignorant, multicast));
}

double dynamic_coded_bound(const DynamicBoundParams& p) {
  StaticBoundParams s;
  s.K = p.K;
  s.N = p.N;
  s.M = p.M;
  s.delta = p.delta;
  s.cluster_size = 1;
  check_static(s);
  if (!(p.pi >= 0.0 && p.pi <= 1.0))
    throw std::invalid_argument("bounds: pi must lie in [0, 1]");
  const double base = static_coded_bound(s);
  const double refresh = p.delta * expected_distinct(p.pi * p.K, p.pi * p.N);
  return base + refresh;
}

double dynamic_rate_bound(const DynamicBoundParams& p) {
  const double coded = dynamic_coded_bound(p);
  const double multicast = expected_distinct(p.K, p.N);
  return std::min(coded, multicast);
}

namespace {

void check_two_file(double M, double delta, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("two_file: h must be > 0");
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("two_file: delta must lie in [0, 1]");
  if (!(M >= -1e-12 && M <= 2.0 * h + 1e-12))
    throw std::invalid_argument("two_file: M must lie in [0, 2h]");
}

}  // namespace

double two_file_rate(double M, double delta, double h) {
  check_two_file(M, delta, h);
  M = std::clamp(M, 0.0, 2.0 * h);
  const double slope = std::min(0.5, delta);
  if (M <= h) return (1.0 + delta / 2.0) * (h - M) + slope * M;
  return slope * (2.0 * h - M);
}

double two_file_lower_bound(double M, double delta, double h) {
  check_two_file(M, delta, h);
  M = std::clamp(M, 0.0, 2.0 * h);
  if (M < h) return (1.0 + delta / 2.0) * h - M;
  if (M < (1.0 + delta) * h) return ((1.0 + delta) * h - M) / 2.0;
  return 0.0;
}

bool two_file_gap_check(double delta, double h, const std::vector<double>& memory_grid) {
  constexpr double kTol = 1e-12;
  for (double M : memory_grid) {
    const double gap = two_file_rate(M, delta, h) - two_file_lower_bound(M, delta, h);
    const double limit =
        (M <= h) ? std::min(delta, 1.0 - delta) * h / 2.0 : (1.0 - delta) * h / 2.0;
    if (gap < -kTol || gap > limit + kTol) return false;
  }
  return true;
}

}  // namespace cacm
