// Closed-form rate characterizations for the random-placement regimes and the
// two-file worst-case regime.
//
// All rates are expressed in file units (a rate of 1.0 means one file's worth
// of bits per delivery).  Memory M is likewise in file units, 0 <= M <= N.
// The helpers behind the main bounds are exposed because the test suite
// cross-checks each of them independently (combinatorial identities,
// Monte-Carlo estimates, closed-form reductions).

#pragma once

#include <vector>

namespace cacm {

// Expected number of distinct values among `kappa` independent uniform draws
// over `nu` bins: nu * (1 - (1 - 1/nu)^kappa).  Non-integer arguments are
// allowed (they arise from thinning a request process).  kappa == 0 yields 0
// for any nu, including nu == 0; otherwise nu must be positive.
double expected_distinct(double kappa, double nu);

// x^n for integer n >= 0 with the convention 0^0 = 1, evaluated by repeated
// multiplication so results are reproducible across libm implementations.
double ipow(double x, int n);

// Exact binomial coefficient as a double (Pascal's rule; exact while the
// result fits 53 bits).  Returns 0 for k < 0 or k > n.
double binomial(int n, int k);

// Number of ways to distribute t labeled items into d nonempty ordered parts:
// the sum of multinomial coefficients t!/(t_1!..t_d!) over all compositions
// t_1+..+t_d = t with t_i >= 1.  Enumerated composition by composition;
// multinomials switch to a log-factorial evaluation once t exceeds 20.
// Equals d! * S(t, d) (surjections onto d parts).
double composition_multinomial_sum(int t, int d);

// Probability that a given packet is cached at one fixed set of l-1 receivers
// and missed by the remaining K-l, under independent uniform placement with
// per-receiver caching probability m: P_l = (1-m)^(K-l) * m^(l-1).
// Returned vector is indexed 1..K (slot 0 unused).
std::vector<double> pattern_prob(int K, double m);

// Probability that a given packet's caching pattern, seen from one receiver,
// is strictly "smaller" than a fixed size-l pattern:
// Phat_1 = 0, Phat_l = sum_{i<l} C(K-1, i-1) * P_i.  Indexed 1..K.
std::vector<double> subpattern_prob(int K, double m);

// Number of caching patterns of size l seen from one receiver: C(K-1, l-1).
double pattern_count(int K, int l);

// Expected number of color classes formed by t same-index packets whose
// caching patterns all have size l: choices of d occupied patterns weighted
// by the ways to split the t packets across them.
double expected_color_classes(int K, int l, int t);

// Expected colors contributed by one packet-index slot when the slot is
// requested by g+1 receivers and the fixed receiver's pattern has size l.
double slot_color_count(int K, int l, int g, double m);

// Companion to slot_color_count counting slots that are served through a
// correlated neighbor instead of their own packet (t <= g of the g+1
// requests carry the pattern).
double slot_refine_count(int K, int l, int g, double m);

// slot_color_count averaged over the binomial number of co-requested slots
// inside a correlation ensemble of size G.  Lies in [0, 1].
double ensemble_color_count(int K, int l, int G, double m);

// slot_refine_count averaged the same way (the g = 0 term vanishes).
double ensemble_refine_count(int K, int l, int G, double m);

// Expected number of receivers, among the l sharing a pattern, whose copy of
// the packet arrives via a strictly smaller pattern and therefore needs a
// correlated refinement: l * Phat_l * (P_l + Phat_l)^(l-1), evaluated as the
// defining sum.
double expected_refining_receivers(int K, int l, double m);

// Parameters of the static random-placement regime.
struct StaticBoundParams {
  int K = 1;             // receivers
  int N = 1;             // files
  double M = 0.0;        // per-receiver memory, file units, in [0, N]
  double delta = 0.0;    // intra-cluster conditional entropy fraction, [0, 1]
  int cluster_size = 1;  // files per cluster (must divide N where required)
};

// Expected delivery rate of correlation-aware greedy coloring under uniform
// random placement (large-packetization limit): coded transmissions plus
// delta-weighted refinements.
double static_coded_bound(const StaticBoundParams& p);

// Expected rate of the representative-based fallback coloring: one
// transmission per distinct requested cluster plus delta-weighted refinements
// for the remaining distinct files.  Independent of M.  Requires
// cluster_size | N.
double static_naive_bound(const StaticBoundParams& p);

// Envelope of the static characterizations: the minimum of the two bounds
// above, the correlation-ignorant variant (cluster_size = 1), and plain
// multicast of every distinct request.
double static_rate_bound(const StaticBoundParams& p);

// Parameters of the dynamic (per-file update) regime.  Clusters are
// singletons; delta is the cross-version conditional entropy fraction and pi
// the per-file update probability.
struct DynamicBoundParams {
  int K = 1;
  int N = 1;
  double M = 0.0;
  double delta = 0.0;
  double pi = 0.0;
};

// Expected rate of correlation-aware delivery in the dynamic regime: coded
// delivery of original content plus delta-weighted refresh of the updated
// portion.
double dynamic_coded_bound(const DynamicBoundParams& p);

// Envelope of the dynamic characterization and plain multicast.
double dynamic_rate_bound(const DynamicBoundParams& p);

// Achievable worst-case delivery rate for the two-receiver, two-file
// correlated library with per-file entropy h and memory M in [0, 2h]:
//   (1 + delta/2) * (h - M) + min(1/2, delta) * M      for M in [0, h]
//   min(1/2, delta) * (2h - M)                          for M in (h, 2h]
double two_file_rate(double M, double delta, double h);

// Converse for the same setting:
//   (1 + delta/2) * h - M          for M in [0, h)
//   ((1 + delta) * h - M) / 2      for M in [h, (1+delta) h)
//   0                              for M in [(1+delta) h, 2h]
double two_file_lower_bound(double M, double delta, double h);

// Verifies on the given memory grid that the achievable curve stays within
// the proven distance of the converse: gap <= min(delta, 1-delta) * h / 2 for
// M <= h and gap <= (1-delta) * h / 2 beyond (tolerance 1e-12).  Grid values
// must lie in [0, 2h].
bool two_file_gap_check(double delta, double h, const std::vector<double>& memory_grid);

}  // namespace cacm
