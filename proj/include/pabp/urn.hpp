#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pabp/multigraph.hpp"
#include "pabp/params.hpp"
#include "pabp/rng.hpp"

namespace pabp {

/// Two-color urn coupled to vertex i of a PA graph: a red balls (= D_i(i)),
/// b = 2mi - a black balls, weighting functions W_R(k) = k + delta and
/// W_B(k) = k + (i-1) delta. I = i(2m+delta) - 1 shows up in the tail bounds.
struct UrnSpec {
  int i = 2;
  int m = 1;
  double delta = 0.0;
  std::int64_t a = 1;
  std::int64_t b = 1;
  double cap_i = 0.0;
};

/// Validates i >= 2, 1 <= a <= 2m, delta > -m and positivity of every
/// gamma-function argument reachable from the start state.
UrnSpec make_urn_spec(int i, int m, double delta, std::int64_t a);

/// P(X_R(n, a, b) = d): probability that d of n selections are red,
///   C(n,d) G(a+d+delta)/G(a+delta) G(b+n-d+(i-1)delta)/G(b+(i-1)delta)
///        * G(a+b+i delta)/G(a+b+n+i delta),
/// evaluated in log space.
double urn_pmf(const UrnSpec& spec, std::int64_t n, std::int64_t d);

/// urn_pmf for every d = 0..n at once.
std::vector<double> urn_pmf_table(const UrnSpec& spec, std::int64_t n);

/// Sequential simulation of n weighted selections; returns the red count.
std::int64_t urn_sample(const UrnSpec& spec, std::int64_t n, RngStream& rng);

/// Independent oracle: sums path probabilities over all 2^n selection
/// sequences with sequential products (no exchangeability shortcut).
/// Refuses n > 20.
double urn_pmf_bruteforce(const UrnSpec& spec, int n, int d);
std::vector<double> urn_pmf_bruteforce_table(const UrnSpec& spec, int n);

/// Tail bound shapes (without the hidden (m, delta) constant):
/// (1/d) (I d/(I+n-d))^(a+delta) e^(-d I/(I+n)) for d >= 1 and
/// (I/(I+n))^(a+delta) for d = 0.
double tail_bound(const UrnSpec& spec, std::int64_t n, std::int64_t d);

/// One (n, a) bin of the coupling comparison.
struct CouplingBin {
  std::int64_t n = 0;
  int a = 0;
  std::uint64_t samples = 0;
  double tv_distance = 0.0;
  bool qualified = false;  // bins below the sample floor are skipped
};

struct CouplingReport {
  std::vector<CouplingBin> bins;
  std::uint64_t total_samples = 0;
  double max_qualified_tv = 0.0;
  std::uint64_t min_bin_samples = 500;
};

/// Monte-Carlo check of the degree/urn coupling: generates `samples` graphs
/// PA_t(m, delta), bins trials by the observed pair
/// (n = S_i(t) - 2mi, a = D_i(i)) and compares the conditional empirical
/// distribution of D_i(t) - a against urn_pmf per bin.
CouplingReport coupling_check(const Params& params, int i, VertexId t,
                              std::uint64_t samples, const RngStream& rng,
                              int threads = 0);

/// CSV: n,a,samples,tv_distance,status
void write_coupling_csv(const CouplingReport& report, std::ostream& out);

}  // namespace pabp
