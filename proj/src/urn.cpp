#include "pabp/urn.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pabp/graph.hpp"
#include "pabp/numerics.hpp"
#include "pabp/parallel.hpp"

namespace pabp {

UrnSpec make_urn_spec(int i, int m, double delta, std::int64_t a) {
  if (i < 2) throw std::invalid_argument("urn: i must be >= 2");
  if (m < 1) throw std::invalid_argument("urn: m must be >= 1");
  if (!(delta > -static_cast<double>(m))) throw std::invalid_argument("urn: delta must exceed -m");
  if (a < 1 || a > 2 * m) throw std::invalid_argument("urn: a must lie in [1, 2m]");
  UrnSpec spec;
  spec.i = i;
  spec.m = m;
  spec.delta = delta;
  spec.a = a;
  spec.b = 2ll * m * i - a;
  spec.cap_i = i * (2.0 * m + delta) - 1.0;
  // Weight positivity for every reachable state; ball counts only grow.
  if (!(a + delta > 0.0)) throw std::invalid_argument("urn: W_R(a) = a + delta must be positive");
  if (!(spec.b + (i - 1) * delta > 0.0)) {
    throw std::invalid_argument("urn: W_B(b) = b + (i-1) delta must be positive");
  }
  return spec;
}

double urn_pmf(const UrnSpec& spec, std::int64_t n, std::int64_t d) {
  if (n < 0) throw std::domain_error("urn_pmf: n must be nonnegative");
  if (d < 0 || d > n) throw std::domain_error("urn_pmf: d must lie in [0, n]");
  const long double delta = spec.delta;
  const long double idelta = (spec.i - 1) * delta;
  const long double red0 = spec.a + delta;
  const long double black0 = spec.b + idelta;
  const long double all0 = spec.a + spec.b + spec.i * delta;
  const long double lp = num::log_choose(n, d) +
                         (num::log_gamma(red0 + d) - num::log_gamma(red0)) +
                         (num::log_gamma(black0 + (n - d)) - num::log_gamma(black0)) +
                         (num::log_gamma(all0) - num::log_gamma(all0 + n));
  return static_cast<double>(std::exp(lp));
}

std::vector<double> urn_pmf_table(const UrnSpec& spec, std::int64_t n) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (std::int64_t d = 0; d <= n; ++d) out[static_cast<std::size_t>(d)] = urn_pmf(spec, n, d);
  return out;
}

std::int64_t urn_sample(const UrnSpec& spec, std::int64_t n, RngStream& rng) {
  if (n < 0) throw std::domain_error("urn_sample: n must be nonnegative");
  std::int64_t red = spec.a;
  std::int64_t black = spec.b;
  std::int64_t d = 0;
  for (std::int64_t s = 0; s < n; ++s) {
    const double p_red = (red + spec.delta) / (red + black + spec.i * spec.delta);
    if (rng.next_double() < p_red) {
      ++red;
      ++d;
    } else {
      ++black;
    }
  }
  return d;
}

namespace {

void enumerate_paths(const UrnSpec& spec, int n, int step, std::int64_t red, std::int64_t black,
                     double path_prob, std::vector<double>& table) {
  if (step == n) {
    table[static_cast<std::size_t>(red - spec.a)] += path_prob;
    return;
  }
  const double p_red = (red + spec.delta) / (red + black + spec.i * spec.delta);
  enumerate_paths(spec, n, step + 1, red + 1, black, path_prob * p_red, table);
  enumerate_paths(spec, n, step + 1, red, black + 1, path_prob * (1.0 - p_red), table);
}

}  // namespace

std::vector<double> urn_pmf_bruteforce_table(const UrnSpec& spec, int n) {
  if (n < 0) throw std::domain_error("urn_pmf_bruteforce: n must be nonnegative");
  if (n > 20) throw std::domain_error("urn_pmf_bruteforce refuses n > 20");
  std::vector<double> table(static_cast<std::size_t>(n) + 1, 0.0);
  enumerate_paths(spec, n, 0, spec.a, spec.b, 1.0, table);
  return table;
}

double urn_pmf_bruteforce(const UrnSpec& spec, int n, int d) {
  if (d < 0 || d > n) throw std::domain_error("urn_pmf_bruteforce: d must lie in [0, n]");
  return urn_pmf_bruteforce_table(spec, n)[static_cast<std::size_t>(d)];
}

double tail_bound(const UrnSpec& spec, std::int64_t n, std::int64_t d) {
  if (n < 0 || d < 0 || d > n) throw std::domain_error("tail_bound: need 0 <= d <= n");
  const double expnt = spec.a + spec.delta;
  const double I = spec.cap_i;
  if (d == 0) {
    return std::pow(I / (I + n), expnt);
  }
  return 1.0 / d * std::pow(I * d / (I + n - d), expnt) * std::exp(-d * I / (I + n));
}

namespace {

struct BinData {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> hist;  // index d = D_i(t) - a
};

using BinKey = std::pair<std::int64_t, int>;  // (n, a)

}  // namespace

CouplingReport coupling_check(const Params& params, int i, VertexId t,
                              std::uint64_t samples, const RngStream& rng, int threads) {
  if (i < 2 || static_cast<VertexId>(i) > t) {
    throw std::invalid_argument("coupling_check: need 2 <= i <= t");
  }
  const int m = params.m;
  const std::uint64_t chunk_size = std::max<std::uint64_t>(1, samples / 256);
  const std::uint64_t chunks = (samples + chunk_size - 1) / chunk_size;

  std::vector<std::map<BinKey, BinData>> partial(chunks);
  parallel_for(chunks, threads, [&](std::uint64_t c) {
    RngStream local = rng.substream(c);
    auto& bins = partial[c];
    const std::uint64_t begin = c * chunk_size;
    const std::uint64_t end = std::min(samples, begin + chunk_size);
    for (std::uint64_t s = begin; s < end; ++s) {
      const PAGraph g = m == 1 ? grow_pa1(t, params.delta, local)
                               : grow_pam_direct(t, params, local);
      // D_i(i) from the creation-ordered prefix of m*i edges.
      std::uint32_t a = 0;
      const auto edges = g.graph.edges();
      for (std::size_t e = 0; e < static_cast<std::size_t>(m) * i; ++e) {
        if (edges[e].source == static_cast<VertexId>(i)) ++a;
        if (edges[e].target == static_cast<VertexId>(i)) ++a;
      }
      const std::int64_t n =
          static_cast<std::int64_t>(g.graph.prefix_degree_sum(i)) - 2ll * m * i;
      const std::int64_t d = g.graph.degree(i) - a;
      BinData& bin = bins[{n, static_cast<int>(a)}];
      ++bin.count;
      if (bin.hist.size() <= static_cast<std::size_t>(d)) bin.hist.resize(d + 1, 0);
      ++bin.hist[static_cast<std::size_t>(d)];
    }
  });

  std::map<BinKey, BinData> merged;
  for (auto& part : partial) {
    for (auto& [key, data] : part) {
      BinData& into = merged[key];
      into.count += data.count;
      if (into.hist.size() < data.hist.size()) into.hist.resize(data.hist.size(), 0);
      for (std::size_t d = 0; d < data.hist.size(); ++d) into.hist[d] += data.hist[d];
    }
  }

  CouplingReport report;
  report.total_samples = samples;
  for (const auto& [key, data] : merged) {
    const auto [n, a] = key;
    CouplingBin bin;
    bin.n = n;
    bin.a = a;
    bin.samples = data.count;
    bin.qualified = data.count >= report.min_bin_samples;
    if (bin.qualified) {
      const UrnSpec spec = make_urn_spec(i, m, params.delta, a);
      const std::vector<double> pmf = urn_pmf_table(spec, n);
      double tv = 0.0;
      for (std::int64_t d = 0; d <= n; ++d) {
        const double emp = static_cast<std::size_t>(d) < data.hist.size()
                               ? static_cast<double>(data.hist[static_cast<std::size_t>(d)]) /
                                     static_cast<double>(data.count)
                               : 0.0;
        tv += std::fabs(emp - pmf[static_cast<std::size_t>(d)]);
      }
      bin.tv_distance = 0.5 * tv;
      report.max_qualified_tv = std::max(report.max_qualified_tv, bin.tv_distance);
    }
    report.bins.push_back(bin);
  }
  return report;
}

void write_coupling_csv(const CouplingReport& report, std::ostream& out) {
  out << "n,a,samples,tv_distance,status\n";
  for (const CouplingBin& bin : report.bins) {
    out << bin.n << ',' << bin.a << ',' << bin.samples << ',';
    if (bin.qualified) {
      out << bin.tv_distance << ",ok\n";
    } else {
      out << "," << "insufficient\n";
    }
  }
}

}  // namespace pabp
