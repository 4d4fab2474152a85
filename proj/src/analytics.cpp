#include "pabp/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pabp/graph.hpp"
#include "pabp/parallel.hpp"
#include "pabp/percolation.hpp"

namespace pabp {

DegreeStats degree_stats(const Multigraph& g, std::span<const VertexId> probes) {
  DegreeStats stats;
  const VertexId t = g.vertex_count();
  stats.vertex_count = t;
  stats.min_degree = g.min_degree();
  stats.max_degree = g.max_degree();
  stats.histogram.assign(stats.max_degree + 1, 0);
  for (VertexId v = 1; v <= t; ++v) ++stats.histogram[g.degree(v)];

  stats.ccdf.assign(stats.max_degree + 1, 0.0);
  std::uint64_t at_least = 0;
  for (std::uint32_t d = stats.max_degree + 1; d-- > 0;) {
    at_least += stats.histogram[d];
    stats.ccdf[d] = static_cast<double>(at_least) / static_cast<double>(t);
  }
  if (at_least != t) throw std::logic_error("degree histogram mass != t");

  stats.probe_indices.assign(probes.begin(), probes.end());
  stats.probe_degrees.reserve(probes.size());
  for (VertexId v : probes) stats.probe_degrees.push_back(g.degree(v));
  return stats;
}

namespace {

double mle_exponent(std::uint64_t tail_count, double log_sum) {
  if (tail_count < 1000) {
    throw InsufficientDataError("power-law fit needs >= 1000 tail samples, got " +
                                std::to_string(tail_count));
  }
  if (!(log_sum > 0.0)) {
    throw InsufficientDataError("degenerate degree tail: estimate diverges");
  }
  return 1.0 + static_cast<double>(tail_count) / log_sum;
}

}  // namespace

double estimate_power_law_exponent(const DegreeStats& stats, std::uint32_t dmin) {
  if (dmin < 1) throw std::invalid_argument("dmin must be >= 1");
  std::uint64_t tail = 0;
  double log_sum = 0.0;
  std::uint32_t distinct = 0;
  const double shift = dmin - 0.5;
  for (std::uint32_t d = dmin; d < stats.histogram.size(); ++d) {
    const std::uint64_t c = stats.histogram[d];
    if (c == 0) continue;
    tail += c;
    ++distinct;
    log_sum += static_cast<double>(c) * std::log(d / shift);
  }
  if (tail >= 1000 && distinct < 2) {
    throw InsufficientDataError("degenerate degree tail: all degrees equal");
  }
  return mle_exponent(tail, log_sum);
}

double estimate_power_law_exponent(std::span<const std::uint32_t> degrees, std::uint32_t dmin) {
  if (dmin < 1) throw std::invalid_argument("dmin must be >= 1");
  std::uint64_t tail = 0;
  double log_sum = 0.0;
  std::uint32_t first = 0;
  bool distinct = false;
  const double shift = dmin - 0.5;
  for (std::uint32_t d : degrees) {
    if (d < dmin) continue;
    if (tail == 0) {
      first = d;
    } else if (d != first) {
      distinct = true;
    }
    ++tail;
    log_sum += std::log(d / shift);
  }
  if (tail >= 1000 && !distinct) {
    throw InsufficientDataError("degenerate degree tail: all degrees equal");
  }
  return mle_exponent(tail, log_sum);
}

ScalingFit gamma_scaling_fit(const Params& params, VertexId t,
                             std::span<const VertexId> probes, int trials,
                             const RngStream& rng, int threads) {
  if (probes.size() < 3) {
    throw std::invalid_argument("gamma_scaling_fit needs at least 3 probe indices");
  }
  if (trials < 1) throw std::invalid_argument("gamma_scaling_fit needs trials >= 1");
  for (VertexId i : probes) {
    if (i < 1 || i > t / 100) {
      throw std::invalid_argument("probe indices must satisfy 1 <= i <= t/100");
    }
  }

  const std::size_t np = probes.size();
  std::vector<std::uint64_t> sums(static_cast<std::size_t>(trials) * np, 0);
  parallel_for(static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t trial) {
    RngStream local = rng.substream(trial);
    const PAGraph g = grow_pam_direct(t, params, local);
    for (std::size_t p = 0; p < np; ++p) {
      sums[trial * np + p] = g.graph.degree(probes[p]);
    }
  });

  ScalingFit fit;
  fit.probes = static_cast<int>(np);
  fit.trials = trials;
  // log(mean degree) against log(t / i), least squares.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t p = 0; p < np; ++p) {
    std::uint64_t total = 0;
    for (int trial = 0; trial < trials; ++trial) {
      total += sums[static_cast<std::size_t>(trial) * np + p];
    }
    const double mean = static_cast<double>(total) / trials;
    const double x = std::log(static_cast<double>(t) / probes[p]);
    const double y = std::log(mean);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(np);
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

ConcentrationReport prefix_sum_concentration(const Params& params, VertexId i, VertexId t,
                                             int trials, const RngStream& rng, int threads) {
  if (i < 1 || i > t) throw std::invalid_argument("need 1 <= i <= t");
  if (trials < 1) throw std::invalid_argument("need trials >= 1");

  const double norm =
      std::pow(static_cast<double>(t), params.gamma) *
      std::pow(static_cast<double>(i), 1.0 - params.gamma);
  std::vector<double> values(trials);
  parallel_for(static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t trial) {
    RngStream local = rng.substream(trial);
    const PAGraph g = grow_pam_direct(t, params, local);
    values[trial] = static_cast<double>(g.graph.prefix_degree_sum(i)) / norm;
  });

  std::sort(values.begin(), values.end());
  ConcentrationReport report;
  report.i = i;
  report.t = t;
  report.trials = trials;
  report.min = values.front();
  report.max = values.back();
  double sum = 0.0;
  for (double v : values) sum += v;
  report.mean = sum / trials;
  const std::size_t rank = static_cast<std::size_t>(
      std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(0.01 * trials)) - 1));
  report.p01 = values[std::min(rank, values.size() - 1)];
  return report;
}

namespace {

struct MultiAdjacency {
  // Per vertex: sorted unique non-loop neighbors with edge multiplicities.
  std::vector<std::vector<std::pair<VertexId, std::uint32_t>>> nbr;

  explicit MultiAdjacency(const Multigraph& g) : nbr(g.vertex_count() + 1) {
    for (VertexId v = 1; v <= g.vertex_count(); ++v) {
      auto span = g.neighbors(v);
      std::vector<VertexId> sorted(span.begin(), span.end());
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 0; k < sorted.size();) {
        std::size_t e = k;
        while (e < sorted.size() && sorted[e] == sorted[k]) ++e;
        if (sorted[k] != v) {
          nbr[v].push_back({sorted[k], static_cast<std::uint32_t>(e - k)});
        }
        k = e;
      }
    }
  }

  std::uint32_t multiplicity(VertexId u, VertexId v) const {
    const auto& list = nbr[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const auto& p, VertexId x) { return p.first < x; });
    return it != list.end() && it->first == v ? it->second : 0;
  }
};

// Counts simple cycles s -> v1 -> ... -> vj -> s with s the smallest vertex
// and v1 < vj fixing the direction; parallel edges multiply.
void cycle_dfs(const MultiAdjacency& adj, VertexId s, VertexId v, VertexId first,
               int edges_used, int max_len, std::uint64_t product,
               std::vector<std::uint8_t>& on_path, std::vector<std::uint64_t>& cycles) {
  for (const auto& [u, mult] : adj.nbr[v]) {
    if (u == s && edges_used >= 2 && first < v) {
      cycles[edges_used + 1] += product * mult;
    }
    if (u <= s || on_path[u] || edges_used + 1 >= max_len) continue;
    on_path[u] = 1;
    cycle_dfs(adj, s, u, first == 0 ? u : first, edges_used + 1, max_len, product * mult,
              on_path, cycles);
    on_path[u] = 0;
  }
}

}  // namespace

StructureCensus structure_census(const Multigraph& g, int max_cycle_len) {
  if (max_cycle_len > 8) throw std::invalid_argument("max_cycle_len must be <= 8");
  StructureCensus census;
  const VertexId t = g.vertex_count();

  std::vector<std::uint32_t> loops(t + 1, 0);
  for (const Edge& e : g.edges()) {
    if (e.source == e.target) {
      ++census.self_loop_count;
      ++loops[e.source];
    }
  }
  for (VertexId v = 1; v <= t; ++v) {
    if (loops[v] >= 2) ++census.vertices_with_two_plus_self_loops;
  }

  MultiAdjacency adj(g);
  for (VertexId v = 1; v <= t; ++v) {
    for (const auto& [u, mult] : adj.nbr[v]) {
      if (u < v && mult >= 2) ++census.parallel_pair_count;
    }
  }

  if (max_cycle_len >= 2) {
    census.cycles_by_length.assign(max_cycle_len + 1, 0);
    for (VertexId v = 1; v <= t; ++v) {
      for (const auto& [u, mult] : adj.nbr[v]) {
        if (u < v && mult >= 2) {
          census.cycles_by_length[2] += static_cast<std::uint64_t>(mult) * (mult - 1) / 2;
        }
      }
    }
    if (max_cycle_len >= 3) {
      std::vector<std::uint8_t> on_path(t + 1, 0);
      for (VertexId s = 1; s <= t; ++s) {
        cycle_dfs(adj, s, s, 0, 0, max_cycle_len, 1, on_path, census.cycles_by_length);
      }
    }
    for (std::uint64_t c : census.cycles_by_length) census.cycles_total += c;
  }
  return census;
}

JointEdgeReport joint_edge_prob_mc(const Params& params, VertexId i,
                                   std::span<const VertexId> j_list, VertexId t_small,
                                   std::uint64_t samples, const RngStream& rng, int threads) {
  if (t_small > 500) throw std::invalid_argument("joint_edge_prob_mc: t_small must be <= 500");
  if (j_list.size() > 3) throw std::invalid_argument("joint_edge_prob_mc: at most 3 js");
  for (VertexId j : j_list) {
    if (j <= i || j > t_small) throw std::invalid_argument("need i < j <= t");
  }
  if (samples < 1) throw std::invalid_argument("need samples >= 1");

  const int m = params.m;
  const std::uint64_t chunk_size = std::max<std::uint64_t>(1, samples / 256);
  const std::uint64_t chunks = (samples + chunk_size - 1) / chunk_size;
  std::vector<std::uint64_t> hits_per_chunk(chunks, 0);
  parallel_for(chunks, threads, [&](std::uint64_t c) {
    RngStream local = rng.substream(c);
    const std::uint64_t begin = c * chunk_size;
    const std::uint64_t end = std::min(samples, begin + chunk_size);
    std::uint64_t hits = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      const PAGraph g = m == 1 ? grow_pa1(t_small, params.delta, local)
                               : grow_pam_direct(t_small, params, local);
      const auto edges = g.graph.edges();
      bool all = true;
      for (VertexId j : j_list) {
        bool threw = false;
        for (std::size_t e = static_cast<std::size_t>(j - 1) * m;
             e < static_cast<std::size_t>(j) * m; ++e) {
          if (edges[e].target == i) {
            threw = true;
            break;
          }
        }
        if (!threw) {
          all = false;
          break;
        }
      }
      if (all) ++hits;
    }
    hits_per_chunk[c] = hits;
  });

  JointEdgeReport report;
  report.samples = samples;
  for (std::uint64_t h : hits_per_chunk) report.hits += h;
  report.estimate = static_cast<double>(report.hits) / static_cast<double>(samples);
  report.product = 1.0;
  for (VertexId j : j_list) {
    report.product /= std::pow(static_cast<double>(i), params.gamma) *
                      std::pow(static_cast<double>(j), 1.0 - params.gamma);
  }
  report.m_hat = j_list.empty()
                     ? 1.0
                     : std::pow(report.estimate / report.product, 1.0 / j_list.size());
  report.conclusive = !(report.hits == 0 && samples < 100000);
  return report;
}

double core_round1_check(const Multigraph& g, int r, double p, RngStream& rng, VertexId kappa) {
  if (kappa < 1 || kappa > g.vertex_count()) {
    throw std::invalid_argument("kappa must lie in [1, t]");
  }
  const std::vector<VertexId> initial = seed_infection(g.vertex_count(), p, rng);
  InfectionState state;
  run(g, r, initial, state, 1);
  std::uint32_t infected = 0;
  for (VertexId v = 1; v <= kappa; ++v) infected += state.infected[v];
  return static_cast<double>(infected) / static_cast<double>(kappa);
}

}  // namespace pabp
