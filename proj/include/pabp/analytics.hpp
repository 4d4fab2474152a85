#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pabp/multigraph.hpp"
#include "pabp/params.hpp"
#include "pabp/rng.hpp"

namespace pabp {

struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Degree histogram, ccdf and a probe-set snapshot for one graph.
/// histogram[d] counts vertices of degree d; ccdf[d] is the fraction of
/// vertices with degree >= d, so ccdf[min_degree] == 1.
struct DegreeStats {
  std::vector<std::uint64_t> histogram;
  std::vector<double> ccdf;
  std::vector<VertexId> probe_indices;
  std::vector<std::uint32_t> probe_degrees;
  std::uint32_t min_degree = 0;
  std::uint32_t max_degree = 0;
  std::uint64_t vertex_count = 0;
};

DegreeStats degree_stats(const Multigraph& g, std::span<const VertexId> probes = {});

/// Discrete power-law exponent via the continuous-approximation MLE over
/// degrees >= dmin: 1 + n / sum log(d_k / (dmin - 0.5)). Throws
/// InsufficientDataError when fewer than 1000 tail samples exist or the tail
/// is degenerate (all degrees equal).
double estimate_power_law_exponent(const DegreeStats& stats, std::uint32_t dmin);

/// Same estimator on a raw sample of degrees (used for synthetic oracles).
double estimate_power_law_exponent(std::span<const std::uint32_t> degrees, std::uint32_t dmin);

struct ScalingFit {
  double slope = 0.0;      // estimate of gamma
  double intercept = 0.0;  // estimate of log a
  int probes = 0;
  int trials = 0;
};

/// Averages D_i(t) over fresh graphs and regresses log(mean degree) on
/// log(t / i) over the probe indices. Probes must satisfy i <= t / 100 and
/// at least 3 are required.
ScalingFit gamma_scaling_fit(const Params& params, VertexId t,
                             std::span<const VertexId> probes, int trials,
                             const RngStream& rng, int threads = 0);

struct ConcentrationReport {
  VertexId i = 0;
  VertexId t = 0;
  int trials = 0;
  /// Statistics of S_i(t) / (t^gamma i^(1-gamma)).
  double mean = 0.0;
  double p01 = 0.0;  // 1st percentile
  double min = 0.0;
  double max = 0.0;
};

ConcentrationReport prefix_sum_concentration(const Params& params, VertexId i, VertexId t,
                                             int trials, const RngStream& rng,
                                             int threads = 0);

/// Exact structural counts. cycles_by_length[k] counts simple cycles of
/// length k (2 <= k <= max_cycle_len), each once; parallel edges create
/// distinct 2-cycles, self-loops are not cycles.
struct StructureCensus {
  std::uint64_t self_loop_count = 0;
  std::uint64_t vertices_with_two_plus_self_loops = 0;
  std::uint64_t parallel_pair_count = 0;  // unordered vertex pairs with >= 2 edges
  std::vector<std::uint64_t> cycles_by_length;
  std::uint64_t cycles_total = 0;
};

/// max_cycle_len <= 8 (enumeration cost); pass 0 or 1 to skip cycle counting.
StructureCensus structure_census(const Multigraph& g, int max_cycle_len);

struct JointEdgeReport {
  double estimate = 0.0;  // MC estimate of P(every j in j_list throws an edge to i)
  double product = 0.0;   // prod 1 / (i^gamma j^(1-gamma))
  double m_hat = 0.0;     // (estimate / product)^(1/k)
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  bool conclusive = true;
};

/// k = |j_list| <= 3, t_small <= 500. An estimate of zero with fewer than
/// 1e5 samples is flagged inconclusive.
JointEdgeReport joint_edge_prob_mc(const Params& params, VertexId i,
                                   std::span<const VertexId> j_list, VertexId t_small,
                                   std::uint64_t samples, const RngStream& rng,
                                   int threads = 0);

/// Seeds infection with probability p, runs exactly one round, and returns
/// the infected fraction among vertices [1..kappa].
double core_round1_check(const Multigraph& g, int r, double p, RngStream& rng, VertexId kappa);

}  // namespace pabp
