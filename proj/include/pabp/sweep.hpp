#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pabp/multigraph.hpp"
#include "pabp/params.hpp"

namespace pabp {

/// Seeding rules around the critical size a_c(t) = t^(1-gamma). omega(t) is
/// realized as log t; `subcritical_ii` sits deeper at log^2 t.
enum class SweepPreset {
  lambda_grid,      // a = lambda a_c over the lambda grid
  supercritical,    // a = a_c log t, requires r < m
  subcritical_i,    // a = a_c / log t, requires r gamma > 1 and r <= m
  subcritical_ii,   // a = a_c / log^2 t, requires 3 <= r <= m
  subcritical_iii,  // a = a_c / log t, requires r = 2 <= m
  critical,         // a = lambda a_c (constant lambda), requires r >= 3
};

SweepPreset parse_preset(const std::string& name);
std::string preset_name(SweepPreset preset);

struct SweepConfig {
  VertexId t = 1000;
  int m = 2;
  double delta = 0.0;
  int r = 2;
  SweepPreset preset = SweepPreset::lambda_grid;
  std::vector<double> lambdas;  // lambda_grid / critical points; default {1}
  int trials = 1;
  std::uint64_t base_seed = 0;
  std::string out_path;  // empty: do not write
  int threads = 0;
};

struct SweepPoint {
  double a = 0.0;       // realized initial-infection size target
  double lambda = 0.0;  // a / a_c
};

/// Derives the sweep points and validates the preset's hypotheses.
/// Throws std::invalid_argument on an invalid preset/parameter combination.
std::vector<SweepPoint> sweep_points(const SweepConfig& config);

struct TrialResult {
  VertexId t = 0;
  int m = 0;
  double delta = 0.0;
  int r = 0;
  double a = 0.0;
  double lambda = 0.0;
  int point = 0;
  int trial = 0;
  std::uint64_t seed = 0;  // per-trial stream id
  std::uint32_t i0 = 0;
  std::uint32_t i_f = 0;
  std::uint32_t rounds = 0;
  bool full = false;
  double wall_ms = 0.0;  // in-memory only, not part of the CSV schema
};

/// One fresh graph per trial (seed = base (+) point (+) trial), infection
/// seeded with p = a(t)/t, percolation run to the fixed point. Rows come out
/// in deterministic (point, trial) order regardless of the worker count and
/// are written to config.out_path when set.
std::vector<TrialResult> run_sweep(const SweepConfig& config);

/// CSV schema: t,m,delta,r,a,lambda,trial,seed,i0,if,rounds,full
/// (header mandatory, LF line endings).
void write_sweep_csv(std::span<const TrialResult> rows, std::ostream& out);

struct PointSummary {
  std::string key;  // t,m,delta,r,a,lambda as written
  int trials = 0;
  double frac_full = 0.0;
  double median_ratio = 0.0;  // |I_f| / |I_0|, ratio 1 when |I_0| = 0
  double q1_ratio = 0.0;
  double q3_ratio = 0.0;
  std::uint32_t max_rounds = 0;
};

/// Parses a run_sweep CSV; throws std::runtime_error on schema mismatch.
std::vector<PointSummary> summarize(std::istream& csv);
void write_summary(std::span<const PointSummary> summary, std::ostream& out);

}  // namespace pabp
