#include "pabp/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pabp/graph.hpp"
#include "pabp/parallel.hpp"
#include "pabp/percolation.hpp"
#include "pabp/rng.hpp"

namespace pabp {

SweepPreset parse_preset(const std::string& name) {
  if (name == "lambda-grid") return SweepPreset::lambda_grid;
  if (name == "supercritical") return SweepPreset::supercritical;
  if (name == "subcritical-i") return SweepPreset::subcritical_i;
  if (name == "subcritical-ii") return SweepPreset::subcritical_ii;
  if (name == "subcritical-iii") return SweepPreset::subcritical_iii;
  if (name == "critical") return SweepPreset::critical;
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::string preset_name(SweepPreset preset) {
  switch (preset) {
    case SweepPreset::lambda_grid: return "lambda-grid";
    case SweepPreset::supercritical: return "supercritical";
    case SweepPreset::subcritical_i: return "subcritical-i";
    case SweepPreset::subcritical_ii: return "subcritical-ii";
    case SweepPreset::subcritical_iii: return "subcritical-iii";
    case SweepPreset::critical: return "critical";
  }
  return "?";
}

std::vector<SweepPoint> sweep_points(const SweepConfig& config) {
  const Params params = make_params(config.m, config.delta);
  if (config.r < 2) throw std::invalid_argument("config error: r must be >= 2");
  if (config.trials < 1) throw std::invalid_argument("config error: trials must be >= 1");
  if (config.t < 1) throw std::invalid_argument("config error: t must be >= 1");

  const double ac = std::pow(static_cast<double>(config.t), 1.0 - params.gamma);
  const double logt = std::log(static_cast<double>(config.t));
  std::vector<double> lambdas = config.lambdas;
  if (lambdas.empty()) lambdas = {1.0};
  for (double l : lambdas) {
    if (!(l > 0.0)) throw std::invalid_argument("config error: lambda values must be positive");
  }

  std::vector<SweepPoint> points;
  switch (config.preset) {
    case SweepPreset::lambda_grid:
      for (double l : lambdas) points.push_back({l * ac, l});
      break;
    case SweepPreset::supercritical:
      if (config.r >= config.m) {
        throw std::invalid_argument("config error: supercritical preset requires r < m");
      }
      points.push_back({ac * logt, logt});
      break;
    case SweepPreset::subcritical_i:
      if (config.r > config.m) {
        throw std::invalid_argument("config error: subcritical presets require r <= m");
      }
      if (!(config.r * params.gamma > 1.0)) {
        throw std::invalid_argument("config error: subcritical-i requires r gamma > 1");
      }
      points.push_back({ac / logt, 1.0 / logt});
      break;
    case SweepPreset::subcritical_ii:
      if (config.r > config.m) {
        throw std::invalid_argument("config error: subcritical presets require r <= m");
      }
      if (config.r < 3) {
        throw std::invalid_argument("config error: subcritical-ii requires r >= 3");
      }
      points.push_back({ac / (logt * logt), 1.0 / (logt * logt)});
      break;
    case SweepPreset::subcritical_iii:
      if (config.r != 2 || config.m < 2) {
        throw std::invalid_argument("config error: subcritical-iii requires r = 2 <= m");
      }
      points.push_back({ac / logt, 1.0 / logt});
      break;
    case SweepPreset::critical:
      if (config.r < 3) {
        throw std::invalid_argument("config error: critical preset requires r >= 3");
      }
      for (double l : lambdas) points.push_back({l * ac, l});
      break;
  }
  return points;
}

std::vector<TrialResult> run_sweep(const SweepConfig& config) {
  const Params params = make_params(config.m, config.delta);
  const std::vector<SweepPoint> points = sweep_points(config);
  const std::uint64_t total =
      static_cast<std::uint64_t>(points.size()) * static_cast<std::uint64_t>(config.trials);

  std::vector<TrialResult> rows(total);
  const RngStream base(config.base_seed, 0);
  parallel_for(total, config.threads, [&](std::uint64_t flat) {
    const int point = static_cast<int>(flat / config.trials);
    const int trial = static_cast<int>(flat % config.trials);
    const auto start = std::chrono::steady_clock::now();

    RngStream graph_rng = base.substream(2 * flat);
    RngStream seed_rng = base.substream(2 * flat + 1);
    const PAGraph g = config.m == 1 ? grow_pa1(config.t, config.delta, graph_rng)
                                    : grow_pam_direct(config.t, params, graph_rng);
    const double p = std::min(1.0, points[point].a / static_cast<double>(config.t));
    const std::vector<VertexId> initial = seed_infection(config.t, p, seed_rng);
    const PercolationResult result = run(g.graph, config.r, initial);

    TrialResult& row = rows[flat];
    row.t = config.t;
    row.m = config.m;
    row.delta = config.delta;
    row.r = config.r;
    row.a = points[point].a;
    row.lambda = points[point].lambda;
    row.point = point;
    row.trial = trial;
    row.seed = 2 * flat;
    row.i0 = result.initial_count;
    row.i_f = result.final_count;
    row.rounds = result.rounds;
    row.full = result.full_infection;
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  });

  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + config.out_path + " for writing");
    write_sweep_csv(rows, out);
    if (!out.flush()) throw std::runtime_error("write failed: " + config.out_path);
  }
  return rows;
}

void write_sweep_csv(std::span<const TrialResult> rows, std::ostream& out) {
  out << "t,m,delta,r,a,lambda,trial,seed,i0,if,rounds,full\n";
  char buf[160];
  for (const TrialResult& row : rows) {
    std::snprintf(buf, sizeof(buf), "%u,%d,%.17g,%d,%.17g,%.17g,%d,%llu,%u,%u,%u,%d\n",
                  row.t, row.m, row.delta, row.r, row.a, row.lambda, row.trial,
                  static_cast<unsigned long long>(row.seed), row.i0, row.i_f, row.rounds,
                  row.full ? 1 : 0);
    out << buf;
  }
}

namespace {

double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * (sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - lo;
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

std::vector<PointSummary> summarize(std::istream& csv) {
  std::string line;
  if (!std::getline(csv, line) || line != "t,m,delta,r,a,lambda,trial,seed,i0,if,rounds,full") {
    throw std::runtime_error("sweep CSV schema mismatch");
  }
  struct Bucket {
    std::vector<double> ratios;
    int full = 0;
    int trials = 0;
    std::uint32_t max_rounds = 0;
  };
  std::map<std::string, Bucket> buckets;
  std::vector<std::string> order;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 12) throw std::runtime_error("sweep CSV row has wrong arity: " + line);
    const std::string key =
        fields[0] + ',' + fields[1] + ',' + fields[2] + ',' + fields[3] + ',' + fields[4] +
        ',' + fields[5];
    auto [it, fresh] = buckets.insert({key, Bucket{}});
    if (fresh) order.push_back(key);
    Bucket& b = it->second;
    try {
      const std::uint64_t i0 = std::stoull(fields[8]);
      const std::uint64_t i_f = std::stoull(fields[9]);
      const std::uint32_t rounds = static_cast<std::uint32_t>(std::stoul(fields[10]));
      const int full = std::stoi(fields[11]);
      b.ratios.push_back(i0 == 0 ? 1.0
                                 : static_cast<double>(i_f) / static_cast<double>(i0));
      b.full += full != 0;
      b.max_rounds = std::max(b.max_rounds, rounds);
      ++b.trials;
    } catch (const std::logic_error&) {
      throw std::runtime_error("sweep CSV field parse failure: " + line);
    }
  }

  std::vector<PointSummary> out;
  for (const std::string& key : order) {
    Bucket& b = buckets[key];
    std::sort(b.ratios.begin(), b.ratios.end());
    PointSummary s;
    s.key = key;
    s.trials = b.trials;
    s.frac_full = static_cast<double>(b.full) / b.trials;
    s.median_ratio = percentile(b.ratios, 0.5);
    s.q1_ratio = percentile(b.ratios, 0.25);
    s.q3_ratio = percentile(b.ratios, 0.75);
    s.max_rounds = b.max_rounds;
    out.push_back(std::move(s));
  }
  return out;
}

void write_summary(std::span<const PointSummary> summary, std::ostream& out) {
  out << "t,m,delta,r,a,lambda,trials,frac_full,median_ratio,q1_ratio,q3_ratio,max_rounds\n";
  char buf[200];
  for (const PointSummary& s : summary) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%.6g,%.6g,%.6g,%.6g,%u\n", s.key.c_str(), s.trials,
                  s.frac_full, s.median_ratio, s.q1_ratio, s.q3_ratio, s.max_rounds);
    out << buf;
  }
}

}  // namespace pabp
