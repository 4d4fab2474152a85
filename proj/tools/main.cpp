// Command-line front end: graph generation, bootstrap percolation runs,
// phase-transition sweeps, and the statistical check reports, all emitting
// gnuplot-ready CSV.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pabp/analytics.hpp"
#include "pabp/graph.hpp"
#include "pabp/graph_io.hpp"
#include "pabp/parallel.hpp"
#include "pabp/percolation.hpp"
#include "pabp/sweep.hpp"
#include "pabp/urn.hpp"
#include "pabp/witness.hpp"

namespace {

struct OutStream {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit OutStream(const std::string& path) {
    if (!path.empty() && path != "-") {
      file.open(path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open " + path + " for writing");
      os = &file;
    }
  }
  std::ostream& get() { return *os; }
};

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<pabp::VertexId> parse_vertices(const std::string& csv) {
  std::vector<pabp::VertexId> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(static_cast<pabp::VertexId>(std::stoul(tok)));
  }
  return out;
}

pabp::PAGraph build_or_load(const std::string& graph_path, std::uint32_t t, int m, double delta,
                            std::uint64_t seed, const std::string& construction) {
  if (!graph_path.empty()) return pabp::load_graph(graph_path);
  const pabp::Params params = pabp::make_params(m, delta);
  pabp::RngStream rng(seed);
  if (construction == "collapse") {
    pabp::PAGraph pa1 = pabp::grow_pa1(t * static_cast<std::uint32_t>(m), delta / m, rng);
    return pabp::collapse(pa1, m);
  }
  if (m == 1) return pabp::grow_pa1(t, delta, rng);
  return pabp::grow_pam_direct(t, params, rng);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"preferential-attachment graphs and bootstrap percolation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "flat key=value config file; command line overrides it");

  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_path;
  app.add_option("--seed", seed, "base RNG seed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = auto, PABP_THREADS overrides)")
      ->capture_default_str();
  app.add_option("--out", out_path, "output path (default: stdout)");

  std::uint32_t t = 1000;
  int m = 2;
  double delta = 0.0;
  int r = 2;
  std::string graph_path;

  // generate
  auto* generate = app.add_subcommand("generate", "grow a PA graph and write it");
  std::string construction = "direct";
  generate->add_option("--t", t, "vertex count")->required();
  generate->add_option("--m", m, "edges per vertex")->capture_default_str();
  generate->add_option("--delta", delta, "attachment offset")->capture_default_str();
  generate->add_option("--construction", construction, "direct | collapse")
      ->check(CLI::IsMember({"direct", "collapse"}))
      ->capture_default_str();

  // percolate
  auto* percolate = app.add_subcommand("percolate", "run bootstrap percolation on a graph");
  double infect_p = -1.0;
  std::string initial_path;
  std::uint32_t max_rounds = pabp::kNoRoundLimit;
  percolate->add_option("--graph", graph_path, "pa-graph file")->required();
  percolate->add_option("--r", r, "activation threshold")->required();
  percolate->add_option("--p", infect_p, "initial infection probability");
  percolate->add_option("--initial", initial_path, "file with one vertex id per line");
  percolate->add_option("--max-rounds", max_rounds, "stop after this many rounds");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "phase-transition sweep, one CSV row per trial");
  std::string preset = "lambda-grid";
  std::string lambdas = "1";
  int trials = 10;
  sweep->add_option("--t", t, "vertex count")->required();
  sweep->add_option("--m", m, "edges per vertex")->required();
  sweep->add_option("--delta", delta, "attachment offset")->capture_default_str();
  sweep->add_option("--r", r, "activation threshold")->required();
  sweep->add_option("--preset", preset,
                    "lambda-grid | supercritical | subcritical-i | subcritical-ii | "
                    "subcritical-iii | critical")
      ->capture_default_str();
  sweep->add_option("--lambdas", lambdas, "comma-separated lambda grid")->capture_default_str();
  sweep->add_option("--trials", trials, "trials per sweep point")->capture_default_str();

  // summarize
  auto* summarize_cmd = app.add_subcommand("summarize", "aggregate a sweep CSV per point");
  std::string in_path;
  summarize_cmd->add_option("--in", in_path, "sweep CSV path")->required();

  // urn-check
  auto* urn_check = app.add_subcommand("urn-check", "degree/urn coupling report");
  int urn_i = 2;
  std::uint64_t samples = 100000;
  urn_check->add_option("--i", urn_i, "coupled vertex index")->capture_default_str();
  urn_check->add_option("--t", t, "vertex count")->required();
  urn_check->add_option("--m", m, "edges per vertex")->capture_default_str();
  urn_check->add_option("--delta", delta, "attachment offset")->capture_default_str();
  urn_check->add_option("--samples", samples, "number of graphs")->capture_default_str();

  // degree-stats
  auto* degree_cmd = app.add_subcommand("degree-stats", "degree histogram, ccdf and fits");
  std::uint32_t dmin = 10;
  std::string probes_arg;
  int fit_trials = 0;
  degree_cmd->add_option("--graph", graph_path, "pa-graph file (otherwise grown fresh)");
  degree_cmd->add_option("--t", t, "vertex count");
  degree_cmd->add_option("--m", m, "edges per vertex");
  degree_cmd->add_option("--delta", delta, "attachment offset");
  degree_cmd->add_option("--dmin", dmin, "power-law fit cutoff")->capture_default_str();
  degree_cmd->add_option("--probes", probes_arg, "comma-separated probe indices for gamma fit");
  degree_cmd->add_option("--fit-trials", fit_trials, "trials for the gamma scaling fit");

  // witness-count
  auto* witness_cmd = app.add_subcommand("witness-count", "depth-1 witness tree counts");
  double witness_p = 0.01;
  witness_cmd->add_option("--graph", graph_path, "pa-graph file (otherwise grown fresh)");
  witness_cmd->add_option("--t", t, "vertex count");
  witness_cmd->add_option("--m", m, "edges per vertex");
  witness_cmd->add_option("--delta", delta, "attachment offset");
  witness_cmd->add_option("--r", r, "activation threshold")->required();
  witness_cmd->add_option("--p", witness_p, "initial infection probability")->required();

  // weight-fn
  auto* weight_cmd = app.add_subcommand("weight-fn", "evaluate a witness-tree weight function");
  std::string tree_path;
  double omega = 2.0;
  double gamma_arg = 0.5;
  bool bound_check = false;
  weight_cmd->add_option("--tree", tree_path, "witness tree spec file")->required();
  weight_cmd->add_option("--t", t, "table size")->required();
  weight_cmd->add_option("--omega", omega, "omega in p = 1/(omega t^gamma)")->required();
  weight_cmd->add_option("--gamma", gamma_arg, "gamma exponent")->required();
  weight_cmd->add_flag("--bound-check", bound_check, "also report the bound-shape ratios");

  // census
  auto* census_cmd = app.add_subcommand("census", "self-loop / parallel-edge / cycle census");
  int max_cycle_len = 4;
  census_cmd->add_option("--graph", graph_path, "pa-graph file (otherwise grown fresh)");
  census_cmd->add_option("--t", t, "vertex count");
  census_cmd->add_option("--m", m, "edges per vertex");
  census_cmd->add_option("--delta", delta, "attachment offset");
  census_cmd->add_option("--max-cycle-len", max_cycle_len, "count cycles up to this length (<= 8)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      const pabp::PAGraph g = build_or_load("", t, m, delta, seed, construction);
      OutStream out(out_path);
      pabp::save_graph(g, out.get());
    } else if (*percolate) {
      const pabp::PAGraph g = pabp::load_graph(graph_path);
      std::vector<pabp::VertexId> initial;
      if (!initial_path.empty()) {
        initial = pabp::load_initial_set(initial_path);
      } else if (infect_p >= 0.0) {
        pabp::RngStream rng(seed, 1);
        initial = pabp::seed_infection(g.graph.vertex_count(), infect_p, rng);
      } else {
        throw std::invalid_argument("percolate needs --p or --initial");
      }
      const pabp::PercolationResult result = pabp::run(g.graph, r, initial, max_rounds);
      pabp::TrialResult row;
      row.t = g.graph.vertex_count();
      row.m = g.params.m;
      row.delta = g.params.delta;
      row.r = r;
      row.a = static_cast<double>(result.initial_count);
      row.lambda = row.a / std::pow(static_cast<double>(row.t), 1.0 - g.params.gamma);
      row.trial = 0;
      row.seed = seed;
      row.i0 = result.initial_count;
      row.i_f = result.final_count;
      row.rounds = result.rounds;
      row.full = result.full_infection;
      OutStream out(out_path);
      pabp::write_sweep_csv({&row, 1}, out.get());
    } else if (*sweep) {
      pabp::SweepConfig config;
      config.t = t;
      config.m = m;
      config.delta = delta;
      config.r = r;
      config.preset = pabp::parse_preset(preset);
      config.lambdas = parse_doubles(lambdas);
      config.trials = trials;
      config.base_seed = seed;
      config.threads = threads;
      const auto rows = pabp::run_sweep(config);
      OutStream out(out_path);
      pabp::write_sweep_csv(rows, out.get());
    } else if (*summarize_cmd) {
      std::ifstream in(in_path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open " + in_path);
      const auto summary = pabp::summarize(in);
      OutStream out(out_path);
      pabp::write_summary(summary, out.get());
    } else if (*urn_check) {
      const pabp::Params params = pabp::make_params(m, delta);
      const pabp::RngStream rng(seed, 2);
      const pabp::CouplingReport report =
          pabp::coupling_check(params, urn_i, t, samples, rng, threads);
      OutStream out(out_path);
      pabp::write_coupling_csv(report, out.get());
      std::cerr << "max qualified TV distance: " << report.max_qualified_tv << '\n';
    } else if (*degree_cmd) {
      const pabp::PAGraph g = build_or_load(graph_path, t, m, delta, seed, "direct");
      const pabp::DegreeStats stats = pabp::degree_stats(g.graph);
      OutStream out(out_path);
      out.get() << "degree,count,ccdf\n";
      for (std::size_t d = 0; d < stats.histogram.size(); ++d) {
        if (stats.histogram[d] == 0) continue;
        out.get() << d << ',' << stats.histogram[d] << ',' << stats.ccdf[d] << '\n';
      }
      try {
        std::cerr << "power-law exponent (dmin=" << dmin
                  << "): " << pabp::estimate_power_law_exponent(stats, dmin) << '\n';
      } catch (const pabp::InsufficientDataError& e) {
        std::cerr << "power-law exponent: " << e.what() << '\n';
      }
      if (!probes_arg.empty() && fit_trials > 0) {
        const auto probes = parse_vertices(probes_arg);
        const pabp::ScalingFit fit =
            pabp::gamma_scaling_fit(g.params, g.graph.vertex_count(), probes, fit_trials,
                                    pabp::RngStream(seed, 3), threads);
        std::cerr << "gamma fit: slope " << fit.slope << " intercept " << fit.intercept
                  << " (gamma = " << g.params.gamma << ")\n";
      }
    } else if (*witness_cmd) {
      const pabp::PAGraph g = build_or_load(graph_path, t, m, delta, seed, "direct");
      pabp::RngStream rng(seed, 4);
      const auto initial = pabp::seed_infection(g.graph.vertex_count(), witness_p, rng);
      std::vector<std::uint8_t> infected(g.graph.vertex_count() + 1, 0);
      for (pabp::VertexId v : initial) infected[v] = 1;
      const auto counts = pabp::count_depth1_witness_trees(g.graph, infected, r);
      std::uint64_t total = 0, roots = 0;
      OutStream out(out_path);
      out.get() << "vertex,count\n";
      for (pabp::VertexId v = 1; v <= g.graph.vertex_count(); ++v) {
        if (counts[v] == 0) continue;
        total += counts[v];
        ++roots;
        out.get() << v << ',' << counts[v] << '\n';
      }
      std::cerr << "depth-1 witness trees: total " << total << " across " << roots
                << " roots, |I_0| = " << initial.size() << '\n';
    } else if (*weight_cmd) {
      const pabp::WitnessTreeSpec spec = pabp::load_witness_spec(tree_path);
      const auto f0 = pabp::weight_f(spec, t, omega, gamma_arg);
      OutStream out(out_path);
      out.get() << "i,f0\n";
      char buf[64];
      for (pabp::VertexId i = 1; i <= t; ++i) {
        std::snprintf(buf, sizeof(buf), "%u,%.17g\n", i, f0[i]);
        out.get() << buf;
      }
      if (bound_check) {
        const auto report = pabp::check_weight_bound(spec, t, omega, gamma_arg);
        std::cerr << "ledger: ell " << report.ledger.ell << " rho' " << report.ledger.rho_prime
                  << " y = " << report.ledger.A << " g + " << report.ledger.B
                  << " (1-g) = " << report.ledger.y << "\nmax ratio " << report.max_ratio
                  << " at i = " << report.argmax << ", ratio(1) " << report.ratio_at_1
                  << ", ratio(t) " << report.ratio_at_t << '\n';
      }
    } else if (*census_cmd) {
      const pabp::PAGraph g = build_or_load(graph_path, t, m, delta, seed, "direct");
      const pabp::StructureCensus census = pabp::structure_census(g.graph, max_cycle_len);
      OutStream out(out_path);
      out.get() << "metric,value\n";
      out.get() << "self_loops," << census.self_loop_count << '\n';
      out.get() << "vertices_with_two_plus_self_loops,"
                << census.vertices_with_two_plus_self_loops << '\n';
      out.get() << "parallel_pairs," << census.parallel_pair_count << '\n';
      for (std::size_t k = 2; k < census.cycles_by_length.size(); ++k) {
        out.get() << "cycles_len_" << k << ',' << census.cycles_by_length[k] << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
