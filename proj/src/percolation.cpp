#include "pabp/percolation.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace pabp {

std::vector<VertexId> seed_infection(VertexId t, double p, RngStream& rng) {
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("infection probability must lie in [0, 1]");
  }
  std::vector<VertexId> out;
  if (p == 0.0) return out;
  for (VertexId v = 1; v <= t; ++v) {
    if (rng.next_bernoulli(p)) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> load_initial_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open initial set " + path);
  std::vector<VertexId> out;
  std::uint64_t v;
  while (in >> v) out.push_back(static_cast<VertexId>(v));
  if (!in.eof()) throw std::runtime_error("unparsable vertex id in " + path);
  return out;
}

std::uint32_t infected_incident_edges(const Multigraph& g, VertexId v,
                                      const std::vector<std::uint8_t>& infected) {
  std::uint32_t count = 0;
  for (VertexId u : g.neighbors(v)) {
    if (u != v && infected[u]) ++count;
  }
  return count;
}

PercolationResult run(const Multigraph& g, int r, std::span<const VertexId> initial,
                      InfectionState& state, std::uint32_t max_rounds) {
  if (r < 2) throw std::invalid_argument("activation threshold r must be >= 2");
  const VertexId t = g.vertex_count();

  state.infected.assign(t + 1, 0);
  state.round_infected.assign(t + 1, -1);
  state.rounds = 0;

  PercolationResult result;
  std::vector<VertexId> frontier;
  frontier.reserve(initial.size());
  for (VertexId v : initial) {
    if (v < 1 || v > t) throw std::invalid_argument("initial vertex out of range");
    if (!state.infected[v]) {
      state.infected[v] = 1;
      state.round_infected[v] = 0;
      frontier.push_back(v);
    }
  }
  result.initial_count = static_cast<std::uint32_t>(frontier.size());
  result.final_count = result.initial_count;

  // Frontier sweep: each round only the neighbors of newly infected vertices
  // are re-examined, against a running infected-edge counter.
  std::vector<std::uint32_t> count(t + 1, 0);
  std::vector<VertexId> next;
  std::uint32_t round = 0;
  while (!frontier.empty() && round < max_rounds) {
    ++round;
    next.clear();
    for (VertexId v : frontier) {
      for (VertexId u : g.neighbors(v)) {
        if (u == v || state.infected[u]) continue;
        if (++count[u] == static_cast<std::uint32_t>(r)) {
          next.push_back(u);
        }
      }
    }
    if (next.empty()) break;
    for (VertexId u : next) {
      state.infected[u] = 1;
      state.round_infected[u] = static_cast<std::int32_t>(round);
    }
    result.newly_infected_per_round.push_back(static_cast<std::uint32_t>(next.size()));
    result.final_count += static_cast<std::uint32_t>(next.size());
    frontier.swap(next);
    state.rounds = round;
  }

  result.rounds = state.rounds;
  result.full_infection = result.final_count == t;

  // Folklore bound, exact in integers: (|I_f| - |I_0|) r <= m |I_f| whenever
  // every vertex throws at most m < r edges.
  const std::uint64_t m = g.max_out_degree();
  if (static_cast<std::uint64_t>(r) > m) {
    const std::uint64_t lhs = static_cast<std::uint64_t>(result.final_count) * (r - m);
    const std::uint64_t rhs = static_cast<std::uint64_t>(r) * result.initial_count;
    if (lhs > rhs) {
      throw std::logic_error("folklore bound violated: |I_f|(r-m) > r|I_0|");
    }
  }
  return result;
}

PercolationResult run(const Multigraph& g, int r, std::span<const VertexId> initial,
                      std::uint32_t max_rounds) {
  InfectionState state;
  return run(g, r, initial, state, max_rounds);
}

}  // namespace pabp
