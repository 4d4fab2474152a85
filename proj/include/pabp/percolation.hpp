#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "pabp/multigraph.hpp"
#include "pabp/rng.hpp"

namespace pabp {

/// Per-vertex evolution record of one bootstrap run. round_infected is 0 for
/// initially infected vertices, tau >= 1 for round-tau infections, and -1
/// for vertices that never flip. Index 0 of both vectors is unused.
struct InfectionState {
  std::vector<std::uint8_t> infected;
  std::vector<std::int32_t> round_infected;
  std::uint32_t rounds = 0;
};

struct PercolationResult {
  std::uint32_t initial_count = 0;
  std::uint32_t final_count = 0;
  /// Productive rounds: the largest tau at which a vertex flipped.
  std::uint32_t rounds = 0;
  /// newly_infected_per_round[tau - 1] for tau = 1..rounds.
  std::vector<std::uint32_t> newly_infected_per_round;
  bool full_infection = false;
};

inline constexpr std::uint32_t kNoRoundLimit = std::numeric_limits<std::uint32_t>::max();

/// Each vertex of [t] is included independently with probability p.
std::vector<VertexId> seed_infection(VertexId t, double p, RngStream& rng);

/// Reads one vertex id per line; used for reproducible replays.
std::vector<VertexId> load_initial_set(const std::string& path);

/// Number of edge endpoints at v whose opposite endpoint is an infected
/// vertex other than v. Parallel edges count with multiplicity; self-loops
/// contribute 0. `infected` is indexed by vertex id.
std::uint32_t infected_incident_edges(const Multigraph& g, VertexId v,
                                      const std::vector<std::uint8_t>& infected);

/// Synchronous-round bootstrap percolation with activation threshold r >= 2:
/// round tau infects exactly the susceptible vertices with at least r
/// infected-incident edges w.r.t. I(tau-1); stops at the first round with no
/// new infection (or after max_rounds productive rounds). The folklore bound
/// |I_f| (r - m) <= r |I_0| is verified exactly whenever r exceeds the
/// graph's max out-degree.
PercolationResult run(const Multigraph& g, int r, std::span<const VertexId> initial,
                      std::uint32_t max_rounds = kNoRoundLimit);
PercolationResult run(const Multigraph& g, int r, std::span<const VertexId> initial,
                      InfectionState& state, std::uint32_t max_rounds = kNoRoundLimit);

}  // namespace pabp
