#pragma once

#include "pabp/multigraph.hpp"
#include "pabp/params.hpp"
#include "pabp/rng.hpp"

namespace pabp {

/// Preferential-attachment graph: a multigraph plus the (m, delta) it was
/// grown with. For every PA graph: edge count = m t, total degree = 2 m t,
/// and degree(i) >= m for all i.
struct PAGraph {
  Params params;
  Multigraph graph;
};

/// Attachment sampler backend. Both sample against the same exact
/// cumulative-weight values, so the two kinds are draw-for-draw identical
/// under a shared RngStream; `indexed` is O(log t) per draw and is the
/// default, `linear` is the O(t) reference scan.
enum class SamplerKind { linear, indexed };

/// PA_t(1, delta) by the sequential rule: the new vertex self-loops with
/// probability (1+delta)/(t(2+delta)+(1+delta)), else attaches to i with
/// probability (D_i(t)+delta)/(t(2+delta)+(1+delta)). Starts from a single
/// vertex with one self-loop. Requires delta > -1.
PAGraph grow_pa1(VertexId t, double delta, RngStream& rng,
                 SamplerKind kind = SamplerKind::indexed);

/// PA_t(m, delta) by the direct construction: time step t is split into m
/// sub-steps, the j-th edge attaching to the new vertex itself with weight
/// D_t(t,j-1)+1+j delta/m and to an old vertex i with weight D_i(t,j-1)+delta,
/// both against denominator (2m+delta)(t-1)+2j-1+j delta/m. Starts from a
/// single vertex with m self-loops.
PAGraph grow_pam_direct(VertexId t, const Params& params, RngStream& rng,
                        SamplerKind kind = SamplerKind::indexed);

/// Contracts consecutive blocks of m_target vertices of an m = 1 graph into
/// super-vertices; all loops and multiple edges are retained. pa1 must have
/// been grown with offset delta/m_target and a vertex count divisible by
/// m_target. The result is distributed as PA_{t/m_target}(m_target, delta).
PAGraph collapse(const PAGraph& pa1, int m_target);

/// Throws std::logic_error if the PA structural invariants fail.
void check_pa_invariants(const PAGraph& g);

}  // namespace pabp
