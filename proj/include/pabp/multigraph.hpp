#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pabp {

/// Vertex ids are 1-based, matching the [t] convention used throughout.
using VertexId = std::uint32_t;

/// Oriented edge, stored in creation order. source >= target: edges point
/// from the younger vertex to the older one; source == target is a self-loop.
struct Edge {
  VertexId source;
  VertexId target;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Multigraph with a creation-ordered, orientation-carrying edge list.
/// Self-loops and parallel edges are first-class. Immutable once built and
/// safe to share read-only across threads.
class Multigraph {
 public:
  /// Validates orientation (source >= target) and id ranges; degrees,
  /// prefix degree sums and adjacency are derived here once.
  Multigraph(VertexId t, std::vector<Edge> edges);

  VertexId vertex_count() const { return t_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  /// Degree of vertex i; a self-loop contributes 2.
  std::uint32_t degree(VertexId i) const;

  /// S_i = sum of degrees of vertices 1..i. O(1) per query.
  std::uint64_t prefix_degree_sum(VertexId i) const;

  /// Incident edge endpoints of i, with multiplicity; a self-loop is listed
  /// once (while still contributing 2 to degree).
  std::span<const VertexId> neighbors(VertexId i) const;

  std::uint32_t min_degree() const { return min_degree_; }
  std::uint32_t max_degree() const { return max_degree_; }

  /// Largest number of edges thrown by (i.e. with source at) one vertex.
  std::uint32_t max_out_degree() const { return max_out_degree_; }

 private:
  VertexId t_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> degree_;        // [0] unused
  std::vector<std::uint64_t> prefix_sum_;    // prefix_sum_[i] = S_i
  std::vector<std::uint64_t> adj_offset_;    // CSR offsets, [i]..[i+1]
  std::vector<VertexId> adj_;
  std::uint32_t min_degree_ = 0;
  std::uint32_t max_degree_ = 0;
  std::uint32_t max_out_degree_ = 0;

  void check_vertex(VertexId i) const;
};

}  // namespace pabp
