#include "pabp/multigraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pabp {

Multigraph::Multigraph(VertexId t, std::vector<Edge> edges)
    : t_(t), edges_(std::move(edges)) {
  if (t_ < 1) throw std::invalid_argument("multigraph needs at least one vertex");

  degree_.assign(t_ + 1, 0);
  std::vector<std::uint32_t> out_degree(t_ + 1, 0);
  std::vector<std::uint32_t> slots(t_ + 1, 0);
  for (const Edge& e : edges_) {
    if (e.target < 1 || e.source > t_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.source < e.target) {
      throw std::invalid_argument("edge violates source >= target orientation");
    }
    ++out_degree[e.source];
    if (e.source == e.target) {
      degree_[e.source] += 2;
      ++slots[e.source];
    } else {
      ++degree_[e.source];
      ++degree_[e.target];
      ++slots[e.source];
      ++slots[e.target];
    }
  }

  prefix_sum_.assign(t_ + 1, 0);
  for (VertexId i = 1; i <= t_; ++i) {
    prefix_sum_[i] = prefix_sum_[i - 1] + degree_[i];
  }

  adj_offset_.assign(t_ + 2, 0);
  for (VertexId i = 1; i <= t_; ++i) {
    adj_offset_[i + 1] = adj_offset_[i] + slots[i];
  }
  adj_.resize(adj_offset_[t_ + 1]);
  std::vector<std::uint64_t> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[cursor[e.source]++] = e.target;
    if (e.source != e.target) {
      adj_[cursor[e.target]++] = e.source;
    }
  }

  min_degree_ = t_ > 0 ? *std::min_element(degree_.begin() + 1, degree_.end()) : 0;
  max_degree_ = t_ > 0 ? *std::max_element(degree_.begin() + 1, degree_.end()) : 0;
  max_out_degree_ = *std::max_element(out_degree.begin(), out_degree.end());
}

void Multigraph::check_vertex(VertexId i) const {
  if (i < 1 || i > t_) {
    throw std::out_of_range("vertex id " + std::to_string(i) + " not in [1, " +
                            std::to_string(t_) + "]");
  }
}

std::uint32_t Multigraph::degree(VertexId i) const {
  check_vertex(i);
  return degree_[i];
}

std::uint64_t Multigraph::prefix_degree_sum(VertexId i) const {
  check_vertex(i);
  return prefix_sum_[i];
}

std::span<const VertexId> Multigraph::neighbors(VertexId i) const {
  check_vertex(i);
  return {adj_.data() + adj_offset_[i], adj_.data() + adj_offset_[i + 1]};
}

}  // namespace pabp
