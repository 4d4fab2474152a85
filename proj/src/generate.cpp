#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "pabp/graph.hpp"

namespace pabp {

namespace {

// Attachment weights are affine in delta: position p carries the exact
// integer pair (k_p, l_p) meaning weight k_p + l_p * lam. Prefix sums of the
// pairs are exact, so both sampler backends evaluate identical doubles and
// select identical positions for the same uniform draw. (The library is
// compiled with fp-contract off, so this expression rounds the same way at
// every call site.)
inline double affine_weight(std::int64_t k, std::int64_t l, double lam) {
  const double dl = static_cast<double>(l) * lam;
  return static_cast<double>(k) + dl;
}

class WeightIndex {
 public:
  WeightIndex(std::size_t capacity, double lam) : cap_(capacity), lam_(lam) {}
  virtual ~WeightIndex() = default;

  virtual void add(std::size_t pos, std::int64_t dk, std::int64_t dl) = 0;

  // Smallest position whose cumulative weight exceeds x.
  virtual std::size_t find(double x) const = 0;

  double total_weight() const { return affine_weight(total_k_, total_l_, lam_); }

 protected:
  std::size_t cap_;
  double lam_;
  std::int64_t total_k_ = 0;
  std::int64_t total_l_ = 0;
};

class LinearWeightIndex final : public WeightIndex {
 public:
  LinearWeightIndex(std::size_t capacity, double lam)
      : WeightIndex(capacity, lam), k_(capacity + 1, 0), l_(capacity + 1, 0) {}

  void add(std::size_t pos, std::int64_t dk, std::int64_t dl) override {
    k_[pos] += dk;
    l_[pos] += dl;
    total_k_ += dk;
    total_l_ += dl;
  }

  std::size_t find(double x) const override {
    std::int64_t acc_k = 0, acc_l = 0;
    for (std::size_t pos = 1; pos <= cap_; ++pos) {
      acc_k += k_[pos];
      acc_l += l_[pos];
      if (x < affine_weight(acc_k, acc_l, lam_)) return pos;
    }
    return cap_;
  }

 private:
  std::vector<std::int64_t> k_, l_;
};

// Fenwick tree over the weight pairs; prefix-search descent.
class FenwickWeightIndex final : public WeightIndex {
 public:
  FenwickWeightIndex(std::size_t capacity, double lam)
      : WeightIndex(capacity, lam), k_(capacity + 1, 0), l_(capacity + 1, 0) {
    top_bit_ = 1;
    while ((top_bit_ << 1) <= cap_) top_bit_ <<= 1;
  }

  void add(std::size_t pos, std::int64_t dk, std::int64_t dl) override {
    for (std::size_t p = pos; p <= cap_; p += p & (~p + 1)) {
      k_[p] += dk;
      l_[p] += dl;
    }
    total_k_ += dk;
    total_l_ += dl;
  }

  std::size_t find(double x) const override {
    std::size_t pos = 0;
    std::int64_t acc_k = 0, acc_l = 0;
    for (std::size_t bit = top_bit_; bit != 0; bit >>= 1) {
      const std::size_t next = pos + bit;
      if (next > cap_) continue;
      const std::int64_t ck = acc_k + k_[next];
      const std::int64_t cl = acc_l + l_[next];
      if (affine_weight(ck, cl, lam_) <= x) {
        pos = next;
        acc_k = ck;
        acc_l = cl;
      }
    }
    return pos + 1 <= cap_ ? pos + 1 : cap_;
  }

 private:
  std::vector<std::int64_t> k_, l_;
  std::size_t top_bit_;
};

std::unique_ptr<WeightIndex> make_index(SamplerKind kind, std::size_t capacity, double lam) {
  if (kind == SamplerKind::linear) {
    return std::make_unique<LinearWeightIndex>(capacity, lam);
  }
  return std::make_unique<FenwickWeightIndex>(capacity, lam);
}

VertexId draw(const WeightIndex& index, RngStream& rng, VertexId active) {
  const double x = rng.next_double() * index.total_weight();
  const std::size_t pos = index.find(x);
  return pos <= active ? static_cast<VertexId>(pos) : active;
}

}  // namespace

PAGraph grow_pa1(VertexId t, double delta, RngStream& rng, SamplerKind kind) {
  const Params params = make_params(1, delta);
  if (t < 1) throw std::invalid_argument("t must be >= 1");

  std::vector<Edge> edges;
  edges.reserve(t);
  edges.push_back({1, 1});

  auto index = make_index(kind, t, delta);
  index->add(1, 2, 1);  // D_1 = 2 after the initial self-loop

  for (VertexId v = 2; v <= t; ++v) {
    index->add(v, 1, 1);  // the incoming vertex has weight 1 + delta
    const VertexId g = draw(*index, rng, v);
    edges.push_back({v, g});
    if (g == v) {
      index->add(v, 1, 0);  // self-loop: degree 1 -> 2
    } else {
      index->add(g, 1, 0);
    }
  }
  return PAGraph{params, Multigraph(t, std::move(edges))};
}

PAGraph grow_pam_direct(VertexId t, const Params& params, RngStream& rng, SamplerKind kind) {
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  const int m = params.m;
  const double lam = params.delta / m;

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(t) * m);
  for (int j = 0; j < m; ++j) edges.push_back({1, 1});

  auto index = make_index(kind, t, lam);
  index->add(1, 2 * m, m);

  for (VertexId v = 2; v <= t; ++v) {
    // Old vertices i carry (D_i, m) = D_i + delta; the incoming vertex at
    // sub-step j carries (D_v(v, j-1) + 1, j) = D_v + 1 + j delta/m.
    index->add(v, 1, 1);
    for (int j = 1; j <= m; ++j) {
      const VertexId g = draw(*index, rng, v);
      edges.push_back({v, g});
      if (g == v) {
        index->add(v, 2, 1);
      } else {
        index->add(g, 1, 0);
        index->add(v, 1, 1);
      }
    }
    index->add(v, -1, -1);  // retire to the old-vertex weight (D_v, m)
  }
  return PAGraph{params, Multigraph(t, std::move(edges))};
}

PAGraph collapse(const PAGraph& pa1, int m_target) {
  if (pa1.params.m != 1) {
    throw std::invalid_argument("collapse expects an m = 1 graph");
  }
  if (m_target < 1) throw std::invalid_argument("m_target must be >= 1");
  const VertexId t1 = pa1.graph.vertex_count();
  if (t1 % static_cast<VertexId>(m_target) != 0) {
    throw std::invalid_argument("vertex count not divisible by m_target");
  }
  const Params params = make_params(m_target, pa1.params.delta * m_target);

  const auto block = [m_target](VertexId v) {
    return static_cast<VertexId>((v - 1) / m_target + 1);
  };
  std::vector<Edge> edges;
  edges.reserve(pa1.graph.edge_count());
  for (const Edge& e : pa1.graph.edges()) {
    edges.push_back({block(e.source), block(e.target)});
  }
  return PAGraph{params, Multigraph(t1 / m_target, std::move(edges))};
}

void check_pa_invariants(const PAGraph& g) {
  const auto t = static_cast<std::uint64_t>(g.graph.vertex_count());
  const auto m = static_cast<std::uint64_t>(g.params.m);
  if (g.graph.edge_count() != m * t) {
    throw std::logic_error("PA invariant violated: edge count != m t");
  }
  if (g.graph.prefix_degree_sum(g.graph.vertex_count()) != 2 * m * t) {
    throw std::logic_error("PA invariant violated: total degree != 2 m t");
  }
  if (g.graph.min_degree() < m) {
    throw std::logic_error("PA invariant violated: degree below m");
  }
}

}  // namespace pabp
