#include "pabp/witness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pabp {

int compute_d0(double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw std::invalid_argument("compute_d0 requires gamma in (0, 1)");
  }
  int d = static_cast<int>(std::floor(1.0 / gamma)) + 1;
  while (d > 1 && (d - 1) * gamma > 1.0) --d;
  while (d * gamma <= 1.0) ++d;
  return d;
}

std::vector<std::vector<int>> WitnessTreeSpec::children() const {
  std::vector<std::vector<int>> out(nodes.size());
  for (std::size_t a = 1; a < nodes.size(); ++a) {
    out[nodes[a].parent].push_back(static_cast<int>(a));
  }
  return out;
}

int WitnessTreeSpec::depth() const {
  int deepest = 0;
  std::vector<int> depth(nodes.size(), 0);
  for (std::size_t a = 1; a < nodes.size(); ++a) {
    depth[a] = depth[nodes[a].parent] + 1;  // parents precede children
    deepest = std::max(deepest, depth[a]);
  }
  return deepest;
}

void validate_witness_spec(const WitnessTreeSpec& spec) {
  if (spec.r < 2) throw std::invalid_argument("witness spec: r must be >= 2");
  if (spec.nodes.empty()) throw std::invalid_argument("witness spec: no nodes");
  if (spec.nodes[0].parent != -1) throw std::invalid_argument("witness spec: node 0 must be root");
  for (std::size_t a = 1; a < spec.nodes.size(); ++a) {
    const int p = spec.nodes[a].parent;
    if (p < 0 || static_cast<std::size_t>(p) >= a) {
      throw std::invalid_argument("witness spec: parents must precede children");
    }
  }
  const auto kids = spec.children();
  for (std::size_t a = 0; a < spec.nodes.size(); ++a) {
    const WitnessNode& node = spec.nodes[a];
    const int c = static_cast<int>(kids[a].size());
    switch (node.kind) {
      case ValuationKind::trivial:
        if (c != spec.r) {
          throw std::invalid_argument(
              "witness spec: trivial-valuation node must have exactly r children");
        }
        break;
      case ValuationKind::original_leaf:
        if (c != 0) throw std::invalid_argument("witness spec: original leaf cannot have children");
        break;
      case ValuationKind::contraction:
        if (node.rho < 0 || node.A < 0 || node.B < 0) {
          throw std::invalid_argument("witness spec: contraction exponents must be nonnegative");
        }
        if (node.A + node.B == 0) {
          throw std::invalid_argument("witness spec: contraction needs a positive exponent");
        }
        if (c + node.A + node.B < spec.r) {
          throw std::invalid_argument("witness spec: Property (A) violated: c + A + B < r");
        }
        break;
    }
  }
}

void validate_witness_spec(const WitnessTreeSpec& spec, double gamma) {
  validate_witness_spec(spec);
  const int d0 = compute_d0(gamma);
  if (spec.depth() > d0 + 1) {
    throw std::invalid_argument("witness spec: depth exceeds d0 + 1");
  }
}

WitnessTreeSpec parse_witness_spec(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("witness spec: empty input");
  WitnessTreeSpec spec;
  {
    std::istringstream header(line);
    std::string magic, version, rfield;
    header >> magic >> version >> rfield;
    if (magic != "witness-tree" || version != "v1" || rfield.rfind("r=", 0) != 0) {
      throw std::runtime_error("witness spec: malformed header '" + line + "'");
    }
    spec.r = std::stoi(rfield.substr(2));
  }
  std::vector<int> declared_children;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int id, parent, childcount;
    std::string updown, kind;
    if (!(row >> id >> parent >> updown >> childcount >> kind)) {
      throw std::runtime_error("witness spec: bad node line '" + line + "'");
    }
    if (id != static_cast<int>(spec.nodes.size())) {
      throw std::runtime_error("witness spec: node ids must be consecutive from 0");
    }
    WitnessNode node;
    node.parent = parent;
    if (updown == "up") {
      node.dir = EdgeDir::up;
    } else if (updown == "down") {
      node.dir = EdgeDir::down;
    } else if (updown == "-" && parent == -1) {
      node.dir = EdgeDir::up;
    } else {
      throw std::runtime_error("witness spec: bad orientation '" + updown + "'");
    }
    if (kind == "trivial") {
      node.kind = ValuationKind::trivial;
    } else if (kind == "leaf") {
      node.kind = ValuationKind::original_leaf;
    } else if (kind == "contraction") {
      node.kind = ValuationKind::contraction;
      if (!(row >> node.rho >> node.A >> node.B)) {
        throw std::runtime_error("witness spec: contraction needs rho A B");
      }
    } else {
      throw std::runtime_error("witness spec: bad valuation '" + kind + "'");
    }
    spec.nodes.push_back(node);
    declared_children.push_back(childcount);
  }
  validate_witness_spec(spec);
  const auto kids = spec.children();
  for (std::size_t a = 0; a < spec.nodes.size(); ++a) {
    if (declared_children[a] != static_cast<int>(kids[a].size())) {
      throw std::runtime_error("witness spec: declared childcount mismatch at node " +
                               std::to_string(a));
    }
  }
  return spec;
}

WitnessTreeSpec load_witness_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_witness_spec(in);
}

void write_witness_spec(const WitnessTreeSpec& spec, std::ostream& out) {
  out << "witness-tree v1 r=" << spec.r << '\n';
  const auto kids = spec.children();
  for (std::size_t a = 0; a < spec.nodes.size(); ++a) {
    const WitnessNode& node = spec.nodes[a];
    out << a << ' ' << node.parent << ' ';
    if (node.parent == -1) {
      out << '-';
    } else {
      out << (node.dir == EdgeDir::up ? "up" : "down");
    }
    out << ' ' << kids[a].size() << ' ';
    switch (node.kind) {
      case ValuationKind::trivial:
        out << "trivial";
        break;
      case ValuationKind::original_leaf:
        out << "leaf";
        break;
      case ValuationKind::contraction:
        out << "contraction " << node.rho << ' ' << node.A << ' ' << node.B;
        break;
    }
    out << '\n';
  }
}

std::vector<std::uint64_t> count_depth1_witness_trees(const Multigraph& g,
                                                      const std::vector<std::uint8_t>& infected,
                                                      int r) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  const VertexId t = g.vertex_count();
  std::vector<std::uint64_t> counts(t + 1, 0);
  std::vector<VertexId> nbrs;
  std::vector<std::uint64_t> esym;
  for (VertexId v = 1; v <= t; ++v) {
    if (infected[v]) continue;
    auto span = g.neighbors(v);
    nbrs.assign(span.begin(), span.end());
    std::sort(nbrs.begin(), nbrs.end());
    // Elementary symmetric polynomial e_r over the multiplicities of the
    // distinct infected neighbors: r distinct leaves, one edge each.
    esym.assign(static_cast<std::size_t>(r) + 1, 0);
    esym[0] = 1;
    for (std::size_t k = 0; k < nbrs.size();) {
      std::size_t e = k;
      while (e < nbrs.size() && nbrs[e] == nbrs[k]) ++e;
      if (nbrs[k] != v && infected[nbrs[k]]) {
        const std::uint64_t mult = e - k;
        for (int s = r; s >= 1; --s) esym[s] += esym[s - 1] * mult;
      }
      k = e;
    }
    counts[v] = esym[static_cast<std::size_t>(r)];
  }
  return counts;
}

WitnessStructure find_witness_structure(const Multigraph& g,
                                        const std::vector<std::uint8_t>& initial,
                                        const InfectionState& state, VertexId v, int r) {
  if (v < 1 || v > g.vertex_count()) throw std::invalid_argument("vertex out of range");
  if (!state.infected[v] || initial[v] || state.round_infected[v] < 1) {
    throw std::invalid_argument("witness structure requires a vertex infected at round >= 1");
  }

  WitnessStructure s;
  s.root = v;
  std::map<VertexId, int> slot;
  const auto add_vertex = [&](VertexId u) {
    auto [it, fresh] = slot.insert({u, static_cast<int>(s.vertices.size())});
    if (fresh) s.vertices.push_back(u);
    return fresh;
  };
  add_vertex(v);

  std::vector<VertexId> queue{v};
  std::vector<VertexId> candidates;
  while (!queue.empty()) {
    const VertexId u = queue.back();
    queue.pop_back();
    const std::int32_t round = state.round_infected[u];
    candidates.clear();
    for (VertexId w : g.neighbors(u)) {
      if (w != u && state.infected[w] && state.round_infected[w] < round) {
        candidates.push_back(w);
      }
    }
    if (candidates.size() < static_cast<std::size_t>(r)) {
      throw std::logic_error("percolation trace inconsistent with threshold r");
    }
    // Smallest-vertex-id-first tie break; any valid witness suffices.
    std::sort(candidates.begin(), candidates.end());
    for (int k = 0; k < r; ++k) {
      const VertexId w = candidates[k];
      s.edges.push_back({u, w});
      if (add_vertex(w) && !initial[w]) queue.push_back(w);
    }
  }

  // Depth by longest parent chain; rounds strictly decrease along edges, so
  // processing vertices in decreasing round order settles children last.
  s.depth.assign(s.vertices.size(), 0);
  std::vector<int> order(s.vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return state.round_infected[s.vertices[x]] > state.round_infected[s.vertices[y]];
  });
  std::vector<std::vector<int>> child_slots(s.vertices.size());
  for (const auto& [p, c] : s.edges) child_slots[slot[p]].push_back(slot[c]);
  for (int u : order) {
    for (int c : child_slots[u]) s.depth[c] = std::max(s.depth[c], s.depth[u] + 1);
  }
  for (VertexId u : s.vertices) {
    if (initial[u]) s.leaves.push_back(u);
  }
  return s;
}

bool validate_witness_structure(const Multigraph& g, const std::vector<std::uint8_t>& initial,
                                const InfectionState& state, const WitnessStructure& s, int r,
                                std::string* why) {
  const auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (s.vertices.empty() || s.vertices.front() != s.root) return fail("root missing");
  if (initial[s.root] || !state.infected[s.root]) return fail("root must be infected in round >= 1");

  std::map<VertexId, int> slot;
  for (std::size_t k = 0; k < s.vertices.size(); ++k) {
    if (!slot.insert({s.vertices[k], static_cast<int>(k)}).second) {
      return fail("duplicate vertex");
    }
    if (!state.infected[s.vertices[k]]) return fail("structure contains a susceptible vertex");
  }

  // Edge multiset must be realizable in the graph.
  std::map<std::pair<VertexId, VertexId>, std::uint32_t> used;
  std::vector<std::uint32_t> child_edges(s.vertices.size(), 0);
  std::vector<std::uint32_t> parent_edges(s.vertices.size(), 0);
  for (const auto& [p, c] : s.edges) {
    if (!slot.count(p) || !slot.count(c)) return fail("edge endpoint outside structure");
    if (p == c) return fail("self-loop in structure");
    if (state.round_infected[c] >= state.round_infected[p]) {
      return fail("child not infected strictly earlier than parent");
    }
    ++child_edges[slot[p]];
    ++parent_edges[slot[c]];
    ++used[{std::min(p, c), std::max(p, c)}];
  }
  for (const auto& [pair, count] : used) {
    std::uint32_t mult = 0;
    for (VertexId w : g.neighbors(pair.first)) mult += w == pair.second;
    if (count > mult) return fail("edge multiplicity exceeds the graph");
  }

  // (1) every non-root vertex has a parent; (3) parents have exactly r
  // child-edges and leaves (I_0 members) have none.
  for (std::size_t k = 0; k < s.vertices.size(); ++k) {
    const VertexId u = s.vertices[k];
    if (u != s.root && parent_edges[k] == 0) return fail("non-root vertex without a parent");
    if (initial[u]) {
      if (child_edges[k] != 0) return fail("leaf acting as a parent");
    } else if (child_edges[k] != static_cast<std::uint32_t>(r)) {
      return fail("parent without exactly r child-edges");
    }
  }

  // (2) nonempty leaf set, consistent with I_0.
  std::size_t leaf_count = 0;
  for (VertexId u : s.vertices) leaf_count += initial[u] ? 1 : 0;
  if (leaf_count == 0) return fail("no leaves in I_0");
  if (leaf_count != s.leaves.size()) return fail("leaf list inconsistent");

  // (4) parent-chain depth equals the root's infection round.
  std::vector<int> depth(s.vertices.size(), 0);
  std::vector<int> order(s.vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return state.round_infected[s.vertices[x]] > state.round_infected[s.vertices[y]];
  });
  std::vector<std::vector<int>> child_slots(s.vertices.size());
  for (const auto& [p, c] : s.edges) child_slots[slot[p]].push_back(slot[c]);
  for (int u : order) {
    for (int c : child_slots[u]) depth[c] = std::max(depth[c], depth[u] + 1);
  }
  const int max_depth = *std::max_element(depth.begin(), depth.end());
  if (max_depth != state.round_infected[s.root]) {
    return fail("structure depth differs from the root's infection round");
  }
  return true;
}

std::vector<double> weight_f(const WitnessTreeSpec& spec, VertexId t, double omega,
                             double gamma) {
  validate_witness_spec(spec, gamma);
  if (t < 1 || t > 1000000) throw std::invalid_argument("weight_f: t must lie in [1, 1e6]");
  if (!(omega > 0.0)) throw std::invalid_argument("weight_f: omega must be positive");

  const auto kids = spec.children();
  const double p0 = 1.0 / (omega * std::pow(static_cast<double>(t), gamma));

  std::vector<double> inv_g(t + 1), inv_1mg(t + 1);
  for (VertexId j = 1; j <= t; ++j) {
    inv_g[j] = std::pow(static_cast<double>(j), -gamma);
    inv_1mg[j] = std::pow(static_cast<double>(j), -(1.0 - gamma));
  }

  std::vector<std::vector<double>> f(spec.nodes.size());
  for (int a = static_cast<int>(spec.nodes.size()) - 1; a >= 0; --a) {
    const WitnessNode& node = spec.nodes[a];
    std::vector<double>& fa = f[a];
    fa.assign(t + 1, 0.0);
    switch (node.kind) {
      case ValuationKind::original_leaf:
        for (VertexId j = 1; j <= t; ++j) fa[j] = p0;
        break;
      case ValuationKind::trivial:
        for (VertexId j = 1; j <= t; ++j) fa[j] = 1.0;
        break;
      case ValuationKind::contraction: {
        const double e = node.A * gamma + node.B * (1.0 - gamma);
        for (VertexId j = 1; j <= t; ++j) {
          const double logs =
              node.rho == 0 ? 1.0 : std::pow(std::log(static_cast<double>(j)), node.rho);
          fa[j] = logs * std::pow(static_cast<double>(j), -e);
        }
        break;
      }
    }
    for (int c : kids[a]) {
      const std::vector<double>& fc = f[c];
      if (spec.nodes[c].dir == EdgeDir::up) {
        // suffix sums: sum_{j' > j} f_c(j') / j'^(1-g), factor j^-g at a
        double acc = 0.0;
        for (VertexId j = t; j >= 1; --j) {
          fa[j] *= acc * inv_g[j];
          acc += fc[j] * inv_1mg[j];
        }
      } else {
        // prefix sums: sum_{j' < j} f_c(j') / j'^g, factor j^-(1-g) at a
        double acc = 0.0;
        for (VertexId j = 1; j <= t; ++j) {
          fa[j] *= acc * inv_1mg[j];
          acc += fc[j] * inv_g[j];
        }
      }
      f[c] = std::vector<double>();  // release child storage
    }
  }
  return f[0];
}

namespace {

ExponentLedger ledger_node(const WitnessTreeSpec& spec,
                           const std::vector<std::vector<int>>& kids, int a, double gamma) {
  const WitnessNode& node = spec.nodes[a];
  ExponentLedger led;
  if (node.kind == ValuationKind::original_leaf) {
    led.ell = 1;
    led.sum_form = true;
    return led;
  }
  if (node.kind == ValuationKind::contraction) {
    led.rho_prime = node.rho;
    led.A = node.A;
    led.B = node.B;
  }
  for (int c : kids[a]) {
    const WitnessNode& child = spec.nodes[c];
    const ExponentLedger sub = ledger_node(spec, kids, c, gamma);
    led.ell += sub.ell;
    led.rho_prime += sub.rho_prime + (child.dir == EdgeDir::down ? 1 : 0);
    if (child.kind == ValuationKind::original_leaf) {
      led.A += 1;  // an original leaf contributes 1/omega * j^-gamma
    } else if (child.dir == EdgeDir::up) {
      led.A += sub.A;  // up edges reverse-inherit the child exponent
      led.B += sub.B;
    } else {
      const double yc = sub.A * gamma + sub.B * (1.0 - gamma);
      if (1.0 - gamma > yc) {
        led.A += sub.A;
        led.B += sub.B;
      } else {
        led.B += 1;  // the (log j)^(rho+1) / j^(1-gamma) branch
      }
    }
  }
  led.y = led.A * gamma + led.B * (1.0 - gamma);
  led.sum_form = led.B == 0;
  return led;
}

}  // namespace

ExponentLedger exponent_ledger(const WitnessTreeSpec& spec, int node, double gamma) {
  validate_witness_spec(spec);
  if (node < 0 || static_cast<std::size_t>(node) >= spec.nodes.size()) {
    throw std::invalid_argument("exponent_ledger: node out of range");
  }
  ExponentLedger led = ledger_node(spec, spec.children(), node, gamma);
  led.y = led.A * gamma + led.B * (1.0 - gamma);
  return led;
}

ExponentLedger exponent_ledger(const WitnessTreeSpec& spec, double gamma) {
  return exponent_ledger(spec, 0, gamma);
}

WitnessTreeSpec contract_subtree(const WitnessTreeSpec& spec, int node, double gamma) {
  validate_witness_spec(spec);
  if (node < 1 || static_cast<std::size_t>(node) >= spec.nodes.size()) {
    throw std::invalid_argument("contract_subtree: node must be a non-root node");
  }
  const ExponentLedger led = exponent_ledger(spec, node, gamma);

  // Mark the subtree of `node`.
  std::vector<std::uint8_t> in_subtree(spec.nodes.size(), 0);
  in_subtree[node] = 1;
  for (std::size_t a = static_cast<std::size_t>(node) + 1; a < spec.nodes.size(); ++a) {
    if (in_subtree[spec.nodes[a].parent]) in_subtree[a] = 1;
  }

  WitnessTreeSpec out;
  out.r = spec.r;
  std::vector<int> remap(spec.nodes.size(), -1);
  for (std::size_t a = 0; a < spec.nodes.size(); ++a) {
    if (in_subtree[a] && static_cast<int>(a) != node) continue;
    WitnessNode copy = spec.nodes[a];
    if (static_cast<int>(a) == node) {
      copy.kind = ValuationKind::contraction;
      copy.rho = led.rho_prime;
      copy.A = led.A;
      copy.B = led.B;
    }
    if (copy.parent >= 0) copy.parent = remap[copy.parent];
    remap[a] = static_cast<int>(out.nodes.size());
    out.nodes.push_back(copy);
  }
  validate_witness_spec(out);
  return out;
}

BoundCheckReport check_weight_bound(const WitnessTreeSpec& spec, VertexId t, double omega,
                                    double gamma) {
  BoundCheckReport report;
  report.ledger = exponent_ledger(spec, 0, gamma);
  const std::vector<double> f0 = weight_f(spec, t, omega, gamma);
  const double omega_ell = std::pow(omega, report.ledger.ell);
  for (VertexId i = 1; i <= t; ++i) {
    const double logs = report.ledger.rho_prime == 0
                            ? 1.0
                            : std::max(1.0, std::pow(std::log(static_cast<double>(i)),
                                                     report.ledger.rho_prime));
    const double ratio =
        f0[i] * std::pow(static_cast<double>(i), report.ledger.y) * omega_ell / logs;
    if (i == 1) report.ratio_at_1 = ratio;
    if (i == t) report.ratio_at_t = ratio;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax = i;
    }
  }
  return report;
}

}  // namespace pabp
