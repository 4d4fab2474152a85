#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pabp/multigraph.hpp"
#include "pabp/percolation.hpp"

namespace pabp {

/// Smallest d with d * gamma > 1 (strict); the maximum witness depth the
/// subcritical analysis needs. Requires 0 < gamma < 1.
int compute_d0(double gamma);

/// Orientation of a tree edge: an up edge has the child younger (larger
/// vertex id) than the parent, a down edge has it older.
enum class EdgeDir { up, down };

enum class ValuationKind { trivial, original_leaf, contraction };

/// Node of a rooted oriented witness tree over variable vertices. A node
/// carries a valuation: trivial (weight 1, internal nodes with exactly r
/// children), original leaf (weight p = 1/(omega t^gamma)), or contraction
/// with weight (log j)^rho / j^(A gamma + B (1-gamma)).
struct WitnessNode {
  int parent = -1;  // -1 for the root
  EdgeDir dir = EdgeDir::up;
  ValuationKind kind = ValuationKind::trivial;
  int rho = 0;
  int A = 0;
  int B = 0;
};

struct WitnessTreeSpec {
  int r = 2;
  std::vector<WitnessNode> nodes;  // node 0 is the root

  std::vector<std::vector<int>> children() const;
  int depth() const;  // edges on the longest root-to-leaf path
};

/// Structural checks plus Property (A): a contraction node with c children
/// satisfies c + A + B >= r; trivial internal nodes have exactly r children;
/// original leaves are leaves. With gamma given, also depth <= d0 + 1.
/// Throws std::invalid_argument on violation.
void validate_witness_spec(const WitnessTreeSpec& spec);
void validate_witness_spec(const WitnessTreeSpec& spec, double gamma);

/// Text format: header "witness-tree v1 r=<r>", then one line per node:
///   id parent updown childcount valuation
/// with valuation one of "trivial", "leaf", or "contraction <rho> <A> <B>".
WitnessTreeSpec parse_witness_spec(std::istream& in);
WitnessTreeSpec load_witness_spec(const std::string& path);
void write_witness_spec(const WitnessTreeSpec& spec, std::ostream& out);

/// Per-root counts of depth-1 witness trees: for each susceptible vertex i,
/// the number of ways to pick r distinct edges from i to r distinct infected
/// neighbors (parallel edges multiply choices; self-loops never count).
/// `infected` is indexed by vertex id. Entry 0 of the result is unused.
std::vector<std::uint64_t> count_depth1_witness_trees(const Multigraph& g,
                                                      const std::vector<std::uint8_t>& infected,
                                                      int r);

/// Witness structure rooted at a vertex infected at round tau >= 1: a
/// sub-multigraph where every non-root vertex has a parent, every parent has
/// exactly r child-edges to strictly-earlier-infected vertices, the leaves
/// lie in I_0, and the parent-child depth equals tau.
struct WitnessStructure {
  VertexId root = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;  // (parent, child), repeated per edge
  std::vector<VertexId> vertices;
  std::vector<int> depth;  // aligned with `vertices`
  std::vector<VertexId> leaves;
};

/// Reconstructs a witness structure for v by backtracking the percolation
/// trace: each infected non-leaf vertex selects its r smallest-id edges to
/// strictly-earlier-infected neighbors. Throws std::invalid_argument if v
/// was not infected in a round >= 1.
WitnessStructure find_witness_structure(const Multigraph& g,
                                        const std::vector<std::uint8_t>& initial,
                                        const InfectionState& state, VertexId v, int r);

/// Independent validator for conditions (1)-(4); fills `why` on failure.
bool validate_witness_structure(const Multigraph& g, const std::vector<std::uint8_t>& initial,
                                const InfectionState& state, const WitnessStructure& s, int r,
                                std::string* why = nullptr);

/// Evaluates the weight-function recursion exactly by dynamic programming:
///   f_a(j) = v_a(j) * prod_up sum_{j'>j} f_child(j') / (j^g j'^(1-g))
///                   * prod_down sum_{j'<j} f_child(j') / (j'^g j^(1-g)),
/// returning f_0 over j = 1..t (index 0 unused). O(t * nodes) via prefix and
/// suffix sums. Throws on Property (A) violations.
std::vector<double> weight_f(const WitnessTreeSpec& spec, VertexId t, double omega,
                             double gamma);

/// Exponent ledger for the subtree rooted at a node: original-leaf count,
/// total log exponent rho' (= down edges + valuation rhos), and the bound
/// exponent y = A gamma + B (1-gamma). sum_form marks the y = ell gamma +
/// sum e branch (B == 0).
struct ExponentLedger {
  int ell = 0;
  int rho_prime = 0;
  int A = 0;
  int B = 0;
  bool sum_form = false;
  double y = 0.0;
};

ExponentLedger exponent_ledger(const WitnessTreeSpec& spec, double gamma);
ExponentLedger exponent_ledger(const WitnessTreeSpec& spec, int node, double gamma);

/// Replaces the subtree rooted at `node` (non-root) by a contraction leaf
/// carrying the subtree's ledger exponents; the bookkeeping step of the
/// structure-to-tree reduction.
WitnessTreeSpec contract_subtree(const WitnessTreeSpec& spec, int node, double gamma);

/// Compares exact f_0 against the bound shape: ratio(i) =
/// f_0(i) i^y omega^ell / (1 v (log i)^rho'). Bounded ratios (no growth in
/// i) are the testable content of the weight-function lemma.
struct BoundCheckReport {
  ExponentLedger ledger;
  double max_ratio = 0.0;
  VertexId argmax = 0;
  double ratio_at_1 = 0.0;
  double ratio_at_t = 0.0;
};

BoundCheckReport check_weight_bound(const WitnessTreeSpec& spec, VertexId t, double omega,
                                    double gamma);

}  // namespace pabp
