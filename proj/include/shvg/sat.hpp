#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "shvg/graph.hpp"
#include "shvg/score.hpp"

namespace shvg {

enum class Quantifier { Exists, Forall };

struct Literal {
  int var = 0;  // 1-based
  bool negated = false;

  bool operator==(const Literal& o) const {
    return var == o.var && negated == o.negated;
  }
};

struct Clause {
  Literal a, b;

  bool operator==(const Clause& o) const { return a == o.a && b == o.b; }
};

// Quantified boolean formula in 2-CNF. Invariant: the prefix quantifies ids
// 1..prefix.size() exactly once each (in arbitrary order) and clauses only
// use quantified variables.
struct Qbf2 {
  std::vector<std::pair<Quantifier, int>> prefix;
  std::vector<Clause> clauses;

  int variable_count() const { return static_cast<int>(prefix.size()); }
  int clause_count() const { return static_cast<int>(clauses.size()); }
  bool purely_existential() const;
};

// Text format (QDIMACS-like):
//   c comments and blank lines
//   p qcnf <n> <m>
//   e <v> [<v> ...] [0]     |  a <v> [<v> ...] [0]
//   <l1> <l2> 0             (m clause lines, two literals each)
Qbf2 parse_formula(const std::string& text);
std::string serialize_formula(const Qbf2& f);

// Literal clause incidence graph: vertex 2(i-1) is x_i positive, 2(i-1)+1 is
// x_i negative; each clause contributes one edge between its two literal
// vertices, with clauses on the same literal pair collapsing onto one edge.
struct LciGraph {
  Graph graph;
  // normalized (u < v) edge -> indices of the clauses riding on it
  std::map<std::pair<int, int>, std::vector<int>> clause_edges;
  int max_multiplicity = 0;

  static int vertex_of(Literal l) {
    return 2 * (l.var - 1) + (l.negated ? 1 : 0);
  }
};

// Throws std::invalid_argument on clauses that repeat one literal, e.g.
// (x v x) — their edge would be a self-loop. (x v -x) is representable and
// accepted here; the instance builders reject both forms.
LciGraph lci_graph(const Qbf2& f);

// Rewrites the formula until its literal clause incidence graph is acyclic.
// Each application substitutes a shadow variable into one clause of a cycle
// and appends four linking clauses; the optimum shifts by exactly +4 per
// application and the winner threshold moves from k to k + 4 each time.
struct CycleBreakResult {
  Qbf2 formula;
  int k = 0;
  int applications = 0;
};

CycleBreakResult break_cycles(const Qbf2& f, int k);

// For purely existential formulas whose variables occur at most 3 times:
// while some sign of some variable occurs 3 times, the 3 carrying clauses
// are deleted (k drops by 3); afterwards cycles are broken. The result has
// every sign occurring at most twice and an acyclic incidence graph.
struct OccurrenceBoundResult {
  Qbf2 formula;
  int k = 0;
  int removals = 0;
  int gadget_applications = 0;
};

OccurrenceBoundResult bound_occurrences(const Qbf2& f, int k);

// Disjoint second copy: variable i maps to i + n, prefix pattern repeats,
// every clause is mirrored. The optimum doubles.
Qbf2 duplicate(const Qbf2& f);

// Pads with unconstrained variables so the prefix strictly alternates with
// Forall on odd positions and Exists on even ones and has even length, then
// renumbers variables to their prefix positions. Game value is unchanged.
Qbf2 pad_to_alternation(const Qbf2& f);

struct QbfSolveResult {
  SolveStatus status = SolveStatus::Solved;  // ResourceExceeded: n > cap
  int value = 0;            // optimally played number of satisfied clauses
  bool satisfier_wins = false;  // value >= k
};

// Exact game value: players set variables in prefix order, Satisfier
// (existential) maximizes the satisfied-clause count, Falsifier minimizes.
QbfSolveResult qbf_max_solve(const Qbf2& f, int k, int var_cap = 14);

struct LeafBundle {
  int host = 0;
  int first_leaf = 0;
  int count = 0;
};

// Game instance encoding a quantified formula: Maker (playing first) reaches
// `threshold` happy vertices iff Falsifier wins the (formula, k) game.
struct ReductionArtifact {
  GraphPtr instance;
  int threshold = 0;
  int baseline = 0;  // score of the forced line before any clause claims
  int m = 0;         // clause count of the input formula (per half)
  int k = 0;
  // Provenance: literal_vertex[2(i-1)] / [2(i-1)+1] are the positive and
  // negative vertices of prefix position i of the processed formula;
  // clause_vertex[j] subdivides processed clause j; chain_vertex[i-1] is the
  // i-th spine vertex. Every other vertex belongs to exactly one bundle.
  std::vector<int> literal_vertex;
  std::vector<int> clause_vertex;
  std::vector<int> chain_vertex;
  std::vector<LeafBundle> bundles;
  Qbf2 processed;  // padded + duplicated formula actually encoded
};

// Requires a formula with at least one clause, no same-variable or repeated
// clauses, and an acyclic incidence graph (run break_cycles first).
ReductionArtifact build_tree_instance(const Qbf2& f, int k);

// Additionally requires a purely existential formula with every sign
// occurring at most twice (run bound_occurrences first); the instance is a
// caterpillar: deleting its leaves yields a path.
ReductionArtifact build_caterpillar_instance(const Qbf2& f, int k);

}  // namespace shvg
