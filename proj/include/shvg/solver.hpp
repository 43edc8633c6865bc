#pragma once

#include <cstdint>
#include <vector>

#include "shvg/graph.hpp"
#include "shvg/milnor.hpp"
#include "shvg/score.hpp"

namespace shvg {

// Thrown by operations that cannot report budget exhaustion in their return
// type (e.g. best_move).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Toggles for every pruning/reduction layer of the exact solver. brute()
// disables them all and serves as the reference configuration.
struct SolveConfig {
  bool super_lemma = true;       // interchangeable-pair position shrinking
  bool decompose = true;         // Breaker-claim normal form at the root
  bool move_ordering = true;     // ordered moves + dominance pruning
  bool component_split = true;   // fixed-component extraction at the root
  bool pds_fast_path = true;     // pairing-domination zero test at the root
  bool closed_form_dispatch = true;  // family formulas at the root
  uint64_t memo_limit = uint64_t{1} << 22;  // max memo entries per worker
  double time_budget_seconds = 0.0;         // 0 disables the time budget
  int threads = 1;

  static SolveConfig defaults() { return SolveConfig{}; }
  static SolveConfig brute() {
    SolveConfig c;
    c.super_lemma = false;
    c.decompose = false;
    c.move_ordering = false;
    c.component_split = false;
    c.pds_fast_path = false;
    c.closed_form_dispatch = false;
    return c;
  }
};

struct SolveStats {
  uint64_t nodes = 0;
  uint64_t memo_entries = 0;
  uint64_t memo_hits = 0;
  uint64_t pairings_applied = 0;
  uint64_t moves_pruned = 0;
  int components_extracted = 0;
  bool decomposed = false;
  bool closed_form_used = false;
  bool pairing_domination_used = false;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Solved;
  int score = 0;  // meaningful only when status == Solved
  SolveStats stats;
};

// Exact game value of the position with the given player to move.
SolveResult solve(const Position& p, Player mover,
                  const SolveConfig& cfg = SolveConfig::defaults());

struct PairSolveResult {
  SolveStatus status = SolveStatus::Solved;
  ScorePair score;
  SolveStats stats;
};

// Both first movers from the empty position on g.
PairSolveResult solve_pair(const Graph& g,
                           const SolveConfig& cfg = SolveConfig::defaults());

// Move ordering with dominance pruning. order lists every free vertex by
// descending instant gain, then descending |N[v] \ B|, then ascending id;
// keep marks the moves that survive pruning (at least one optimal move
// always survives). Both players use the same ordering.
struct MoveOrdering {
  std::vector<int> order;
  std::vector<bool> keep;    // parallel to order
  std::vector<int> gain;     // parallel to order: instant gain
  std::vector<int> weight;   // parallel to order: |N[v] \ B|
};

MoveOrdering order_moves(const Position& p, Player mover);

struct BestMove {
  int vertex = -1;
  int score = 0;
};

// Optimal move for the mover; ties break toward the earliest optimum in
// order_moves order. Throws std::invalid_argument on terminal positions.
BestMove best_move(const Position& p, Player mover,
                   const SolveConfig& cfg = SolveConfig::defaults());

// Value-preserving shrinking: repeatedly detects interchangeable free pairs
// and pre-assigns one vertex of each pair to each player (lower id to
// Maker). Preserves the exact score for both movers.
struct PairingReduction {
  Position position;
  std::vector<std::pair<int, int>> pairs;  // (maker vertex, breaker vertex)
};

PairingReduction super_lemma_reduce(const Position& p);

// Component split using this solver for the component scores cheap-first:
// closed forms, then pairing domination, then recursive solving.
SplitResult split_components(const Graph& g,
                             const SolveConfig& cfg = SolveConfig::defaults());

}  // namespace shvg
