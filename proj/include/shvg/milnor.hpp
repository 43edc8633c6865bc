#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "shvg/graph.hpp"
#include "shvg/score.hpp"

namespace shvg {

// Interval bounds for the score of a disjoint union, folded from the exact
// score pairs of its parts.
struct SumBounds {
  int ms_lo = 0, ms_hi = 0;
  int bs_lo = 0, bs_hi = 0;

  bool operator==(const SumBounds& o) const {
    return ms_lo == o.ms_lo && ms_hi == o.ms_hi && bs_lo == o.bs_lo &&
           bs_hi == o.bs_hi;
  }
  bool contains(const ScorePair& s) const {
    return ms_lo <= s.ms && s.ms <= ms_hi && bs_lo <= s.bs && s.bs <= bs_hi;
  }
};

// Throws std::invalid_argument on an empty part list.
SumBounds sum_bounds(const std::vector<ScorePair>& parts);

// A pairing dominating set: disjoint vertex pairs (x,y) such that the sets
// N[x] ∩ N[y] together cover every vertex. Its existence forces score 0 for
// both first movers. NotFound is a proof of absence; NotAttempted means the
// search was refused (size guard) or abandoned (node cap).
struct PairingDominationResult {
  enum class Status { Found, NotFound, NotAttempted };
  Status status = Status::NotAttempted;
  std::vector<std::pair<int, int>> pairs;
};

PairingDominationResult find_pairing_dominating_set(const Graph& g,
                                                    int size_guard = 20);

// Component-wise score analysis of a (possibly disconnected) graph: parts
// with ms == bs contribute a fixed additive amount and are extracted; the
// rest are returned with interval bounds for their sum.
struct ComponentScore {
  Component component;
  ScorePair score;
  bool extracted = false;
  enum class Method { ClosedForm, PairingDomination, Solve } method;
};

struct SplitResult {
  int extracted_score = 0;
  std::vector<Component> residual;
  SumBounds residual_bounds;  // all zeros when residual is empty
  std::vector<ComponentScore> details;
};

// solve_pair supplies exact component scores when the cheap methods (closed
// forms, pairing domination) do not apply.
using PairSolveFn = std::function<ScorePair(const Graph&)>;

SplitResult split_components_with(const Graph& g, bool use_closed_form,
                                  bool use_pairing_domination,
                                  const PairSolveFn& solve_pair);

}  // namespace shvg
