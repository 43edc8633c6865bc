#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "shvg/graph.hpp"
#include "shvg/score.hpp"

namespace shvg {

// Number of same-type classes (neighborhood diversity) of g.
int nd_value(const Graph& g);

struct NdSolveResult {
  SolveStatus status = SolveStatus::Solved;  // ResourceExceeded: width > cap
  int score = 0;
  int width = 0;          // same-type class count
  uint64_t states = 0;    // distinct DP states visited (bounded by 3^width)
  std::vector<std::pair<int, int>> paired;  // pre-assigned (maker, breaker)
  std::vector<int> representatives;  // leftover vertex of each odd class
};

// Exact score of the empty position on g, parameterized by neighborhood
// diversity: within each same-type class the vertices are interchangeable,
// so all but at most one vertex per class are pre-assigned in pairs and the
// residual game is solved over class representatives only.
NdSolveResult nd_solve(const Graph& g, Player mover, int width_cap = 20);

}  // namespace shvg
