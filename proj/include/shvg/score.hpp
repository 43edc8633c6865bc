#pragma once

namespace shvg {

enum class SolveStatus { Solved, ResourceExceeded };

// Scores of one graph/position under both first movers: ms when Maker moves
// first, bs when Breaker moves first. ms >= bs always holds for exact values.
struct ScorePair {
  int ms = 0;
  int bs = 0;

  bool operator==(const ScorePair& o) const { return ms == o.ms && bs == o.bs; }
  bool fixed() const { return ms == bs; }
};

}  // namespace shvg
