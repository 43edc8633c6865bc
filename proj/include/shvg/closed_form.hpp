#pragma once

#include <optional>
#include <vector>

#include "shvg/graph.hpp"

namespace shvg {

// Recognized graph families with direct score formulas.
struct GraphClass {
  enum class Kind {
    Path,
    Cycle,
    UnionOfPathsAndCycles,
    SubdividedStar,
    CompleteBinaryTree,
    Unknown,
  };

  Kind kind = Kind::Unknown;
  int n = 0;  // Path/Cycle: vertex count. CompleteBinaryTree: depth.
  std::vector<int> path_lengths;   // union kind, ascending
  std::vector<int> cycle_lengths;  // union kind, ascending
  std::vector<int> legs;           // subdivided star, ascending

  bool operator==(const GraphClass& o) const;
};

GraphClass classify(const Graph& g);

// Family builders (dense ids; deterministic layouts).
Graph make_path(int n);
Graph make_cycle(int n);
// Center is vertex 0; legs laid out one after another in the given order.
Graph make_subdivided_star(const std::vector<int>& legs);
// Heap layout: children of i are 2i+1 and 2i+2. Depth d has 2^(d+1)-1 nodes.
Graph make_complete_binary_tree(int depth);

// Scores for an empty starting position on the family. All throw
// std::invalid_argument on descriptors outside the family's domain.
int path_score(int n, Player mover);
int cycle_score(int n, Player mover);
int union_paths_score(const std::vector<int>& path_lengths,
                      const std::vector<int>& cycle_lengths, Player mover);
int subdivided_star_score(const std::vector<int>& legs, Player mover);
int complete_binary_tree_score(int depth, Player mover);

// Classify g and dispatch to the family formula; nullopt when unrecognized.
std::optional<int> formula_score(const Graph& g, Player mover);

}  // namespace shvg
