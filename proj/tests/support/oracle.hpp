#pragma once

// Independent reference implementations used only by tests. Results are
// recomputed from first principles (adjacency lists, exhaustive minimax,
// full assignment enumeration); nothing here shares logic with the library's
// solver, closed forms, reductions, or pruning layers.

#include <cstdint>
#include <vector>

#include "shvg/graph.hpp"
#include "shvg/sat.hpp"
#include "shvg/score.hpp"

namespace oracle {

// claims[v]: 0 free, 1 Maker, 2 Breaker.
using Claims = std::vector<int8_t>;

Claims claims_of(const shvg::Position& p);

// |{v : every vertex of N[v] is Maker}|; free vertices count as not Maker.
int happy(const shvg::Graph& g, const Claims& claims);

// Plain minimax over the free vertices, no pruning or reductions.
int value(const shvg::Graph& g, const Claims& claims, bool maker_moves);
shvg::ScorePair solve(const shvg::Graph& g, const Claims& claims);
shvg::ScorePair solve(const shvg::Position& p);
shvg::ScorePair solve_graph(const shvg::Graph& g);

// MAX-2-SAT optimum by full assignment enumeration. Ignores the prefix.
int max_sat(const shvg::Qbf2& f);

// Quantified value: variables set in prefix order, Exists maximizes the
// final satisfied-clause count, Forall minimizes.
int qbf_value(const shvg::Qbf2& f);

}  // namespace oracle
