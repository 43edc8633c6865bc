#pragma once

// Deterministic graph/formula corpora and seeded generators for tests.

#include <cstdint>
#include <random>
#include <vector>

#include "shvg/graph.hpp"
#include "shvg/sat.hpp"

namespace corpus {

// All unlabeled trees with exactly n vertices (one representative per
// isomorphism class), generated independently of the library.
std::vector<shvg::Graph> trees(int n);
std::vector<shvg::Graph> trees_up_to(int max_n);

shvg::Graph complete_graph(int n);
shvg::Graph complete_bipartite(int a, int b);
shvg::Graph disjoint_union(const std::vector<shvg::Graph>& parts);

shvg::Graph random_graph(std::mt19937_64& rng, int n, double p);
shvg::Graph random_connected(std::mt19937_64& rng, int n, double p);
// Appends one clone (open or closed twin) of a random vertex.
shvg::Graph plant_twin(std::mt19937_64& rng, const shvg::Graph& g);
// n vertices partitioned into `classes` clique/independent classes with
// random class-level joins: neighborhood diversity ≤ classes.
shvg::Graph random_bounded_diversity(std::mt19937_64& rng, int n, int classes);

shvg::Position random_position(std::mt19937_64& rng, shvg::GraphPtr g,
                               double maker_p, double breaker_p);

// Random 2-CNF with distinct-variable clauses; existential or random prefix.
shvg::Qbf2 random_formula(std::mt19937_64& rng, int n, int m,
                          bool existential);
// Purely existential, every variable in ≤ 3 clauses, distinct clauses,
// sign choices biased so three-same-sign variables occur.
shvg::Qbf2 random_bounded_formula(std::mt19937_64& rng, int n);

}  // namespace corpus
