#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "shvg/closed_form.hpp"
#include "shvg/graph.hpp"
#include "support/corpus.hpp"
#include "support/oracle.hpp"

using namespace shvg;

TEST_CASE("family builders") {
  Graph p4 = make_path(4);
  CHECK(p4.vertex_count() == 4);
  CHECK(p4.edge_count() == 3);
  CHECK(p4.has_edge(1, 2));

  Graph c5 = make_cycle(5);
  CHECK(c5.edge_count() == 5);
  for (int v = 0; v < 5; ++v) CHECK(c5.degree(v) == 2);

  Graph star = make_subdivided_star({1, 2, 3});
  CHECK(star.vertex_count() == 7);
  CHECK(star.degree(0) == 3);

  Graph t2 = make_complete_binary_tree(2);
  CHECK(t2.vertex_count() == 7);
  CHECK(t2.degree(0) == 2);
  CHECK(t2.has_edge(1, 3));
}

TEST_CASE("classification") {
  CHECK(classify(make_path(6)).kind == GraphClass::Kind::Path);
  CHECK(classify(make_path(6)).n == 6);
  CHECK(classify(make_cycle(7)).kind == GraphClass::Kind::Cycle);

  GraphClass star = classify(make_subdivided_star({1, 2, 3}));
  CHECK(star.kind == GraphClass::Kind::SubdividedStar);
  CHECK(star.legs == std::vector<int>{1, 2, 3});

  GraphClass cbt = classify(make_complete_binary_tree(3));
  CHECK(cbt.kind == GraphClass::Kind::CompleteBinaryTree);
  CHECK(cbt.n == 3);

  GraphClass uni = classify(
      corpus::disjoint_union({make_path(3), make_cycle(4), make_path(2)}));
  CHECK(uni.kind == GraphClass::Kind::UnionOfPathsAndCycles);
  CHECK(uni.path_lengths == std::vector<int>{2, 3});
  CHECK(uni.cycle_lengths == std::vector<int>{4});

  // Two legs make a path, not a star.
  CHECK(classify(make_subdivided_star({2, 3})).kind == GraphClass::Kind::Path);

  // Petersen graph: 3-regular, not in any family.
  Graph petersen = Graph::build(
      10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
           {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
           {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
  CHECK(classify(petersen).kind == GraphClass::Kind::Unknown);

  // Mixed union containing a star is not a closed-form union.
  Graph mixed = corpus::disjoint_union({make_subdivided_star({1, 1, 1}),
                                        make_path(3)});
  CHECK(classify(mixed).kind == GraphClass::Kind::Unknown);
}

TEST_CASE("classify round-trips its own constructors") {
  for (int n = 1; n <= 12; ++n) {
    GraphClass c = classify(make_path(n));
    if (n >= 1) CHECK(c.kind == GraphClass::Kind::Path);
    CHECK(c.n == n);
  }
  for (int n = 3; n <= 9; ++n) {
    GraphClass c = classify(make_cycle(n));
    CHECK(c.kind == GraphClass::Kind::Cycle);
    CHECK(c.n == n);
  }
  for (std::vector<int> legs :
       {std::vector<int>{1, 1, 1}, {2, 2, 2}, {1, 2, 3, 4}, {3, 3, 3, 3, 3}}) {
    GraphClass c = classify(make_subdivided_star(legs));
    CHECK(c.kind == GraphClass::Kind::SubdividedStar);
    CHECK(c.legs == legs);
  }
  for (int d = 2; d <= 4; ++d) {
    GraphClass c = classify(make_complete_binary_tree(d));
    CHECK(c.kind == GraphClass::Kind::CompleteBinaryTree);
    CHECK(c.n == d);
  }
}

TEST_CASE("path scores") {
  CHECK(path_score(4, Player::Maker) == 0);
  CHECK(path_score(7, Player::Maker) == 1);
  CHECK(path_score(7, Player::Breaker) == 0);
  CHECK_THROWS_AS(path_score(0, Player::Maker), std::invalid_argument);
  for (int n = 1; n <= 9; ++n) {
    ScorePair truth = oracle::solve_graph(make_path(n));
    CHECK(path_score(n, Player::Maker) == truth.ms);
    CHECK(path_score(n, Player::Breaker) == truth.bs);
  }
}

TEST_CASE("cycle scores") {
  for (int n = 3; n <= 8; ++n) {
    CHECK(cycle_score(n, Player::Maker) == 0);
    CHECK(cycle_score(n, Player::Breaker) == 0);
    ScorePair truth = oracle::solve_graph(make_cycle(n));
    CHECK(truth.ms == 0);
    CHECK(truth.bs == 0);
  }
  CHECK_THROWS_AS(cycle_score(2, Player::Maker), std::invalid_argument);
}

TEST_CASE("union scores") {
  CHECK(union_paths_score({3, 3}, {}, Player::Breaker) == 1);
  CHECK(union_paths_score({3, 5, 7}, {}, Player::Maker) == 2);
  CHECK(union_paths_score({2, 4, 6}, {}, Player::Maker) == 0);
  CHECK(union_paths_score({2, 4, 6}, {}, Player::Breaker) == 0);
  CHECK(union_paths_score({3, 3}, {4, 5}, Player::Breaker) == 1);

  std::mt19937_64 rng(23);
  for (int it = 0; it < 25; ++it) {
    std::vector<int> paths, cycles;
    std::vector<Graph> parts;
    int budget = 9;
    while (budget > 0) {
      int len = 1 + static_cast<int>(rng() % budget);
      if (len >= 3 && (rng() & 1)) {
        cycles.push_back(len);
        parts.push_back(make_cycle(len));
      } else {
        paths.push_back(len);
        parts.push_back(make_path(len));
      }
      budget -= len;
    }
    if (paths.empty() && cycles.empty()) continue;
    ScorePair truth = oracle::solve_graph(corpus::disjoint_union(parts));
    CHECK(union_paths_score(paths, cycles, Player::Maker) == truth.ms);
    CHECK(union_paths_score(paths, cycles, Player::Breaker) == truth.bs);
  }
}

TEST_CASE("subdivided star scores") {
  CHECK(subdivided_star_score({1, 1, 1}, Player::Maker) == 1);
  CHECK(subdivided_star_score({2, 2, 2}, Player::Maker) == 1);
  CHECK(subdivided_star_score({1, 1, 1, 1, 1}, Player::Breaker) == 0);
  CHECK(subdivided_star_score({1, 1, 1, 1}, Player::Maker) == 2);
  CHECK_THROWS_AS(subdivided_star_score({0, 1, 1}, Player::Maker),
                  std::invalid_argument);

  // Up to two legs delegate to the path formula.
  CHECK(subdivided_star_score({1, 1}, Player::Maker) ==
        path_score(3, Player::Maker));
  CHECK(subdivided_star_score({2, 3}, Player::Maker) ==
        path_score(6, Player::Maker));

  std::mt19937_64 rng(29);
  for (int it = 0; it < 20; ++it) {
    int k = 3 + static_cast<int>(rng() % 3);
    std::vector<int> legs;
    int total = 1;
    for (int i = 0; i < k; ++i) {
      int leg = 1 + static_cast<int>(rng() % 2);
      legs.push_back(leg);
      total += leg;
    }
    if (total > 9) continue;
    ScorePair truth = oracle::solve_graph(make_subdivided_star(legs));
    CHECK(subdivided_star_score(legs, Player::Maker) == truth.ms);
    CHECK(subdivided_star_score(legs, Player::Breaker) == truth.bs);
  }
}

TEST_CASE("complete binary tree scores") {
  CHECK(complete_binary_tree_score(0, Player::Maker) == 1);
  CHECK(complete_binary_tree_score(0, Player::Breaker) == 0);
  CHECK(complete_binary_tree_score(2, Player::Maker) == 1);
  CHECK(complete_binary_tree_score(2, Player::Breaker) == 1);
  CHECK(complete_binary_tree_score(3, Player::Maker) == 2);
  CHECK(complete_binary_tree_score(3, Player::Breaker) == 2);
  CHECK(complete_binary_tree_score(5, Player::Maker) == 8);
  for (int d = 0; d <= 2; ++d) {
    ScorePair truth = oracle::solve_graph(make_complete_binary_tree(d));
    CHECK(complete_binary_tree_score(d, Player::Maker) == truth.ms);
    CHECK(complete_binary_tree_score(d, Player::Breaker) == truth.bs);
  }
}

TEST_CASE("formula dispatch") {
  CHECK(formula_score(make_path(5), Player::Maker) == 1);
  CHECK(formula_score(make_cycle(7), Player::Maker) == 0);
  Graph petersen = Graph::build(
      10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
           {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
           {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
  CHECK_FALSE(formula_score(petersen, Player::Maker).has_value());
  CHECK(formula_score(make_subdivided_star({1, 1, 1, 1}), Player::Maker) == 2);
  CHECK(formula_score(make_complete_binary_tree(3), Player::Breaker) == 2);
  CHECK(formula_score(corpus::disjoint_union({make_path(3), make_cycle(4)}),
                      Player::Maker) == 1);
}
