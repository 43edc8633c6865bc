#include "shvg/fpt.hpp"

#include <bit>
#include <memory>
#include <unordered_map>

namespace shvg {

int nd_value(const Graph& g) {
  return static_cast<int>(neighborhood_partition(g).classes.size());
}

namespace {

struct NdSearch {
  const Graph& g;
  GraphPtr shared;
  std::vector<int> reps;
  VertexSet base_maker, base_breaker;
  Player start_mover;
  std::unordered_map<uint64_t, int> memo;

  int rec(uint32_t mask_maker, uint32_t mask_breaker) {
    uint64_t key = (uint64_t{mask_maker} << 20) | mask_breaker;
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    int w = static_cast<int>(reps.size());
    uint32_t colored = mask_maker | mask_breaker;
    int value;
    if (std::popcount(colored) == w) {
      value = evaluate(mask_maker, mask_breaker);
    } else {
      int colored_count = std::popcount(colored);
      Player mover =
          colored_count % 2 == 0 ? start_mover : opponent(start_mover);
      bool maximize = mover == Player::Maker;
      value = 0;
      bool first = true;
      for (int i = 0; i < w; ++i) {
        if (colored & (1u << i)) continue;
        int child = maximize ? rec(mask_maker | (1u << i), mask_breaker)
                             : rec(mask_maker, mask_breaker | (1u << i));
        if (first || (maximize ? child > value : child < value)) value = child;
        first = false;
      }
    }
    memo.emplace(key, value);
    return value;
  }

  int evaluate(uint32_t mask_maker, uint32_t mask_breaker) const {
    Position p{shared, base_maker, base_breaker};
    for (size_t i = 0; i < reps.size(); ++i) {
      if (mask_maker & (1u << i)) p.maker.set(reps[i]);
      if (mask_breaker & (1u << i)) p.breaker.set(reps[i]);
    }
    return settled_happy_count(p);
  }
};

}  // namespace

NdSolveResult nd_solve(const Graph& g, Player mover, int width_cap) {
  NeighborhoodPartition part = neighborhood_partition(g);
  NdSolveResult out;
  out.width = static_cast<int>(part.classes.size());
  if (out.width > width_cap || width_cap > 20) {
    out.status = SolveStatus::ResourceExceeded;
    return out;
  }

  int n = g.vertex_count();
  NdSearch search{g,
                  std::make_shared<Graph>(g),
                  {},
                  VertexSet(n),
                  VertexSet(n),
                  mover,
                  {}};
  // Within a class all vertices are interchangeable: pre-assign pairs (lower
  // id to Maker) and keep the lowest id of odd classes as its representative.
  for (const auto& cls : part.classes) {
    size_t start = 0;
    if (cls.size() % 2 == 1) {
      search.reps.push_back(cls[0]);
      out.representatives.push_back(cls[0]);
      start = 1;
    }
    for (size_t i = start; i + 1 < cls.size(); i += 2) {
      search.base_maker.set(cls[i]);
      search.base_breaker.set(cls[i + 1]);
      out.paired.emplace_back(cls[i], cls[i + 1]);
    }
  }

  out.score = search.rec(0, 0);
  out.states = search.memo.size();
  return out;
}

}  // namespace shvg
