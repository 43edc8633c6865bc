#include "shvg/closed_form.hpp"

#include <algorithm>
#include <queue>

namespace shvg {

bool GraphClass::operator==(const GraphClass& o) const {
  return kind == o.kind && n == o.n && path_lengths == o.path_lengths &&
         cycle_lengths == o.cycle_lengths && legs == o.legs;
}

namespace {

bool is_path_component(const Graph& g, const std::vector<int>& verts) {
  int deg1 = 0;
  for (int v : verts) {
    int d = g.degree(v);
    if (d > 2) return false;
    if (d <= 1) ++deg1;
  }
  // A tree with max degree 2: single vertex (deg 0) or exactly two ends.
  if (verts.size() == 1) return g.degree(verts[0]) == 0;
  return deg1 == 2;
}

bool is_cycle_component(const Graph& g, const std::vector<int>& verts) {
  if (verts.size() < 3) return false;
  for (int v : verts)
    if (g.degree(v) != 2) return false;
  return true;  // connected + all degree 2 => single cycle
}

// Complete binary tree of depth >= 2: 2^(d+1)-1 vertices, the root is the
// unique degree-2 vertex, levels double until the leaves.
bool recognize_complete_binary_tree(const Graph& g, int* depth_out) {
  int n = g.vertex_count();
  int d = 0;
  long long size = 1;
  while (size < n) {
    size = 2 * size + 1;
    ++d;
  }
  if (size != n || d < 2) return false;

  int root = -1;
  for (int v = 0; v < n; ++v) {
    int deg = g.degree(v);
    if (deg == 2) {
      if (root >= 0) return false;
      root = v;
    } else if (deg != 1 && deg != 3) {
      return false;
    }
  }
  if (root < 0) return false;

  std::vector<int> level(n, -1);
  std::queue<int> q;
  level[root] = 0;
  q.push(root);
  std::vector<int> width(d + 1, 0);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (level[v] > d) return false;
    ++width[level[v]];
    int children = 0;
    for (int u : g.neighbors(v)) {
      if (level[u] >= 0) continue;
      level[u] = level[v] + 1;
      ++children;
      q.push(u);
    }
    if (level[v] < d && children != 2) return false;
    if (level[v] == d && children != 0) return false;
  }
  for (int l = 0; l <= d; ++l)
    if (width[l] != (1 << l)) return false;
  *depth_out = d;
  return true;
}

bool recognize_subdivided_star(const Graph& g, std::vector<int>* legs_out) {
  int n = g.vertex_count();
  int center = -1;
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) >= 3) {
      if (center >= 0) return false;
      center = v;
    }
  }
  if (center < 0) return false;
  // A tree whose only branching vertex is the center: each neighbor starts a
  // pendant path.
  std::vector<int> legs;
  for (int start : g.neighbors(center)) {
    int len = 1;
    int prev = center, cur = start;
    while (g.degree(cur) == 2) {
      int next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1]
                                             : g.neighbors(cur)[0];
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  *legs_out = std::move(legs);
  return true;
}

}  // namespace

GraphClass classify(const Graph& g) {
  GraphClass out;
  if (g.vertex_count() == 0) return out;

  auto comps = components(g);
  bool all_linear = true;
  std::vector<int> paths, cycles;
  for (const auto& c : comps) {
    if (is_path_component(g, c.original_id))
      paths.push_back(static_cast<int>(c.original_id.size()));
    else if (is_cycle_component(g, c.original_id))
      cycles.push_back(static_cast<int>(c.original_id.size()));
    else
      all_linear = false;
  }

  if (all_linear) {
    if (comps.size() == 1) {
      if (!paths.empty()) {
        out.kind = GraphClass::Kind::Path;
        out.n = paths[0];
      } else {
        out.kind = GraphClass::Kind::Cycle;
        out.n = cycles[0];
      }
      return out;
    }
    std::sort(paths.begin(), paths.end());
    std::sort(cycles.begin(), cycles.end());
    out.kind = GraphClass::Kind::UnionOfPathsAndCycles;
    out.path_lengths = std::move(paths);
    out.cycle_lengths = std::move(cycles);
    return out;
  }

  if (comps.size() != 1) return out;
  bool tree = g.edge_count() == g.vertex_count() - 1;
  if (!tree) return out;

  if (recognize_subdivided_star(g, &out.legs)) {
    out.kind = GraphClass::Kind::SubdividedStar;
    return out;
  }
  out.legs.clear();
  if (recognize_complete_binary_tree(g, &out.n)) {
    out.kind = GraphClass::Kind::CompleteBinaryTree;
    return out;
  }
  out.n = 0;
  return out;
}

Graph make_path(int n) {
  if (n < 1) throw std::invalid_argument("path needs at least one vertex");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::build(n, edges);
}

Graph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least three vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(n - 1, 0);
  return Graph::build(n, edges);
}

Graph make_subdivided_star(const std::vector<int>& legs) {
  int total = 1;
  for (int l : legs) {
    if (l < 1) throw std::invalid_argument("star legs must have length >= 1");
    total += l;
  }
  std::vector<std::pair<int, int>> edges;
  int next = 1;
  for (int l : legs) {
    int prev = 0;
    for (int i = 0; i < l; ++i) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return Graph::build(total, edges);
}

Graph make_complete_binary_tree(int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  int n = (1 << (depth + 1)) - 1;
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back((v - 1) / 2, v);
  return Graph::build(n, edges);
}

int path_score(int n, Player mover) {
  if (n < 1) throw std::invalid_argument("path length must be >= 1");
  if (n % 2 == 0) return 0;
  return mover == Player::Maker ? 1 : 0;
}

int cycle_score(int n, Player mover) {
  if (n < 3) throw std::invalid_argument("cycle length must be >= 3");
  (void)mover;
  return 0;
}

int union_paths_score(const std::vector<int>& path_lengths,
                      const std::vector<int>& cycle_lengths, Player mover) {
  int odd = 0;
  for (int n : path_lengths) {
    if (n < 1) throw std::invalid_argument("path length must be >= 1");
    if (n % 2) ++odd;
  }
  for (int n : cycle_lengths)
    if (n < 3) throw std::invalid_argument("cycle length must be >= 3");
  return mover == Player::Maker ? (odd + 1) / 2 : odd / 2;
}

int subdivided_star_score(const std::vector<int>& legs, Player mover) {
  int total = 0, odd = 0;
  for (int l : legs) {
    if (l < 1) throw std::invalid_argument("star legs must have length >= 1");
    total += l;
    if (l % 2) ++odd;
  }
  if (legs.size() <= 2) return path_score(total + 1, mover);
  if (mover == Player::Breaker) return 0;
  return odd == 0 ? 1 : odd / 2;
}

int complete_binary_tree_score(int depth, Player mover) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (depth <= 1) return mover == Player::Maker ? 1 : 0;
  return 1 << (depth - 2);
}

std::optional<int> formula_score(const Graph& g, Player mover) {
  GraphClass c = classify(g);
  switch (c.kind) {
    case GraphClass::Kind::Path:
      return path_score(c.n, mover);
    case GraphClass::Kind::Cycle:
      return cycle_score(c.n, mover);
    case GraphClass::Kind::UnionOfPathsAndCycles:
      return union_paths_score(c.path_lengths, c.cycle_lengths, mover);
    case GraphClass::Kind::SubdividedStar:
      return subdivided_star_score(c.legs, mover);
    case GraphClass::Kind::CompleteBinaryTree:
      return complete_binary_tree_score(c.n, mover);
    case GraphClass::Kind::Unknown:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace shvg
