#include "support/corpus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace corpus {

using shvg::Clause;
using shvg::Graph;
using shvg::GraphPtr;
using shvg::Literal;
using shvg::Position;
using shvg::Qbf2;
using shvg::Quantifier;
using shvg::VertexSet;

namespace {

std::vector<std::pair<int, int>> edge_list(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < g.vertex_count(); ++a)
    for (int b : g.neighbors(a))
      if (a < b) edges.emplace_back(a, b);
  return edges;
}

// Canonical string of a rooted tree: children strings sorted.
std::string canon_from(const Graph& g, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : g.neighbors(v))
    if (w != parent) kids.push_back(canon_from(g, w, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "[";
  for (const std::string& k : kids) out += k;
  return out + "]";
}

// Canonical string of a free tree: minimum over rootings at its 1-2 centers
// (centers found by repeatedly stripping leaves).
std::string free_tree_canon(const Graph& g) {
  int n = g.vertex_count();
  if (n == 1) return "[]";
  std::vector<int> degree(n), order;
  for (int v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] <= 1) order.push_back(v);
  }
  std::vector<bool> removed(n, false);
  int remaining = n;
  size_t head = 0;
  while (remaining > 2) {
    std::vector<int> layer;
    while (head < order.size()) layer.push_back(order[head++]);
    for (int leaf : layer) {
      removed[leaf] = true;
      --remaining;
      for (int w : g.neighbors(leaf))
        if (!removed[w] && --degree[w] == 1) order.push_back(w);
    }
  }
  std::string best;
  for (int v = 0; v < n; ++v) {
    if (removed[v]) continue;
    std::string s = canon_from(g, v, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

int rand_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

}  // namespace

std::vector<Graph> trees(int n) {
  if (n < 1) return {};
  std::vector<Graph> level{Graph::build(1, {})};
  for (int size = 2; size <= n; ++size) {
    std::vector<Graph> grown;
    std::set<std::string> seen;
    for (const Graph& t : level) {
      auto base = edge_list(t);
      for (int host = 0; host < t.vertex_count(); ++host) {
        auto edges = base;
        edges.emplace_back(host, size - 1);
        Graph candidate = Graph::build(size, edges);
        if (seen.insert(free_tree_canon(candidate)).second)
          grown.push_back(candidate);
      }
    }
    level = std::move(grown);
  }
  return level;
}

std::vector<Graph> trees_up_to(int max_n) {
  std::vector<Graph> out;
  for (int n = 1; n <= max_n; ++n)
    for (Graph& t : trees(n)) out.push_back(std::move(t));
  return out;
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::build(n, edges);
}

Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
  return Graph::build(a + b, edges);
}

Graph disjoint_union(const std::vector<Graph>& parts) {
  int offset = 0;
  std::vector<std::pair<int, int>> edges;
  for (const Graph& g : parts) {
    for (auto [u, v] : edge_list(g)) edges.emplace_back(offset + u, offset + v);
    offset += g.vertex_count();
  }
  return Graph::build(offset, edges);
}

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) edges.emplace_back(i, j);
  return Graph::build(n, edges);
}

Graph random_connected(std::mt19937_64& rng, int n, double p) {
  for (int tries = 0; tries < 1000; ++tries) {
    Graph g = random_graph(rng, n, p);
    if (shvg::components(g).size() <= 1) return g;
    p = std::min(1.0, p + 0.03);
  }
  // Fallback: a random spanning path guarantees connectivity.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(perm[i], perm[i + 1]);
  return Graph::build(n, edges);
}

Graph plant_twin(std::mt19937_64& rng, const Graph& g) {
  int n = g.vertex_count();
  int u = rand_int(rng, 0, n - 1);
  bool closed = (rng() & 1) != 0;
  auto edges = edge_list(g);
  for (int w : g.neighbors(u)) edges.emplace_back(n, w);
  if (closed) edges.emplace_back(n, u);
  return Graph::build(n + 1, edges);
}

Graph random_bounded_diversity(std::mt19937_64& rng, int n, int classes) {
  int k = std::min(classes, n);
  std::vector<int> cls(n);
  for (int v = 0; v < n; ++v) cls[v] = v < k ? v : rand_int(rng, 0, k - 1);
  std::vector<bool> clique(k);
  for (int c = 0; c < k; ++c) clique[c] = (rng() & 1) != 0;
  std::vector<std::vector<bool>> joined(k, std::vector<bool>(k, false));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      joined[a][b] = joined[b][a] = (rng() & 1) != 0;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool edge =
          cls[u] == cls[v] ? clique[cls[u]] : joined[cls[u]][cls[v]];
      if (edge) edges.emplace_back(u, v);
    }
  return Graph::build(n, edges);
}

Position random_position(std::mt19937_64& rng, GraphPtr g, double maker_p,
                         double breaker_p) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  int n = g->vertex_count();
  VertexSet maker(n), breaker(n);
  for (int v = 0; v < n; ++v) {
    double r = coin(rng);
    if (r < maker_p)
      maker.set(v);
    else if (r < maker_p + breaker_p)
      breaker.set(v);
  }
  return Position{std::move(g), std::move(maker), std::move(breaker)};
}

Qbf2 random_formula(std::mt19937_64& rng, int n, int m, bool existential) {
  Qbf2 f;
  for (int v = 1; v <= n; ++v)
    f.prefix.emplace_back(existential || (rng() & 1) ? Quantifier::Exists
                                                     : Quantifier::Forall,
                          v);
  if (n < 2) m = 0;  // a clause needs two distinct variables
  for (int j = 0; j < m; ++j) {
    int a = rand_int(rng, 1, n);
    int b = a;
    while (b == a) b = rand_int(rng, 1, n);
    f.clauses.push_back(
        Clause{Literal{a, (rng() & 1) != 0}, Literal{b, (rng() & 1) != 0}});
  }
  return f;
}

Qbf2 random_bounded_formula(std::mt19937_64& rng, int n) {
  Qbf2 f;
  for (int v = 1; v <= n; ++v) f.prefix.emplace_back(Quantifier::Exists, v);
  std::vector<int> budget(n + 1, 3);
  std::vector<int> sign_mode(n + 1);  // 0 random, 1 always plain, 2 negated
  for (int v = 1; v <= n; ++v) sign_mode[v] = rand_int(rng, 0, 2);
  auto pick_sign = [&](int v) {
    if (sign_mode[v] == 1) return false;
    if (sign_mode[v] == 2) return true;
    return (rng() & 1) != 0;
  };
  std::set<std::pair<std::pair<int, bool>, std::pair<int, bool>>> seen;
  int want = rand_int(rng, 1, 2 * n);
  for (int tries = 0;
       tries < 300 && static_cast<int>(f.clauses.size()) < want; ++tries) {
    int a = rand_int(rng, 1, n);
    int b = rand_int(rng, 1, n);
    if (a == b || budget[a] == 0 || budget[b] == 0) continue;
    Clause c{Literal{a, pick_sign(a)}, Literal{b, pick_sign(b)}};
    std::pair<int, bool> ka{c.a.var, c.a.negated}, kb{c.b.var, c.b.negated};
    if (kb < ka) std::swap(ka, kb);
    if (!seen.insert({ka, kb}).second) continue;
    --budget[a];
    --budget[b];
    f.clauses.push_back(c);
  }
  return f;
}

}  // namespace corpus
