#include "shvg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "shvg/closed_form.hpp"
#include "shvg/fpt.hpp"
#include "shvg/graph.hpp"
#include "shvg/milnor.hpp"
#include "shvg/sat.hpp"
#include "shvg/solver.hpp"

namespace shvg {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Ctx {
  VerifyReport report;

  void check(const std::string& case_name, bool ok,
             const std::string& detail = "") {
    ++report.checks;
    if (!ok) {
      report.passed = false;
      if (report.failures.size() < 50)
        report.failures.push_back({case_name, detail});
    }
  }
};

std::string pair_str(const ScorePair& s) {
  return "(" + std::to_string(s.ms) + "," + std::to_string(s.bs) + ")";
}

// ---------------------------------------------------------------------------
// Solver shorthands

SolveConfig brute_cfg() { return SolveConfig::brute(); }

// Full solver minus the two root shortcuts whose claims the suites test.
SolveConfig reduced_cfg() {
  SolveConfig c;
  c.closed_form_dispatch = false;
  c.pds_fast_path = false;
  return c;
}

bool solve_both(const Position& p, const SolveConfig& cfg, ScorePair* out) {
  SolveResult ms = solve(p, Player::Maker, cfg);
  SolveResult bs = solve(p, Player::Breaker, cfg);
  if (ms.status != SolveStatus::Solved || bs.status != SolveStatus::Solved)
    return false;
  *out = ScorePair{ms.score, bs.score};
  return true;
}

bool solve_graph(const Graph& g, const SolveConfig& cfg, ScorePair* out) {
  return solve_both(Position::empty(std::make_shared<Graph>(g)), cfg, out);
}

// ---------------------------------------------------------------------------
// Generators

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) edges.emplace_back(i, j);
  return Graph::build(n, edges, {});
}

Graph random_connected(std::mt19937_64& rng, int n, double p) {
  for (int tries = 0; tries < 500; ++tries) {
    Graph g = random_graph(rng, n, p);
    if (components(g).size() <= 1) return g;
    p = std::min(1.0, p + 0.05);
  }
  return make_path(n);
}

// Adds one clone of a random vertex (open or closed twin).
Graph plant_twin(std::mt19937_64& rng, const Graph& g) {
  int n = g.vertex_count();
  int u = static_cast<int>(rng() % static_cast<uint64_t>(n));
  bool closed = (rng() & 1) != 0;
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b : g.neighbors(a))
      if (a < b) edges.emplace_back(a, b);
  for (int w : g.neighbors(u)) edges.emplace_back(n, w);
  if (closed) edges.emplace_back(n, u);
  return Graph::build(n + 1, edges, {});
}

Position random_position(std::mt19937_64& rng, GraphPtr g, double pm,
                         double pb) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  int n = g->vertex_count();
  VertexSet maker(n), breaker(n);
  for (int v = 0; v < n; ++v) {
    double r = coin(rng);
    if (r < pm)
      maker.set(v);
    else if (r < pm + pb)
      breaker.set(v);
  }
  return Position{std::move(g), std::move(maker), std::move(breaker)};
}

Graph disjoint_union(const std::vector<Graph>& parts) {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  for (const Graph& g : parts) {
    for (int a = 0; a < g.vertex_count(); ++a)
      for (int b : g.neighbors(a))
        if (a < b) edges.emplace_back(n + a, n + b);
    n += g.vertex_count();
  }
  return Graph::build(n, edges, {});
}

// All multisets (non-increasing) of positive parts with the given total.
void partitions_of(int total, int max_part, std::vector<int>* cur,
                   const std::function<void(const std::vector<int>&)>& emit) {
  if (total == 0) {
    emit(*cur);
    return;
  }
  for (int part = std::min(total, max_part); part >= 1; --part) {
    cur->push_back(part);
    partitions_of(total - part, part, cur, emit);
    cur->pop_back();
  }
}

// ---------------------------------------------------------------------------
// Unlabeled tree enumeration (canonical-form dedup over leaf attachment)

std::string rooted_canon(const Graph& g, int root, int parent) {
  std::vector<std::string> kids;
  for (int w : g.neighbors(root))
    if (w != parent) kids.push_back(rooted_canon(g, w, root));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  s += ")";
  return s;
}

std::vector<int> tree_centroids(const Graph& g) {
  int n = g.vertex_count();
  if (n == 1) return {0};
  std::vector<int> size(n, 1), best(n, n);
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    int top = 0;
    for (int w : g.neighbors(v)) {
      if (w == parent) continue;
      dfs(w, v);
      size[v] += size[w];
      top = std::max(top, size[w]);
    }
    best[v] = std::max(top, n - size[v]);
  };
  dfs(0, -1);
  int opt = *std::min_element(best.begin(), best.end());
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (best[v] == opt) out.push_back(v);
  return out;
}

std::string tree_canon(const Graph& g) {
  std::string best;
  for (int c : tree_centroids(g)) {
    std::string s = rooted_canon(g, c, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

// All unlabeled trees with 1..max_n vertices, smallest first.
std::vector<Graph> all_trees(int max_n) {
  std::vector<Graph> out;
  if (max_n < 1) return out;
  std::vector<Graph> level{Graph::build(1, {}, {})};
  out.push_back(level[0]);
  for (int n = 2; n <= max_n; ++n) {
    std::vector<Graph> next;
    std::set<std::string> seen;
    for (const Graph& t : level) {
      std::vector<std::pair<int, int>> base;
      for (int a = 0; a < t.vertex_count(); ++a)
        for (int b : t.neighbors(a))
          if (a < b) base.emplace_back(a, b);
      for (int host = 0; host < t.vertex_count(); ++host) {
        auto edges = base;
        edges.emplace_back(host, n - 1);
        Graph grown = Graph::build(n, edges, {});
        if (seen.insert(tree_canon(grown)).second) next.push_back(grown);
      }
    }
    for (const Graph& t : next) out.push_back(t);
    level = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formula generators

Clause random_clause(std::mt19937_64& rng, int n) {
  int a = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n));
  int b = a;
  while (b == a) b = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n));
  return Clause{Literal{a, (rng() & 1) != 0}, Literal{b, (rng() & 1) != 0}};
}

Qbf2 random_formula(std::mt19937_64& rng, int n, int m, bool existential) {
  Qbf2 f;
  for (int v = 1; v <= n; ++v) {
    Quantifier q = existential || (rng() & 1) ? Quantifier::Exists
                                              : Quantifier::Forall;
    f.prefix.emplace_back(q, v);
  }
  if (n < 2) m = 0;  // a clause needs two distinct variables
  for (int j = 0; j < m; ++j) f.clauses.push_back(random_clause(rng, n));
  return f;
}

// Purely existential, every variable in at most 3 clauses, clauses distinct.
// Signs are biased toward repetition so three-same-sign variables (the
// occurrence-bounding trigger) actually occur.
Qbf2 random_bounded_formula(std::mt19937_64& rng, int n) {
  Qbf2 f;
  for (int v = 1; v <= n; ++v) f.prefix.emplace_back(Quantifier::Exists, v);
  std::vector<int> budget(n + 1, 3);
  std::vector<bool> sticky_sign(n + 1);
  std::vector<bool> sticky(n + 1);
  for (int v = 1; v <= n; ++v) {
    sticky[v] = rng() % 100 < 45;
    sticky_sign[v] = (rng() & 1) != 0;
  }
  auto sign_of = [&](int v) {
    return sticky[v] ? sticky_sign[v] : (rng() & 1) != 0;
  };
  std::set<std::pair<std::pair<int, bool>, std::pair<int, bool>>> seen;
  int want = 2 + static_cast<int>(rng() % static_cast<uint64_t>(2 * n));
  for (int tries = 0; tries < 200 && static_cast<int>(f.clauses.size()) < want;
       ++tries) {
    int a = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n));
    int b = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n));
    if (a == b || budget[a] == 0 || budget[b] == 0) continue;
    Clause c{Literal{a, sign_of(a)}, Literal{b, sign_of(b)}};
    std::pair<int, bool> ka{c.a.var, c.a.negated}, kb{c.b.var, c.b.negated};
    if (kb < ka) std::swap(ka, kb);
    if (!seen.insert({ka, kb}).second) continue;
    --budget[a];
    --budget[b];
    f.clauses.push_back(c);
  }
  return f;
}

bool is_acyclic(const Graph& g) {
  return g.edge_count() ==
         g.vertex_count() - static_cast<int>(components(g).size());
}

std::string formula_str(const Qbf2& f) {
  std::ostringstream os;
  for (const auto& [q, v] : f.prefix)
    os << (q == Quantifier::Exists ? "E" : "A") << v << " ";
  os << ":";
  for (const Clause& c : f.clauses)
    os << " (" << (c.a.negated ? "-" : "") << c.a.var << ","
       << (c.b.negated ? "-" : "") << c.b.var << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Suites

void suite_paths(Ctx& cx, const VerifyOptions& opt) {
  int max_n = opt.max_n > 0 ? opt.max_n : 12;
  for (int n = 1; n <= max_n; ++n) {
    ScorePair got;
    bool ok = solve_graph(make_path(n), brute_cfg(), &got);
    ScorePair want{path_score(n, Player::Maker), path_score(n, Player::Breaker)};
    cx.check("path n=" + std::to_string(n), ok && got == want,
             ok ? "solver " + pair_str(got) + " formula " + pair_str(want)
                : "resource exceeded");
  }
}

void suite_path_unions(Ctx& cx, const VerifyOptions& opt) {
  int max_total = opt.max_n > 0 ? opt.max_n : 14;
  for (int total = 1; total <= max_total; ++total) {
    std::vector<int> cur;
    partitions_of(total, total, &cur, [&](const std::vector<int>& parts) {
      std::vector<Graph> graphs;
      for (int len : parts) graphs.push_back(make_path(len));
      ScorePair got;
      bool ok = solve_graph(disjoint_union(graphs), reduced_cfg(), &got);
      ScorePair want{union_paths_score(parts, {}, Player::Maker),
                     union_paths_score(parts, {}, Player::Breaker)};
      std::ostringstream name;
      name << "paths {";
      for (int len : parts) name << ' ' << len;
      name << " }";
      cx.check(name.str(), ok && got == want,
               ok ? "solver " + pair_str(got) + " formula " + pair_str(want)
                  : "resource exceeded");
    });
  }
}

void suite_cycles(Ctx& cx, const VerifyOptions& opt) {
  int max_n = opt.max_n > 0 ? opt.max_n : 9;
  for (int n = 3; n <= max_n; ++n) {
    ScorePair got;
    bool ok = solve_graph(make_cycle(n), reduced_cfg(), &got);
    cx.check("cycle n=" + std::to_string(n),
             ok && got == ScorePair{0, 0},
             ok ? "solver " + pair_str(got) : "resource exceeded");
  }
}

void suite_stars(Ctx& cx, const VerifyOptions& opt) {
  int max_vertices = opt.max_n > 0 ? opt.max_n : 13;
  std::function<void(std::vector<int>&, int, int)> walk =
      [&](std::vector<int>& legs, int remaining, int min_leg) {
        if (static_cast<int>(legs.size()) >= 3) {
          Graph g = make_subdivided_star(legs);
          ScorePair got;
          bool ok = solve_graph(g, reduced_cfg(), &got);
          ScorePair want{subdivided_star_score(legs, Player::Maker),
                         subdivided_star_score(legs, Player::Breaker)};
          std::ostringstream name;
          name << "star legs {";
          for (int l : legs) name << ' ' << l;
          name << " }";
          cx.check(name.str(), ok && got == want,
                   ok ? "solver " + pair_str(got) + " formula " +
                            pair_str(want)
                      : "resource exceeded");
        }
        if (static_cast<int>(legs.size()) == 5) return;
        for (int leg = min_leg; leg <= remaining; ++leg) {
          legs.push_back(leg);
          walk(legs, remaining - leg, leg);
          legs.pop_back();
        }
      };
  std::vector<int> legs;
  walk(legs, max_vertices - 1, 1);
}

void suite_binary_trees(Ctx& cx, const VerifyOptions& opt) {
  int max_d = opt.max_n > 0 ? opt.max_n : 3;
  for (int d = 0; d <= std::min(max_d, 2); ++d) {
    ScorePair got;
    bool ok = solve_graph(make_complete_binary_tree(d), brute_cfg(), &got);
    ScorePair want{complete_binary_tree_score(d, Player::Maker),
                   complete_binary_tree_score(d, Player::Breaker)};
    cx.check("depth " + std::to_string(d), ok && got == want,
             ok ? "solver " + pair_str(got) + " formula " + pair_str(want)
                : "resource exceeded");
  }
  if (max_d >= 3) {
    ScorePair got;
    bool ok = solve_graph(make_complete_binary_tree(3), reduced_cfg(), &got);
    cx.check("depth 3", ok && got == ScorePair{2, 2},
             ok ? "solver " + pair_str(got) : "resource exceeded");
  }
}

void suite_super_lemma(Ctx& cx, const VerifyOptions& opt) {
  int count = opt.count > 0 ? opt.count : 500;
  int max_n = opt.max_n > 0 ? opt.max_n : 9;
  std::mt19937_64 rng(opt.seed);
  const double densities[] = {0.15, 0.3, 0.5, 0.7};
  for (int it = 0; it < count; ++it) {
    int base = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_n - 1));
    Graph g = plant_twin(rng, random_graph(rng, base, densities[it % 4]));
    auto shared = std::make_shared<Graph>(g);
    PairingReduction red = super_lemma_reduce(Position::empty(shared));
    std::string name = "case " + std::to_string(it);
    cx.check(name + " finds a pair", !red.pairs.empty());

    Position cur = Position::empty(shared);
    ScorePair before;
    if (!solve_both(cur, brute_cfg(), &before)) {
      cx.check(name, false, "resource exceeded");
      continue;
    }
    for (size_t i = 0; i < red.pairs.size(); ++i) {
      cur.maker.set(red.pairs[i].first);
      cur.breaker.set(red.pairs[i].second);
      ScorePair after;
      if (!solve_both(cur, brute_cfg(), &after)) {
        cx.check(name, false, "resource exceeded");
        break;
      }
      cx.check(name + " step " + std::to_string(i), after == before,
               "before " + pair_str(before) + " after " + pair_str(after));
      before = after;
    }
    cx.check(name + " final position",
             cur.maker == red.position.maker &&
                 cur.breaker == red.position.breaker);
  }
}

void suite_decompose(Ctx& cx, const VerifyOptions& opt) {
  int count = opt.count > 0 ? opt.count : 500;
  int max_n = opt.max_n > 0 ? opt.max_n : 9;
  std::mt19937_64 rng(opt.seed);
  const double densities[] = {0.15, 0.3, 0.5, 0.7};
  for (int it = 0; it < count; ++it) {
    int n = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_n));
    auto g = std::make_shared<Graph>(random_graph(rng, n, densities[it % 4]));
    Position p = random_position(rng, g, 0.25, 0.25);
    Position folded = decompose(p);
    ScorePair sp, sf;
    bool ok = solve_both(p, brute_cfg(), &sp) &&
              solve_both(folded, brute_cfg(), &sf);
    cx.check("case " + std::to_string(it), ok && sp == sf,
             ok ? "original " + pair_str(sp) + " folded " + pair_str(sf)
                : "resource exceeded");
  }
}

void suite_sum_bounds(Ctx& cx, const VerifyOptions& opt) {
  int count = opt.count > 0 ? opt.count : 200;
  int max_part = opt.max_n > 0 ? opt.max_n : 6;
  std::mt19937_64 rng(opt.seed);
  for (int it = 0; it < count; ++it) {
    int n1 = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_part));
    int n2 = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_part));
    Graph a = random_connected(rng, n1, 0.4);
    Graph b = random_connected(rng, n2, 0.4);
    ScorePair sa, sb, whole;
    bool ok = solve_graph(a, brute_cfg(), &sa) &&
              solve_graph(b, brute_cfg(), &sb) &&
              solve_graph(disjoint_union({a, b}), brute_cfg(), &whole);
    if (!ok) {
      cx.check("case " + std::to_string(it), false, "resource exceeded");
      continue;
    }
    SumBounds bounds = sum_bounds({sa, sb});
    cx.check("case " + std::to_string(it), bounds.contains(whole),
             "parts " + pair_str(sa) + "+" + pair_str(sb) + " whole " +
                 pair_str(whole) + " bounds ms[" +
                 std::to_string(bounds.ms_lo) + "," +
                 std::to_string(bounds.ms_hi) + "] bs[" +
                 std::to_string(bounds.bs_lo) + "," +
                 std::to_string(bounds.bs_hi) + "]");
  }
}

void suite_diversity(Ctx& cx, const VerifyOptions& opt) {
  // Exact corpus: every small tree, cycle, clique, biclique, longer paths.
  std::vector<Graph> corpus = all_trees(8);
  for (int n = 3; n <= 10; ++n) corpus.push_back(make_cycle(n));
  for (int n = 9; n <= 12; ++n) corpus.push_back(make_path(n));
  for (int n = 2; n <= 5; ++n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    corpus.push_back(Graph::build(n, edges, {}));
  }
  for (int a = 1; a <= 3; ++a)
    for (int b = a; a + b <= 7; ++b) {
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
      corpus.push_back(Graph::build(a + b, edges, {}));
    }
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Graph& g = corpus[i];
    ScorePair want;
    if (!solve_graph(g, brute_cfg(), &want)) {
      cx.check("corpus " + std::to_string(i), false, "resource exceeded");
      continue;
    }
    NdSolveResult ms = nd_solve(g, Player::Maker);
    NdSolveResult bs = nd_solve(g, Player::Breaker);
    bool ok = ms.status == SolveStatus::Solved &&
              bs.status == SolveStatus::Solved;
    cx.check("corpus " + std::to_string(i) + " n=" +
                 std::to_string(g.vertex_count()),
             ok && ms.score == want.ms && bs.score == want.bs,
             ok ? "nd (" + std::to_string(ms.score) + "," +
                      std::to_string(bs.score) + ") brute " + pair_str(want)
                : "width cap hit");
  }

  // Random graphs of bounded neighborhood diversity: join/or-not of up to 6
  // clique/independent classes. Small ones are compared against brute force;
  // large ones must stay solvable (and fast) where brute force is not.
  int count = opt.count > 0 ? opt.count : 100;
  std::mt19937_64 rng(opt.seed);
  for (int it = 0; it < count; ++it) {
    bool small = it % 5 < 2;
    int n = small
                ? 10 + static_cast<int>(rng() % 3)
                : 13 + static_cast<int>(rng() % 8);
    int k = 2 + static_cast<int>(rng() % 5);
    std::vector<int> cls(n);
    for (int v = 0; v < n; ++v)
      cls[v] = v < k ? v : static_cast<int>(rng() % static_cast<uint64_t>(k));
    std::vector<bool> clique(k);
    std::vector<std::vector<bool>> joined(k, std::vector<bool>(k, false));
    for (int c = 0; c < k; ++c) clique[c] = (rng() & 1) != 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) joined[a][b] = (rng() & 1) != 0;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        int cu = std::min(cls[u], cls[v]), cv = std::max(cls[u], cls[v]);
        bool edge = cu == cv ? clique[cu] : joined[cu][cv];
        if (edge) edges.emplace_back(u, v);
      }
    Graph g = Graph::build(n, edges, {});
    std::string name = "random " + std::to_string(it) + " n=" +
                       std::to_string(n);

    auto t0 = Clock::now();
    NdSolveResult ms = nd_solve(g, Player::Maker);
    NdSolveResult bs = nd_solve(g, Player::Breaker);
    double nd_time = seconds_since(t0);
    cx.check(name + " solved",
             ms.status == SolveStatus::Solved &&
                 bs.status == SolveStatus::Solved && ms.width <= 6,
             "width " + std::to_string(ms.width));
    cx.check(name + " under 1s", nd_time < 1.0,
             std::to_string(nd_time) + "s");

    SolveConfig heavy = brute_cfg();
    heavy.time_budget_seconds = 2.0;
    heavy.memo_limit = uint64_t{1} << 20;
    auto t1 = Clock::now();
    ScorePair want;
    bool finished = solve_graph(g, heavy, &want);
    double brute_time = seconds_since(t1);
    if (finished) {
      cx.check(name + " equals brute",
               ms.score == want.ms && bs.score == want.bs,
               "nd (" + std::to_string(ms.score) + "," +
                   std::to_string(bs.score) + ") brute " + pair_str(want));
      cx.check(name + " faster than brute", nd_time < brute_time,
               "nd " + std::to_string(nd_time) + "s brute " +
                   std::to_string(brute_time) + "s");
    } else {
      cx.check(name + " brute infeasible within budget", true);
    }
  }
}

void suite_cycle_gadget(Ctx& cx, const VerifyOptions& opt) {
  int count = opt.count > 0 ? opt.count : 200;
  std::mt19937_64 rng(opt.seed);
  int exercised = 0;
  for (int it = 0; it < count; ++it) {
    int n = 2 + static_cast<int>(rng() % 5);
    int m = 1 + static_cast<int>(rng() % 8);
    Qbf2 f = random_formula(rng, n, m, true);
    CycleBreakResult out = break_cycles(f, 0);
    std::string name = "case " + std::to_string(it);
    cx.check(name + " acyclic", is_acyclic(lci_graph(out.formula).graph),
             formula_str(f));
    cx.check(name + " k shift", out.k == 4 * out.applications);
    if (out.applications > 0) ++exercised;
    if (out.formula.variable_count() <= 14) {
      int opt_in = qbf_max_solve(f, 0).value;
      int opt_out = qbf_max_solve(out.formula, 0).value;
      cx.check(name + " optimum shift",
               opt_out == opt_in + 4 * out.applications,
               formula_str(f) + " in " + std::to_string(opt_in) + " out " +
                   std::to_string(opt_out) + " apps " +
                   std::to_string(out.applications));
    }
  }
  cx.check("some inputs had cycles", exercised > 0,
           std::to_string(exercised));
}

void suite_occurrence_bound(Ctx& cx, const VerifyOptions& opt) {
  int count = opt.count > 0 ? opt.count : 200;
  std::mt19937_64 rng(opt.seed);
  int removals_seen = 0;
  for (int it = 0; it < count; ++it) {
    int n = 2 + static_cast<int>(rng() % 5);
    Qbf2 f = random_bounded_formula(rng, n);
    if (f.clause_count() == 0) continue;
    int k = f.clause_count();
    OccurrenceBoundResult out = bound_occurrences(f, k);
    std::string name = "case " + std::to_string(it);

    std::vector<std::array<int, 2>> occ(out.formula.variable_count() + 1,
                                        {0, 0});
    for (const Clause& c : out.formula.clauses) {
      ++occ[c.a.var][c.a.negated ? 1 : 0];
      ++occ[c.b.var][c.b.negated ? 1 : 0];
    }
    bool signs_ok = true;
    for (const auto& o : occ) signs_ok = signs_ok && o[0] <= 2 && o[1] <= 2;
    cx.check(name + " signs at most twice", signs_ok, formula_str(f));
    cx.check(name + " acyclic", is_acyclic(lci_graph(out.formula).graph));
    cx.check(name + " k shift",
             out.k == k - 3 * out.removals + 4 * out.gadget_applications);
    if (out.removals > 0) ++removals_seen;
    if (out.formula.variable_count() <= 14) {
      int opt_in = qbf_max_solve(f, 0).value;
      int opt_out = qbf_max_solve(out.formula, 0).value;
      cx.check(name + " optimum shift",
               opt_out ==
                   opt_in - 3 * out.removals + 4 * out.gadget_applications,
               formula_str(f) + " in " + std::to_string(opt_in) + " out " +
                   std::to_string(opt_out));
    }
  }
  cx.check("some inputs triggered removals", removals_seen > 0,
           std::to_string(removals_seen));
}

// All formulas over exactly `vars` variables (every quantifier pattern) with
// 1..`max_clauses` distinct clauses.
std::vector<Qbf2> small_formulas(int vars, int max_clauses) {
  std::vector<Clause> pool;
  for (int a = 1; a <= vars; ++a)
    for (int b = a + 1; b <= vars; ++b)
      for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb)
          pool.push_back(Clause{Literal{a, sa == 1}, Literal{b, sb == 1}});
  std::vector<Qbf2> out;
  int p = static_cast<int>(pool.size());
  std::vector<std::vector<int>> picks;
  std::function<void(int, std::vector<int>&)> choose = [&](int start,
                                                           std::vector<int>&
                                                               cur) {
    if (!cur.empty() && static_cast<int>(cur.size()) <= max_clauses)
      picks.push_back(cur);
    if (static_cast<int>(cur.size()) == max_clauses) return;
    for (int i = start; i < p; ++i) {
      cur.push_back(i);
      choose(i + 1, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  choose(0, cur);
  for (int mask = 0; mask < (1 << vars); ++mask) {
    for (const auto& pick : picks) {
      Qbf2 f;
      for (int v = 1; v <= vars; ++v)
        f.prefix.emplace_back((mask >> (v - 1)) & 1 ? Quantifier::Forall
                                                    : Quantifier::Exists,
                              v);
      for (int i : pick) f.clauses.push_back(pool[i]);
      out.push_back(std::move(f));
    }
  }
  return out;
}

int closed_form_baseline(const ReductionArtifact& art) {
  int big_n = art.processed.variable_count();
  int mu = art.processed.clause_count();
  int s0 = 0;
  for (int i = 1; i <= big_n; ++i) {
    s0 += 8 * (big_n + 1 - i) * mu;
    if (i % 2 == 1) s0 += 8 * (big_n + 1 - i) * mu - 2 * mu;
  }
  return s0;
}

void suite_reduction(Ctx& cx, const VerifyOptions& opt) {
  SolveConfig cfg;
  cfg.threads = std::max(1, opt.threads);
  for (const Qbf2& f : small_formulas(opt.vars, opt.clauses)) {
    std::string name = formula_str(f);
    int value = qbf_max_solve(f, 0).value;
    ReductionArtifact art = build_tree_instance(f, 1);
    cx.check(name + " baseline cross-check",
             art.baseline == closed_form_baseline(art),
             "builder " + std::to_string(art.baseline) + " formula " +
                 std::to_string(closed_form_baseline(art)));

    SolveResult r =
        solve(Position::empty(art.instance), Player::Maker, cfg);
    if (r.status != SolveStatus::Solved) {
      cx.check(name, false, "resource exceeded");
      continue;
    }
    cx.check(name + " score identity",
             r.score == art.baseline + art.m - value,
             "solver " + std::to_string(r.score) + " expected " +
                 std::to_string(art.baseline + art.m - value));
    for (int k = 0; k <= art.m + 1; ++k) {
      bool maker_wins = r.score >= art.baseline + art.m - k + 1;
      bool falsifier_wins = value < k;
      cx.check(name + " k=" + std::to_string(k),
               maker_wins == falsifier_wins,
               std::string("maker ") + (maker_wins ? "wins" : "loses") +
                   ", falsifier " + (falsifier_wins ? "wins" : "loses"));
    }

    if (f.purely_existential() && f.clause_count() == 1) {
      ReductionArtifact cat = build_caterpillar_instance(f, 1);
      SolveResult rc =
          solve(Position::empty(cat.instance), Player::Maker, cfg);
      cx.check(name + " caterpillar score identity",
               rc.status == SolveStatus::Solved &&
                   rc.score == cat.baseline + cat.m - value,
               rc.status == SolveStatus::Solved
                   ? "solver " + std::to_string(rc.score)
                   : "resource exceeded");
    }
  }
}

bool leaves_removed_is_path(const Graph& g) {
  std::vector<int> spine;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) >= 2) spine.push_back(v);
  if (spine.empty()) return g.vertex_count() <= 2;
  Graph sg = induced_subgraph(g, spine);
  if (components(sg).size() != 1) return false;
  if (sg.edge_count() != sg.vertex_count() - 1) return false;
  int ends = 0;
  for (int v = 0; v < sg.vertex_count(); ++v) {
    if (sg.degree(v) > 2) return false;
    if (sg.degree(v) <= 1) ++ends;
  }
  return sg.vertex_count() == 1 || ends == 2;
}

void suite_caterpillar(Ctx& cx, const VerifyOptions& opt) {
  int count = opt.count > 0 ? opt.count : 100;
  std::mt19937_64 rng(opt.seed);
  int built = 0, attempts = 0;
  while (built < count && attempts < count * 30) {
    ++attempts;
    int n = 2 + static_cast<int>(rng() % 2);
    Qbf2 f = random_bounded_formula(rng, n);
    if (f.clause_count() == 0) continue;
    OccurrenceBoundResult ob = bound_occurrences(f, f.clause_count());
    if (ob.formula.clause_count() == 0) continue;
    // Instances grow as ~24*mu*N^2 vertices (N = 4*vars, mu = 2*clauses
    // after processing); skip draws that would not fit comfortably in memory.
    long long big_n = 4LL * ob.formula.variable_count();
    long long mu = 2LL * ob.formula.clause_count();
    long long predicted =
        3 * big_n + mu + 24 * mu * big_n * (big_n + 1) - 4 * mu * big_n;
    if (predicted > 25000) continue;
    ReductionArtifact art = build_caterpillar_instance(ob.formula, ob.k);
    cx.check("case " + std::to_string(built) + " caterpillar shape",
             leaves_removed_is_path(*art.instance), formula_str(ob.formula));
    ++built;
  }
  cx.check("generated enough cases", built == count,
           std::to_string(built) + " of " + std::to_string(count));
}

void suite_pair_domination(Ctx& cx, const VerifyOptions& opt) {
  int max_n = opt.max_n > 0 ? opt.max_n : 9;
  std::vector<Graph> corpus = all_trees(max_n);
  for (int n = 3; n <= std::min(8, max_n); ++n)
    corpus.push_back(make_cycle(n));
  int found = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Graph& g = corpus[i];
    PairingDominationResult r = find_pairing_dominating_set(g);
    std::string name = "graph " + std::to_string(i);
    if (r.status != PairingDominationResult::Status::Found) {
      cx.check(name + " search completed",
               r.status == PairingDominationResult::Status::NotFound);
      continue;
    }
    ++found;
    int n = g.vertex_count();
    VertexSet used(n), covered(n);
    bool valid = true;
    for (auto [x, y] : r.pairs) {
      if (used.test(x) || used.test(y) || x == y) valid = false;
      used.set(x);
      used.set(y);
      VertexSet common = g.closed_neighborhood(x);
      common &= g.closed_neighborhood(y);
      covered |= common;
    }
    cx.check(name + " certificate", valid && covered.count() == n);
    ScorePair got;
    bool ok = solve_graph(g, reduced_cfg(), &got);
    cx.check(name + " zero score", ok && got == ScorePair{0, 0},
             ok ? pair_str(got) : "resource exceeded");
  }
  cx.check("some corpus graphs have a pairing dominating set", found > 0,
           std::to_string(found));
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"paths",          "path-unions",  "cycles",
          "stars",          "binary-trees", "super-lemma",
          "decompose",      "sum-bounds",   "diversity",
          "cycle-gadget",   "occurrence-bound",
          "reduction",      "caterpillar",  "pair-domination"};
}

VerifyReport run_verify_suite(const std::string& name,
                              const VerifyOptions& opt) {
  Ctx cx;
  cx.report.suite = name;
  auto t0 = Clock::now();
  if (name == "paths")
    suite_paths(cx, opt);
  else if (name == "path-unions")
    suite_path_unions(cx, opt);
  else if (name == "cycles")
    suite_cycles(cx, opt);
  else if (name == "stars")
    suite_stars(cx, opt);
  else if (name == "binary-trees")
    suite_binary_trees(cx, opt);
  else if (name == "super-lemma")
    suite_super_lemma(cx, opt);
  else if (name == "decompose")
    suite_decompose(cx, opt);
  else if (name == "sum-bounds")
    suite_sum_bounds(cx, opt);
  else if (name == "diversity")
    suite_diversity(cx, opt);
  else if (name == "cycle-gadget")
    suite_cycle_gadget(cx, opt);
  else if (name == "occurrence-bound")
    suite_occurrence_bound(cx, opt);
  else if (name == "reduction")
    suite_reduction(cx, opt);
  else if (name == "caterpillar")
    suite_caterpillar(cx, opt);
  else if (name == "pair-domination")
    suite_pair_domination(cx, opt);
  else
    throw std::invalid_argument("unknown verification suite '" + name + "'");
  cx.report.seconds = seconds_since(t0);
  return cx.report;
}

}  // namespace shvg
