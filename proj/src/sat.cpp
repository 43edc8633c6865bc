#include "shvg/sat.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <sstream>

namespace shvg {

bool Qbf2::purely_existential() const {
  for (const auto& [q, v] : prefix)
    if (q == Quantifier::Forall) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::pair<int, std::vector<std::string>>> formula_lines(
    const std::string& text) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream ls(raw);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens[0] == "c") continue;
    out.emplace_back(number, std::move(tokens));
  }
  return out;
}

int formula_int(int line, const std::string& tok, const char* what) {
  size_t pos = 0;
  int value;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok +
                               "'");
  }
  if (pos != tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok +
                               "'");
  return value;
}

}  // namespace

Qbf2 parse_formula(const std::string& text) {
  auto lines = formula_lines(text);
  Qbf2 f;
  int n = -1, m = -1;
  int last_line = lines.empty() ? 1 : lines.back().first;
  std::vector<bool> quantified;
  bool clauses_started = false;
  size_t i = 0;

  if (i >= lines.size() || lines[i].second[0] != "p")
    throw ParseError(i < lines.size() ? lines[i].first : last_line,
                     "expected header 'p qcnf <n> <m>'");
  {
    auto& [line, toks] = lines[i++];
    if (toks.size() != 4 || toks[1] != "qcnf")
      throw ParseError(line, "header must be 'p qcnf <n> <m>'");
    n = formula_int(line, toks[2], "a variable count");
    m = formula_int(line, toks[3], "a clause count");
    if (n < 0 || m < 0) throw ParseError(line, "negative header counts");
    quantified.assign(n + 1, false);
  }

  for (; i < lines.size(); ++i) {
    auto& [line, toks] = lines[i];
    if (toks[0] == "e" || toks[0] == "a") {
      if (clauses_started)
        throw ParseError(line, "quantifier line after the first clause");
      Quantifier q =
          toks[0] == "e" ? Quantifier::Exists : Quantifier::Forall;
      if (toks.size() < 2)
        throw ParseError(line, "quantifier line without variables");
      for (size_t t = 1; t < toks.size(); ++t) {
        int v = formula_int(line, toks[t], "a variable id");
        if (v == 0) {
          if (t + 1 != toks.size())
            throw ParseError(line, "tokens after the terminating 0");
          break;
        }
        if (v < 1 || v > n)
          throw ParseError(line, "variable " + std::to_string(v) +
                                     " out of range [1, " + std::to_string(n) +
                                     "]");
        if (quantified[v])
          throw ParseError(line,
                           "variable " + std::to_string(v) + " quantified twice");
        quantified[v] = true;
        f.prefix.emplace_back(q, v);
      }
    } else {
      clauses_started = true;
      std::vector<int> lits;
      for (const auto& tok : toks)
        lits.push_back(formula_int(line, tok, "a literal"));
      if (lits.size() != 3 || lits[2] != 0 || lits[0] == 0 || lits[1] == 0)
        throw ParseError(line, "clause line must be '<l1> <l2> 0'");
      Clause c;
      Literal* slots[2] = {&c.a, &c.b};
      for (int t = 0; t < 2; ++t) {
        int lit = lits[t];
        int v = std::abs(lit);
        if (v > n)
          throw ParseError(line, "variable " + std::to_string(v) +
                                     " out of range [1, " + std::to_string(n) +
                                     "]");
        if (!quantified[v])
          throw ParseError(line, "variable " + std::to_string(v) +
                                     " is not quantified");
        *slots[t] = Literal{v, lit < 0};
      }
      f.clauses.push_back(c);
      if (static_cast<int>(f.clauses.size()) > m)
        throw ParseError(line, "more clauses than the header declares");
    }
  }

  if (static_cast<int>(f.clauses.size()) != m)
    throw ParseError(last_line,
                     "expected " + std::to_string(m) + " clauses, got " +
                         std::to_string(f.clauses.size()));
  if (static_cast<int>(f.prefix.size()) != n)
    throw ParseError(last_line, "prefix must quantify every variable");
  return f;
}

std::string serialize_formula(const Qbf2& f) {
  std::ostringstream out;
  out << "p qcnf " << f.variable_count() << ' ' << f.clause_count() << '\n';
  for (const auto& [q, v] : f.prefix)
    out << (q == Quantifier::Exists ? "e " : "a ") << v << '\n';
  for (const Clause& c : f.clauses) {
    out << (c.a.negated ? -c.a.var : c.a.var) << ' '
        << (c.b.negated ? -c.b.var : c.b.var) << " 0\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Literal clause incidence graph

LciGraph lci_graph(const Qbf2& f) {
  int n = f.variable_count();
  LciGraph out;
  for (int j = 0; j < f.clause_count(); ++j) {
    const Clause& c = f.clauses[j];
    if (c.a == c.b)
      throw std::invalid_argument("clause " + std::to_string(j + 1) +
                                  " repeats one literal (self-loop)");
    int u = LciGraph::vertex_of(c.a);
    int v = LciGraph::vertex_of(c.b);
    if (u > v) std::swap(u, v);
    out.clause_edges[{u, v}].push_back(j);
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& [edge, clause_list] : out.clause_edges) {
    edges.push_back(edge);
    out.max_multiplicity =
        std::max(out.max_multiplicity, static_cast<int>(clause_list.size()));
  }
  std::map<int, std::string> labels;
  for (int i = 1; i <= n; ++i) {
    labels[2 * (i - 1)] = "x" + std::to_string(i) + "+";
    labels[2 * (i - 1) + 1] = "x" + std::to_string(i) + "-";
  }
  out.graph = Graph::build(2 * n, edges, std::move(labels));
  return out;
}

// ---------------------------------------------------------------------------
// Cycle breaking

namespace {

// First fundamental cycle in DFS order (roots ascending, neighbors
// ascending), as the list of vertices along the cycle; empty when acyclic.
std::vector<int> find_cycle(const Graph& g) {
  int n = g.vertex_count();
  std::vector<int> parent(n, -2);
  std::vector<int> cycle;
  std::function<bool(int)> dfs = [&](int v) {
    for (int u : g.neighbors(v)) {
      if (u == parent[v]) continue;
      if (parent[u] != -2) {
        // u is an ancestor of v in a DFS of an undirected graph
        cycle.push_back(v);
        for (int w = v; w != u; w = parent[w]) cycle.push_back(parent[w]);
        return true;
      }
      parent[u] = v;
      if (dfs(u)) return true;
    }
    return false;
  };
  for (int s = 0; s < n; ++s) {
    if (parent[s] != -2) continue;
    parent[s] = -1;
    if (dfs(s)) return cycle;
  }
  return {};
}

void append_gadget(Qbf2* f, int substituted_clause, Literal target) {
  int n = f->variable_count();
  int a = n + 1, b = n + 2, shadow = n + 3;
  f->prefix.emplace_back(Quantifier::Exists, a);
  f->prefix.emplace_back(Quantifier::Exists, b);
  f->prefix.emplace_back(Quantifier::Exists, shadow);

  Clause& c = f->clauses[substituted_clause];
  if (!(c.a == target) && !(c.b == target))
    throw std::logic_error("substituted clause does not contain the target");
  Literal* lit = c.a == target ? &c.a : &c.b;
  *lit = Literal{shadow, target.negated};

  bool neg = target.negated;
  int x = target.var;
  // Four always-satisfiable linking clauses worth exactly +4; deviating the
  // shadow from x can gain at most 1 elsewhere but loses at least 1 here.
  f->clauses.push_back({Literal{x, neg}, Literal{a, false}});
  f->clauses.push_back({Literal{x, !neg}, Literal{b, false}});
  f->clauses.push_back({Literal{a, true}, Literal{shadow, !neg}});
  f->clauses.push_back({Literal{b, true}, Literal{shadow, neg}});
}

}  // namespace

CycleBreakResult break_cycles(const Qbf2& f, int k) {
  CycleBreakResult out{f, k, 0};
  int cap = f.clause_count();
  while (true) {
    LciGraph lci = lci_graph(out.formula);
    std::vector<int> cycle = find_cycle(lci.graph);
    if (cycle.empty()) break;
    if (out.applications >= cap)
      throw std::logic_error("cycle breaking exceeded its application bound");

    // Variable choice: lowest id with a positive literal vertex on the
    // cycle; if the cycle is all-negative, lowest id with a negative one.
    int chosen = -1;
    for (int v : cycle)
      if (v % 2 == 0 && (chosen < 0 || v < chosen)) chosen = v;
    if (chosen < 0)
      for (int v : cycle)
        if (chosen < 0 || v < chosen) chosen = v;
    Literal target{chosen / 2 + 1, chosen % 2 == 1};

    // The clause to rewrite rides on the cycle edge at the chosen vertex
    // whose other endpoint has the lower id (lowest clause index on ties).
    int other = -1;
    for (size_t i = 0; i < cycle.size(); ++i) {
      if (cycle[i] != chosen) continue;
      int prev = cycle[(i + cycle.size() - 1) % cycle.size()];
      int next = cycle[(i + 1) % cycle.size()];
      other = std::min(prev, next);
      break;
    }
    auto key = std::minmax(chosen, other);
    const auto& riders = lci.clause_edges.at({key.first, key.second});
    int clause_index = *std::min_element(riders.begin(), riders.end());

    append_gadget(&out.formula, clause_index, target);
    out.k += 4;
    ++out.applications;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Occurrence bounding

OccurrenceBoundResult bound_occurrences(const Qbf2& f, int k) {
  if (!f.purely_existential())
    throw std::invalid_argument(
        "occurrence bounding needs a purely existential formula");
  {
    std::vector<int> occurrences(f.variable_count() + 1, 0);
    for (const Clause& c : f.clauses) {
      ++occurrences[c.a.var];
      ++occurrences[c.b.var];
    }
    for (int v = 1; v <= f.variable_count(); ++v)
      if (occurrences[v] > 3)
        throw std::invalid_argument("variable " + std::to_string(v) +
                                    " occurs more than 3 times");
  }

  OccurrenceBoundResult out{f, k, 0, 0};
  while (true) {
    // Lowest variable with one sign carrying 3 occurrences. Its other sign
    // cannot occur (3 occurrence total cap), so satisfying that sign wins
    // all three clauses for free: delete them and lower the target by 3.
    int n = out.formula.variable_count();
    std::vector<std::array<int, 2>> count(n + 1, {0, 0});
    for (const Clause& c : out.formula.clauses) {
      ++count[c.a.var][c.a.negated ? 1 : 0];
      ++count[c.b.var][c.b.negated ? 1 : 0];
    }
    Literal victim{0, false};
    for (int v = 1; v <= n && victim.var == 0; ++v) {
      if (count[v][0] >= 3) victim = Literal{v, false};
      else if (count[v][1] >= 3) victim = Literal{v, true};
    }
    if (victim.var == 0) break;
    auto& clauses = out.formula.clauses;
    clauses.erase(std::remove_if(clauses.begin(), clauses.end(),
                                 [&](const Clause& c) {
                                   return c.a == victim || c.b == victim;
                                 }),
                  clauses.end());
    out.k -= 3;
    ++out.removals;
  }

  CycleBreakResult cb = break_cycles(out.formula, out.k);
  out.formula = std::move(cb.formula);
  out.k = cb.k;
  out.gadget_applications = cb.applications;
  return out;
}

Qbf2 duplicate(const Qbf2& f) {
  int n = f.variable_count();
  Qbf2 out = f;
  for (const auto& [q, v] : f.prefix) out.prefix.emplace_back(q, v + n);
  for (const Clause& c : f.clauses)
    out.clauses.push_back({Literal{c.a.var + n, c.a.negated},
                           Literal{c.b.var + n, c.b.negated}});
  return out;
}

Qbf2 pad_to_alternation(const Qbf2& f) {
  std::vector<Quantifier> slots;
  std::vector<int> renumber(f.variable_count() + 1, 0);
  auto expected = [&]() {
    // 1-based position slots.size()+1: Forall on odd, Exists on even
    return slots.size() % 2 == 0 ? Quantifier::Forall : Quantifier::Exists;
  };
  for (const auto& [q, v] : f.prefix) {
    while (q != expected()) slots.push_back(expected());
    slots.push_back(q);
    renumber[v] = static_cast<int>(slots.size());
  }
  if (slots.size() % 2 == 1) slots.push_back(expected());

  Qbf2 out;
  for (size_t i = 0; i < slots.size(); ++i)
    out.prefix.emplace_back(slots[i], static_cast<int>(i) + 1);
  for (const Clause& c : f.clauses)
    out.clauses.push_back({Literal{renumber[c.a.var], c.a.negated},
                           Literal{renumber[c.b.var], c.b.negated}});
  return out;
}

QbfSolveResult qbf_max_solve(const Qbf2& f, int k, int var_cap) {
  QbfSolveResult out;
  if (f.variable_count() > var_cap) {
    out.status = SolveStatus::ResourceExceeded;
    return out;
  }
  std::vector<bool> assignment(f.variable_count() + 1, false);
  std::function<int(size_t)> rec = [&](size_t pos) -> int {
    if (pos == f.prefix.size()) {
      int sat = 0;
      for (const Clause& c : f.clauses)
        if (assignment[c.a.var] != c.a.negated ||
            assignment[c.b.var] != c.b.negated)
          ++sat;
      return sat;
    }
    auto [q, v] = f.prefix[pos];
    assignment[v] = false;
    int lo = rec(pos + 1);
    assignment[v] = true;
    int hi = rec(pos + 1);
    return q == Quantifier::Exists ? std::max(lo, hi) : std::min(lo, hi);
  };
  out.value = rec(0);
  out.satisfier_wins = out.value >= k;
  return out;
}

// ---------------------------------------------------------------------------
// Game instances

namespace {

void validate_builder_input(const Qbf2& f) {
  if (f.clause_count() < 1)
    throw std::invalid_argument("instance builders need at least one clause");
  std::set<std::pair<std::pair<int, bool>, std::pair<int, bool>>> seen;
  for (const Clause& c : f.clauses) {
    if (c.a.var == c.b.var)
      throw std::invalid_argument("clause uses one variable twice");
    std::pair<int, bool> a{c.a.var, c.a.negated}, b{c.b.var, c.b.negated};
    if (b < a) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      throw std::invalid_argument("repeated clause");
  }
  LciGraph lci = lci_graph(f);
  if (!find_cycle(lci.graph).empty())
    throw std::invalid_argument(
        "incidence graph has a cycle; break cycles first");
}

ReductionArtifact build_instance(const Qbf2& input, int k,
                                 bool require_caterpillar) {
  validate_builder_input(input);
  if (require_caterpillar) {
    if (!input.purely_existential())
      throw std::invalid_argument(
          "caterpillar instances need a purely existential formula");
    std::vector<std::array<int, 2>> count(input.variable_count() + 1, {0, 0});
    for (const Clause& c : input.clauses) {
      ++count[c.a.var][c.a.negated ? 1 : 0];
      ++count[c.b.var][c.b.negated ? 1 : 0];
    }
    for (int v = 1; v <= input.variable_count(); ++v)
      if (count[v][0] > 2 || count[v][1] > 2)
        throw std::invalid_argument(
            "caterpillar instances need every sign to occur at most twice");
  }

  Qbf2 processed = duplicate(pad_to_alternation(input));
  int N = processed.variable_count();
  int mu = processed.clause_count();
  int m_half = input.clause_count();

  int clause_base = 2 * N;
  int chain_base = clause_base + mu;
  int next = chain_base + N;

  std::vector<std::pair<int, int>> edges;
  std::map<int, std::string> labels;
  ReductionArtifact art;
  art.m = m_half;
  art.k = k;
  art.processed = processed;

  art.literal_vertex.resize(2 * N);
  for (int i = 1; i <= N; ++i) {
    art.literal_vertex[2 * (i - 1)] = 2 * (i - 1);
    art.literal_vertex[2 * (i - 1) + 1] = 2 * (i - 1) + 1;
    labels[2 * (i - 1)] = "x" + std::to_string(i) + "+";
    labels[2 * (i - 1) + 1] = "x" + std::to_string(i) + "-";
  }
  for (int j = 0; j < mu; ++j) {
    const Clause& c = processed.clauses[j];
    int cv = clause_base + j;
    art.clause_vertex.push_back(cv);
    labels[cv] = "c" + std::to_string(j + 1);
    edges.emplace_back(LciGraph::vertex_of(c.a), cv);
    edges.emplace_back(cv, LciGraph::vertex_of(c.b));
  }
  for (int i = 1; i <= N; ++i) {
    int vv = chain_base + i - 1;
    art.chain_vertex.push_back(vv);
    labels[vv] = "v" + std::to_string(i);
    if (i > 1) edges.emplace_back(vv - 1, vv);
  }

  // Linking: components of the incidence graph in min-id order, joined
  // exit-to-entry, with the chain feeding the first component's entry.
  LciGraph lci = lci_graph(processed);
  auto comps = components(lci.graph);
  std::vector<int> entry, exit_;
  for (const auto& comp : comps) {
    int lo = -1, hi = -1;
    for (int local = 0; local < comp.graph->vertex_count(); ++local) {
      if (comp.graph->degree(local) > 1) continue;
      int v = comp.original_id[local];
      if (lo < 0 || v < lo) lo = v;
      if (v > hi) hi = v;
    }
    entry.push_back(lo);
    exit_.push_back(hi);
  }
  for (size_t c = 0; c + 1 < comps.size(); ++c)
    edges.emplace_back(exit_[c], entry[c + 1]);
  edges.emplace_back(chain_base + N - 1, entry[0]);

  auto bundle_size = [&](int position, bool chain) {
    int base = 16 * (N + 1 - position) * mu;
    return chain ? base - 4 * mu : base;
  };
  for (int host = 0; host < 2 * N; ++host) {
    int count = bundle_size(host / 2 + 1, false);
    art.bundles.push_back({host, next, count});
    for (int c = 0; c < count; ++c) edges.emplace_back(host, next++);
  }
  for (int i = 1; i <= N; ++i) {
    int host = chain_base + i - 1;
    int count = bundle_size(i, true);
    art.bundles.push_back({host, next, count});
    for (int c = 0; c < count; ++c) edges.emplace_back(host, next++);
  }

  auto instance = std::make_shared<Graph>(Graph::build(next, edges, labels));
  if (instance->edge_count() != next - 1 || components(*instance).size() != 1)
    throw std::logic_error("instance construction lost the tree shape");
  art.instance = instance;

  // Baseline: both players pair off every leaf bundle, then play each
  // variable block in the forced order (the block opener takes the positive
  // literal, the opponent answers with the negative one, the opener closes
  // on the chain vertex). Maker opens odd blocks.
  VertexSet maker(next), breaker(next);
  for (const LeafBundle& b : art.bundles) {
    for (int c = 0; c < b.count; ++c)
      (c < b.count / 2 ? maker : breaker).set(b.first_leaf + c);
  }
  for (int i = 1; i <= N; ++i) {
    bool maker_opens = i % 2 == 1;
    int pos_lit = 2 * (i - 1), neg_lit = pos_lit + 1;
    int chain_v = chain_base + i - 1;
    (maker_opens ? maker : breaker).set(pos_lit);
    (maker_opens ? breaker : maker).set(neg_lit);
    (maker_opens ? maker : breaker).set(chain_v);
  }
  art.baseline =
      settled_happy_count(Position{instance, std::move(maker), std::move(breaker)});
  art.threshold = art.baseline + m_half - k + 1;

  if (require_caterpillar) {
    // Internal shape check: removing every leaf must leave a path.
    std::vector<int> spine;
    for (int v = 0; v < instance->vertex_count(); ++v)
      if (instance->degree(v) >= 2) spine.push_back(v);
    Graph sg = induced_subgraph(*instance, spine);
    int ends = 0;
    for (int v = 0; v < sg.vertex_count(); ++v) {
      if (sg.degree(v) > 2)
        throw std::logic_error("caterpillar spine has a branch");
      if (sg.degree(v) <= 1) ++ends;
    }
    if (sg.edge_count() != sg.vertex_count() - 1 ||
        components(sg).size() != 1 || (sg.vertex_count() > 1 && ends != 2))
      throw std::logic_error("caterpillar spine is not a path");
  }
  return art;
}

}  // namespace

ReductionArtifact build_tree_instance(const Qbf2& f, int k) {
  return build_instance(f, k, false);
}

ReductionArtifact build_caterpillar_instance(const Qbf2& f, int k) {
  return build_instance(f, k, true);
}

}  // namespace shvg
