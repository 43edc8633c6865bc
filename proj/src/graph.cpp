#include "shvg/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace shvg {

const char* to_string(Player p) {
  return p == Player::Maker ? "maker" : "breaker";
}

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

// ---------------------------------------------------------------------------
// VertexSet

VertexSet::VertexSet(int universe)
    : n_(universe), words_((universe + 63) / 64, 0) {}

void VertexSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

int VertexSet::count() const {
  int c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool VertexSet::empty() const {
  for (uint64_t w : words_)
    if (w) return false;
  return true;
}

VertexSet& VertexSet::operator|=(const VertexSet& o) {
  for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& o) {
  for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

VertexSet& VertexSet::subtract(const VertexSet& o) {
  for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

bool VertexSet::contains_all(const VertexSet& o) const {
  for (size_t i = 0; i < words_.size(); ++i)
    if (o.words_[i] & ~words_[i]) return false;
  return true;
}

bool VertexSet::intersects(const VertexSet& o) const {
  for (size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & o.words_[i]) return true;
  return false;
}

bool VertexSet::operator==(const VertexSet& o) const {
  return n_ == o.n_ && words_ == o.words_;
}

int VertexSet::first() const {
  for (size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
  return -1;
}

std::vector<int> VertexSet::to_vector() const {
  std::vector<int> out;
  for (size_t i = 0; i < words_.size(); ++i) {
    uint64_t w = words_[i];
    while (w) {
      out.push_back(static_cast<int>(i * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

VertexSet VertexSet::full(int universe) {
  VertexSet s(universe);
  for (size_t i = 0; i < s.words_.size(); ++i) s.words_[i] = ~uint64_t{0};
  int spare = static_cast<int>(s.words_.size()) * 64 - universe;
  if (spare > 0 && !s.words_.empty())
    s.words_.back() >>= spare;
  return s;
}

// ---------------------------------------------------------------------------
// Graph

Graph Graph::build(int n, const std::vector<std::pair<int, int>>& edges,
                   std::map<int, std::string> labels) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  Graph g;
  g.n_ = n;
  g.adj_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge endpoint out of range: " +
                                  std::to_string(u) + " " + std::to_string(v));
    if (u == v)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) continue;  // duplicates collapse
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  g.m_ = static_cast<int>(seen.size());
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  g.closed_nb_.assign(n, VertexSet(n));
  for (int v = 0; v < n; ++v) {
    g.closed_nb_[v].set(v);
    for (int u : g.adj_[v]) g.closed_nb_[v].set(u);
  }
  for (auto& [v, name] : labels) {
    if (v < 0 || v >= n)
      throw std::invalid_argument("label vertex out of range: " +
                                  std::to_string(v));
    (void)name;
  }
  g.labels_ = std::move(labels);
  return g;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::operator==(const Graph& o) const {
  return n_ == o.n_ && adj_ == o.adj_ && labels_ == o.labels_;
}

// ---------------------------------------------------------------------------
// Position and scoring

Position Position::empty(GraphPtr g) {
  int n = g->vertex_count();
  return Position{std::move(g), VertexSet(n), VertexSet(n)};
}

void Position::validate() const {
  if (!graph) throw std::invalid_argument("position without a graph");
  int n = graph->vertex_count();
  if (maker.universe() != n || breaker.universe() != n)
    throw std::invalid_argument("claim sets sized for a different graph");
  if (maker.intersects(breaker))
    throw std::invalid_argument("maker and breaker claims overlap");
}

VertexSet Position::free_vertices() const {
  VertexSet f = VertexSet::full(graph->vertex_count());
  f.subtract(maker);
  f.subtract(breaker);
  return f;
}

int Position::free_count() const {
  return graph->vertex_count() - maker.count() - breaker.count();
}

bool closed_neighborhood_inside(const Graph& g, int w, const VertexSet& m,
                                int extra) {
  const auto& nb = g.neighbors(w);
  if (nb.size() <= 16) {
    if (!m.test(w) && w != extra) return false;
    for (int u : nb)
      if (!m.test(u) && u != extra) return false;
    return true;
  }
  const auto& nw = g.closed_neighborhood(w).words();
  const auto& mw = m.words();
  size_t patch_word = extra >= 0 ? static_cast<size_t>(extra >> 6) : nw.size();
  uint64_t patch_bit = extra >= 0 ? uint64_t{1} << (extra & 63) : 0;
  for (size_t i = 0; i < nw.size(); ++i) {
    uint64_t allowed = mw[i] | (i == patch_word ? patch_bit : 0);
    if (nw[i] & ~allowed) return false;
  }
  return true;
}

int settled_happy_count(const Position& p) {
  p.validate();
  const Graph& g = *p.graph;
  int c = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (closed_neighborhood_inside(g, v, p.maker, -1)) ++c;
  return c;
}

int happy_count(const Position& p) {
  p.validate();
  if (!p.is_terminal())
    throw std::invalid_argument("happy_count requires a terminal position");
  return settled_happy_count(p);
}

int instant_gain(const Position& p, int v) {
  p.validate();
  const Graph& g = *p.graph;
  if (v < 0 || v >= g.vertex_count())
    throw std::invalid_argument("vertex out of range");
  if (p.maker.test(v) || p.breaker.test(v))
    throw std::invalid_argument("instant_gain requires a free vertex");
  // Only w itself or Maker vertices can become happy, and w must lie in N[v]
  // to be affected by the claim.
  int c = 0;
  if (closed_neighborhood_inside(g, v, p.maker, v)) ++c;
  for (int w : g.neighbors(v)) {
    if (!p.maker.test(w)) continue;
    if (closed_neighborhood_inside(g, w, p.maker, v)) ++c;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Breaker-claim normal form

Decomposition decompose_detailed(const Position& p) {
  p.validate();
  const Graph& g = *p.graph;
  int n = g.vertex_count();

  std::vector<int> survivors;
  std::vector<int> new_id(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!p.breaker.test(v)) {
      new_id[v] = static_cast<int>(survivors.size());
      survivors.push_back(v);
    }
  }
  int ns = static_cast<int>(survivors.size());

  std::vector<std::pair<int, int>> edges;
  std::map<int, std::string> labels;
  for (int v : survivors) {
    for (int u : g.neighbors(v))
      if (u > v && new_id[u] >= 0) edges.emplace_back(new_id[v], new_id[u]);
    auto it = g.labels().find(v);
    if (it != g.labels().end()) labels[new_id[v]] = it->second;
  }

  std::vector<int> pendant_host;
  int next = ns;
  for (int v : survivors) {
    bool touched = false;
    for (int u : g.neighbors(v))
      if (p.breaker.test(u)) {
        touched = true;
        break;
      }
    if (touched) {
      edges.emplace_back(new_id[v], next);
      pendant_host.push_back(new_id[v]);
      ++next;
    }
  }

  auto out = std::make_shared<Graph>(
      Graph::build(next, edges, std::move(labels)));
  VertexSet maker(next), breaker(next);
  for (int v : survivors)
    if (p.maker.test(v)) maker.set(new_id[v]);
  for (int q = ns; q < next; ++q) breaker.set(q);

  return Decomposition{Position{std::move(out), std::move(maker),
                                std::move(breaker)},
                       std::move(survivors), std::move(pendant_host)};
}

Position decompose(const Position& p) { return decompose_detailed(p).position; }

// ---------------------------------------------------------------------------
// Same-type partition

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

NeighborhoodPartition neighborhood_partition(const Graph& g) {
  int n = g.vertex_count();
  UnionFind uf(n);
  std::map<std::vector<int>, int> open_rep, closed_rep;
  for (int v = 0; v < n; ++v) {
    std::vector<int> open = g.neighbors(v);
    std::vector<int> closed = open;
    closed.insert(std::lower_bound(closed.begin(), closed.end(), v), v);
    if (auto [it, fresh] = open_rep.try_emplace(std::move(open), v); !fresh)
      uf.unite(v, it->second);
    if (auto [it, fresh] = closed_rep.try_emplace(std::move(closed), v); !fresh)
      uf.unite(v, it->second);
  }

  NeighborhoodPartition part;
  part.class_of.assign(n, -1);
  std::map<int, int> index_of_root;
  for (int v = 0; v < n; ++v) {
    int r = uf.find(v);
    auto [it, fresh] =
        index_of_root.try_emplace(r, static_cast<int>(part.classes.size()));
    if (fresh) part.classes.emplace_back();
    part.classes[it->second].push_back(v);
    part.class_of[v] = it->second;
  }
  for (const auto& cls : part.classes) {
    bool clique = cls.size() >= 2 && g.has_edge(cls[0], cls[1]);
    part.kinds.push_back(clique ? NeighborhoodPartition::Kind::Clique
                                : NeighborhoodPartition::Kind::Independent);
  }
  return part;
}

// ---------------------------------------------------------------------------
// Subgraphs and components

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> new_id(g.vertex_count(), -1);
  for (size_t i = 0; i < vertices.size(); ++i) {
    int v = vertices[i];
    if (v < 0 || v >= g.vertex_count() || new_id[v] >= 0 ||
        (i > 0 && vertices[i - 1] >= v))
      throw std::invalid_argument("vertex list must be strictly ascending");
    new_id[v] = static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> edges;
  std::map<int, std::string> labels;
  for (int v : vertices) {
    for (int u : g.neighbors(v))
      if (u > v && new_id[u] >= 0) edges.emplace_back(new_id[v], new_id[u]);
    auto it = g.labels().find(v);
    if (it != g.labels().end()) labels[new_id[v]] = it->second;
  }
  return Graph::build(static_cast<int>(vertices.size()), edges,
                      std::move(labels));
}

std::vector<Component> components(const Graph& g) {
  int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  int count = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : g.neighbors(v))
        if (comp[u] < 0) {
          comp[u] = count;
          stack.push_back(u);
        }
    }
    ++count;
  }
  std::vector<std::vector<int>> member(count);
  for (int v = 0; v < n; ++v) member[comp[v]].push_back(v);
  std::vector<Component> out;
  out.reserve(count);
  for (auto& verts : member)
    out.push_back(Component{
        std::make_shared<Graph>(induced_subgraph(g, verts)), std::move(verts)});
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

int parse_int(const Line& line, const std::string& tok, const char* what) {
  size_t pos = 0;
  int value;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line.number, std::string("expected ") + what + ", got '" +
                                      tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line.number, std::string("expected ") + what + ", got '" +
                                      tok + "'");
  return value;
}

int parse_vertex(const Line& line, const std::string& tok, int n) {
  int v = parse_int(line, tok, "a vertex id");
  if (v < 0 || v >= n)
    throw ParseError(line.number,
                     "vertex id " + std::to_string(v) + " out of range [0, " +
                         std::to_string(n) + ")");
  return v;
}

struct ParsedFile {
  Graph graph;
  bool has_maker = false, has_breaker = false;
  VertexSet maker, breaker;
  int breaker_line = 0, maker_line = 0;
};

ParsedFile parse_file(const std::string& text) {
  auto lines = tokenize(text);
  size_t i = 0;
  if (i >= lines.size())
    throw ParseError(lines.empty() ? 1 : lines.back().number,
                     "missing header line 'n m'");
  const Line& header = lines[i++];
  if (header.tokens.size() != 2)
    throw ParseError(header.number, "header must be 'n m'");
  int n = parse_int(header, header.tokens[0], "a vertex count");
  int m = parse_int(header, header.tokens[1], "an edge count");
  if (n < 0) throw ParseError(header.number, "negative vertex count");
  if (m < 0) throw ParseError(header.number, "negative edge count");

  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < m; ++e) {
    if (i >= lines.size())
      throw ParseError(lines.back().number,
                       "expected " + std::to_string(m) + " edge lines, got " +
                           std::to_string(e));
    const Line& line = lines[i++];
    if (line.tokens.size() != 2)
      throw ParseError(line.number, "edge line must be 'u v'");
    int u = parse_vertex(line, line.tokens[0], n);
    int v = parse_vertex(line, line.tokens[1], n);
    if (u == v)
      throw ParseError(line.number, "self-loop at vertex " + std::to_string(u));
    edges.emplace_back(u, v);
  }

  std::map<int, std::string> labels;
  ParsedFile out{Graph::build(0, {}), false, false, VertexSet(n), VertexSet(n),
                 0, 0};
  for (; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& kind = line.tokens[0];
    if (kind == "label") {
      if (line.tokens.size() != 3)
        throw ParseError(line.number, "label line must be 'label v name'");
      int v = parse_vertex(line, line.tokens[1], n);
      if (!labels.emplace(v, line.tokens[2]).second)
        throw ParseError(line.number,
                         "duplicate label for vertex " + std::to_string(v));
    } else if (kind == "M:" || kind == "B:") {
      bool is_maker = kind == "M:";
      bool& seen = is_maker ? out.has_maker : out.has_breaker;
      if (seen)
        throw ParseError(line.number, "duplicate " + kind + " line");
      seen = true;
      (is_maker ? out.maker_line : out.breaker_line) = line.number;
      VertexSet& side = is_maker ? out.maker : out.breaker;
      for (size_t t = 1; t < line.tokens.size(); ++t)
        side.set(parse_vertex(line, line.tokens[t], n));
    } else {
      throw ParseError(line.number, "unexpected line '" + kind + "'");
    }
  }
  if (out.maker.intersects(out.breaker))
    throw ParseError(std::max(out.maker_line, out.breaker_line),
                     "maker and breaker claims overlap");
  out.graph = Graph::build(n, edges, std::move(labels));
  return out;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  ParsedFile f = parse_file(text);
  return std::move(f.graph);
}

Position parse_position(const std::string& text) {
  ParsedFile f = parse_file(text);
  auto g = std::make_shared<Graph>(std::move(f.graph));
  return Position{std::move(g), std::move(f.maker), std::move(f.breaker)};
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int u : g.neighbors(v))
      if (u > v) out << v << ' ' << u << '\n';
  for (const auto& [v, name] : g.labels())
    out << "label " << v << ' ' << name << '\n';
  return out.str();
}

std::string serialize_position(const Position& p) {
  p.validate();
  std::ostringstream out;
  out << serialize_graph(*p.graph);
  out << "M:";
  for (int v : p.maker.to_vector()) out << ' ' << v;
  out << "\nB:";
  for (int v : p.breaker.to_vector()) out << ' ' << v;
  out << '\n';
  return out.str();
}

}  // namespace shvg
