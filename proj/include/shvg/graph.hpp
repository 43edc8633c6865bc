#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace shvg {

enum class Player { Maker, Breaker };

inline Player opponent(Player p) {
  return p == Player::Maker ? Player::Breaker : Player::Maker;
}

const char* to_string(Player p);

// Thrown by the text-format parsers; carries the 1-based line of the offence.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Fixed-universe set of vertex ids 0..n-1, packed into 64-bit words.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe);

  int universe() const { return n_; }
  bool test(int v) const { return (words_[word(v)] >> bit(v)) & 1u; }
  void set(int v) { words_[word(v)] |= uint64_t{1} << bit(v); }
  void reset(int v) { words_[word(v)] &= ~(uint64_t{1} << bit(v)); }
  void clear();

  int count() const;
  bool empty() const;
  bool any() const { return !empty(); }

  VertexSet& operator|=(const VertexSet& o);
  VertexSet& operator&=(const VertexSet& o);
  VertexSet& subtract(const VertexSet& o);  // set difference, in place

  bool contains_all(const VertexSet& o) const;  // superset test
  bool intersects(const VertexSet& o) const;
  bool operator==(const VertexSet& o) const;
  bool operator!=(const VertexSet& o) const { return !(*this == o); }

  int first() const;  // lowest set id, or -1 when empty
  std::vector<int> to_vector() const;

  const std::vector<uint64_t>& words() const { return words_; }

  static VertexSet full(int universe);

 private:
  static int word(int v) { return v >> 6; }
  static int bit(int v) { return v & 63; }

  int n_ = 0;
  std::vector<uint64_t> words_;
};

// Simple undirected graph on dense vertex ids 0..n-1. No self-loops, no
// parallel edges (builders deduplicate). Immutable once built.
class Graph {
 public:
  static Graph build(int n, const std::vector<std::pair<int, int>>& edges,
                     std::map<int, std::string> labels = {});

  int vertex_count() const { return n_; }
  int edge_count() const { return m_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const;
  const VertexSet& closed_neighborhood(int v) const { return closed_nb_[v]; }
  const std::map<int, std::string>& labels() const { return labels_; }

  bool operator==(const Graph& o) const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<VertexSet> closed_nb_;
  std::map<int, std::string> labels_;
};

using GraphPtr = std::shared_ptr<const Graph>;

// A game position: disjoint claimed sets over a fixed graph. Any disjoint
// pair is legal; positions are not required to be reachable by alternation.
struct Position {
  GraphPtr graph;
  VertexSet maker;
  VertexSet breaker;

  static Position empty(GraphPtr g);
  // Throws std::invalid_argument on overlap or universe mismatch.
  void validate() const;

  VertexSet free_vertices() const;
  int free_count() const;
  bool is_terminal() const { return free_count() == 0; }
};

// Vertices whose closed neighborhood is fully Maker-claimed. No terminality
// requirement; in a terminal position this is the final score.
int settled_happy_count(const Position& p);

// Final score of a terminal position; throws std::invalid_argument when free
// vertices remain.
int happy_count(const Position& p);

// Number of vertices that become settled-happy if Maker claims free vertex v.
// Throws std::invalid_argument when v is not free.
int instant_gain(const Position& p, int v);

// True when N[w] is contained in m ∪ {extra}; extra < 0 means no extra vertex.
bool closed_neighborhood_inside(const Graph& g, int w, const VertexSet& m,
                                int extra);

// Breaker-claim normal form: keeps Maker and free vertices (renumbered in
// ascending id order) with their induced edges, and replaces each Breaker
// claim by pendant Breaker vertices — one fresh pendant per surviving vertex
// that had at least one Breaker neighbour, appended in ascending host order.
struct Decomposition {
  Position position;
  std::vector<int> survivor_old_id;  // new id -> old id, survivors only
  std::vector<int> pendant_host;     // pendant order -> new id of its host
};

Decomposition decompose_detailed(const Position& p);
Position decompose(const Position& p);

// Coarsest partition into same-type classes: u,v belong together when
// N(u)\{v} = N(v)\{u}. Each class is either pairwise adjacent (clique kind)
// or pairwise non-adjacent (independent kind); singletons report independent.
struct NeighborhoodPartition {
  enum class Kind { Clique, Independent };
  std::vector<std::vector<int>> classes;  // sorted ids, classes by min id
  std::vector<Kind> kinds;                // parallel to classes
  std::vector<int> class_of;              // vertex -> class index
};

NeighborhoodPartition neighborhood_partition(const Graph& g);

// Induced subgraph on the given (strictly ascending) vertex ids; labels carry
// over to the renumbered vertices.
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

struct Component {
  GraphPtr graph;
  std::vector<int> original_id;  // local id -> id in the host graph
};

// Connected components ordered by their minimum original vertex id.
std::vector<Component> components(const Graph& g);

// Text format:
//   # comment and blank lines anywhere
//   n m
//   <m lines: "u v">
//   label v name            (optional, repeatable)
//   M: v1 v2 ...            (positions only, optional)
//   B: v1 v2 ...            (positions only, optional)
Graph parse_graph(const std::string& text);
Position parse_position(const std::string& text);
std::string serialize_graph(const Graph& g);
std::string serialize_position(const Position& p);

}  // namespace shvg
