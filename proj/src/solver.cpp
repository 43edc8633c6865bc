#include "shvg/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <climits>
#include <random>
#include <thread>
#include <unordered_map>

#include "shvg/closed_form.hpp"

namespace shvg {
namespace {

struct BudgetExceeded {};

using Clock = std::chrono::steady_clock;

struct Budget {
  Clock::time_point deadline{};
  bool has_deadline = false;

  static Budget from(const SolveConfig& cfg) {
    Budget b;
    if (cfg.time_budget_seconds > 0) {
      b.has_deadline = true;
      b.deadline = Clock::now() +
                   std::chrono::duration_cast<Clock::duration>(
                       std::chrono::duration<double>(cfg.time_budget_seconds));
    }
    return b;
  }

  void check() const {
    if (has_deadline && Clock::now() > deadline) throw BudgetExceeded{};
  }
};

// Deterministic per-vertex hashing material, fixed by the vertex count.
struct HashTables {
  std::vector<uint64_t> type_rnd;  // same-type bucket hashing
  std::vector<uint64_t> req_rnd;   // requirement-set hashing
  std::vector<std::array<uint64_t, 4>> zobrist;  // {maker a/b, breaker a/b}

  explicit HashTables(int n) {
    std::mt19937_64 rng(0x51c0de5eedull);
    type_rnd.resize(n);
    req_rnd.resize(n);
    zobrist.resize(n);
    for (int v = 0; v < n; ++v) {
      type_rnd[v] = rng();
      req_rnd[v] = rng();
      for (auto& z : zobrist[v]) z = rng();
    }
  }
};

// Detects interchangeable free pairs (u, v): claiming u for Maker and v for
// Breaker preserves the exact score for both movers. Candidates are
// pre-filtered by same-type-in-the-free-subgraph bucketing; each candidate is
// then verified exactly: for every vertex w whose happiness the two claims
// could distinguish, the multisets of still-needed requirement sets
// N[w] \ (M ∪ {u}) — discarding those already broken by Breaker or by the
// partner vertex — must coincide on both sides. Vertices outside
// N[u] Δ N[v] contribute identically to both multisets and are skipped.
class PairingEngine {
 public:
  PairingEngine(const Graph& g, const HashTables& ht, const VertexSet& maker,
                const VertexSet& breaker)
      : g_(g), ht_(ht), maker_(maker), breaker_(breaker) {}

  bool find_pair(int* u_out, int* v_out) {
    int n = g_.vertex_count();
    free_list_.clear();
    for (int v = 0; v < n; ++v)
      if (is_free(v)) free_list_.push_back(v);
    if (free_list_.size() < 2) return false;

    open_hash_.assign(n, 0);
    for (int v : free_list_) {
      uint64_t h = 0;
      for (int u : g_.neighbors(v))
        if (is_free(u)) h ^= ht_.type_rnd[u];
      open_hash_[v] = h;
    }
    buckets_.clear();
    for (int v : free_list_) {
      buckets_[open_hash_[v]].push_back(v);                      // open twins
      buckets_[open_hash_[v] ^ ht_.type_rnd[v]].push_back(v);    // closed twins
    }
    for (int u : free_list_) {
      if (!is_free(u)) continue;  // claimed by an earlier pair in this scan
      if (probe(u, open_hash_[u], u_out, v_out)) return true;
      if (probe(u, open_hash_[u] ^ ht_.type_rnd[u], u_out, v_out)) return true;
    }
    return false;
  }

 private:
  bool is_free(int v) const { return !maker_.test(v) && !breaker_.test(v); }

  bool probe(int u, uint64_t bucket_key, int* u_out, int* v_out) {
    auto it = buckets_.find(bucket_key);
    if (it == buckets_.end()) return false;
    for (int v : it->second) {
      if (v <= u || !is_free(v)) continue;
      if (exact_check(u, v)) {
        *u_out = u;
        *v_out = v;
        return true;
      }
    }
    return false;
  }

  // Requirement set of w as seen from the pair member `me`: N[w]\(M ∪ {me}),
  // hashed; invalid (dropped) when it meets Breaker or the partner vertex.
  void collect(int w, int me, int other,
               std::vector<std::pair<uint64_t, int>>* out) {
    uint64_t h = 0;
    int size = 0;
    auto visit = [&](int z) -> bool {
      if (z == other) return false;
      if (z == me || maker_.test(z)) return true;
      if (breaker_.test(z)) return false;
      h ^= ht_.req_rnd[z];
      ++size;
      return true;
    };
    if (!visit(w)) return;
    for (int z : g_.neighbors(w))
      if (!visit(z)) return;
    out->emplace_back(h, size);
  }

  bool exact_check(int u, int v) {
    lhs_.clear();
    rhs_.clear();
    const VertexSet& cu = g_.closed_neighborhood(u);
    const VertexSet& cv = g_.closed_neighborhood(v);
    if (!cv.test(u)) collect(u, u, v, &lhs_);
    for (int w : g_.neighbors(u))
      if (!cv.test(w)) collect(w, u, v, &lhs_);
    if (!cu.test(v)) collect(v, v, u, &rhs_);
    for (int w : g_.neighbors(v))
      if (!cu.test(w)) collect(w, v, u, &rhs_);
    if (lhs_.size() != rhs_.size()) return false;
    std::sort(lhs_.begin(), lhs_.end());
    std::sort(rhs_.begin(), rhs_.end());
    return lhs_ == rhs_;
  }

  const Graph& g_;
  const HashTables& ht_;
  const VertexSet& maker_;
  const VertexSet& breaker_;
  std::vector<int> free_list_;
  std::vector<uint64_t> open_hash_;
  std::unordered_map<uint64_t, std::vector<int>> buckets_;
  std::vector<std::pair<uint64_t, int>> lhs_, rhs_;
};

struct Key {
  uint64_t a, b;
};

class MemoTable {
 public:
  explicit MemoTable(uint64_t limit) : limit_(limit) { rehash(1 << 12); }

  bool lookup(Key k, int* out) const {
    size_t mask = slots_.size() - 1;
    size_t i = index(k, mask);
    while (slots_[i].occupied) {
      if (slots_[i].a == k.a && slots_[i].b == k.b) {
        *out = slots_[i].score;
        return true;
      }
      i = (i + 1) & mask;
    }
    return false;
  }

  void store(Key k, int score) {
    if (count_ >= limit_) throw BudgetExceeded{};
    if ((count_ + 1) * 10 >= slots_.size() * 7) rehash(slots_.size() * 2);
    size_t mask = slots_.size() - 1;
    size_t i = index(k, mask);
    while (slots_[i].occupied) {
      if (slots_[i].a == k.a && slots_[i].b == k.b) {
        slots_[i].score = static_cast<int32_t>(score);
        return;
      }
      i = (i + 1) & mask;
    }
    slots_[i] = Entry{k.a, k.b, static_cast<int32_t>(score), true};
    ++count_;
  }

  uint64_t size() const { return count_; }

 private:
  struct Entry {
    uint64_t a = 0, b = 0;
    int32_t score = 0;
    bool occupied = false;
  };

  static size_t index(Key k, size_t mask) {
    return static_cast<size_t>((k.a ^ (k.b * 0x9e3779b97f4a7c15ull)) *
                               0xff51afd7ed558ccdull) &
           mask;
  }

  void rehash(size_t n) {
    std::vector<Entry> old = std::move(slots_);
    slots_.assign(n, Entry{});
    size_t mask = n - 1;
    for (const Entry& e : old) {
      if (!e.occupied) continue;
      size_t i = index(Key{e.a, e.b}, mask);
      while (slots_[i].occupied) i = (i + 1) & mask;
      slots_[i] = e;
    }
  }

  std::vector<Entry> slots_;
  uint64_t count_ = 0;
  uint64_t limit_;
};

// One recursive search instance over a fixed graph. Claims are done and
// undone in place; the settled-happy count and the position key are
// maintained incrementally. Positions on at most 63 vertices use the exact
// claim masks as the memo key; larger graphs use 128-bit incremental hashes.
class Worker {
 public:
  Worker(const Position& start, const SolveConfig& cfg, const HashTables& ht,
         const Budget& budget)
      : g_(*start.graph),
        cfg_(cfg),
        ht_(ht),
        budget_(budget),
        pos_(start),
        engine_(g_, ht, pos_.maker, pos_.breaker),
        memo_(cfg.memo_limit),
        exact_(g_.vertex_count() <= 63) {
    free_count_ = pos_.free_count();
    settled_ = settled_happy_count(pos_);
    if (!exact_) {
      for (int v : pos_.maker.to_vector()) {
        zob_a_ ^= ht_.zobrist[v][0];
        zob_b_ ^= ht_.zobrist[v][1];
      }
      for (int v : pos_.breaker.to_vector()) {
        zob_a_ ^= ht_.zobrist[v][2];
        zob_b_ ^= ht_.zobrist[v][3];
      }
    }
  }

  int rec(Player mover) {
    if ((++nodes & 1023) == 0) budget_.check();
    if (free_count_ == 0) return settled_;

    size_t frame = applied_.size();
    if (cfg_.super_lemma) {
      int a, b;
      while (engine_.find_pair(&a, &b)) {
        int delta = claim(a, Player::Maker);
        claim(b, Player::Breaker);
        applied_.push_back({a, b, delta});
        ++pairings;
      }
    }

    int result;
    if (free_count_ == 0) {
      result = settled_;
    } else {
      Key k = key(mover);
      int hit;
      if (memo_.lookup(k, &hit)) {
        ++memo_hits;
        result = hit;
      } else {
        std::vector<int> moves;
        if (cfg_.move_ordering) {
          MoveOrdering mo = order_moves(pos_, mover);
          for (size_t i = 0; i < mo.order.size(); ++i) {
            if (mo.keep[i])
              moves.push_back(mo.order[i]);
            else
              ++pruned;
          }
        } else {
          moves = pos_.free_vertices().to_vector();
        }
        int best = mover == Player::Maker ? INT_MIN : INT_MAX;
        for (int v : moves) {
          int delta = claim(v, mover);
          int val = rec(opponent(mover));
          unclaim(v, mover, delta);
          best = mover == Player::Maker ? std::max(best, val)
                                        : std::min(best, val);
        }
        memo_.store(k, best);
        result = best;
      }
    }

    while (applied_.size() > frame) {
      Applied ap = applied_.back();
      applied_.pop_back();
      unclaim(ap.breaker_v, Player::Breaker, 0);
      unclaim(ap.maker_v, Player::Maker, ap.delta);
    }
    return result;
  }

  int solve_move(int v, Player mover) {
    int delta = claim(v, mover);
    int val = rec(opponent(mover));
    unclaim(v, mover, delta);
    return val;
  }

  uint64_t nodes = 0, memo_hits = 0, pairings = 0, pruned = 0;
  uint64_t memo_entries() const { return memo_.size(); }

 private:
  struct Applied {
    int maker_v, breaker_v, delta;
  };

  int claim(int v, Player side) {
    int delta = 0;
    if (side == Player::Maker) {
      delta = instant_gain(pos_, v);
      pos_.maker.set(v);
      settled_ += delta;
      if (!exact_) {
        zob_a_ ^= ht_.zobrist[v][0];
        zob_b_ ^= ht_.zobrist[v][1];
      }
    } else {
      pos_.breaker.set(v);
      if (!exact_) {
        zob_a_ ^= ht_.zobrist[v][2];
        zob_b_ ^= ht_.zobrist[v][3];
      }
    }
    --free_count_;
    return delta;
  }

  void unclaim(int v, Player side, int delta) {
    if (side == Player::Maker) {
      pos_.maker.reset(v);
      settled_ -= delta;
      if (!exact_) {
        zob_a_ ^= ht_.zobrist[v][0];
        zob_b_ ^= ht_.zobrist[v][1];
      }
    } else {
      pos_.breaker.reset(v);
      if (!exact_) {
        zob_a_ ^= ht_.zobrist[v][2];
        zob_b_ ^= ht_.zobrist[v][3];
      }
    }
    ++free_count_;
  }

  Key key(Player mover) const {
    if (exact_) {
      uint64_t a = pos_.maker.words().empty() ? 0 : pos_.maker.words()[0];
      uint64_t b = pos_.breaker.words().empty() ? 0 : pos_.breaker.words()[0];
      if (mover == Player::Breaker) b |= uint64_t{1} << 63;
      return {a, b};
    }
    Key k{zob_a_, zob_b_};
    if (mover == Player::Breaker) k.b ^= 0x9e3779b97f4a7c15ull;
    return k;
  }

  const Graph& g_;
  SolveConfig cfg_;
  const HashTables& ht_;
  const Budget& budget_;
  Position pos_;
  PairingEngine engine_;
  MemoTable memo_;
  bool exact_;
  int free_count_ = 0;
  int settled_ = 0;
  uint64_t zob_a_ = 0, zob_b_ = 0;
  std::vector<Applied> applied_;
};

Position restrict_position(const Position& p, const Component& comp) {
  int n = comp.graph->vertex_count();
  VertexSet maker(n), breaker(n);
  for (int i = 0; i < n; ++i) {
    int v = comp.original_id[i];
    if (p.maker.test(v)) maker.set(i);
    if (p.breaker.test(v)) breaker.set(i);
  }
  return Position{comp.graph, std::move(maker), std::move(breaker)};
}

int solve_impl(Position pos, Player mover, const SolveConfig& cfg,
               SolveStats* stats, const Budget& budget);

// Search on one (already decomposed/split) position: root pairing reduction,
// then recursive minimax, with the root moves optionally fanned out over
// worker threads (each worker owns its memo table; results are identical to
// the sequential search).
int search_position(Position pos, Player mover, const SolveConfig& cfg,
                    SolveStats* stats, const Budget& budget) {
  HashTables ht(pos.graph->vertex_count());
  if (cfg.super_lemma) {
    PairingEngine engine(*pos.graph, ht, pos.maker, pos.breaker);
    int u, v;
    while (engine.find_pair(&u, &v)) {
      pos.maker.set(u);
      pos.breaker.set(v);
      ++stats->pairings_applied;
    }
  }

  int free_count = pos.free_count();
  if (cfg.threads <= 1 || free_count < 4) {
    Worker w(pos, cfg, ht, budget);
    int score = w.rec(mover);
    stats->nodes += w.nodes;
    stats->memo_entries += w.memo_entries();
    stats->memo_hits += w.memo_hits;
    stats->pairings_applied += w.pairings;
    stats->moves_pruned += w.pruned;
    return score;
  }

  std::vector<int> moves;
  if (cfg.move_ordering) {
    MoveOrdering mo = order_moves(pos, mover);
    for (size_t i = 0; i < mo.order.size(); ++i) {
      if (mo.keep[i])
        moves.push_back(mo.order[i]);
      else
        ++stats->moves_pruned;
    }
  } else {
    moves = pos.free_vertices().to_vector();
  }

  int thread_count = std::min<int>(cfg.threads, static_cast<int>(moves.size()));
  std::atomic<size_t> next{0};
  std::atomic<bool> exceeded{false};
  std::vector<int> values(moves.size(), 0);
  std::vector<SolveStats> worker_stats(thread_count);
  std::vector<std::thread> pool;
  for (int t = 0; t < thread_count; ++t) {
    pool.emplace_back([&, t] {
      try {
        Worker w(pos, cfg, ht, budget);
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= moves.size() || exceeded.load()) break;
          values[i] = w.solve_move(moves[i], mover);
        }
        worker_stats[t].nodes = w.nodes;
        worker_stats[t].memo_entries = w.memo_entries();
        worker_stats[t].memo_hits = w.memo_hits;
        worker_stats[t].pairings_applied = w.pairings;
        worker_stats[t].moves_pruned = w.pruned;
      } catch (const BudgetExceeded&) {
        exceeded.store(true);
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& ws : worker_stats) {
    stats->nodes += ws.nodes;
    stats->memo_entries += ws.memo_entries;
    stats->memo_hits += ws.memo_hits;
    stats->pairings_applied += ws.pairings_applied;
    stats->moves_pruned += ws.moves_pruned;
  }
  if (exceeded.load()) throw BudgetExceeded{};
  int best = values[0];
  for (int v : values)
    best = mover == Player::Maker ? std::max(best, v) : std::min(best, v);
  return best;
}

int solve_impl(Position pos, Player mover, const SolveConfig& cfg,
               SolveStats* stats, const Budget& budget) {
  budget.check();
  if (cfg.decompose && pos.breaker.any()) {
    pos = decompose(pos);
    stats->decomposed = true;
  }

  bool empty_position = pos.maker.empty() && pos.breaker.empty();
  if (empty_position && cfg.closed_form_dispatch) {
    if (auto s = formula_score(*pos.graph, mover)) {
      stats->closed_form_used = true;
      return *s;
    }
  }
  if (empty_position && cfg.pds_fast_path) {
    auto pds = find_pairing_dominating_set(*pos.graph);
    if (pds.status == PairingDominationResult::Status::Found) {
      stats->pairing_domination_used = true;
      return 0;
    }
  }

  if (cfg.component_split) {
    auto comps = components(*pos.graph);
    if (comps.size() >= 2) {
      int extracted = 0;
      std::vector<size_t> residual;
      for (size_t i = 0; i < comps.size(); ++i) {
        Position comp_pos = restrict_position(pos, comps[i]);
        int ms = solve_impl(comp_pos, Player::Maker, cfg, stats, budget);
        int bs = solve_impl(comp_pos, Player::Breaker, cfg, stats, budget);
        if (ms == bs) {
          extracted += ms;
          ++stats->components_extracted;
        } else {
          residual.push_back(i);
        }
      }
      if (residual.empty()) return extracted;
      if (residual.size() == 1)
        return extracted + search_position(
                               restrict_position(pos, comps[residual[0]]),
                               mover, cfg, stats, budget);
      std::vector<int> keep;
      for (size_t i : residual)
        keep.insert(keep.end(), comps[i].original_id.begin(),
                    comps[i].original_id.end());
      std::sort(keep.begin(), keep.end());
      Component joint{
          std::make_shared<Graph>(induced_subgraph(*pos.graph, keep)), keep};
      return extracted +
             search_position(restrict_position(pos, joint), mover, cfg, stats,
                             budget);
    }
  }
  return search_position(std::move(pos), mover, cfg, stats, budget);
}

}  // namespace

SolveResult solve(const Position& p, Player mover, const SolveConfig& cfg) {
  p.validate();
  SolveResult out;
  Budget budget = Budget::from(cfg);
  try {
    out.score = solve_impl(p, mover, cfg, &out.stats, budget);
  } catch (const BudgetExceeded&) {
    out.status = SolveStatus::ResourceExceeded;
    out.score = 0;
  }
  return out;
}

PairSolveResult solve_pair(const Graph& g, const SolveConfig& cfg) {
  auto shared = std::make_shared<Graph>(g);
  Position start = Position::empty(shared);
  PairSolveResult out;
  SolveResult ms = solve(start, Player::Maker, cfg);
  SolveResult bs = solve(start, Player::Breaker, cfg);
  out.stats = ms.stats;
  out.stats.nodes += bs.stats.nodes;
  out.stats.memo_entries += bs.stats.memo_entries;
  out.stats.memo_hits += bs.stats.memo_hits;
  out.stats.pairings_applied += bs.stats.pairings_applied;
  out.stats.moves_pruned += bs.stats.moves_pruned;
  out.stats.components_extracted += bs.stats.components_extracted;
  if (ms.status != SolveStatus::Solved || bs.status != SolveStatus::Solved) {
    out.status = SolveStatus::ResourceExceeded;
    return out;
  }
  out.score = ScorePair{ms.score, bs.score};
  return out;
}

MoveOrdering order_moves(const Position& p, Player mover) {
  (void)mover;  // both players use the same ordering heuristic
  p.validate();
  const Graph& g = *p.graph;
  struct Info {
    int v, gain, weight;
  };
  std::vector<Info> infos;
  for (int v : p.free_vertices().to_vector()) {
    VertexSet open = g.closed_neighborhood(v);
    open.subtract(p.breaker);
    infos.push_back(Info{v, instant_gain(p, v), open.count()});
  }
  std::sort(infos.begin(), infos.end(), [](const Info& a, const Info& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.v < b.v;
  });

  MoveOrdering out;
  std::vector<Info> kept;
  for (const Info& u : infos) {
    bool prunable = false;
    for (const Info& v : kept) {
      if (v.gain < u.weight) break;  // kept is sorted by descending gain
      // Mutual dominance keeps the lower id.
      if (u.gain >= v.weight && u.v < v.v) continue;
      prunable = true;
      break;
    }
    out.order.push_back(u.v);
    out.keep.push_back(!prunable);
    out.gain.push_back(u.gain);
    out.weight.push_back(u.weight);
    if (!prunable) kept.push_back(u);
  }
  return out;
}

BestMove best_move(const Position& p, Player mover, const SolveConfig& cfg) {
  p.validate();
  if (p.free_count() == 0)
    throw std::invalid_argument("best_move requires a non-terminal position");
  std::vector<int> moves;
  if (cfg.move_ordering) {
    MoveOrdering mo = order_moves(p, mover);
    for (size_t i = 0; i < mo.order.size(); ++i)
      if (mo.keep[i]) moves.push_back(mo.order[i]);
  } else {
    moves = p.free_vertices().to_vector();
  }
  BestMove best{-1, 0};
  for (int v : moves) {
    Position child = p;
    (mover == Player::Maker ? child.maker : child.breaker).set(v);
    SolveResult r = solve(child, opponent(mover), cfg);
    if (r.status != SolveStatus::Solved)
      throw ResourceError("solve budget exceeded while picking a move");
    bool better = best.vertex < 0 ||
                  (mover == Player::Maker ? r.score > best.score
                                          : r.score < best.score);
    if (better) best = BestMove{v, r.score};
  }
  return best;
}

PairingReduction super_lemma_reduce(const Position& p) {
  p.validate();
  PairingReduction out{p, {}};
  HashTables ht(p.graph->vertex_count());
  PairingEngine engine(*p.graph, ht, out.position.maker, out.position.breaker);
  int u, v;
  while (engine.find_pair(&u, &v)) {
    out.position.maker.set(u);
    out.position.breaker.set(v);
    out.pairs.emplace_back(u, v);
  }
  return out;
}

SplitResult split_components(const Graph& g, const SolveConfig& cfg) {
  SolveConfig sub = cfg;
  sub.threads = 1;
  return split_components_with(
      g, cfg.closed_form_dispatch, cfg.pds_fast_path,
      [&sub](const Graph& comp) {
        PairSolveResult r = solve_pair(comp, sub);
        if (r.status != SolveStatus::Solved)
          throw ResourceError("component solve exceeded its budget");
        return r.score;
      });
}

}  // namespace shvg
