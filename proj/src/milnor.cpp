#include "shvg/milnor.hpp"

#include <algorithm>
#include <set>

#include "shvg/closed_form.hpp"

namespace shvg {

SumBounds sum_bounds(const std::vector<ScorePair>& parts) {
  if (parts.empty())
    throw std::invalid_argument("sum_bounds needs at least one part");
  SumBounds b{parts[0].ms, parts[0].ms, parts[0].bs, parts[0].bs};
  for (size_t i = 1; i < parts.size(); ++i) {
    const ScorePair& p = parts[i];
    SumBounds next;
    next.bs_lo = b.bs_lo + p.bs;
    next.bs_hi = std::min(b.bs_hi + p.ms, b.ms_hi + p.bs);
    next.ms_lo = std::max(b.ms_lo + p.bs, b.bs_lo + p.ms);
    next.ms_hi = b.ms_hi + p.ms;
    b = next;
  }
  return b;
}

namespace {

struct PdsSearch {
  struct Candidate {
    int x, y;
    VertexSet coverage;  // N[x] ∩ N[y]
  };

  const Graph& g;
  std::vector<Candidate> candidates;
  // candidate indices that cover each vertex
  std::vector<std::vector<int>> covering;
  VertexSet covered, used;
  std::vector<std::pair<int, int>> chosen;
  std::set<std::pair<uint64_t, uint64_t>> failed;  // (used, covered) dead ends
  long long nodes = 0;
  static constexpr long long kNodeCap = 500000;
  bool aborted = false;

  explicit PdsSearch(const Graph& graph)
      : g(graph), covered(graph.vertex_count()), used(graph.vertex_count()) {
    int n = g.vertex_count();
    covering.assign(n, {});
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        VertexSet c = g.closed_neighborhood(x);
        c &= g.closed_neighborhood(y);
        if (c.empty()) continue;
        candidates.push_back({x, y, std::move(c)});
      }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return a.coverage.count() > b.coverage.count();
                     });
    for (size_t i = 0; i < candidates.size(); ++i)
      for (int v : candidates[i].coverage.to_vector())
        covering[v].push_back(static_cast<int>(i));
  }

  bool run() {
    if (++nodes > kNodeCap) {
      aborted = true;
      return false;
    }
    int v = -1;
    for (int u = 0; u < g.vertex_count(); ++u)
      if (!covered.test(u)) {
        v = u;
        break;
      }
    if (v < 0) return true;
    // n <= 64 in practice (size guard), so one word identifies each mask.
    auto key = std::make_pair(used.words().empty() ? 0 : used.words()[0],
                              covered.words().empty() ? 0 : covered.words()[0]);
    if (failed.count(key)) return false;
    for (int ci : covering[v]) {
      const Candidate& c = candidates[ci];
      if (used.test(c.x) || used.test(c.y)) continue;
      VertexSet saved_covered = covered;
      used.set(c.x);
      used.set(c.y);
      covered |= c.coverage;
      chosen.emplace_back(c.x, c.y);
      if (run()) return true;
      chosen.pop_back();
      covered = std::move(saved_covered);
      used.reset(c.x);
      used.reset(c.y);
      if (aborted) return false;
    }
    failed.insert(key);
    return false;
  }
};

}  // namespace

PairingDominationResult find_pairing_dominating_set(const Graph& g,
                                                    int size_guard) {
  PairingDominationResult out;
  if (g.vertex_count() > size_guard || g.vertex_count() > 64) {
    out.status = PairingDominationResult::Status::NotAttempted;
    return out;
  }
  if (g.vertex_count() == 0) {
    out.status = PairingDominationResult::Status::Found;
    return out;
  }
  PdsSearch search(g);
  if (search.run()) {
    out.status = PairingDominationResult::Status::Found;
    out.pairs = std::move(search.chosen);
  } else {
    out.status = search.aborted ? PairingDominationResult::Status::NotAttempted
                                : PairingDominationResult::Status::NotFound;
  }
  return out;
}

SplitResult split_components_with(const Graph& g, bool use_closed_form,
                                  bool use_pairing_domination,
                                  const PairSolveFn& solve_pair) {
  SplitResult out;
  std::vector<ScorePair> residual_pairs;
  for (auto& comp : components(g)) {
    ComponentScore cs{comp, ScorePair{}, false,
                      ComponentScore::Method::Solve};
    bool have = false;
    if (use_closed_form) {
      auto ms = formula_score(*comp.graph, Player::Maker);
      auto bs = formula_score(*comp.graph, Player::Breaker);
      if (ms && bs) {
        cs.score = ScorePair{*ms, *bs};
        cs.method = ComponentScore::Method::ClosedForm;
        have = true;
      }
    }
    if (!have && use_pairing_domination) {
      auto pds = find_pairing_dominating_set(*comp.graph);
      if (pds.status == PairingDominationResult::Status::Found) {
        cs.score = ScorePair{0, 0};
        cs.method = ComponentScore::Method::PairingDomination;
        have = true;
      }
    }
    if (!have) {
      cs.score = solve_pair(*comp.graph);
      cs.method = ComponentScore::Method::Solve;
    }
    cs.extracted = cs.score.fixed();
    if (cs.extracted) {
      out.extracted_score += cs.score.ms;
    } else {
      out.residual.push_back(comp);
      residual_pairs.push_back(cs.score);
    }
    out.details.push_back(std::move(cs));
  }
  if (!residual_pairs.empty()) out.residual_bounds = sum_bounds(residual_pairs);
  return out;
}

}  // namespace shvg
