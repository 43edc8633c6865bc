// Command-line front end: exact solving, family classification, bounded-width
// solving, formula-to-instance reduction, verification suites, interactive
// play, and benchmarking. Exit codes: 0 ok, 1 usage/parse error, 2 resource
// budget exceeded, 3 verification failure.

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "shvg/closed_form.hpp"
#include "shvg/fpt.hpp"
#include "shvg/graph.hpp"
#include "shvg/milnor.hpp"
#include "shvg/sat.hpp"
#include "shvg/solver.hpp"
#include "shvg/verify.hpp"

using json = nlohmann::ordered_json;
using namespace shvg;

namespace {

constexpr uint64_t kDefaultSeed = 0xc0ffee;

class ResourceExit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

// "500ms", "1s", "2.5" (seconds) -> seconds.
double parse_budget(const std::string& text) {
  std::string t = text;
  double scale = 1.0;
  if (t.size() > 2 && t.substr(t.size() - 2) == "ms") {
    scale = 1e-3;
    t = t.substr(0, t.size() - 2);
  } else if (!t.empty() && t.back() == 's') {
    t = t.substr(0, t.size() - 1);
  }
  size_t used = 0;
  double v = std::stod(t, &used);
  if (used != t.size() || v < 0)
    throw std::invalid_argument("bad budget '" + text + "'");
  return v * scale;
}

Player player_from(const std::string& s) {
  return s == "maker" ? Player::Maker : Player::Breaker;
}

struct ConfigFlags {
  bool brute = false;
  bool no_super_lemma = false;
  bool no_decompose = false;
  bool no_move_ordering = false;
  bool no_component_split = false;
  bool no_pds = false;
  bool no_closed_form = false;
  uint64_t memo_limit = 0;
  std::string budget;
  int threads = 1;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--brute", brute,
                  "disable every reduction (reference configuration)");
    cmd->add_flag("--no-super-lemma", no_super_lemma,
                  "disable interchangeable-pair shrinking");
    cmd->add_flag("--no-decompose", no_decompose,
                  "disable Breaker-claim normal form");
    cmd->add_flag("--no-move-ordering", no_move_ordering,
                  "disable ordered moves and dominance pruning");
    cmd->add_flag("--no-component-split", no_component_split,
                  "disable fixed-component extraction");
    cmd->add_flag("--no-pds", no_pds,
                  "disable the pairing-domination zero test");
    cmd->add_flag("--no-closed-form", no_closed_form,
                  "disable family formula dispatch");
    cmd->add_option("--memo-limit", memo_limit, "max memo entries per worker");
    cmd->add_option("--budget", budget, "time budget, e.g. 1s or 500ms");
    cmd->add_option("--threads", threads, "root-level solver threads")
        ->check(CLI::Range(1, 64));
  }

  SolveConfig to_config() const {
    SolveConfig c = brute ? SolveConfig::brute() : SolveConfig::defaults();
    if (no_super_lemma) c.super_lemma = false;
    if (no_decompose) c.decompose = false;
    if (no_move_ordering) c.move_ordering = false;
    if (no_component_split) c.component_split = false;
    if (no_pds) c.pds_fast_path = false;
    if (no_closed_form) c.closed_form_dispatch = false;
    if (memo_limit > 0) c.memo_limit = memo_limit;
    if (!budget.empty()) c.time_budget_seconds = parse_budget(budget);
    c.threads = threads;
    return c;
  }
};

void fold_stats(SolveStats* into, const SolveStats& s) {
  into->nodes += s.nodes;
  into->memo_entries += s.memo_entries;
  into->memo_hits += s.memo_hits;
  into->pairings_applied += s.pairings_applied;
  into->moves_pruned += s.moves_pruned;
  into->components_extracted += s.components_extracted;
  into->decomposed = into->decomposed || s.decomposed;
  into->closed_form_used = into->closed_form_used || s.closed_form_used;
  into->pairing_domination_used =
      into->pairing_domination_used || s.pairing_domination_used;
}

json stats_json(const SolveStats& s) {
  return json{{"nodes", s.nodes},
              {"memo_entries", s.memo_entries},
              {"memo_hits", s.memo_hits},
              {"pairings_applied", s.pairings_applied},
              {"moves_pruned", s.moves_pruned},
              {"components_extracted", s.components_extracted},
              {"decomposed", s.decomposed},
              {"closed_form_used", s.closed_form_used},
              {"pairing_domination_used", s.pairing_domination_used}};
}

void print_stats(const SolveStats& s) {
  std::cout << "nodes: " << s.nodes << "\n"
            << "memo entries: " << s.memo_entries << " (hits " << s.memo_hits
            << ")\n"
            << "pairings applied: " << s.pairings_applied << "\n"
            << "moves pruned: " << s.moves_pruned << "\n"
            << "components extracted: " << s.components_extracted << "\n"
            << "decomposed: " << (s.decomposed ? "yes" : "no") << "\n"
            << "closed form: " << (s.closed_form_used ? "yes" : "no") << "\n"
            << "pairing domination: "
            << (s.pairing_domination_used ? "yes" : "no") << "\n";
}

// ---------------------------------------------------------------------------

int cmd_solve(const std::string& input, const std::string& mover, bool both,
              bool as_json, const ConfigFlags& flags) {
  Position p = parse_position(read_input(input));
  SolveConfig cfg = flags.to_config();
  SolveStats total;

  auto run = [&](Player pl, int* score) {
    SolveResult r = solve(p, pl, cfg);
    if (r.status != SolveStatus::Solved) return false;
    fold_stats(&total, r.stats);
    *score = r.score;
    return true;
  };

  int ms = 0, bs = 0, score = 0;
  bool ok = both ? run(Player::Maker, &ms) && run(Player::Breaker, &bs)
                 : run(player_from(mover), &score);
  if (!ok) {
    if (as_json)
      std::cout << json{{"status", "resource exceeded"}}.dump(2) << "\n";
    else
      std::cout << "resource exceeded\n";
    return 2;
  }

  if (as_json) {
    json out{{"status", "solved"}};
    if (both) {
      out["ms"] = ms;
      out["bs"] = bs;
    } else {
      out["mover"] = mover;
      out["score"] = score;
    }
    out["stats"] = stats_json(total);
    std::cout << out.dump(2) << "\n";
  } else {
    if (both)
      std::cout << "ms: " << ms << "\nbs: " << bs << "\n";
    else
      std::cout << "score: " << score << "\n";
    print_stats(total);
  }
  return 0;
}

// ---------------------------------------------------------------------------

const char* kind_name(GraphClass::Kind k) {
  switch (k) {
    case GraphClass::Kind::Path: return "path";
    case GraphClass::Kind::Cycle: return "cycle";
    case GraphClass::Kind::UnionOfPathsAndCycles:
      return "union of paths and cycles";
    case GraphClass::Kind::SubdividedStar: return "subdivided star";
    case GraphClass::Kind::CompleteBinaryTree: return "complete binary tree";
    case GraphClass::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

int cmd_classify(const std::string& input, bool as_json) {
  Position p = parse_position(read_input(input));
  const Graph& g = *p.graph;
  GraphClass c = classify(g);
  auto ms = formula_score(g, Player::Maker);
  auto bs = formula_score(g, Player::Breaker);

  if (as_json) {
    json out{{"kind", kind_name(c.kind)}};
    if (c.kind == GraphClass::Kind::Path || c.kind == GraphClass::Kind::Cycle)
      out["n"] = c.n;
    if (c.kind == GraphClass::Kind::CompleteBinaryTree) out["depth"] = c.n;
    if (!c.path_lengths.empty()) out["path_lengths"] = c.path_lengths;
    if (!c.cycle_lengths.empty()) out["cycle_lengths"] = c.cycle_lengths;
    if (!c.legs.empty()) out["legs"] = c.legs;
    if (ms) out["ms"] = *ms;
    if (bs) out["bs"] = *bs;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::cout << "kind: " << kind_name(c.kind) << "\n";
  if (c.kind == GraphClass::Kind::Path || c.kind == GraphClass::Kind::Cycle)
    std::cout << "n: " << c.n << "\n";
  if (c.kind == GraphClass::Kind::CompleteBinaryTree)
    std::cout << "depth: " << c.n << "\n";
  auto print_list = [](const char* label, const std::vector<int>& xs) {
    if (xs.empty()) return;
    std::cout << label << ":";
    for (int x : xs) std::cout << " " << x;
    std::cout << "\n";
  };
  print_list("path lengths", c.path_lengths);
  print_list("cycle lengths", c.cycle_lengths);
  print_list("legs", c.legs);
  if (ms && bs) std::cout << "ms: " << *ms << "\nbs: " << *bs << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_nd(const std::string& input, int width_cap, bool as_json) {
  Position p = parse_position(read_input(input));
  if (p.maker.any() || p.breaker.any())
    throw std::invalid_argument(
        "bounded-width solving starts from an empty position");
  const Graph& g = *p.graph;
  NdSolveResult ms = nd_solve(g, Player::Maker, width_cap);
  NdSolveResult bs = nd_solve(g, Player::Breaker, width_cap);
  if (ms.status != SolveStatus::Solved || bs.status != SolveStatus::Solved) {
    if (as_json)
      std::cout << json{{"status", "resource exceeded"},
                        {"width", nd_value(g)}}
                       .dump(2)
                << "\n";
    else
      std::cout << "resource exceeded\n";
    return 2;
  }
  if (as_json) {
    std::cout << json{{"status", "solved"},
                      {"width", ms.width},
                      {"ms", ms.score},
                      {"bs", bs.score},
                      {"states", ms.states + bs.states},
                      {"paired", ms.paired.size()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "width: " << ms.width << "\n"
              << "ms: " << ms.score << "\nbs: " << bs.score << "\n"
              << "states: " << ms.states + bs.states << "\n"
              << "pairs pre-assigned: " << ms.paired.size() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

std::string output_stem(const std::string& input, const std::string& out) {
  if (!out.empty()) return out;
  if (input == "-") return "instance";
  std::string base = input;
  size_t slash = base.find_last_of('/');
  if (slash != std::string::npos) base = base.substr(slash + 1);
  size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base.empty() ? "instance" : base;
}

int cmd_reduce(const std::string& input, int k, const std::string& target,
               const std::string& out) {
  Qbf2 f = parse_formula(read_input(input));
  ReductionArtifact art = target == "caterpillar"
                              ? build_caterpillar_instance(f, k)
                              : build_tree_instance(f, k);

  json bundles = json::array();
  for (const LeafBundle& b : art.bundles)
    bundles.push_back(json{{"host", b.host},
                           {"first_leaf", b.first_leaf},
                           {"count", b.count}});
  json sidecar{{"threshold", art.threshold},
               {"baseline", art.baseline},
               {"m", art.m},
               {"k", art.k},
               {"provenance",
                json{{"target", target},
                     {"variables", art.processed.variable_count()},
                     {"clauses", art.processed.clause_count()},
                     {"literal_vertex", art.literal_vertex},
                     {"clause_vertex", art.clause_vertex},
                     {"chain_vertex", art.chain_vertex},
                     {"bundles", bundles}}}};

  std::string stem = output_stem(input, out);
  write_file(stem + ".graph", serialize_graph(*art.instance));
  write_file(stem + ".json", sidecar.dump(2) + "\n");
  std::cout << "wrote " << stem << ".graph (" << art.instance->vertex_count()
            << " vertices)\n"
            << "wrote " << stem << ".json\n"
            << "threshold: " << art.threshold << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite, const VerifyOptions& opt,
               bool as_json) {
  std::vector<std::string> names =
      suite == "all" ? verify_suite_names() : std::vector<std::string>{suite};
  bool all_passed = true;
  json suites = json::array();
  for (const std::string& name : names) {
    VerifyReport r = run_verify_suite(name, opt);
    all_passed = all_passed && r.passed;
    if (as_json) {
      json failures = json::array();
      for (const VerifyFailure& f : r.failures)
        failures.push_back(json{{"case", f.case_name}, {"detail", f.detail}});
      suites.push_back(json{{"suite", r.suite},
                            {"passed", r.passed},
                            {"checks", r.checks},
                            {"failures", failures},
                            {"seconds", r.seconds}});
    } else {
      std::ostringstream line;
      line << "suite=" << r.suite << " status=" << (r.passed ? "pass" : "fail")
           << " checks=" << r.checks << " failures=" << r.failures.size()
           << " seconds=" << r.seconds;
      std::cout << line.str() << "\n";
      int shown = 0;
      for (const VerifyFailure& f : r.failures) {
        if (++shown > 10) {
          std::cout << "  ... more failures omitted\n";
          break;
        }
        std::cout << "  fail case=\"" << f.case_name << "\" detail=\""
                  << f.detail << "\"\n";
      }
      std::cout.flush();
    }
  }
  if (as_json)
    std::cout << json{{"passed", all_passed}, {"suites", suites}}.dump(2)
              << "\n";
  else
    std::cout << (all_passed ? "verification passed" : "verification failed")
              << "\n";
  return all_passed ? 0 : 3;
}

// ---------------------------------------------------------------------------

void print_board(const Position& p) {
  auto list = [](const VertexSet& s) {
    std::string out;
    for (int v : s.to_vector()) out += " " + std::to_string(v);
    return out.empty() ? " -" : out;
  };
  std::cout << "M:" << list(p.maker) << " | B:" << list(p.breaker)
            << " | free:" << list(p.free_vertices()) << "\n";
}

int cmd_play(const std::string& input, const std::string& human_side,
             const ConfigFlags& flags) {
  Position p = parse_position(read_input(input));
  Player human = player_from(human_side);
  SolveConfig cfg = flags.to_config();
  std::cout << "graph: " << p.graph->vertex_count() << " vertices, "
            << p.graph->edge_count() << " edges\n"
            << "you are " << to_string(human) << "; engine is "
            << to_string(opponent(human)) << "\n";
  Player mover = Player::Maker;
  while (!p.is_terminal()) {
    print_board(p);
    int move = -1;
    if (mover == human) {
      while (true) {
        std::cout << "your move (" << to_string(human) << "): " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) {
          std::cerr << "input closed before the game ended\n";
          return 1;
        }
        try {
          size_t used = 0;
          move = std::stoi(line, &used);
          while (used < line.size() && std::isspace(line[used])) ++used;
          if (used != line.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          std::cout << "not a vertex id, try again\n";
          continue;
        }
        if (move < 0 || move >= p.graph->vertex_count() ||
            p.maker.test(move) || p.breaker.test(move)) {
          std::cout << "illegal move, try again\n";
          continue;
        }
        break;
      }
    } else {
      BestMove bm = best_move(p, mover, cfg);
      move = bm.vertex;
      std::cout << "engine (" << to_string(mover) << ") claims " << move
                << "\n";
    }
    if (mover == Player::Maker)
      p.maker.set(move);
    else
      p.breaker.set(move);
    mover = opponent(mover);
  }
  print_board(p);
  std::cout << "final score: " << happy_count(p) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_bench(const std::string& input, const ConfigFlags& flags) {
  Position p = parse_position(read_input(input));
  struct Row {
    const char* name;
    SolveConfig cfg;
  };
  SolveConfig base = flags.to_config();
  auto variant = [&](auto mutate) {
    SolveConfig c = base;
    mutate(c);
    return c;
  };
  std::vector<Row> rows = {
      {"default", base},
      {"no-super-lemma", variant([](SolveConfig& c) { c.super_lemma = false; })},
      {"no-move-ordering",
       variant([](SolveConfig& c) { c.move_ordering = false; })},
      {"no-decompose", variant([](SolveConfig& c) { c.decompose = false; })},
      {"brute", variant([&](SolveConfig& c) {
         c = SolveConfig::brute();
         c.memo_limit = base.memo_limit;
         c.time_budget_seconds = base.time_budget_seconds;
       })},
  };
  for (const Row& row : rows) {
    auto t0 = std::chrono::steady_clock::now();
    SolveResult ms = solve(p, Player::Maker, row.cfg);
    SolveResult bs = solve(p, Player::Breaker, row.cfg);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    std::cout << "config=" << row.name;
    if (ms.status == SolveStatus::Solved && bs.status == SolveStatus::Solved)
      std::cout << " ms=" << ms.score << " bs=" << bs.score;
    else
      std::cout << " status=resource-exceeded";
    std::cout << " nodes=" << ms.stats.nodes + bs.stats.nodes
              << " seconds=" << dt << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver and verification suite for the scoring "
               "happy-vertex game"};
  app.require_subcommand(1);

  // solve
  std::string solve_input, solve_mover = "maker";
  bool solve_both = false, solve_json = false;
  ConfigFlags solve_flags;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "exact score of a graph or position file");
  solve_cmd->add_option("input", solve_input, "graph/position file or -")
      ->required();
  solve_cmd->add_option("--mover", solve_mover, "who moves first")
      ->check(CLI::IsMember({"maker", "breaker"}));
  solve_cmd->add_flag("--both", solve_both, "solve for both first movers");
  solve_cmd->add_flag("--json", solve_json, "JSON report");
  solve_flags.attach(solve_cmd);

  // classify
  std::string classify_input;
  bool classify_json = false;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "recognize a graph family and report its closed-form score");
  classify_cmd->add_option("input", classify_input, "graph file or -")
      ->required();
  classify_cmd->add_flag("--json", classify_json, "JSON report");

  // nd
  std::string nd_input;
  int nd_width_cap = 20;
  bool nd_json = false;
  CLI::App* nd_cmd = app.add_subcommand(
      "nd", "solve via the neighborhood-diversity parameterization");
  nd_cmd->add_option("input", nd_input, "graph file or -")->required();
  nd_cmd->add_option("--width-cap", nd_width_cap,
                     "give up beyond this many same-type classes");
  nd_cmd->add_flag("--json", nd_json, "JSON report");

  // reduce
  std::string reduce_input, reduce_target = "tree", reduce_out;
  int reduce_k = 0;
  CLI::App* reduce_cmd = app.add_subcommand(
      "reduce", "compile a quantified 2-CNF formula into a game instance");
  reduce_cmd->add_option("input", reduce_input, "formula file or -")
      ->required();
  reduce_cmd->add_option("-k,--clauses-needed", reduce_k,
                         "satisfied-clause target of the formula game")
      ->required();
  reduce_cmd->add_option("--target", reduce_target, "instance shape")
      ->check(CLI::IsMember({"tree", "caterpillar"}));
  reduce_cmd->add_option("-o,--output", reduce_out,
                         "output stem (writes <stem>.graph and <stem>.json)");

  // verify
  std::string verify_suite;
  VerifyOptions verify_opt;
  verify_opt.seed = kDefaultSeed;
  bool verify_json = false;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run a self-verification suite");
  verify_cmd
      ->add_option("suite", verify_suite,
                   "suite name or 'all'; names: paths, path-unions, cycles, "
                   "stars, binary-trees, super-lemma, decompose, sum-bounds, "
                   "diversity, cycle-gadget, occurrence-bound, reduction, "
                   "caterpillar, pair-domination")
      ->required();
  verify_cmd->add_option("--max-n", verify_opt.max_n, "size cap override");
  verify_cmd->add_option("--count", verify_opt.count,
                         "random case count override");
  verify_cmd->add_option("--seed", verify_opt.seed, "random seed");
  verify_cmd->add_option("--vars", verify_opt.vars,
                         "reduction suite: original variable count");
  verify_cmd->add_option("--clauses", verify_opt.clauses,
                         "reduction suite: max original clause count");
  verify_cmd->add_option("--threads", verify_opt.threads,
                         "solver threads where applicable")
      ->check(CLI::Range(1, 64));
  verify_cmd->add_flag("--json", verify_json, "JSON report");

  // play
  std::string play_input, play_human = "breaker";
  ConfigFlags play_flags;
  CLI::App* play_cmd =
      app.add_subcommand("play", "play against the exact engine");
  play_cmd->add_option("input", play_input, "graph/position file or -")
      ->required();
  play_cmd->add_option("--human", play_human, "side you play")
      ->required()
      ->check(CLI::IsMember({"maker", "breaker"}));
  play_flags.attach(play_cmd);

  // bench
  std::string bench_input;
  ConfigFlags bench_flags;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "compare solver configurations on one input");
  bench_cmd->add_option("input", bench_input, "graph/position file or -")
      ->required();
  bench_flags.attach(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed())
      return cmd_solve(solve_input, solve_mover, solve_both, solve_json,
                       solve_flags);
    if (classify_cmd->parsed()) return cmd_classify(classify_input,
                                                    classify_json);
    if (nd_cmd->parsed()) return cmd_nd(nd_input, nd_width_cap, nd_json);
    if (reduce_cmd->parsed())
      return cmd_reduce(reduce_input, reduce_k, reduce_target, reduce_out);
    if (verify_cmd->parsed())
      return cmd_verify(verify_suite, verify_opt, verify_json);
    if (play_cmd->parsed()) return cmd_play(play_input, play_human,
                                            play_flags);
    if (bench_cmd->parsed()) return cmd_bench(bench_input, bench_flags);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "resource exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
