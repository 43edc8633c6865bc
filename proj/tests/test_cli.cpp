// End-to-end tests that drive the command-line binary. The binary path comes
// from SHVG_BIN and the schema directory from SHVG_SCHEMAS (both set by the
// test harness).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "shvg/closed_form.hpp"
#include "shvg/graph.hpp"
#include "shvg/sat.hpp"
#include "support/corpus.hpp"

using json = nlohmann::json;
using namespace shvg;

namespace {

namespace fs = std::filesystem;

std::string binary() {
  const char* bin = std::getenv("SHVG_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "SHVG_BIN must point at the built binary");
  return bin;
}

std::string schema_dir() {
  const char* dir = std::getenv("SHVG_SCHEMAS");
  REQUIRE_MESSAGE(dir != nullptr, "SHVG_SCHEMAS must point at the schemas");
  return dir;
}

fs::path work_dir() {
  fs::path dir = fs::current_path() / "cli-scratch";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args, const std::string& stdin_text = "") {
  fs::path dir = work_dir();
  fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  std::string cmd = "'" + binary() + "' " + args;
  if (!stdin_text.empty()) {
    spit(dir / "stdin.txt", stdin_text);
    cmd += " < '" + (dir / "stdin.txt").string() + "'";
  } else {
    cmd += " < /dev/null";
  }
  cmd += " > '" + out.string() + "' 2> '" + err.string() + "'";
  int status = std::system(cmd.c_str());
  RunResult r;
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_graph(const std::string& name, const Graph& g) {
  fs::path p = work_dir() / name;
  spit(p, serialize_graph(g));
  return p;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// Minimal checker for the subset of JSON Schema the shipped schemas use
// (type, enum, const, required, properties, additionalProperties: false,
// items, minItems, minimum, allOf, anyOf, if/then/else).
bool conforms(const json& s, const json& v) {
  if (s.contains("const") && v != s["const"]) return false;
  if (s.contains("enum")) {
    bool hit = false;
    for (const auto& e : s["enum"]) hit = hit || v == e;
    if (!hit) return false;
  }
  if (s.contains("type")) {
    const std::string t = s["type"].get<std::string>();
    bool ok = (t == "object" && v.is_object()) ||
              (t == "array" && v.is_array()) ||
              (t == "string" && v.is_string()) ||
              (t == "boolean" && v.is_boolean()) ||
              (t == "integer" && v.is_number_integer()) ||
              (t == "number" && v.is_number());
    if (!ok) return false;
  }
  if (s.contains("minimum") && v.is_number() &&
      v.get<double>() < s["minimum"].get<double>())
    return false;
  if (v.is_object()) {
    if (s.contains("required"))
      for (const auto& key : s["required"])
        if (!v.contains(key.get<std::string>())) return false;
    const json* props = s.contains("properties") ? &s["properties"] : nullptr;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (props && props->contains(it.key())) {
        if (!conforms((*props)[it.key()], it.value())) return false;
      } else if (s.contains("additionalProperties") &&
                 s["additionalProperties"] == false) {
        return false;
      }
    }
  }
  if (v.is_array()) {
    if (s.contains("minItems") && v.size() < s["minItems"].get<size_t>())
      return false;
    if (s.contains("items"))
      for (const auto& e : v)
        if (!conforms(s["items"], e)) return false;
  }
  if (s.contains("allOf"))
    for (const auto& sub : s["allOf"])
      if (!conforms(sub, v)) return false;
  if (s.contains("anyOf")) {
    bool any = false;
    for (const auto& sub : s["anyOf"]) any = any || conforms(sub, v);
    if (!any) return false;
  }
  if (s.contains("if")) {
    if (conforms(s["if"], v)) {
      if (s.contains("then") && !conforms(s["then"], v)) return false;
    } else if (s.contains("else") && !conforms(s["else"], v)) {
      return false;
    }
  }
  return true;
}

json load_schema(const std::string& name) {
  std::string text = slurp(fs::path(schema_dir()) / name);
  REQUIRE_MESSAGE(!text.empty(), "missing schema " << name);
  return json::parse(text);
}

}  // namespace

TEST_CASE("usage errors and help") {
  CHECK(run("").code == 1);
  CHECK(run("--help").code == 0);
  CHECK(run("frobnicate x").code == 1);
  CHECK(run("solve").code == 1);
  RunResult bad_mover =
      run("solve '" + write_graph("p5.graph", make_path(5)).string() +
          "' --mover referee");
  CHECK(bad_mover.code == 1);
}

TEST_CASE("solve reports scores in text form") {
  fs::path p5 = write_graph("p5.graph", make_path(5));
  RunResult r = run("solve '" + p5.string() + "' --mover maker");
  CAPTURE(r.out);
  CAPTURE(r.err);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "score: 1"));

  RunResult def = run("solve '" + p5.string() + "'");
  CHECK(def.code == 0);
  CHECK(contains(def.out, "score: 1"));

  RunResult breaker = run("solve '" + p5.string() + "' --mover breaker");
  CHECK(breaker.code == 0);
  CHECK(contains(breaker.out, "score: 0"));
}

TEST_CASE("solve emits schema-conforming JSON") {
  json schema = load_schema("solve-report.schema.json");

  fs::path t3 = write_graph("t3.graph", make_complete_binary_tree(3));
  RunResult both = run("solve '" + t3.string() + "' --both --json");
  CAPTURE(both.out);
  CAPTURE(both.err);
  REQUIRE(both.code == 0);
  json report = json::parse(both.out);
  CHECK(report["status"] == "solved");
  CHECK(report["ms"] == 2);
  CHECK(report["bs"] == 2);
  CHECK_MESSAGE(conforms(schema, report), report.dump(2));

  fs::path p5 = write_graph("p5.graph", make_path(5));
  RunResult one = run("solve '" + p5.string() + "' --json --mover breaker");
  REQUIRE(one.code == 0);
  json single = json::parse(one.out);
  CHECK(single["mover"] == "breaker");
  CHECK(single["score"] == 0);
  CHECK_MESSAGE(conforms(schema, single), single.dump(2));
}

TEST_CASE("solve honors the time budget") {
  std::mt19937_64 rng(0xc0ffee);
  fs::path big = write_graph("big.graph", corpus::random_graph(rng, 26, 0.5));
  RunResult r = run("solve '" + big.string() + "' --budget 1ms");
  CAPTURE(r.out);
  CAPTURE(r.err);
  CHECK(r.code == 2);
  CHECK(contains(r.out, "resource exceeded"));

  json schema = load_schema("solve-report.schema.json");
  RunResult j = run("solve '" + big.string() + "' --budget 1ms --json");
  CHECK(j.code == 2);
  json report = json::parse(j.out);
  CHECK(report["status"] == "resource exceeded");
  CHECK_MESSAGE(conforms(schema, report), report.dump(2));
}

TEST_CASE("solve rejects bad input") {
  fs::path junk = work_dir() / "junk.graph";
  spit(junk, "this is not a graph\n");
  RunResult r = run("solve '" + junk.string() + "'");
  CHECK(r.code == 1);
  CHECK(contains(r.err, "parse error"));

  RunResult missing = run("solve '" + (work_dir() / "nope.graph").string() +
                          "'");
  CHECK(missing.code == 1);
  CHECK(contains(missing.err, "error"));
}

TEST_CASE("classify names the family and its scores") {
  fs::path p7 = write_graph("p7.graph", make_path(7));
  RunResult r = run("classify '" + p7.string() + "'");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "kind: path"));
  CHECK(contains(r.out, "n: 7"));
  CHECK(contains(r.out, "ms: 1"));
  CHECK(contains(r.out, "bs: 0"));

  fs::path star = write_graph("star.graph", make_subdivided_star({1, 2, 2}));
  RunResult s = run("classify '" + star.string() + "' --json");
  REQUIRE(s.code == 0);
  json report = json::parse(s.out);
  CHECK(report["kind"] == "subdivided star");
  CHECK(report["legs"] == json::array({1, 2, 2}));
}

TEST_CASE("bounded-width command") {
  fs::path c4 = write_graph("c4.graph", make_cycle(4));
  RunResult r = run("nd '" + c4.string() + "'");
  CAPTURE(r.out);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "width: 2"));
  CHECK(contains(r.out, "ms: 0"));
  CHECK(contains(r.out, "bs: 0"));

  fs::path p25 = write_graph("p25.graph", make_path(25));
  RunResult wide = run("nd '" + p25.string() + "' --width-cap 6");
  CHECK(wide.code == 2);
  CHECK(contains(wide.out, "resource exceeded"));

  fs::path claimed = work_dir() / "claimed.pos";
  spit(claimed, "3 2\n0 1\n1 2\nM: 0\n");
  CHECK(run("nd '" + claimed.string() + "'").code == 1);
}

TEST_CASE("reduce writes the instance and its sidecar") {
  fs::path formula = work_dir() / "forall.qcnf";
  spit(formula, "p qcnf 2 1\na 1\ne 2\n1 2 0\n");
  fs::path stem = work_dir() / "built";
  RunResult r = run("reduce '" + formula.string() + "' -k 1 -o '" +
                    stem.string() + "'");
  CAPTURE(r.out);
  CAPTURE(r.err);
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "wrote "));
  CHECK(contains(r.out, ".graph"));
  CHECK(contains(r.out, ".json"));

  Graph g = parse_graph(slurp(stem.string() + ".graph"));
  json sidecar = json::parse(slurp(stem.string() + ".json"));
  json schema = load_schema("reduce-sidecar.schema.json");
  CHECK_MESSAGE(conforms(schema, sidecar), sidecar.dump(2));

  Qbf2 f = parse_formula(slurp(formula));
  ReductionArtifact art = build_tree_instance(f, 1);
  CHECK(sidecar["threshold"] == art.threshold);
  CHECK(sidecar["baseline"] == art.baseline);
  CHECK(sidecar["m"] == 1);
  CHECK(sidecar["k"] == 1);
  CHECK(sidecar["provenance"]["target"] == "tree");
  CHECK(sidecar["provenance"]["variables"] ==
        art.processed.variable_count());
  CHECK(g.vertex_count() == art.instance->vertex_count());
  CHECK(g.edge_count() == g.vertex_count() - 1);
  CHECK(contains(r.out, "threshold: " + std::to_string(art.threshold)));
}

TEST_CASE("reduce surfaces precondition failures without preprocessing") {
  fs::path empty = work_dir() / "empty.qcnf";
  spit(empty, "p qcnf 1 0\ne 1\n");
  RunResult none = run("reduce '" + empty.string() + "' -k 1");
  CHECK(none.code == 1);
  CHECK(contains(none.err, "error:"));

  fs::path cyclic = work_dir() / "cyclic.qcnf";
  spit(cyclic, "p qcnf 3 3\ne 1 2 3\n1 2 0\n2 3 0\n3 1 0\n");
  RunResult cyc = run("reduce '" + cyclic.string() + "' -k 2");
  CHECK(cyc.code == 1);
  CHECK(contains(cyc.err, "cycle"));

  fs::path universal = work_dir() / "forall.qcnf";
  spit(universal, "p qcnf 2 1\na 1\ne 2\n1 2 0\n");
  RunResult cat = run("reduce '" + universal.string() +
                      "' -k 1 --target caterpillar");
  CHECK(cat.code == 1);
  CHECK(contains(cat.err, "existential"));
}

TEST_CASE("verify runs suites and reports failures by exit code") {
  RunResult r = run("verify paths --max-n 6");
  CAPTURE(r.out);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "suite=paths status=pass"));
  CHECK(contains(r.out, "verification passed"));

  CHECK(run("verify no-such-suite").code == 1);

  RunResult c = run("verify caterpillar --count 8");
  CAPTURE(c.out);
  CHECK(c.code == 0);
  CHECK(contains(c.out, "suite=caterpillar status=pass"));

  RunResult j = run("verify cycles --json");
  REQUIRE(j.code == 0);
  json report = json::parse(j.out);
  json schema = load_schema("verify-report.schema.json");
  CHECK(report["passed"] == true);
  CHECK(report["suites"][0]["suite"] == "cycles");
  CHECK_MESSAGE(conforms(schema, report), report.dump(2));
}

TEST_CASE("interactive play validates input and scores the game") {
  fs::path p3 = write_graph("p3.graph", make_path(3));
  RunResult r = run("play '" + p3.string() + "' --human breaker",
                    "1\n9\nx\n0\n");
  CAPTURE(r.out);
  CAPTURE(r.err);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "you are breaker; engine is maker"));
  CHECK(contains(r.out, "engine (maker) claims 1"));
  CHECK(contains(r.out, "illegal move, try again"));
  CHECK(contains(r.out, "not a vertex id, try again"));
  CHECK(contains(r.out, "final score: 1"));

  fs::path star = write_graph("k13.graph", corpus::complete_bipartite(1, 3));
  RunResult m = run("play '" + star.string() + "' --human maker", "0\n2\n");
  CAPTURE(m.out);
  CHECK(m.code == 0);
  CHECK(contains(m.out, "final score: 1"));

  RunResult eof = run("play '" + p3.string() + "' --human maker", "");
  CHECK(eof.code == 1);
  CHECK(contains(eof.err, "input closed before the game ended"));
}

TEST_CASE("bench compares solver configurations") {
  fs::path p5 = write_graph("p5.graph", make_path(5));
  RunResult r = run("bench '" + p5.string() + "'");
  CAPTURE(r.out);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "config=default ms=1 bs=0"));
  CHECK(contains(r.out, "config=no-super-lemma"));
  CHECK(contains(r.out, "config=brute ms=1 bs=0"));
}
