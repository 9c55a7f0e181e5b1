#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "fixtures.hpp"
#include "succinct/cli.hpp"
#include "succinct/io.hpp"

using namespace succinct;
using namespace succinct::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  nlohmann::json report;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  auto r = run_command(args, out, err);
  return {r.exit_code, r.report, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("succinct_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string save(const std::string& name, const Device& d) const {
    save_device(d, path(name));
    return path(name);
  }

 private:
  fs::path dir_;
};

std::string zoo_path(const std::string& name) { return std::string(SUCCINCT_ZOO_DIR) + "/" + name + ".json"; }

nlohmann::json without_time(nlohmann::json j) {
  j.erase("wall_time_s");
  return j;
}

void check_consistent(const Outcome& o) {
  const auto& v = o.report["verification"];
  if (o.code == kExitOk) CHECK(v["failed"] == 0);
  CHECK(v["run"].get<std::size_t>() == v["checks"].size());
}

}  // namespace

TEST_CASE("content hash") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("construct counter reports the recurrence count and its bound") {
  Scratch tmp;
  auto o = run({"construct", "counter", "--n", "1024", "--mode", "exact", "--emit", tmp.path("c.cfg")});
  REQUIRE(o.code == kExitOk);
  check_consistent(o);
  const auto& g = o.report["outputs"]["grammar"];
  CHECK(g["recurrence_count"] == 11);
  const auto& checks = o.report["verification"]["checks"];
  CHECK(checks[0]["bound_value"].get<double>() == doctest::Approx(20.0));
  CHECK(checks[0]["passed"] == true);
  CHECK(checks[1]["horizon"] == 1025);
  const std::string text = read_file(tmp.path("c.cfg"));
  CHECK(o.report["outputs"]["emitted"]["fnv1a64"] == fnv1a64_hex(text));
  CHECK(parse_cfg(text).nonterminals.size() == 10);

  for (const std::string mode : {"at-most", "at-least"}) {
    auto m = run({"construct", "counter", "--n", "13", "--mode", mode, "--alphabet", "ab"});
    CHECK(m.code == kExitOk);
    check_consistent(m);
  }
}

TEST_CASE("construct families and verify against builtin oracles") {
  Scratch tmp;
  auto ww = run({"construct", "complement-ww", "--n", "2", "--emit", tmp.path("ww2.cfg")});
  REQUIRE(ww.code == kExitOk);
  auto v = run({"verify", "--a", tmp.path("ww2.cfg"), "--b", "builtin:not-ww", "--n", "2", "--horizon", "6"});
  CHECK(v.code == kExitOk);
  check_consistent(v);
  const auto& c = v.report["verification"]["checks"][0];
  CHECK(c["horizon"] == 6);
  CHECK(c["claim"].get<std::string>().find("length <= 6") != std::string::npos);
  CHECK(v.report["inputs"][0]["fnv1a64"] == fnv1a64_hex(read_file(tmp.path("ww2.cfg"))));

  auto wrong = run({"verify", "--a", tmp.path("ww2.cfg"), "--b", "builtin:not-ww", "--n", "3", "--horizon", "6"});
  CHECK(wrong.code == kExitFailed);
  CHECK(wrong.report["verification"]["checks"][0].contains("counterexample"));
  check_consistent(wrong);

  auto wdw = run({"construct", "w-dollar-w", "--n", "1"});
  CHECK(wdw.code == kExitOk);
  check_consistent(wdw);

  auto acc = run({"construct", "acc-complement", "--machine", zoo_path("two_step"), "--input", "a"});
  CHECK(acc.code == kExitOk);
  CHECK(acc.report["verification"]["checks"][0]["horizon"] == 11);
  auto odd = run({"construct", "oddacc", "--machine", "two_step", "--input", "a", "--horizon", "7"});
  CHECK(odd.code == kExitOk);
  auto even = run({"construct", "evenacc", "--machine", "parity", "--all-inputs", "--complement", "--horizon", "6"});
  CHECK(even.code == kExitOk);
  auto pos = run({"construct", "evenacc", "--machine", "parity", "--all-inputs", "--horizon", "6"});
  CHECK(pos.code == kExitOk);

  auto same = run({"verify", "--a", "builtin:oddacc:two_step:a", "--b", "builtin:oddacc:two_step:*", "--horizon",
                   "4"});
  CHECK(same.code == kExitOk);
}

TEST_CASE("conversions emit devices and receipts") {
  Scratch tmp;
  const auto nfa = tmp.save("nfa.json", third_from_end_nfa());
  const auto dpda = tmp.save("dpda.json", anbn_dpda());
  const auto dfa1 = tmp.save("astar.json", a_star_dfa());
  const auto dfa2 = tmp.save("even.json", even_length_dfa());
  const auto cfg = tmp.save("g.cfg", grammar({"S"}, {"a", "b"}, {{"S", {"a", "S", "b"}}, {"S", {}}}));

  struct Case {
    std::vector<std::string> args;
    std::string out_kind;
  };
  const std::vector<Case> cases = {
      {{"convert", "nfa2dfa", "--in", nfa}, "DFA"},
      {{"convert", "cfg2pda", "--in", cfg}, "PDA"},
      {{"convert", "pda2cfg", "--in", dpda}, "CFG"},
      {{"convert", "dpda-complement", "--in", dpda}, "DPDA"},
      {{"convert", "dfa-min", "--in", dfa1}, "DFA"},
      {{"convert", "dfa-product", "--in", dfa1, "--in2", dfa2, "--op", "and"}, "DFA"},
      {{"convert", "dfa-product", "--in", dfa1, "--in2", dfa2, "--op", "or"}, "DFA"},
  };
  int i = 0;
  for (auto c : cases) {
    CAPTURE(c.args[1]);
    const std::string out = tmp.path("out" + std::to_string(i++) + (c.out_kind == "CFG" ? ".cfg" : ".json"));
    c.args.insert(c.args.end(), {"--emit", out, "--horizon", "6"});
    auto o = run(c.args);
    CHECK(o.code == kExitOk);
    check_consistent(o);
    CHECK(o.report["outputs"]["device"]["kind"] == c.out_kind);
    CHECK(o.report["outputs"]["emitted"]["fnv1a64"] == fnv1a64_hex(read_file(out)));
    CHECK(kind_name(load_device(out)) == c.out_kind);
    if (c.args[1] != "dfa-min") CHECK(o.report["outputs"]["receipt"]["bound_satisfied"] == true);
    for (const auto& chk : o.report["verification"]["checks"])
      if (chk["kind"] == "bounded_equivalence") CHECK(chk["horizon"] == 6);
  }

  auto wrong_kind = run({"convert", "nfa2dfa", "--in", cfg});
  CHECK(wrong_kind.code == kExitUsage);
  auto no_second = run({"convert", "dfa-product", "--in", dfa1});
  CHECK(no_second.code == kExitUsage);
}

TEST_CASE("gap, estimate, diagonalize and encode-tm") {
  Scratch tmp;
  const auto nfa = tmp.save("l3.json", third_from_end_nfa());
  auto gap = run({"gap", "--target", nfa});
  REQUIRE(gap.code == kExitOk);
  const auto& s = gap.report["outputs"]["searches"];
  CHECK(s[0]["size"] == 8);
  CHECK(s[0]["exact"] == true);
  CHECK(s[1]["size"] == 4);

  auto est = run({"estimate", "--pair", "dfa-nfa", "--n", "2", "--horizon", "6"});
  CHECK(est.code == kExitOk);
  CHECK(est.report["outputs"]["estimate"]["max"].get<int>() >= 2);
  CHECK(est.report["outputs"]["estimate"]["horizon"] == 6);

  const std::string fixture = std::string(SUCCINCT_FIXTURE_DIR) + "/diag_lim3.json";
  auto diag = run({"diagonalize", "--config", fixture, "--emit", tmp.path("profile.json")});
  CHECK(diag.code == kExitOk);
  CHECK(diag.report["verification"]["passed"] == 3);
  CHECK(nlohmann::json::parse(read_file(tmp.path("profile.json")))["limit"] == 3);
  auto short_run = run({"diagonalize", "--config", fixture, "--max-s", "0"});
  CHECK(short_run.code == kExitFailed);
  CHECK(short_run.report["verification"]["checks"][0]["reason"] == "max_s");

  auto enc = run({"encode-tm", "--machine", "two_step", "--input", "a"});
  CHECK(enc.code == kExitOk);
  CHECK(enc.report["outputs"]["encoding"] == "$ (q0,a) $ (q1,a) $ (acc,a) $ (acc,a) $");
  auto loop = run({"encode-tm", "--machine", "right_runner", "--input", "a"});
  CHECK(loop.code == kExitOk);
  CHECK(loop.report["outputs"]["halted"] == false);
}

TEST_CASE("exit codes") {
  Scratch tmp;
  auto domain = run({"construct", "counter", "--n", "1"});
  CHECK(domain.code == kExitUsage);
  CHECK(domain.err.find("domain error") != std::string::npos);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"construct", "nonsense"}).code == kExitUsage);
  CHECK(run({"verify", "--a", "builtin:nope", "--b", "builtin:nope"}).code == kExitUsage);
  CHECK(run({"construct", "complement-ww"}).code == kExitUsage);
  CHECK(run({"verify", "--a", tmp.path("missing.cfg"), "--b", "builtin:not-ww", "--n", "2"}).code == kExitParse);
  write_file(tmp.path("bad.json"), "{ not json");
  CHECK(run({"convert", "dfa-min", "--in", tmp.path("bad.json")}).code == kExitParse);
  CHECK(run({"diagonalize", "--config", tmp.path("bad.json")}).code == kExitParse);
  CHECK(run({"encode-tm", "--machine", tmp.path("bad.json")}).code == kExitParse);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("budget from flag and environment") {
  auto tight = run({"construct", "complement-ww", "--n", "2", "--budget", "10"});
  CHECK(tight.code == kExitFailed);
  check_consistent(tight);
  CHECK(tight.report["verification"]["checks"][1]["kind"] == "budget");

  ::setenv(kBudgetEnv, "10", 1);
  auto env = run({"construct", "complement-ww", "--n", "2"});
  auto overridden = run({"construct", "complement-ww", "--n", "2", "--budget", "1000000"});
  ::setenv(kBudgetEnv, "zero", 1);
  auto bad_env = run({"construct", "complement-ww", "--n", "2"});
  ::unsetenv(kBudgetEnv);
  CHECK(env.code == kExitFailed);
  CHECK(overridden.code == kExitOk);
  CHECK(bad_env.code == kExitUsage);
}

TEST_CASE("reports are reproducible and written on request") {
  Scratch tmp;
  const std::vector<std::string> args = {"construct", "complement-ww", "--n", "3", "--report", tmp.path("r.json"),
                                         "--format", "json"};
  auto a = run(args);
  const std::string first = read_file(tmp.path("r.json"));
  auto b = run(args);
  const std::string second = read_file(tmp.path("r.json"));
  CHECK(a.code == kExitOk);
  CHECK(without_time(a.report) == without_time(b.report));
  CHECK(without_time(nlohmann::json::parse(first)).dump() == without_time(nlohmann::json::parse(second)).dump());
  CHECK(without_time(nlohmann::json::parse(a.out)) == without_time(a.report));
  CHECK(a.report["tool"]["version"] == kToolVersion);
  CHECK(a.report["command"] == args);
  CHECK(a.report.contains("wall_time_s"));

  auto failed = run({"construct", "counter", "--n", "1", "--report", tmp.path("e.json")});
  CHECK(nlohmann::json::parse(read_file(tmp.path("e.json")))["exit_code"] == kExitUsage);
}
