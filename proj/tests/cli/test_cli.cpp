#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "opsyn/des_format.hpp"
#include "opsyn/oracle.hpp"
#include "opsyn/serialize.hpp"
#include "random_models.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "opsyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = opsyn::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "opsyn-cli-tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto path = workdir() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const std::string& path) { return opsyn::read_file(path); }

std::string fixture_path() { return write("example12.des", opsyn::write_des(opsyn::reconstruct_fixture())); }

}  // namespace

TEST_CASE("verify") {
  const auto r = run({"verify", fixture_path()});
  CHECK(r.code == 1);
  CHECK(r.out == "not opaque\nwitness: o3\n");

  const auto open = write("open.des", opsyn::write_des(opsyn::testing::no_secret_plant()));
  CHECK(run({"verify", open}).code == 0);
  CHECK(run({"verify", open, "--depth", "3"}).out == "opaque\n");
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == 64);
  CHECK(run({"verify"}).code == 64);
  CHECK(run({"bogus"}).code == 64);
  CHECK(run({"synth", fixture_path(), "--strategy", "random"}).code == 64);
  CHECK(run({"verify", fixture_path(), "--depth", "0"}).code == 64);

  const auto bad = write("bad.des", "plant b\nevents: a\nweird: x\n");
  const auto r = run({"verify", bad});
  CHECK(r.code == 65);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run({"verify", (workdir() / "missing.des").string()}).code == 65);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("synth then oracle") {
  const auto theta = (workdir() / "t.json").string();
  const auto s = run({"synth", fixture_path(), "-o", theta});
  CHECK(s.code == 0);
  CHECK(s.out.empty());
  const auto o = run({"oracle", fixture_path(), theta, "--depth", "4"});
  CHECK(o.code == 0);
  CHECK(o.out.find("opaque up to depth 4") != std::string::npos);

  const auto to_stdout = run({"synth", fixture_path(), "--strategy", "max"});
  CHECK(to_stdout.out == slurp(theta));
  const auto first = run({"synth", fixture_path(), "--strategy", "first"});
  CHECK(first.code == 0);
  CHECK(first.out != to_stdout.out);
}

TEST_CASE("synth exit codes") {
  const auto chain = write("reveal.des", opsyn::write_des(opsyn::testing::reveal_chain()));
  const auto r = run({"synth", chain});
  CHECK(r.code == 2);
  CHECK(r.out == "no solution\n");

  std::string wide = "plant wide\nevents: a b c d o\nobservable: o\ncontrollable: a b c d\n"
                     "initial: 0\ntrans:\n0 a 1\n0 b 1\n0 c 1\n0 d 1\n1 o 0\n";
  const auto w = write("wide.des", wide);
  CHECK(run({"synth", w, "--cap", "5"}).code == 3);
  CHECK(run({"export-gbts", w, "--cap", "5"}).code == 3);
}

TEST_CASE("oracle reports a leaking mapping") {
  const auto leak = write("leak.json", R"({"plant":"example12","entries":[
    {"estimate":["0"],"macro":[["0"]],"decisions":[["c1"]]},
    {"estimate":["4"],"macro":[["4"]],"decisions":[[]]},
    {"estimate":["5"],"macro":[["5"]],"decisions":[[]]}]})");
  const auto r = run({"oracle", fixture_path(), leak, "--depth", "3"});
  CHECK(r.code == 1);
  CHECK(r.out.find("witness: o1") != std::string::npos);

  const auto partial = write("partial.json", R"({"plant":"example12","entries":[
    {"estimate":["0"],"macro":[["0"]],"decisions":[["c1"]]}]})");
  CHECK(run({"oracle", fixture_path(), partial}).code == 65);
}

TEST_CASE("simulate") {
  const auto theta = (workdir() / "sim.json").string();
  REQUIRE(run({"synth", fixture_path(), "-o", theta}).code == 0);
  const auto a = run({"simulate", fixture_path(), theta, "--seed", "7", "--script", "o1"});
  CHECK(a.code == 0);
  CHECK(a.out.rfind("step 0 obs=- issued={{c1},{c2}} picked=", 0) == 0);
  CHECK(a.out.find("step 1 obs=o1") != std::string::npos);
  CHECK(a.out.find("macro={{4},{5}} flat={4,5,6,7,8}") != std::string::npos);
  CHECK(run({"simulate", fixture_path(), theta, "--seed", "7", "--script", "o1"}).out == a.out);

  CHECK(run({"simulate", fixture_path(), theta, "--script", "o3"}).code == 65);

  const auto repl = run({"simulate", fixture_path(), theta, "--seed", "1"}, "o1\nnope\nquit\n");
  CHECK(repl.code == 0);
  CHECK(repl.out.find("enabled: o1 o2") != std::string::npos);
  CHECK(repl.out.find("step 1 obs=o1") != std::string::npos);
  CHECK(repl.err.find("unknown event 'nope'") != std::string::npos);
}

TEST_CASE("convert") {
  const auto plant = opsyn::testing::parity_plant();
  const auto des = write("parity.des", opsyn::write_des(plant));
  opsyn::FiniteSupervisor sn;
  const auto g = opsyn::make_decision(plant, {"u"});
  const auto q = sn.add_state("q", opsyn::DecisionSet{g});
  const auto w = sn.add_state("w", opsyn::DecisionSet{opsyn::ControlDecision{}});
  sn.set_initial(q);
  sn.set_update(q, plant, g, plant.event("o"), w);
  sn.set_update(w, plant, opsyn::ControlDecision{}, plant.event("r"), q);
  const auto theta = opsyn::convert(plant, sn);
  const auto sn_path = write("sn.json", opsyn::write_supervisor(plant, sn));

  const auto out = (workdir() / "conv.json").string();
  const auto r = run({"convert", des, sn_path, "-o", out});
  CHECK(r.code == 0);
  CHECK(opsyn::parse_theta(plant, slurp(out)) == theta);

  const auto broken = write("broken.json", R"({"states":["q"],"initial":"q","output":{"q":[["u"]]},"update":[]})");
  CHECK(run({"convert", des, broken}).code == 65);
  CHECK(run({"convert", des, write("junk.json", "{")}).code == 65);
}

TEST_CASE("export-gbts") {
  const auto total = run({"export-gbts", fixture_path(), "--stage", "total"});
  const auto pruned = run({"export-gbts", fixture_path()});
  CHECK(total.code == 0);
  CHECK(pruned.code == 0);
  CHECK(total.out.size() > pruned.out.size());
  CHECK(pruned.out.find("shape=box") != std::string::npos);
  const auto file = (workdir() / "g.dot").string();
  CHECK(run({"export-gbts", fixture_path(), "--stage", "pruned", "-o", file}).code == 0);
  CHECK(slurp(file) == pruned.out);
}
