#include <doctest.h>

#include "helpers.hpp"
#include "opsyn/errors.hpp"
#include "opsyn/runtime.hpp"
#include "opsyn/synthesis.hpp"
#include "random_models.hpp"

using namespace opsyn;
using namespace opsyn::testing;

namespace {

const IsMapping& theta_star() {
  static const IsMapping t = *synthesize(fixture(), Strategy::LocallyMaximal, 64);
  return t;
}

ExtendedString X(const std::string& text) { return parse_extended(fixture(), text); }

}  // namespace

TEST_CASE("observation projection of extended strings") {
  const auto& p = fixture();
  CHECK(observe_project(p, X("{c1} c1 {c1} o2")) == X("{c1} o2"));
  CHECK(observe_project(p, ExtendedString{}).empty());
  CHECK(observe_project(p, X("{c1} c1 {c1} o2 {c1,c2} c1 {c1,c2} o1")) == X("{c1} o2 {c1,c2} o1"));
  CHECK(observe_project(p, X("{c1} o2 {c1,c2} c1")) == X("{c1} o2 {c1,c2}"));
  CHECK(render(p, X("{c1} o2 {}")) == "{c1} o2 {}");

  ExtendedString bad{p.event("o1")};
  CHECK_THROWS_AS(observe_project(p, bad), InputError);
  CHECK_THROWS_AS(parse_extended(p, "{c1} {c2}"), InputError);
}

TEST_CASE("supervisor estimates along a history") {
  const auto& p = fixture();
  CHECK(sup_estimate_after_obs(p, X("{c1} o2")) == S({"5"}));
  CHECK(sup_estimate_after_dec(p, X("{c1} o2 {c1,c2}")) == S({"5", "6", "7", "8"}));
  CHECK(sup_estimate_after_obs(p, X("{c1} o2 {c1,c2} o1")) == S({"9", "10"}));
  CHECK(sup_estimate_after_obs(p, ExtendedString{}) == S({"0"}));
  CHECK(sup_estimate_after_dec(p, X("{c1}")) == S({"0", "1"}));
  CHECK_THROWS_AS(sup_estimate_after_obs(p, X("{} o1")), InfeasibleHistory);
  CHECK_THROWS_AS(sup_estimate_after_obs(p, X("{c1}")), InputError);
  CHECK_THROWS_AS(sup_estimate_after_dec(p, X("{c1} o2")), InputError);
  CHECK_THROWS_AS(sup_estimate_after_obs(p, X("{c1} c1")), InputError);
}

TEST_CASE("decoder on the twelve-state plant") {
  const auto& p = fixture();
  auto s = start_session(p, 0);
  const auto first = decode_step(p, s, theta_star(), std::nullopt);
  CHECK(first.offered == DecisionSet{G({"c1"}), G({"c2"})});
  CHECK((first.issued == G({"c1"}) || first.issued == G({"c2"})));
  CHECK((s.m_plus == S({"0", "1"}) || s.m_plus == S({"0", "3"})));
  CHECK(s.macro_plus == AugmentedMacroState{{S({"0", "1"}), G({"c1"})}, {S({"0", "3"}), G({"c2"})}});
  CHECK(s.macro.contains(s.m));

  // Drive the {c2} branch.
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    auto t = start_session(p, seed);
    if (decode_step(p, t, theta_star(), std::nullopt).issued != G({"c2"})) continue;
    const auto next = decode_step(p, t, theta_star(), p.event("o1"));
    CHECK(t.m == S({"5"}));
    CHECK(t.macro == MacroState{S({"4"}), S({"5"})});
    CHECK(next.issued == G({"c1", "c2"}));
    CHECK_THROWS_AS(decode_step(p, t, theta_star(), p.event("o3")), ObservationNotEnabled);
    break;
  }
  CHECK_THROWS_AS(decode_step(p, s, theta_star(), std::nullopt), InputError);
}

TEST_CASE("controllable observations must be enabled") {
  PlantBuilder b("co");
  b.event("k", true, true);
  b.initial("0").transition("0", "k", "1");
  const auto p = b.build();
  IsMapping theta;
  const MicroState m0{p.initial()};
  theta.set({m0, MacroState{m0}}, DecisionSet{ControlDecision{}});
  auto s = start_session(p, 1);
  decode_step(p, s, theta, std::nullopt);
  CHECK_THROWS_AS(decode_step(p, s, theta, p.event("k")), ObservationNotEnabled);
}

TEST_CASE("reach closure") {
  const auto& p = fixture();
  std::set<InformationState> dom;
  for (const auto& [key, _] : theta_star()) dom.insert(key);
  CHECK(reach_closure(p, theta_star()) == dom);

  IsMapping partial;
  partial.set({S({"0"}), MacroState{S({"0"})}}, DecisionSet{G({"c1"})});
  CHECK_THROWS_AS(reach_closure(p, partial), ThetaUndefined);

  const auto open = no_secret_plant();
  IsMapping all;
  const auto g = enable_all(open);
  // Observer of the uncontrolled plant, estimate after each observation.
  std::set<MicroState> seen{MicroState{open.initial()}};
  std::vector<MicroState> stack{MicroState{open.initial()}};
  while (!stack.empty()) {
    const auto m = stack.back();
    stack.pop_back();
    all.set({m, MacroState{m}}, DecisionSet{g});
    for (auto o : open.observable_events()) {
      auto next = observable_reach(open, unobservable_reach(open, m, g), o);
      if (!next.empty() && seen.insert(next).second) stack.push_back(next);
    }
  }
  std::set<InformationState> expected;
  for (const auto& m : seen) expected.insert({m, MacroState{m}});
  CHECK(reach_closure(open, all) == expected);
}

TEST_CASE("intruder estimates") {
  const auto& p = fixture();
  const auto a = intruder_estimates(p, theta_star(), E("o1"));
  CHECK(a.macro == MacroState{S({"4"}), S({"5"})});
  CHECK(a.flat == S({"4", "5", "6", "7", "8"}));
  const auto b = intruder_estimates(p, theta_star(), EventSeq{});
  CHECK(b.macro == MacroState{S({"0"})});
  CHECK(b.flat == S({"0", "1", "3"}));
  CHECK_THROWS_AS(intruder_estimates(p, theta_star(), E("o3")), InfeasibleObservation);
}

TEST_CASE("co-simulation keeps its invariants") {
  SplitMix64 rng(99);
  for (int round = 0; round < 80; ++round) {
    const auto p = random_plant(rng);
    const auto theta = random_closed_mapping(p, rng);
    CoSimulation sim(p, theta, rng.next());
    EventSeq observed;
    for (int k = 0; k < 8; ++k) {
      const auto& s = sim.session();
      CHECK(s.m_plus.contains(*s.true_state));
      CHECK(s.macro.contains(s.m));
      CHECK(s.m == sup_estimate_after_obs(p, DecisionHistory(s.history.begin(), s.history.end() - 1)));
      const auto inc = intruder_estimates(p, theta, observed);
      CHECK(inc.macro == s.macro);
      CHECK(inc.macro_plus == s.macro_plus);
      const auto enabled = sim.enabled_observations();
      if (enabled.empty()) break;
      const auto o = enabled[rng.uniform(enabled.size())];
      sim.observe(o);
      observed.push_back(o);
    }
  }
}

TEST_CASE("decoder is deterministic for a seed") {
  const auto& p = fixture();
  auto run = [&](std::uint64_t seed) {
    CoSimulation sim(p, theta_star(), seed);
    std::string out = sim.transcript_line() + "\n";
    for (int k = 0; k < 3 && !sim.enabled_observations().empty(); ++k) {
      sim.observe(sim.enabled_observations().front());
      out += sim.transcript_line() + "\n";
    }
    return out;
  };
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL}) CHECK(run(seed) == run(seed));
  const auto line = run(0).substr(0, run(0).find('\n'));
  CHECK(line.rfind("step 0 obs=- issued={{c1},{c2}} picked=", 0) == 0);
  CHECK(line.find(" m={0} macro={{0}} flat={0,1,3}") != std::string::npos);
}
