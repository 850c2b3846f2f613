#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "opsyn/errors.hpp"
#include "opsyn/gbts.hpp"
#include "random_models.hpp"

using namespace opsyn;
using namespace opsyn::testing;

namespace {

const MacroState& y0() {
  static const MacroState y{S({"0"})};
  return y;
}

MacroControlDecision D(std::vector<MacroControlDecision::Row> rows) {
  return MacroControlDecision(std::move(rows));
}

bool contains(const std::vector<AugmentedMacroState>& v, const AugmentedMacroState& z) {
  return std::find(v.begin(), v.end(), z) != v.end();
}

}  // namespace

TEST_CASE("total G-BTS of the twelve-state plant") {
  const auto& p = fixture();
  const auto t = build_total(p, 64);
  REQUIRE_FALSE(t.empty());
  CHECK(t.y_nodes()[0].state == y0());
  CHECK(decisions_at(t, y0()).size() == 5);

  const auto d5 = D({{S({"0"}), {G({"c1"}), G({"c2"})}}});
  const auto z = t.successor(y0(), d5);
  REQUIRE(z);
  const MacroState s18{S({"4"}), S({"5"})};
  CHECK(t.successor(*z, p.event("o1")) == s18);
  CHECK(t.successor(*z, p.event("o2")) == s18);
  CHECK_FALSE(t.successor(*z, p.event("o3")));

  for (const auto& y : t.y_nodes())
    for (const auto& [d, zi] : y.decisions) {
      CHECK(d.compatible_with(y.state));
      CHECK(t.z_nodes()[zi].state == odot(p, d));
    }
  for (const auto& zn : t.z_nodes())
    for (const auto& [o, yi] : zn.successors)
      CHECK(macro_observable_reach(p, zn.state, o) == t.y_nodes()[yi].state);
  CHECK(is_consistent(p, t));
}

TEST_CASE("secret-revealing Z-states") {
  const auto& p = fixture();
  const auto t = build_total(p, 64);
  const auto reveal = revealing_z_states(t, p);
  std::set<StateSet> flats;
  for (const auto& z : reveal) flats.insert(flatten(z));
  CHECK(reveal.size() == 3);
  CHECK(flats == std::set<StateSet>{S({"0"}), S({"4"}), S({"10"})});

  const auto open = no_secret_plant();
  CHECK(revealing_z_states(build_total(open, 64), open).empty());
}

TEST_CASE("restrict") {
  const auto& p = fixture();
  const auto t = build_total(p, 64);
  const auto same = restrict(t, all_states(t));
  CHECK(same.y_nodes().size() == t.y_nodes().size());
  CHECK(same.z_nodes().size() == t.z_nodes().size());
  CHECK(same.transition_count() == t.transition_count());

  auto keep = all_states(t);
  keep.y.erase(y0());
  CHECK(restrict(t, keep).empty());

  const auto t0 = remove_revealing(t, p);
  const MacroState s7{S({"4"})};
  REQUIRE(t0.contains(s7));
  CHECK(decisions_at(t0, s7).empty());
}

TEST_CASE("pruning to the fixpoint") {
  const auto& p = fixture();
  const auto t0 = remove_revealing(build_total(p, 64), p);
  std::vector<PruneRound> rounds;
  const auto tstar = prune_to_fixpoint(p, t0, &rounds);

  REQUIRE(rounds.size() <= 3);
  REQUIRE(rounds.size() >= 2);
  CHECK_FALSE(rounds.back().changed());
  auto dead_y = rounds[0].dead_y;
  std::sort(dead_y.begin(), dead_y.end());
  CHECK(dead_y == std::vector<MacroState>{MacroState{S({"4"})}, MacroState{S({"10"})}});
  CHECK(rounds[0].dead_z.empty());
  CHECK(rounds[1].dead_y.empty());
  CHECK(rounds[1].dead_z.size() >= 5);
  const auto& dz = rounds[1].dead_z;
  CHECK(contains(dz, odot(p, D({{S({"0"}), {G({"c1"})}}}))));
  CHECK(contains(dz, odot(p, D({{S({"0"}), {G({"c1", "c2"})}}}))));
  CHECK(contains(dz, odot(p, D({{S({"4"}), {G({})}}, {S({"5"}), {G({"c1"})}}}))));
  CHECK(contains(dz, odot(p, D({{S({"4"}), {G({})}}, {S({"5"}), {G({"c2"})}}}))));

  CHECK(is_consistent(p, tstar));
  CHECK(revealing_z_states(tstar, p).empty());
  const auto at0 = decisions_at(tstar, y0());
  REQUIRE(at0.size() == 1);
  CHECK(render(p, at0[0]) == "[{0}=>{{c1},{c2}}]");

  const auto at18 = decisions_at(tstar, MacroState{S({"4"}), S({"5"})});
  REQUIRE(at18.size() == 3);
  CHECK(render(p, at18[0]) == "[{4}=>{{}}; {5}=>{{}}]");
  CHECK(render(p, at18[1]) == "[{4}=>{{}}; {5}=>{{c1},{c2}}]");
  CHECK(render(p, at18[2]) == "[{4}=>{{}}; {5}=>{{c1,c2}}]");

  CHECK_THROWS_AS(decisions_at(tstar, MacroState{S({"4"})}), UnknownState);

  std::vector<PruneRound> again;
  const auto twice = prune_to_fixpoint(p, tstar, &again);
  CHECK(again.size() == 1);
  CHECK(twice.transition_count() == tstar.transition_count());
}

TEST_CASE("small plants") {
  const auto chain = reveal_chain();
  const auto t = build_total(chain, 64);
  CHECK(prune_to_fixpoint(chain, remove_revealing(t, chain)).empty());

  PlantBuilder b("nc");
  b.event("a", true, false).event("u", false, false);
  b.initial("0").transition("0", "u", "1").transition("1", "a", "0").transition("0", "a", "2");
  const auto nc = b.build();
  for (const auto& y : build_total(nc, 64).y_nodes()) CHECK(y.decisions.size() == 1);
}

TEST_CASE("pruning invariants on random plants") {
  SplitMix64 rng(77);
  for (int round = 0; round < 120; ++round) {
    const auto p = random_plant(rng);
    const auto total = build_total(p, 64);
    const auto tstar = prune_to_fixpoint(p, remove_revealing(total, p));
    CHECK(is_consistent(p, tstar));
    CHECK(revealing_z_states(tstar, p).empty());
    for (const auto& y : tstar.y_nodes()) {
      REQUIRE(total.contains(y.state));
      for (const auto& [d, zi] : y.decisions) CHECK(tstar.z_nodes()[zi].state == odot(p, d));
    }
    const auto again = prune_to_fixpoint(p, tstar);
    CHECK(again.y_nodes().size() == tstar.y_nodes().size());
    CHECK(again.transition_count() == tstar.transition_count());

    // Pruning a sub-structure stays inside T*.
    auto keep = all_states(tstar);
    if (tstar.y_nodes().size() > 1) keep.y.erase(tstar.y_nodes().back().state);
    const auto sub = prune_to_fixpoint(p, restrict(tstar, keep));
    for (const auto& y : sub.y_nodes()) CHECK(tstar.contains(y.state));
    for (const auto& z : sub.z_nodes()) CHECK(tstar.contains(z.state));
  }
}

TEST_CASE("dot export") {
  const auto& p = fixture();
  const auto tstar = prune_to_fixpoint(p, remove_revealing(build_total(p, 64), p));
  const auto dot = to_dot(p, tstar);
  CHECK(dot.rfind("digraph gbts {", 0) == 0);
  CHECK(dot.find("y0 [shape=box, label=\"{{0}}\"]") != std::string::npos);
  CHECK(dot.find("shape=ellipse, label=\"{({0,1},{c1}),({0,3},{c2})}\"") != std::string::npos);
  CHECK(dot.find("[label=\"[{0}=>{{c1},{c2}}]\"]") != std::string::npos);
  CHECK(dot.find("[label=\"o1\"]") != std::string::npos);
  CHECK(to_dot(p, tstar) == dot);
}
