#include <doctest.h>

#include <algorithm>
#include <functional>

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

IsMapping single(const Plant& p, const ControlDecision& g) {
  IsMapping t;
  const MicroState m{p.initial()};
  t.set({m, MacroState{m}}, DecisionSet{g});
  return t;
}

}  // namespace

TEST_CASE("fixture checks pass") {
  CHECK_NOTHROW(reconstruct_fixture());
  const auto& p = fixture();
  CHECK(p.state_count() == 12);
  CHECK(p.secret_states() == S({"0", "4", "10"}));
}

TEST_CASE("extended strings under the synthesized mapping") {
  const auto& p = fixture();
  const auto all = enumerate_extended(p, theta_star(), DepthBound::for_plant(p, 1));
  const auto rho = parse_extended(p, "{c2} c2 {c2} o1 {c1,c2}");
  CHECK(std::find(all.begin(), all.end(), rho) != all.end());
  for (const auto& r : all) {
    if (r.empty()) continue;
    CHECK(std::get<ControlDecision>(r[0]) != G({"c1", "c2"}));
  }

  const auto deep = enumerate_extended(p, theta_star(), DepthBound::for_plant(p, 4));
  for (const auto& r : deep) {
    const auto ev = events_of(r);
    CHECK(std::find(ev.begin(), ev.end(), p.event("o3")) == ev.end());
    // Each event is allowed by the decision before it; unobservable steps keep the decision.
    for (std::size_t i = 1; i < r.size(); i += 2) {
      const auto e = std::get<EventId>(r[i]);
      CHECK(std::get<ControlDecision>(r[i - 1]).allows(p, e));
      if (!p.is_observable(e) && i + 1 < r.size())
        CHECK(std::get<ControlDecision>(r[i + 1]) == std::get<ControlDecision>(r[i - 1]));
    }
  }
}

TEST_CASE("extended strings of a supervisor offering nothing") {
  PlantBuilder b("quiet");
  b.event("c", false, true).event("d", false, true);
  b.initial("0").transition("0", "c", "1").transition("0", "d", "2");
  const auto p = b.build();
  const auto all = enumerate_extended(p, single(p, ControlDecision{}), DepthBound::for_plant(p, 3));
  REQUIRE(all.size() == 2);
  CHECK(all[0].empty());
  CHECK(all[1] == ExtendedString{ControlDecision{}});
}

TEST_CASE("intruder state estimate") {
  const auto& p = fixture();
  const auto b = DepthBound::for_plant(p, 5);
  CHECK(intruder_state_estimate(p, theta_star(), E("o1"), b) == S({"4", "5", "6", "7", "8"}));
  CHECK(intruder_state_estimate(p, theta_star(), E("o3"), b).empty());

  const auto open = no_secret_plant();
  const auto g = enable_all(open);
  CHECK(intruder_state_estimate(open, single(open, g), EventSeq{}, DepthBound::for_plant(open, 2)) ==
        unobservable_reach(open, MicroState{open.initial()}, g));
}

TEST_CASE("closed-loop opacity") {
  const auto& p = fixture();
  CHECK(check_closed_loop_opacity(p, theta_star(), DepthBound::for_plant(p, 4)).opaque);

  IsMapping det;
  det.set({S({"0"}), MacroState{S({"0"})}}, DecisionSet{G({"c1"})});
  det.set({S({"4"}), MacroState{S({"4"})}}, DecisionSet{G({})});
  det.set({S({"5"}), MacroState{S({"5"})}}, DecisionSet{G({})});
  const auto v = check_closed_loop_opacity(p, det, DepthBound::for_plant(p, 2));
  CHECK_FALSE(v.opaque);
  CHECK(v.witness == E("o1"));

  const auto open = no_secret_plant();
  const auto any = synthesize(open, Strategy::First, 64);
  REQUIRE(any);
  CHECK(check_closed_loop_opacity(open, *any, DepthBound::for_plant(open, 3)).opaque);
}

TEST_CASE("deterministic supervisors") {
  const auto& p = fixture();
  CHECK_FALSE(brute_force_deterministic_exists(p, DepthBound::for_plant(p, 5), 1'000'000));
  const auto open = no_secret_plant();
  CHECK(brute_force_deterministic_exists(open, DepthBound::for_plant(open, 5), 1'000'000));
  const auto chain = reveal_chain();
  CHECK_FALSE(brute_force_deterministic_exists(chain, DepthBound::for_plant(chain, 5), 1'000'000));
}

TEST_CASE("deterministic special case matches the classical closed loop") {
  SplitMix64 rng(31);
  for (int round = 0; round < 60; ++round) {
    const auto p = random_plant(rng);
    // Static supervisor: one decision everywhere.
    EventSet en;
    for (auto e : p.controllable_events())
      if (rng.coin(0.5)) en.insert(e);
    const ControlDecision g(en);
    IsMapping theta;
    std::set<MicroState> seen{MicroState{p.initial()}};
    std::vector<MicroState> stack{MicroState{p.initial()}};
    while (!stack.empty()) {
      const auto m = stack.back();
      stack.pop_back();
      theta.set({m, MacroState{m}}, DecisionSet{g});
      for (auto o : p.observable_events()) {
        if (!g.allows(p, o)) continue;
        auto next = observable_reach(p, unobservable_reach(p, m, g), o);
        if (!next.empty() && seen.insert(next).second) stack.push_back(next);
      }
    }
    const auto b = DepthBound::for_plant(p, 3);
    std::set<EventSeq> from_oracle;
    for (const auto& r : enumerate_extended(p, theta, b)) from_oracle.insert(events_of(r));

    // L(S/G): strings whose every event is allowed by g, with the same truncation.
    std::set<EventSeq> classical{EventSeq{}};
    std::function<void(StateId, EventSeq&, std::size_t, std::size_t)> walk =
        [&](StateId x, EventSeq& s, std::size_t obs, std::size_t run) {
          for (std::uint32_t e = 0; e < p.event_count(); ++e) {
            const EventId ev{e};
            const auto y = p.next(x, ev);
            if (!y || !g.allows(p, ev)) continue;
            const bool observable = p.is_observable(ev);
            if (observable ? obs >= b.max_observable_length : run >= b.max_unobservable_run)
              continue;
            s.push_back(ev);
            classical.insert(s);
            walk(*y, s, observable ? obs + 1 : obs, observable ? 0 : run + 1);
            s.pop_back();
          }
        };
    EventSeq s;
    walk(p.initial(), s, 0, 0);
    CHECK(from_oracle == classical);
  }
}
