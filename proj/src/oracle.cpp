#include "opsyn/oracle.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "opsyn/errors.hpp"

namespace opsyn {

DepthBound DepthBound::for_plant(const Plant& p, std::size_t observable_length) {
  return {observable_length, std::max<std::size_t>(1, p.state_count())};
}

namespace {

// Supervisor behaviour as seen by the oracle: what is offered at a history
// class, and how the class evolves. Memory is unused for IS-mappings.
struct SupervisorModel {
  std::function<DecisionSet(const MicroState& est, std::size_t mem, const MacroState& level)> offer;
  std::function<std::size_t(std::size_t mem, const ControlDecision& g, EventId o)> next_memory;
  std::size_t initial_memory = 0;
};

SupervisorModel model_of(const Plant& p, const IsMapping& theta) {
  return {[&p, &theta](const MicroState& est, std::size_t, const MacroState& level) {
            return theta.at(p, {est, level});
          },
          [](std::size_t, const ControlDecision&, EventId) { return std::size_t{0}; }, 0};
}

SupervisorModel model_of(const Plant& p, const FiniteSupervisor& sn) {
  return {[&sn](const MicroState&, std::size_t q, const MacroState&) { return sn.output(q); },
          [&p, &sn](std::size_t q, const ControlDecision& g, EventId o) {
            auto next = sn.update(q, g, o);
            if (!next)
              throw SupervisorUndefined("no update from '" + sn.name(q) + "' on decision " +
                                        render(p, g) + " and event '" + p.event_name(o) + "'");
            return *next;
          },
          sn.initial()};
}

// States reachable from `from` by strings of enabled unobservable events of
// length at most `run`.
StateSet walk_unobservable(const Plant& p, const StateSet& from, const ControlDecision& g,
                           std::size_t run) {
  StateSet seen = from;
  std::vector<StateId> frontier(from.begin(), from.end());
  for (std::size_t k = 0; k < run && !frontier.empty(); ++k) {
    std::vector<StateId> next;
    for (auto x : frontier)
      for (auto e : p.unobservable_events()) {
        if (!g.allows(p, e)) continue;
        if (auto y = p.next(x, e))
          if (seen.insert(*y)) next.push_back(*y);
      }
    frontier = std::move(next);
  }
  return seen;
}

StateSet walk_observable(const Plant& p, const StateSet& from, EventId o) {
  StateSet out;
  for (auto x : from)
    if (auto y = p.next(x, o)) out.insert(*y);
  return out;
}

// History classes sharing one observation: (Ê_S, memory).
using Level = std::set<std::pair<MicroState, std::size_t>>;

MacroState estimates_of(const Level& level) {
  std::vector<MicroState> out;
  for (const auto& [est, _] : level) out.push_back(est);
  return MacroState(std::move(out));
}

std::vector<IntruderView> enumerate_levels(const Plant& p, const SupervisorModel& sup,
                                           const DepthBound& b) {
  std::vector<IntruderView> out;
  std::vector<std::pair<EventSeq, Level>> current{
      {EventSeq{}, Level{{MicroState{p.initial()}, sup.initial_memory}}}};
  for (std::size_t len = 0; !current.empty(); ++len) {
    std::vector<std::pair<EventSeq, Level>> next_levels;
    for (const auto& [s, level] : current) {
      IntruderView view;
      view.observation = s;
      view.estimates = estimates_of(level);

      std::map<EventId, Level> successors;
      std::vector<MicroState> after;
      for (const auto& [est, mem] : level) {
        for (const auto& g : sup.offer(est, mem, view.estimates)) {
          const StateSet reach = walk_unobservable(p, est, g, b.max_unobservable_run);
          view.states.insert_all(reach);
          after.push_back(reach);
          if (len >= b.max_observable_length) continue;
          for (auto o : p.observable_events()) {
            if (!g.allows(p, o)) continue;
            StateSet est2 = walk_observable(p, reach, o);
            if (est2.empty()) continue;
            successors[o].insert({std::move(est2), sup.next_memory(mem, g, o)});
          }
        }
      }
      view.after_decision = MacroState(std::move(after));
      out.push_back(std::move(view));
      for (auto& [o, lv] : successors) {
        EventSeq s2 = s;
        s2.push_back(o);
        next_levels.emplace_back(std::move(s2), std::move(lv));
      }
    }
    current = std::move(next_levels);
  }
  return out;
}

StateSet estimate_for(const Plant& p, const SupervisorModel& sup, const EventSeq& s,
                      const DepthBound& b) {
  DepthBound bb = b;
  bb.max_observable_length = s.size();
  for (const auto& v : enumerate_levels(p, sup, bb))
    if (v.observation == s) return v.states;
  return {};
}

ClosedLoopVerdict check_levels(const Plant& p, const SupervisorModel& sup, const DepthBound& b) {
  for (const auto& v : enumerate_levels(p, sup, b)) {
    if (!v.states.empty() && v.states.is_subset_of(p.secret_states()))
      return {false, v.observation};
  }
  return {};
}

std::vector<ExtendedString> extended_strings(const Plant& p, const SupervisorModel& sup,
                                             const DepthBound& b) {
  std::map<EventSeq, MacroState> level_macro;
  for (const auto& v : enumerate_levels(p, sup, b)) level_macro.emplace(v.observation, v.estimates);

  std::set<ExtendedString> out{ExtendedString{}};
  ExtendedString rho;

  // Extends ρ (which ends in decision g at plant state x).
  std::function<void(StateId, const MicroState&, std::size_t, const ControlDecision&,
                     const EventSeq&, std::size_t)>
      expand = [&](StateId x, const MicroState& est, std::size_t mem, const ControlDecision& g,
                   const EventSeq& s, std::size_t run) {
        for (std::size_t e = 0; e < p.event_count(); ++e) {
          const EventId ev{static_cast<std::uint32_t>(e)};
          if (!g.allows(p, ev)) continue;
          const auto y = p.next(x, ev);
          if (!y) continue;
          if (!p.is_observable(ev)) {
            if (run >= b.max_unobservable_run) continue;
            rho.push_back(ev);
            out.insert(rho);
            rho.push_back(g);
            out.insert(rho);
            expand(*y, est, mem, g, s, run + 1);
            rho.pop_back();
            rho.pop_back();
          } else {
            if (s.size() >= b.max_observable_length) continue;
            EventSeq s2 = s;
            s2.push_back(ev);
            const MicroState est2 =
                walk_observable(p, walk_unobservable(p, est, g, b.max_unobservable_run), ev);
            const std::size_t mem2 = sup.next_memory(mem, g, ev);
            rho.push_back(ev);
            out.insert(rho);
            for (const auto& g2 : sup.offer(est2, mem2, level_macro.at(s2))) {
              rho.push_back(g2);
              out.insert(rho);
              expand(*y, est2, mem2, g2, s2, 0);
              rho.pop_back();
            }
            rho.pop_back();
          }
        }
      };

  const MicroState est0{p.initial()};
  for (const auto& g0 : sup.offer(est0, sup.initial_memory, MacroState{est0})) {
    rho = {g0};
    out.insert(rho);
    expand(p.initial(), est0, sup.initial_memory, g0, {}, 0);
  }
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<IntruderView> enumerate_observations(const Plant& p, const IsMapping& theta,
                                                 const DepthBound& b) {
  return enumerate_levels(p, model_of(p, theta), b);
}
std::vector<IntruderView> enumerate_observations(const Plant& p, const FiniteSupervisor& sn,
                                                 const DepthBound& b) {
  return enumerate_levels(p, model_of(p, sn), b);
}

StateSet intruder_state_estimate(const Plant& p, const IsMapping& theta, const EventSeq& s,
                                 const DepthBound& b) {
  return estimate_for(p, model_of(p, theta), s, b);
}
StateSet intruder_state_estimate(const Plant& p, const FiniteSupervisor& sn, const EventSeq& s,
                                 const DepthBound& b) {
  return estimate_for(p, model_of(p, sn), s, b);
}

std::vector<ExtendedString> enumerate_extended(const Plant& p, const IsMapping& theta,
                                               const DepthBound& b) {
  return extended_strings(p, model_of(p, theta), b);
}
std::vector<ExtendedString> enumerate_extended(const Plant& p, const FiniteSupervisor& sn,
                                               const DepthBound& b) {
  return extended_strings(p, model_of(p, sn), b);
}

ClosedLoopVerdict check_closed_loop_opacity(const Plant& p, const IsMapping& theta,
                                            const DepthBound& b) {
  return check_levels(p, model_of(p, theta), b);
}
ClosedLoopVerdict check_closed_loop_opacity(const Plant& p, const FiniteSupervisor& sn,
                                            const DepthBound& b) {
  return check_levels(p, model_of(p, sn), b);
}

namespace {

std::vector<ControlDecision> all_decisions(const Plant& p) {
  const std::vector<EventId> ctrl(p.controllable_events().begin(), p.controllable_events().end());
  if (ctrl.size() > 20) throw CapExceeded(std::size_t{1} << 20);
  std::vector<ControlDecision> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << ctrl.size()); ++mask) {
    EventSet s;
    for (std::size_t i = 0; i < ctrl.size(); ++i)
      if (mask & (std::size_t{1} << i)) s.insert(ctrl[i]);
    out.emplace_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

class DeterministicSearch {
 public:
  DeterministicSearch(const Plant& p, const DepthBound& b, std::size_t cap)
      : p_(p), b_(b), cap_(cap), decisions_(all_decisions(p)) {}

  bool run() { return search(); }

 private:
  // Smallest estimate reachable under the partial assignment but not yet assigned.
  std::optional<MicroState> pending() const {
    std::set<MicroState> seen{MicroState{p_.initial()}};
    std::vector<MicroState> stack{MicroState{p_.initial()}};
    std::optional<MicroState> best;
    while (!stack.empty()) {
      const MicroState m = stack.back();
      stack.pop_back();
      auto it = assign_.find(m);
      if (it == assign_.end()) {
        if (!best || m < *best) best = m;
        continue;
      }
      const auto reach = unobservable_reach(p_, m, it->second);
      for (auto o : p_.observable_events()) {
        if (!it->second.allows(p_, o)) continue;
        auto next = observable_reach(p_, reach, o);
        if (!next.empty() && seen.insert(next).second) stack.push_back(std::move(next));
      }
    }
    return best;
  }

  bool search() {
    const auto m = pending();
    if (!m) return check_candidate();
    for (const auto& g : decisions_) {
      // A singleton policy exposes UR_γ(m) directly to the intruder.
      if (unobservable_reach(p_, *m, g).is_subset_of(p_.secret_states())) continue;
      assign_[*m] = g;
      if (search()) return true;
      assign_.erase(*m);
    }
    return false;
  }

  bool check_candidate() {
    if (++candidates_ > cap_) throw CapExceeded(candidates_);
    IsMapping theta;
    for (const auto& [m, g] : assign_) theta.set({m, MacroState{m}}, DecisionSet{g});
    DepthBound bb = b_;
    bb.max_observable_length = std::max(b_.max_observable_length, assign_.size());
    return check_closed_loop_opacity(p_, theta, bb).opaque;
  }

  const Plant& p_;
  DepthBound b_;
  std::size_t cap_;
  std::vector<ControlDecision> decisions_;
  std::map<MicroState, ControlDecision> assign_;
  std::size_t candidates_ = 0;
};

}  // namespace

bool brute_force_deterministic_exists(const Plant& p, const DepthBound& b, std::size_t cap) {
  return DeterministicSearch(p, b, cap).run();
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("fixture check failed: ") + what);
}

}  // namespace

Plant reconstruct_fixture() {
  PlantBuilder b("example12");
  b.event("c1", false, true).event("c2", false, true);
  b.event("o1", true, false).event("o2", true, false).event("o3", true, false);
  for (int i = 0; i <= 11; ++i) b.state(std::to_string(i));
  b.initial("0");
  for (const char* s : {"0", "4", "10"}) b.secret(s);
  const char* table[][3] = {
      {"0", "c1", "1"},  {"0", "c2", "3"},  {"1", "c2", "2"},  {"1", "o1", "4"},
      {"1", "o2", "5"},  {"2", "o3", "4"},  {"3", "c1", "2"},  {"3", "o1", "5"},
      {"3", "o2", "4"},  {"5", "c1", "6"},  {"5", "c2", "7"},  {"6", "c2", "8"},
      {"6", "o1", "9"},  {"6", "o2", "10"}, {"7", "c1", "8"},  {"7", "o1", "10"},
      {"7", "o2", "11"},
  };
  for (const auto& t : table) b.transition(t[0], t[1], t[2]);
  Plant p = b.build();

  auto S = [&](std::initializer_list<std::string_view> n) { return make_states(p, n); };
  auto G = [&](std::initializer_list<std::string_view> n) { return make_decision(p, n); };
  auto run = [&](const char* text) {
    const auto seq = parse_events(p, text);
    return step(p, p.state("0"), seq);
  };
  const EventId o1 = p.event("o1"), o2 = p.event("o2"), o3 = p.event("o3");

  require(p.next(p.state("0"), p.event("c1")) == p.state("1"), "0 -c1-> 1");
  require(p.next(p.state("0"), p.event("c2")) == p.state("3"), "0 -c2-> 3");
  require(p.next(p.state("1"), o1) == p.state("4"), "1 -o1-> 4");
  require(p.next(p.state("3"), o1) == p.state("5"), "3 -o1-> 5");
  require(p.next(p.state("2"), o3) == p.state("4"), "2 -o3-> 4");
  require(!unobservable_reach(p, S({"0"}), G({"c1"})).contains(p.state("2")) &&
              !unobservable_reach(p, S({"0"}), G({"c2"})).contains(p.state("2")) &&
              unobservable_reach(p, S({"0"}), G({"c1", "c2"})).contains(p.state("2")),
          "state 2 needs both c1 and c2");
  require(unobservable_reach(p, S({"0"}), G({"c1"})) == S({"0", "1"}), "UR_c1({0})");
  require(observable_reach(p, S({"0", "1"}), o2) == S({"5"}), "NX_o2({0,1})");
  require(unobservable_reach(p, S({"5"}), G({"c1", "c2"})) == S({"5", "6", "7", "8"}),
          "UR_c1c2({5})");
  require(observable_reach(p, S({"5", "6", "7", "8"}), o1) == S({"9", "10"}), "NX_o1({5..8})");
  require(observable_reach(p, S({"5", "6", "7", "8"}), o2) == S({"10", "11"}), "NX_o2({5..8})");
  require(run("c2 o1 c2 o1") == p.state("10"), "c2 o1 c2 o1 -> 10");
  require(run("c2 o1 c1 o1") == p.state("9"), "c2 o1 c1 o1 -> 9");
  require(observable_reach(p, S({"0", "1"}), o1) == S({"4"}), "NX_o1({0,1})");
  require(observable_reach(p, S({"0", "3"}), o1) == S({"5"}), "NX_o1({0,3})");
  require(!p.next(p.state("4"), o1) && !p.next(p.state("4"), o2), "state 4 deadlocked");

  const MacroControlDecision d0({{S({"0"}), DecisionSet{G({"c1"}), G({"c2"})}}});
  const auto y1 = macro_observable_reach(p, odot(p, d0), o1);
  require(y1 && *y1 == MacroState{S({"4"}), S({"5"})}, "macro {{4},{5}}");
  const MacroControlDecision d1({{S({"4"}), DecisionSet{ControlDecision{}}},
                                 {S({"5"}), DecisionSet{G({"c1", "c2"})}}});
  const auto y2 = macro_observable_reach(p, odot(p, d1), o2);
  const auto y3 = macro_observable_reach(p, odot(p, d1), o1);
  require(y2 && *y2 == MacroState{S({"10", "11"})}, "macro {{10,11}}");
  require(y3 && *y3 == MacroState{S({"9", "10"})}, "macro {{9,10}}");
  return p;
}

}  // namespace opsyn
