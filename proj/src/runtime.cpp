#include "opsyn/runtime.hpp"

#include <deque>
#include <sstream>

#include "opsyn/errors.hpp"

namespace opsyn {

void check_alternation(const ExtendedString& rho) {
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const bool want_decision = i % 2 == 0;
    if (std::holds_alternative<ControlDecision>(rho[i]) != want_decision)
      throw InputError("extended string must alternate decisions and events, starting with a decision");
  }
}

EventSeq events_of(const ExtendedString& rho) {
  EventSeq out;
  for (const auto& sym : rho)
    if (const auto* e = std::get_if<EventId>(&sym)) out.push_back(*e);
  return out;
}

DecisionHistory observe_project(const Plant& p, const ExtendedString& rho) {
  check_alternation(rho);
  DecisionHistory out;
  if (rho.empty()) return out;
  out.push_back(rho[0]);
  for (std::size_t i = 1; i < rho.size(); i += 2) {
    const EventId e = std::get<EventId>(rho[i]);
    if (!p.is_observable(e)) continue;
    out.push_back(e);
    if (i + 1 < rho.size()) out.push_back(rho[i + 1]);
  }
  return out;
}

namespace {

void check_history(const Plant& p, const DecisionHistory& h) {
  check_alternation(h);
  for (std::size_t i = 1; i < h.size(); i += 2)
    if (!p.is_observable(std::get<EventId>(h[i])))
      throw InputError("decision history contains an unobservable event");
}

// Ê_S / E_S after consuming the whole history.
MicroState run_estimate(const Plant& p, const DecisionHistory& h) {
  MicroState m{p.initial()};
  ControlDecision applied;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i % 2 == 0) {
      applied = std::get<ControlDecision>(h[i]);
      m = unobservable_reach(p, m, applied);
    } else {
      const EventId o = std::get<EventId>(h[i]);
      m = applied.allows(p, o) ? observable_reach(p, m, o) : MicroState{};
      if (m.empty())
        throw InfeasibleHistory("history " + render(p, h) + " cannot be generated");
    }
  }
  return m;
}

}  // namespace

MicroState sup_estimate_after_obs(const Plant& p, const DecisionHistory& h) {
  check_history(p, h);
  if (h.size() % 2 == 1) throw InputError("history must be empty or end with an event");
  return run_estimate(p, h);
}

MicroState sup_estimate_after_dec(const Plant& p, const DecisionHistory& h) {
  check_history(p, h);
  if (h.size() % 2 == 0) throw InputError("history must end with a decision");
  return run_estimate(p, h);
}

std::string render(const Plant& p, const ExtendedString& rho) {
  std::string out;
  for (const auto& sym : rho) {
    if (!out.empty()) out += ' ';
    if (const auto* g = std::get_if<ControlDecision>(&sym))
      out += render(p, *g);
    else
      out += p.event_name(std::get<EventId>(sym));
  }
  return out;
}

ExtendedString parse_extended(const Plant& p, const std::string& text) {
  ExtendedString out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.front() == '{') {
      if (tok.back() != '}') throw InputError("malformed decision '" + tok + "'");
      std::vector<std::string> names;
      std::string inner = tok.substr(1, tok.size() - 2);
      std::istringstream parts(inner);
      std::string name;
      while (std::getline(parts, name, ','))
        if (!name.empty()) names.push_back(name);
      out.emplace_back(make_decision(p, std::span<const std::string>(names)));
    } else {
      out.emplace_back(p.event(tok));
    }
  }
  check_alternation(out);
  return out;
}

SessionState start_session(const Plant& p, std::uint64_t seed) {
  SessionState s;
  s.m = MicroState{p.initial()};
  s.macro = MacroState{s.m};
  s.rng = SplitMix64(seed);
  return s;
}

DecodeOutcome decode_step(const Plant& p, SessionState& s, const IsMapping& theta,
                          std::optional<EventId> obs) {
  if (!s.started) {
    if (obs) throw InputError("the first decoding step takes no observation");
  } else {
    if (!obs) throw InputError("decoding step needs an observation");
    const EventId o = *obs;
    if (!p.is_observable(o)) throw InputError("event '" + p.event_name(o) + "' is not observable");
    MicroState next = s.applied.allows(p, o) ? observable_reach(p, s.m_plus, o) : MicroState{};
    if (next.empty())
      throw ObservationNotEnabled("observation '" + p.event_name(o) +
                                  "' is not possible under the applied decision");
    auto macro = macro_observable_reach(p, s.macro_plus, o);
    s.m = std::move(next);
    s.macro = std::move(*macro);
    s.history.emplace_back(o);
  }

  const DecisionSet& offered = theta.at(p, {s.m, s.macro});
  const ControlDecision issued = offered.options()[s.rng.uniform(offered.size())];
  s.m_plus = unobservable_reach(p, s.m, issued);
  s.macro_plus = odot(p, theta.decision_for(p, s.macro));
  s.applied = issued;
  s.history.emplace_back(issued);
  s.started = true;
  return {offered, issued};
}

std::set<InformationState> reach_closure(const Plant& p, const IsMapping& theta) {
  std::set<InformationState> out;
  const MacroState y0{MicroState{p.initial()}};
  std::set<MacroState> seen{y0};
  std::deque<MacroState> queue{y0};
  while (!queue.empty()) {
    const MacroState y = std::move(queue.front());
    queue.pop_front();
    for (const auto& m : y) out.insert({m, y});
    const auto z = odot(p, theta.decision_for(p, y));
    for (auto o : p.observable_events()) {
      if (auto next = macro_observable_reach(p, z, o))
        if (seen.insert(*next).second) queue.push_back(std::move(*next));
    }
  }
  return out;
}

IntruderEstimate intruder_estimates(const Plant& p, const IsMapping& theta, const EventSeq& s) {
  IntruderEstimate r;
  r.macro = MacroState{MicroState{p.initial()}};
  r.macro_plus = odot(p, theta.decision_for(p, r.macro));
  for (auto o : s) {
    auto next = macro_observable_reach(p, r.macro_plus, o);
    if (!next)
      throw InfeasibleObservation("observation '" + p.event_name(o) +
                                  "' cannot occur under the mapping");
    r.macro = std::move(*next);
    r.macro_plus = odot(p, theta.decision_for(p, r.macro));
  }
  r.flat = flatten(r.macro_plus);
  return r;
}

CoSimulation::CoSimulation(const Plant& p, const IsMapping& theta, std::uint64_t seed)
    : plant_(p),
      theta_(theta),
      session_(start_session(p, seed)),
      plant_rng_(session_.rng.split()),
      last_(decode_step(plant_, session_, theta_, std::nullopt)) {
  session_.true_state = p.initial();
}

std::vector<EventId> CoSimulation::enabled_observations() const {
  const auto reach =
      unobservable_reach(plant_, StateSet{*session_.true_state}, session_.applied);
  std::vector<EventId> out;
  for (auto o : plant_.observable_events()) {
    if (!session_.applied.allows(plant_, o)) continue;
    for (auto x : reach) {
      if (plant_.next(x, o)) {
        out.push_back(o);
        break;
      }
    }
  }
  return out;
}

void CoSimulation::observe(EventId o) {
  if (!plant_.is_observable(o))
    throw InputError("event '" + plant_.event_name(o) + "' is not observable");
  std::vector<StateId> sources;
  if (session_.applied.allows(plant_, o)) {
    for (auto x : unobservable_reach(plant_, StateSet{*session_.true_state}, session_.applied))
      if (plant_.next(x, o)) sources.push_back(x);
  }
  if (sources.empty())
    throw ObservationNotEnabled("the plant cannot produce '" + plant_.event_name(o) + "' now");
  const StateId x = sources[plant_rng_.uniform(sources.size())];
  last_ = decode_step(plant_, session_, theta_, o);
  session_.true_state = *plant_.next(x, o);
  last_obs_ = o;
  ++step_;
}

std::string CoSimulation::transcript_line() const {
  std::ostringstream out;
  out << "step " << step_ << " obs=" << (last_obs_ ? plant_.event_name(*last_obs_) : "-")
      << " issued=" << render(plant_, last_.offered) << " picked=" << render(plant_, last_.issued)
      << " m=" << render(plant_, session_.m) << " macro=" << render(plant_, session_.macro)
      << " flat=" << render(plant_, flatten(session_.macro_plus));
  return out.str();
}

}  // namespace opsyn
