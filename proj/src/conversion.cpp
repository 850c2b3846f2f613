#include "opsyn/conversion.hpp"

#include <set>

#include "opsyn/errors.hpp"

namespace opsyn {

FiniteSupervisor::MemoryId FiniteSupervisor::add_state(std::string name, DecisionSet output) {
  if (find(name)) throw InputError("duplicate supervisor state '" + name + "'");
  names_.push_back(std::move(name));
  outputs_.push_back(std::move(output));
  return names_.size() - 1;
}

void FiniteSupervisor::set_initial(MemoryId q) {
  if (q >= names_.size()) throw InputError("unknown initial supervisor state");
  initial_ = q;
}

void FiniteSupervisor::set_update(MemoryId from, const Plant& p, const ControlDecision& g,
                                  EventId o, MemoryId to) {
  if (from >= names_.size() || to >= names_.size())
    throw InputError("unknown supervisor state in update");
  if (!p.is_observable(o))
    throw InputError("update on unobservable event '" + p.event_name(o) + "'");
  if (!update_.emplace(std::tuple{from, g, o}, to).second)
    throw InputError("duplicate update entry from '" + names_[from] + "'");
}

std::optional<FiniteSupervisor::MemoryId> FiniteSupervisor::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::optional<FiniteSupervisor::MemoryId> FiniteSupervisor::update(MemoryId q,
                                                                   const ControlDecision& g,
                                                                   EventId o) const {
  auto it = update_.find(std::tuple{q, g, o});
  if (it == update_.end()) return std::nullopt;
  return it->second;
}

std::vector<FiniteSupervisor::UpdateEntry> FiniteSupervisor::updates() const {
  std::vector<UpdateEntry> out;
  for (const auto& [key, to] : update_)
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), to});
  return out;
}

namespace {

[[noreturn]] void undefined_update(const Plant& p, const FiniteSupervisor& sn,
                                   FiniteSupervisor::MemoryId q, const ControlDecision& g,
                                   EventId o) {
  throw SupervisorUndefined("no update from '" + sn.name(q) + "' on decision " + render(p, g) +
                            " and event '" + p.event_name(o) + "'");
}

}  // namespace

FiniteSupervisor::MemoryId replay(const Plant& p, const FiniteSupervisor& sn,
                                  const std::vector<std::pair<ControlDecision, EventId>>& steps) {
  auto q = sn.initial();
  for (const auto& [g, o] : steps) {
    auto next = sn.update(q, g, o);
    if (!next) undefined_update(p, sn, q, g, o);
    q = *next;
  }
  return q;
}

IsMapping convert(const Plant& p, const FiniteSupervisor& sn) {
  using Member = std::pair<MicroState, FiniteSupervisor::MemoryId>;
  using Layer = std::set<Member>;

  IsMapping theta;
  const MicroState m0{p.initial()};
  std::set<MacroState> visited{MacroState{m0}};
  std::vector<Layer> stack{Layer{{m0, sn.initial()}}};
  while (!stack.empty()) {
    const Layer layer = std::move(stack.back());
    stack.pop_back();

    std::map<MicroState, std::vector<ControlDecision>> offered;
    for (const auto& [m, q] : layer)
      for (const auto& g : sn.output(q)) offered[m].push_back(g);
    std::vector<MicroState> micros;
    for (const auto& [m, _] : offered) micros.push_back(m);
    const MacroState macro(micros);

    std::map<MicroState, DecisionSet> chosen;
    for (auto& [m, options] : offered) {
      DecisionSet s(std::move(options));
      theta.set({m, macro}, s);
      chosen.emplace(m, std::move(s));
    }

    // Z-layer follows the normalized options so that Θ's own information flow
    // reproduces the macro-states visited here. Memory states whose own option
    // is dominated travel with the dominating option.
    for (auto o : p.observable_events()) {
      Layer next;
      for (const auto& [m, options] : chosen) {
        for (const auto& gmax : options) {
          if (!gmax.allows(p, o)) continue;
          const MicroState target = observable_reach(p, unobservable_reach(p, m, gmax), o);
          if (target.empty()) continue;
          for (const auto& [mm, q] : layer) {
            if (mm != m) continue;
            for (const auto& g : sn.output(q)) {
              if (!g.is_subset_of(gmax) || !g.allows(p, o)) continue;
              if (observable_reach(p, unobservable_reach(p, m, g), o).empty()) continue;
              auto q2 = sn.update(q, g, o);
              if (!q2) undefined_update(p, sn, q, g, o);
              next.insert({target, *q2});
            }
          }
        }
      }
      if (next.empty()) continue;
      std::set<MicroState> micros_next;
      for (const auto& [m, _] : next) micros_next.insert(m);
      MacroState macro_next(std::vector<MicroState>(micros_next.begin(), micros_next.end()));
      if (visited.insert(macro_next).second) stack.push_back(std::move(next));
    }
  }
  return theta;
}

FiniteSupervisor as_finite_supervisor(const Plant& p, const IsMapping& theta) {
  FiniteSupervisor sn;
  std::map<InformationState, FiniteSupervisor::MemoryId> ids;
  for (const auto& [key, options] : theta) ids.emplace(key, sn.add_state(render(p, key), options));

  const InformationState i0{MicroState{p.initial()}, MacroState{MicroState{p.initial()}}};
  auto it0 = ids.find(i0);
  if (it0 == ids.end()) throw ThetaUndefined("no decision at the initial information state");
  sn.set_initial(it0->second);

  for (const auto& [key, options] : theta) {
    const auto z = odot(p, theta.decision_for(p, key.macro));
    for (const auto& g : options) {
      const auto mp = unobservable_reach(p, key.estimate, g);
      for (auto o : p.observable_events()) {
        if (!g.allows(p, o)) continue;
        const auto m2 = observable_reach(p, mp, o);
        if (m2.empty()) continue;
        const InformationState next{m2, *macro_observable_reach(p, z, o)};
        auto it = ids.find(next);
        if (it == ids.end()) throw ThetaUndefined("no decision at " + render(p, next));
        sn.set_update(ids.at(key), p, g, o, it->second);
      }
    }
  }
  return sn;
}

}  // namespace opsyn
