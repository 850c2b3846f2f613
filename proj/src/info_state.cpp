#include "opsyn/info_state.hpp"

#include <algorithm>
#include <sstream>

#include "opsyn/errors.hpp"

namespace opsyn {

// ---- DecisionSet -------------------------------------------------------------

DecisionSet::DecisionSet(std::vector<ControlDecision> options) {
  if (options.empty()) throw InputError("decision set must offer at least one decision");
  std::sort(options.begin(), options.end());
  options.erase(std::unique(options.begin(), options.end()), options.end());
  for (const auto& g : options) {
    const bool dominated = std::any_of(options.begin(), options.end(), [&](const auto& h) {
      return g.is_strict_subset_of(h);
    });
    if (!dominated) options_.push_back(g);
  }
}

DecisionSet decision_set_union(const DecisionSet& a, const DecisionSet& b) {
  std::vector<ControlDecision> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return DecisionSet(std::move(all));
}

// ---- MacroControlDecision ------------------------------------------------------

MacroControlDecision::MacroControlDecision(std::vector<Row> rows) : rows_(std::move(rows)) {
  std::sort(rows_.begin(), rows_.end(),
            [](const Row& a, const Row& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < rows_.size(); ++i)
    if (rows_[i - 1].first == rows_[i].first)
      throw InputError("macro-control-decision assigns a micro-state twice");
}

const DecisionSet& MacroControlDecision::at(const MicroState& m) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), m,
                             [](const Row& r, const MicroState& key) { return r.first < key; });
  if (it == rows_.end() || it->first != m)
    throw InputError("micro-state outside the macro-control-decision domain");
  return it->second;
}

MacroState MacroControlDecision::domain() const {
  std::vector<MicroState> micros;
  for (const auto& [m, _] : rows_) micros.push_back(m);
  return MacroState(std::move(micros));
}

bool MacroControlDecision::compatible_with(const MacroState& y) const { return domain() == y; }

InformationState initial_information_state(const Plant& p) {
  MicroState m0{p.initial()};
  return {m0, MacroState{m0}};
}

// ---- operators -----------------------------------------------------------------

AugmentedMacroState odot(const Plant& p, const MacroControlDecision& d) {
  std::vector<AugmentedMicroState> out;
  for (const auto& [m, options] : d.rows())
    for (const auto& g : options) out.push_back({unobservable_reach(p, m, g), g});
  return AugmentedMacroState(std::move(out));
}

bool observation_feasible(const Plant& p, const AugmentedMacroState& z, EventId o) {
  for (const auto& [m, g] : z) {
    if (!g.allows(p, o)) continue;
    for (auto x : m)
      if (p.next(x, o)) return true;
  }
  return false;
}

std::optional<MacroState> macro_observable_reach(const Plant& p, const AugmentedMacroState& z,
                                                 EventId o) {
  if (!p.is_observable(o))
    throw InputError("event '" + p.event_name(o) + "' is not observable");
  std::vector<MicroState> out;
  for (const auto& [m, g] : z) {
    if (!g.allows(p, o)) continue;
    auto next = observable_reach(p, m, o);
    if (!next.empty()) out.push_back(std::move(next));
  }
  if (out.empty()) return std::nullopt;
  return MacroState(std::move(out));
}

MacroState strip(const AugmentedMacroState& z) {
  std::vector<MicroState> out;
  for (const auto& a : z) out.push_back(a.micro);
  return MacroState(std::move(out));
}

StateSet flatten(const AugmentedMacroState& z) {
  StateSet out;
  for (const auto& a : z) out.insert_all(a.micro);
  return out;
}

bool decision_set_leq(const DecisionSet& a, const DecisionSet& b) {
  return std::all_of(a.begin(), a.end(), [&](const ControlDecision& g) {
    return std::any_of(b.begin(), b.end(), [&](const ControlDecision& h) { return g.is_subset_of(h); });
  });
}

bool decision_set_lt(const DecisionSet& a, const DecisionSet& b) {
  if (!decision_set_leq(a, b)) return false;
  return std::any_of(a.begin(), a.end(), [&](const ControlDecision& g) {
    return std::any_of(b.begin(), b.end(),
                       [&](const ControlDecision& h) { return g.is_strict_subset_of(h); });
  });
}

bool macro_decision_lt(const MacroControlDecision& a, const MacroControlDecision& b) {
  const auto& ra = a.rows();
  const auto& rb = b.rows();
  if (ra.size() != rb.size()) throw InputError("macro-control-decisions have different domains");
  bool strict = false;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].first != rb[i].first)
      throw InputError("macro-control-decisions have different domains");
    if (!decision_set_leq(ra[i].second, rb[i].second)) return false;
    strict = strict || decision_set_lt(ra[i].second, rb[i].second);
  }
  return strict;
}

// ---- enumeration ---------------------------------------------------------------

namespace {

void extend_antichains(const std::vector<ControlDecision>& elements, std::size_t from,
                       std::vector<ControlDecision>& current, std::size_t cap,
                       std::vector<std::vector<ControlDecision>>& out) {
  for (std::size_t i = from; i < elements.size(); ++i) {
    const auto& g = elements[i];
    const bool comparable = std::any_of(current.begin(), current.end(), [&](const auto& h) {
      return g.is_subset_of(h) || h.is_subset_of(g);
    });
    if (comparable) continue;
    current.push_back(g);
    out.push_back(current);
    if (out.size() > cap) throw CapExceeded(out.size());
    extend_antichains(elements, i + 1, current, cap, out);
    current.pop_back();
  }
}

constexpr std::size_t kMaxLiveEvents = 20;

}  // namespace

std::vector<DecisionSet> enumerate_antichains(const std::vector<ControlDecision>& elements,
                                              std::size_t cap) {
  auto sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<ControlDecision>> raw;
  std::vector<ControlDecision> current;
  extend_antichains(sorted, 0, current, cap, raw);
  std::vector<DecisionSet> out;
  out.reserve(raw.size());
  for (auto& a : raw) out.push_back(DecisionSet(DecisionSet::Trusted{}, std::move(a)));
  return out;
}

std::vector<DecisionSet> enumerate_decision_sets(const Plant& p, const MicroState& m,
                                                 std::size_t cap, DecisionPruning pruning) {
  // Events that may matter at m; an effective decision only enables these.
  std::vector<EventId> live;
  if (pruning == DecisionPruning::Inert) {
    const auto reach = unobservable_reach(p, m, enable_all(p));
    for (auto e : p.controllable_events())
      if (std::any_of(reach.begin(), reach.end(), [&](StateId x) { return p.next(x, e).has_value(); }))
        live.push_back(e);
  } else {
    live.assign(p.controllable_events().begin(), p.controllable_events().end());
  }
  if (live.size() > kMaxLiveEvents) throw CapExceeded(std::size_t{1} << kMaxLiveEvents);

  std::vector<ControlDecision> elements;
  const std::size_t subsets = std::size_t{1} << live.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    EventSet enabled;
    for (std::size_t i = 0; i < live.size(); ++i)
      if (mask & (std::size_t{1} << i)) enabled.insert(live[i]);
    ControlDecision g(std::move(enabled));
    if (pruning == DecisionPruning::Inert) {
      const auto reach = unobservable_reach(p, m, g);
      const bool effective = std::all_of(
          g.enabled_controllable().begin(), g.enabled_controllable().end(), [&](EventId e) {
            return std::any_of(reach.begin(), reach.end(),
                               [&](StateId x) { return p.next(x, e).has_value(); });
          });
      if (!effective) continue;
    }
    elements.push_back(std::move(g));
  }
  return enumerate_antichains(elements, cap);
}

std::vector<MacroControlDecision> enumerate_compatible_decisions(const Plant& p,
                                                                 const MacroState& y,
                                                                 std::size_t cap,
                                                                 DecisionPruning pruning) {
  std::vector<MicroState> micros(y.begin(), y.end());
  std::vector<std::vector<DecisionSet>> per_micro;
  per_micro.reserve(micros.size());
  for (const auto& m : micros) per_micro.push_back(enumerate_decision_sets(p, m, cap, pruning));

  std::vector<MacroControlDecision> out;
  std::vector<std::size_t> pick(micros.size(), 0);
  while (true) {
    std::vector<MacroControlDecision::Row> rows;
    rows.reserve(micros.size());
    for (std::size_t i = 0; i < micros.size(); ++i) rows.emplace_back(micros[i], per_micro[i][pick[i]]);
    out.emplace_back(std::move(rows));

    // Odometer with the last micro-state varying fastest.
    std::size_t i = micros.size();
    while (i > 0) {
      --i;
      if (++pick[i] < per_micro[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
    if (micros.empty()) return out;
  }
}

// ---- rendering -----------------------------------------------------------------

std::string render(const Plant& p, const StateSet& m) {
  std::string out = "{";
  bool first = true;
  for (auto x : m) {
    if (!first) out += ',';
    out += p.state_name(x);
    first = false;
  }
  return out + "}";
}

std::string render(const Plant& p, const ControlDecision& g) {
  std::string out = "{";
  bool first = true;
  for (auto e : g.enabled_controllable()) {
    if (!first) out += ',';
    out += p.event_name(e);
    first = false;
  }
  return out + "}";
}

std::string render(const Plant& p, const AugmentedMicroState& a) {
  return "(" + render(p, a.micro) + "," + render(p, a.decision) + ")";
}

namespace {
template <class Range>
std::string render_braced(const Plant& p, const Range& r) {
  std::string out = "{";
  bool first = true;
  for (const auto& item : r) {
    if (!first) out += ',';
    out += render(p, item);
    first = false;
  }
  return out + "}";
}
}  // namespace

std::string render(const Plant& p, const MacroState& y) { return render_braced(p, y); }
std::string render(const Plant& p, const AugmentedMacroState& z) { return render_braced(p, z); }
std::string render(const Plant& p, const DecisionSet& s) { return render_braced(p, s); }

std::string render(const Plant& p, const MacroControlDecision& d) {
  std::string out = "[";
  bool first = true;
  for (const auto& [m, s] : d.rows()) {
    if (!first) out += "; ";
    out += render(p, m) + "=>" + render(p, s);
    first = false;
  }
  return out + "]";
}

std::string render(const Plant& p, const InformationState& i) {
  return "(" + render(p, i.estimate) + "," + render(p, i.macro) + ")";
}

std::string render(const Plant& p, const EventSeq& s) {
  std::string out;
  for (auto e : s) {
    if (!out.empty()) out += ' ';
    out += p.event_name(e);
  }
  return out;
}

StateSet make_states(const Plant& p, std::initializer_list<std::string_view> names) {
  StateSet out;
  for (auto n : names) out.insert(p.state(n));
  return out;
}

ControlDecision make_decision(const Plant& p, std::initializer_list<std::string_view> names) {
  std::vector<std::string> v(names.begin(), names.end());
  return make_decision(p, std::span<const std::string>(v));
}

}  // namespace opsyn
