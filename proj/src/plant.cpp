#include "opsyn/plant.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

#include "opsyn/errors.hpp"

namespace opsyn {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

bool valid_token(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0 || c == '#';
  });
}

template <class Names>
std::optional<std::uint32_t> index_of(const Names& names, std::string_view name) {
  auto it = std::lower_bound(names.begin(), names.end(), name,
                             [](const std::string& a, std::string_view b) { return name_less(a, b); });
  if (it == names.end() || *it != name) return std::nullopt;
  return static_cast<std::uint32_t>(it - names.begin());
}

}  // namespace

bool name_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      while (je < b.size() && is_digit(b[je])) ++je;
      // Compare numerically ignoring leading zeros, then by run length.
      std::size_t iz = i, jz = j;
      while (iz + 1 < ie && a[iz] == '0') ++iz;
      while (jz + 1 < je && b[jz] == '0') ++jz;
      const auto la = ie - iz, lb = je - jz;
      if (la != lb) return la < lb;
      const auto cmp = a.substr(iz, la).compare(b.substr(jz, lb));
      if (cmp != 0) return cmp < 0;
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
    ++i;
    ++j;
  }
  return a.size() - i < b.size() - j;
}

std::optional<StateId> Plant::find_state(std::string_view name) const {
  if (auto i = index_of(state_names_, name)) return StateId{*i};
  return std::nullopt;
}

std::optional<EventId> Plant::find_event(std::string_view name) const {
  if (auto i = index_of(event_names_, name)) return EventId{*i};
  return std::nullopt;
}

StateId Plant::state(std::string_view name) const {
  if (auto x = find_state(name)) return *x;
  throw InputError("unknown state '" + std::string(name) + "'");
}

EventId Plant::event(std::string_view name) const {
  if (auto e = find_event(name)) return *e;
  throw InputError("unknown event '" + std::string(name) + "'");
}

// ---- builder ---------------------------------------------------------------

PlantBuilder& PlantBuilder::event(std::string name, bool observable, bool controllable) {
  if (!valid_token(name)) throw InputError("invalid event name '" + name + "'");
  for (const auto& e : events_)
    if (e.name == name) throw InputError("duplicate event '" + name + "'");
  events_.push_back({std::move(name), observable, controllable});
  return *this;
}

PlantBuilder& PlantBuilder::state(std::string name, bool secret) {
  if (!valid_token(name)) throw InputError("invalid state name '" + name + "'");
  if (secret) secrets_.push_back(name);
  states_.push_back(std::move(name));
  return *this;
}

PlantBuilder& PlantBuilder::secret(const std::string& name) { return state(name, true); }

PlantBuilder& PlantBuilder::initial(std::string name) {
  state(name);
  initial_ = std::move(name);
  return *this;
}

PlantBuilder& PlantBuilder::transition(const std::string& src, const std::string& event,
                                       const std::string& dst) {
  for (const auto& t : transitions_)
    if (t.src == src && t.event == event)
      throw InputError("duplicate transition for (" + src + ", " + event + ")");
  state(src);
  state(dst);
  transitions_.push_back({src, event, dst});
  return *this;
}

Plant PlantBuilder::build() const {
  if (!initial_) throw InputError("plant '" + name_ + "' has no initial state");

  Plant p;
  p.name_ = name_;

  auto by_name = [](const std::string& a, const std::string& b) { return name_less(a, b); };
  p.state_names_ = states_;
  std::sort(p.state_names_.begin(), p.state_names_.end(), by_name);
  p.state_names_.erase(std::unique(p.state_names_.begin(), p.state_names_.end()),
                       p.state_names_.end());

  auto events = events_;
  std::sort(events.begin(), events.end(),
            [](const EventDecl& a, const EventDecl& b) { return name_less(a.name, b.name); });
  for (const auto& e : events) {
    EventId id{static_cast<std::uint32_t>(p.event_names_.size())};
    p.event_names_.push_back(e.name);
    p.observable_.push_back(e.observable);
    p.controllable_.push_back(e.controllable);
    (e.observable ? p.observable_set_ : p.unobservable_set_).insert(id);
    (e.controllable ? p.controllable_set_ : p.uncontrollable_set_).insert(id);
  }

  p.secret_.assign(p.state_names_.size(), false);
  for (const auto& s : secrets_) {
    auto x = p.state(s);
    p.secret_[x.value] = true;
    p.secret_set_.insert(x);
  }

  p.delta_.assign(p.state_names_.size() * p.event_names_.size(), Plant::kNone);
  for (const auto& t : transitions_) {
    auto e = p.find_event(t.event);
    if (!e) throw InputError("transition uses undeclared event '" + t.event + "'");
    auto src = p.state(t.src);
    auto dst = p.state(t.dst);
    p.delta_[src.value * p.event_count() + e->value] = dst.value;
  }
  p.initial_ = p.state(*initial_);
  return p;
}

// ---- decisions ---------------------------------------------------------------

ControlDecision enable_all(const Plant& p) { return ControlDecision(p.controllable_events()); }

ControlDecision make_decision(const Plant& p, std::span<const std::string> names) {
  EventSet enabled;
  for (const auto& n : names) {
    auto e = p.event(n);
    if (!p.is_controllable(e)) throw InputError("event '" + n + "' is not controllable");
    enabled.insert(e);
  }
  return ControlDecision(std::move(enabled));
}

// ---- operators ---------------------------------------------------------------

std::optional<StateId> step(const Plant& p, StateId x, std::span<const EventId> s) {
  std::optional<StateId> cur = x;
  for (auto e : s) {
    cur = p.next(*cur, e);
    if (!cur) return std::nullopt;
  }
  return cur;
}

std::optional<StateId> step(const Plant& p, std::string_view x,
                            std::span<const std::string> s) {
  const auto start = p.state(x);
  EventSeq events;
  for (const auto& n : s) events.push_back(p.event(n));
  return step(p, start, events);
}

StateSet unobservable_reach(const Plant& p, const StateSet& m, const ControlDecision& g) {
  std::vector<bool> seen(p.state_count(), false);
  std::vector<StateId> stack(m.begin(), m.end());
  for (auto x : m) seen[x.value] = true;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (auto e : p.unobservable_events()) {
      if (!g.allows(p, e)) continue;
      if (auto y = p.next(x, e); y && !seen[y->value]) {
        seen[y->value] = true;
        stack.push_back(*y);
      }
    }
  }
  std::vector<StateId> out;
  for (std::uint32_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(StateId{i});
  return StateSet(std::move(out));
}

StateSet observable_reach(const Plant& p, const StateSet& m, EventId o) {
  if (!p.is_observable(o))
    throw InputError("event '" + p.event_name(o) + "' is not observable");
  StateSet out;
  for (auto x : m)
    if (auto y = p.next(x, o)) out.insert(*y);
  return out;
}

EventSeq project(const Plant& p, std::span<const EventId> s) {
  EventSeq out;
  for (auto e : s)
    if (p.is_observable(e)) out.push_back(e);
  return out;
}

OpenLoopVerdict verify_open_loop_opacity(const Plant& p, std::size_t depth) {
  const auto all = enable_all(p);
  auto revealing = [&](const StateSet& m) {
    return !m.empty() && m.is_subset_of(p.secret_states());
  };

  // Breadth-first over observer states; parents give the shortest witness.
  std::map<StateSet, std::size_t> index;
  std::vector<StateSet> nodes;
  std::vector<std::pair<std::size_t, EventId>> parent;
  nodes.push_back(unobservable_reach(p, StateSet{p.initial()}, all));
  parent.push_back({0, EventId{}});
  index.emplace(nodes.front(), 0);

  OpenLoopVerdict verdict;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (revealing(nodes[i])) {
      verdict.opaque = false;
      for (std::size_t k = i; k != 0; k = parent[k].first) verdict.witness.push_back(parent[k].second);
      std::reverse(verdict.witness.begin(), verdict.witness.end());
      if (verdict.witness.size() > depth) {
        verdict.witness.resize(depth);
        verdict.witness_truncated = true;
      }
      return verdict;
    }
    for (auto o : p.observable_events()) {
      auto next = unobservable_reach(p, observable_reach(p, nodes[i], o), all);
      if (next.empty() || index.contains(next)) continue;
      index.emplace(next, nodes.size());
      nodes.push_back(std::move(next));
      parent.push_back({i, o});
    }
  }
  return verdict;
}

EventSeq parse_events(const Plant& p, std::string_view text) {
  std::istringstream in{std::string(text)};
  EventSeq out;
  std::string tok;
  while (in >> tok) out.push_back(p.event(tok));
  return out;
}

}  // namespace opsyn
