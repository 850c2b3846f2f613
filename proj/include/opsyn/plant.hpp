#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opsyn/flat_set.hpp"

namespace opsyn {

/// Index of a plant state in canonical name order.
struct StateId {
  std::uint32_t value = 0;
  friend auto operator<=>(const StateId&, const StateId&) = default;
};

/// Index of an event in canonical name order.
struct EventId {
  std::uint32_t value = 0;
  friend auto operator<=>(const EventId&, const EventId&) = default;
};

using StateSet = FlatSet<StateId>;
using EventSet = FlatSet<EventId>;
using EventSeq = std::vector<EventId>;

/// Natural name order: digit runs compare numerically, everything else bytewise.
bool name_less(std::string_view a, std::string_view b);

/// Finite deterministic automaton with observable/controllable partitions and
/// a set of secret states. Immutable once built.
class Plant {
 public:
  const std::string& name() const noexcept { return name_; }

  std::size_t state_count() const noexcept { return state_names_.size(); }
  std::size_t event_count() const noexcept { return event_names_.size(); }

  const std::string& state_name(StateId x) const { return state_names_.at(x.value); }
  const std::string& event_name(EventId e) const { return event_names_.at(e.value); }

  /// Throws InputError for unknown names.
  StateId state(std::string_view name) const;
  EventId event(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<EventId> find_event(std::string_view name) const;

  StateId initial() const noexcept { return initial_; }
  bool is_secret(StateId x) const { return secret_.at(x.value); }
  bool is_observable(EventId e) const { return observable_.at(e.value); }
  bool is_controllable(EventId e) const { return controllable_.at(e.value); }

  const EventSet& observable_events() const noexcept { return observable_set_; }
  const EventSet& unobservable_events() const noexcept { return unobservable_set_; }
  const EventSet& controllable_events() const noexcept { return controllable_set_; }
  const EventSet& uncontrollable_events() const noexcept { return uncontrollable_set_; }
  const StateSet& secret_states() const noexcept { return secret_set_; }

  std::optional<StateId> next(StateId x, EventId e) const {
    const auto t = delta_[x.value * event_count() + e.value];
    if (t == kNone) return std::nullopt;
    return StateId{t};
  }

 private:
  friend class PlantBuilder;
  static constexpr std::uint32_t kNone = UINT32_MAX;

  std::string name_;
  std::vector<std::string> state_names_;
  std::vector<std::string> event_names_;
  std::vector<bool> secret_;
  std::vector<bool> observable_;
  std::vector<bool> controllable_;
  EventSet observable_set_, unobservable_set_, controllable_set_, uncontrollable_set_;
  StateSet secret_set_;
  std::vector<std::uint32_t> delta_;
  StateId initial_;
};

/// Collects a plant by name, then freezes it into canonical order.
class PlantBuilder {
 public:
  explicit PlantBuilder(std::string name) : name_(std::move(name)) {}

  PlantBuilder& event(std::string name, bool observable, bool controllable);
  PlantBuilder& state(std::string name, bool secret = false);
  PlantBuilder& secret(const std::string& name);
  PlantBuilder& initial(std::string name);
  /// Declares the endpoints implicitly. Throws InputError on a duplicate (src, event).
  PlantBuilder& transition(const std::string& src, const std::string& event,
                           const std::string& dst);

  Plant build() const;

 private:
  struct EventDecl {
    std::string name;
    bool observable;
    bool controllable;
  };
  struct TransDecl {
    std::string src, event, dst;
  };

  std::string name_;
  std::vector<EventDecl> events_;
  std::vector<std::string> states_;
  std::vector<std::string> secrets_;
  std::optional<std::string> initial_;
  std::vector<TransDecl> transitions_;
};

/// Control decision: the enabled controllable events. Uncontrollable events are
/// always enabled and never stored.
class ControlDecision {
 public:
  ControlDecision() = default;
  explicit ControlDecision(EventSet enabled) : enabled_(std::move(enabled)) {}
  ControlDecision(std::initializer_list<EventId> init) : enabled_(init) {}

  const EventSet& enabled_controllable() const noexcept { return enabled_; }
  bool empty() const noexcept { return enabled_.empty(); }

  /// Whether the full decision γ ∪ Σ_uc lets `e` occur.
  bool allows(const Plant& p, EventId e) const {
    return !p.is_controllable(e) || enabled_.contains(e);
  }

  bool is_subset_of(const ControlDecision& o) const { return enabled_.is_subset_of(o.enabled_); }
  bool is_strict_subset_of(const ControlDecision& o) const {
    return enabled_.is_strict_subset_of(o.enabled_);
  }

  friend bool operator==(const ControlDecision&, const ControlDecision&) = default;
  friend auto operator<=>(const ControlDecision&, const ControlDecision&) = default;

 private:
  EventSet enabled_;
};

/// All controllable events enabled.
ControlDecision enable_all(const Plant& p);

/// Builds a decision from names; throws InputError for unknown or uncontrollable events.
ControlDecision make_decision(const Plant& p, std::span<const std::string> names);

// ---- reach operators -------------------------------------------------------

/// δ(x, s); nullopt when some step is undefined.
std::optional<StateId> step(const Plant& p, StateId x, std::span<const EventId> s);
/// Name-based variant; unknown names raise InputError.
std::optional<StateId> step(const Plant& p, std::string_view x,
                            std::span<const std::string> s);

/// Closure of m under unobservable events enabled by g.
StateSet unobservable_reach(const Plant& p, const StateSet& m, const ControlDecision& g);

/// Image of m under observable event o; InputError when o is unobservable.
StateSet observable_reach(const Plant& p, const StateSet& m, EventId o);

/// Natural projection onto observable events.
EventSeq project(const Plant& p, std::span<const EventId> s);

struct OpenLoopVerdict {
  bool opaque = true;
  /// Shortest revealing observation (canonical tie-break) when not opaque.
  EventSeq witness;
  bool witness_truncated = false;
};

/// Current-state opacity of the uncontrolled plant via the standard observer.
OpenLoopVerdict verify_open_loop_opacity(const Plant& p, std::size_t depth);

/// Parses a whitespace separated list of event names.
EventSeq parse_events(const Plant& p, std::string_view text);

}  // namespace opsyn
