#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "opsyn/is_mapping.hpp"

namespace opsyn {

/// Finite-memory non-deterministic supervisor: memory states with an output
/// decision set each, and a memory update on (applied decision, observation).
class FiniteSupervisor {
 public:
  using MemoryId = std::size_t;

  /// Throws InputError on a duplicate name.
  MemoryId add_state(std::string name, DecisionSet output);
  void set_initial(MemoryId q);
  /// Throws InputError when `o` is unobservable or the entry already exists.
  void set_update(MemoryId from, const Plant& p, const ControlDecision& g, EventId o, MemoryId to);

  std::size_t state_count() const noexcept { return names_.size(); }
  MemoryId initial() const noexcept { return initial_; }
  const std::string& name(MemoryId q) const { return names_.at(q); }
  std::optional<MemoryId> find(const std::string& name) const;
  const DecisionSet& output(MemoryId q) const { return outputs_.at(q); }
  std::optional<MemoryId> update(MemoryId q, const ControlDecision& g, EventId o) const;

  struct UpdateEntry {
    MemoryId from;
    ControlDecision decision;
    EventId event;
    MemoryId to;
  };
  /// Update entries in (from, decision, event) order.
  std::vector<UpdateEntry> updates() const;

 private:
  std::vector<std::string> names_;
  std::vector<DecisionSet> outputs_;
  MemoryId initial_ = 0;
  std::map<std::tuple<MemoryId, ControlDecision, EventId>, MemoryId> update_;
};

/// Memory state after replaying h; throws SupervisorUndefined.
FiniteSupervisor::MemoryId replay(const Plant& p, const FiniteSupervisor& sn,
                                  const std::vector<std::pair<ControlDecision, EventId>>& steps);

/// Builds an IS-mapping with the same intruder-visible behaviour. Throws
/// SupervisorUndefined when an update needed by the closed loop is missing.
IsMapping convert(const Plant& p, const FiniteSupervisor& sn);

/// Wraps an IS-mapping as a finite supervisor whose memory is the information state.
FiniteSupervisor as_finite_supervisor(const Plant& p, const IsMapping& theta);

}  // namespace opsyn
