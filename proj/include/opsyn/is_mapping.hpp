#pragma once

#include <cstddef>
#include <map>

#include "opsyn/info_state.hpp"

namespace opsyn {

/// Partial map from information states to decision sets.
class IsMapping {
 public:
  using Map = std::map<InformationState, DecisionSet>;

  /// Overwrites any existing entry. Throws InputError when the estimate is not
  /// a member of the macro-state.
  void set(const InformationState& key, DecisionSet value);

  const DecisionSet* find(const InformationState& key) const;
  /// Throws ThetaUndefined.
  const DecisionSet& at(const Plant& p, const InformationState& key) const;

  /// d_Θ(𝐦): the macro-control-decision Θ induces at a macro-state. Throws
  /// ThetaUndefined if some micro-state of the macro-state is missing.
  MacroControlDecision decision_for(const Plant& p, const MacroState& macro) const;

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  const Map& entries() const noexcept { return entries_; }

  friend bool operator==(const IsMapping&, const IsMapping&) = default;

 private:
  Map entries_;
};

}  // namespace opsyn
