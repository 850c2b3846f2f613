#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "opsyn/info_state.hpp"

namespace opsyn {

/// Bipartite graph of Y-states (macro-states, supervisor moves) and Z-states
/// (augmented macro-states, plant moves). Node 0 is y0 unless the graph is empty.
class Gbts {
 public:
  struct YNode {
    MacroState state;
    /// (decision, index of the Z successor), canonical decision order.
    std::vector<std::pair<MacroControlDecision, std::size_t>> decisions;
  };
  struct ZNode {
    AugmentedMacroState state;
    /// (observable event, index of the Y successor), event order.
    std::vector<std::pair<EventId, std::size_t>> successors;
  };

  bool empty() const noexcept { return ys_.empty(); }
  const std::vector<YNode>& y_nodes() const noexcept { return ys_; }
  const std::vector<ZNode>& z_nodes() const noexcept { return zs_; }
  std::size_t transition_count() const;

  std::optional<std::size_t> find_y(const MacroState& y) const;
  std::optional<std::size_t> find_z(const AugmentedMacroState& z) const;
  bool contains(const MacroState& y) const { return find_y(y).has_value(); }
  bool contains(const AugmentedMacroState& z) const { return find_z(z).has_value(); }

  /// h_YZ(y, d); nullopt when undefined.
  std::optional<AugmentedMacroState> successor(const MacroState& y,
                                               const MacroControlDecision& d) const;
  /// h_ZY(z, o); nullopt when undefined.
  std::optional<MacroState> successor(const AugmentedMacroState& z, EventId o) const;

  std::size_t add_y(const MacroState& y);
  std::size_t add_z(const AugmentedMacroState& z);
  YNode& y_node(std::size_t i) { return ys_[i]; }
  ZNode& z_node(std::size_t i) { return zs_[i]; }

 private:
  std::vector<YNode> ys_;
  std::vector<ZNode> zs_;
  std::map<MacroState, std::size_t> y_index_;
  std::map<AugmentedMacroState, std::size_t> z_index_;
};

/// Reachable total G-BTS from y0 = {{x0}}.
Gbts build_total(const Plant& p, std::size_t cap,
                 DecisionPruning pruning = DecisionPruning::Inert);

/// Z-states whose flattened micro-states lie inside X_S.
std::set<AugmentedMacroState> revealing_z_states(const Gbts& t, const Plant& p);

struct StateSelection {
  std::set<MacroState> y;
  std::set<AugmentedMacroState> z;
};

StateSelection all_states(const Gbts& t);

/// Keeps only the selected states and transitions between them, then trims to
/// what is reachable from y0. Empty when y0 is not kept.
Gbts restrict(const Gbts& t, const StateSelection& keep);

/// T0: the total G-BTS without secret-revealing Z-states.
Gbts remove_revealing(const Gbts& total, const Plant& p);

struct PruneRound {
  std::vector<MacroState> dead_y;           // no outgoing decision
  std::vector<AugmentedMacroState> dead_z;  // some feasible observation lost
  std::size_t trimmed_y = 0;                // unreachable afterwards
  std::size_t trimmed_z = 0;
  bool changed() const { return !dead_y.empty() || !dead_z.empty() || trimmed_y || trimmed_z; }
};

/// Greatest consistent sub-structure. `trace`, when given, receives one entry
/// per round including the final unchanged one.
Gbts prune_to_fixpoint(const Plant& p, const Gbts& t0, std::vector<PruneRound>* trace = nullptr);

/// Consistency of every state; used to assert the fixpoint.
bool is_consistent(const Plant& p, const Gbts& t);

/// Defined decisions at y in canonical order. Throws UnknownState.
std::vector<MacroControlDecision> decisions_at(const Gbts& t, const MacroState& y);

std::string to_dot(const Plant& p, const Gbts& t);

}  // namespace opsyn
