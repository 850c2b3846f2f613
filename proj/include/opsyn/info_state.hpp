#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opsyn/plant.hpp"

namespace opsyn {

/// A supervisor state estimate.
using MicroState = StateSet;

struct AugmentedMicroState {
  MicroState micro;
  ControlDecision decision;

  friend bool operator==(const AugmentedMicroState&, const AugmentedMicroState&) = default;
  friend auto operator<=>(const AugmentedMicroState&, const AugmentedMicroState&) = default;
};

/// The intruder's estimate of the supervisor's estimate.
using MacroState = FlatSet<MicroState>;
using AugmentedMacroState = FlatSet<AugmentedMicroState>;

/// Non-empty, irredundant set of control decisions. Construction drops every
/// option strictly contained in another one.
class DecisionSet {
 public:
  /// Throws InputError when `options` is empty.
  explicit DecisionSet(std::vector<ControlDecision> options);
  DecisionSet(std::initializer_list<ControlDecision> options)
      : DecisionSet(std::vector<ControlDecision>(options)) {}

  const std::vector<ControlDecision>& options() const noexcept { return options_; }
  std::size_t size() const noexcept { return options_.size(); }
  auto begin() const noexcept { return options_.begin(); }
  auto end() const noexcept { return options_.end(); }

  friend bool operator==(const DecisionSet&, const DecisionSet&) = default;
  friend auto operator<=>(const DecisionSet&, const DecisionSet&) = default;

 private:
  struct Trusted {};
  DecisionSet(Trusted, std::vector<ControlDecision> options) : options_(std::move(options)) {}
  friend std::vector<DecisionSet> enumerate_antichains(const std::vector<ControlDecision>&,
                                                       std::size_t);

  std::vector<ControlDecision> options_;
};

DecisionSet decision_set_union(const DecisionSet& a, const DecisionSet& b);

/// Assignment of a decision set to every micro-state of one macro-state.
class MacroControlDecision {
 public:
  using Row = std::pair<MicroState, DecisionSet>;

  MacroControlDecision() = default;
  /// Rows are sorted by micro-state; duplicate micro-states raise InputError.
  explicit MacroControlDecision(std::vector<Row> rows);

  const std::vector<Row>& rows() const noexcept { return rows_; }
  /// Throws InputError when m is not in the domain.
  const DecisionSet& at(const MicroState& m) const;
  MacroState domain() const;
  bool compatible_with(const MacroState& y) const;

  friend bool operator==(const MacroControlDecision&, const MacroControlDecision&) = default;
  friend auto operator<=>(const MacroControlDecision&, const MacroControlDecision&) = default;

 private:
  std::vector<Row> rows_;
};

/// (supervisor estimate, intruder's macro-state).
struct InformationState {
  MicroState estimate;
  MacroState macro;

  friend bool operator==(const InformationState&, const InformationState&) = default;
  friend auto operator<=>(const InformationState&, const InformationState&) = default;
};

InformationState initial_information_state(const Plant& p);

// ---- operators ---------------------------------------------------------------

/// ⊙(d): unobservable reach of every (micro, option) pair.
AugmentedMacroState odot(const Plant& p, const MacroControlDecision& d);

/// ⟨NX⟩_o(z); empty micro-states are dropped, nullopt when nothing remains.
std::optional<MacroState> macro_observable_reach(const Plant& p, const AugmentedMacroState& z,
                                                 EventId o);

/// Whether some member of z can execute the observable event o.
bool observation_feasible(const Plant& p, const AugmentedMacroState& z, EventId o);

/// M(z): drop the decision components.
MacroState strip(const AugmentedMacroState& z);

/// ∪ M(z).
StateSet flatten(const AugmentedMacroState& z);

bool decision_set_leq(const DecisionSet& a, const DecisionSet& b);
bool decision_set_lt(const DecisionSet& a, const DecisionSet& b);

/// Componentwise ≤ with at least one strict component. Domains must agree.
bool macro_decision_lt(const MacroControlDecision& a, const MacroControlDecision& b);

enum class DecisionPruning {
  /// Every antichain of 2^{Σ_c}.
  None,
  /// Only decisions whose enabled events can all fire somewhere in their own
  /// unobservable reach; other decisions behave exactly like a smaller one.
  Inert,
};

/// Irredundant decision sets available at one micro-state, canonical order.
/// Throws CapExceeded once more than `cap` would be produced.
std::vector<DecisionSet> enumerate_decision_sets(const Plant& p, const MicroState& m,
                                                 std::size_t cap,
                                                 DecisionPruning pruning = DecisionPruning::Inert);

/// Every compatible macro-control-decision at y: cartesian product of the
/// per-micro decision sets, first micro-state varying slowest.
std::vector<MacroControlDecision> enumerate_compatible_decisions(
    const Plant& p, const MacroState& y, std::size_t cap,
    DecisionPruning pruning = DecisionPruning::Inert);

/// Antichains (non-empty) of `elements` under ⊆, canonical order. Elements must be
/// distinct. Throws CapExceeded past `cap`.
std::vector<DecisionSet> enumerate_antichains(const std::vector<ControlDecision>& elements,
                                              std::size_t cap);

// ---- canonical rendering -------------------------------------------------------

std::string render(const Plant& p, const StateSet& m);
std::string render(const Plant& p, const ControlDecision& g);
std::string render(const Plant& p, const AugmentedMicroState& a);
std::string render(const Plant& p, const MacroState& y);
std::string render(const Plant& p, const AugmentedMacroState& z);
std::string render(const Plant& p, const DecisionSet& s);
std::string render(const Plant& p, const MacroControlDecision& d);
std::string render(const Plant& p, const InformationState& i);
std::string render(const Plant& p, const EventSeq& s);

/// Name-based constructors for tests and the CLI.
StateSet make_states(const Plant& p, std::initializer_list<std::string_view> names);
ControlDecision make_decision(const Plant& p, std::initializer_list<std::string_view> names);

}  // namespace opsyn
