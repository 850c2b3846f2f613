#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "opsyn/is_mapping.hpp"
#include "opsyn/random.hpp"

namespace opsyn {

/// γ0 σ1 γ1 ... alternating, starting with a decision.
using ExtendedSymbol = std::variant<ControlDecision, EventId>;
using ExtendedString = std::vector<ExtendedSymbol>;
/// An extended string whose events are all observable.
using DecisionHistory = ExtendedString;

/// Throws InputError unless ρ alternates decision/event starting with a decision.
void check_alternation(const ExtendedString& rho);

/// Event part ρ|_Σ.
EventSeq events_of(const ExtendedString& rho);

/// 𝒪(ρ): drops every unobservable event together with the decision following it.
DecisionHistory observe_project(const Plant& p, const ExtendedString& rho);

/// Ê_S(h) for h empty or ending in an observable event. Throws InfeasibleHistory
/// when some observation step has no source state, InputError on malformed h.
MicroState sup_estimate_after_obs(const Plant& p, const DecisionHistory& h);
/// E_S(h) for h ending in a decision.
MicroState sup_estimate_after_dec(const Plant& p, const DecisionHistory& h);

std::string render(const Plant& p, const ExtendedString& rho);
/// Parses "{c2} c2 {c2} o1 {c1,c2}".
ExtendedString parse_extended(const Plant& p, const std::string& text);

/// Online decoder state.
struct SessionState {
  MicroState m;
  MicroState m_plus;
  MacroState macro;
  AugmentedMacroState macro_plus;
  DecisionHistory history;
  ControlDecision applied;
  SplitMix64 rng{0};
  bool started = false;
  /// Hidden plant state, only tracked in co-simulation.
  std::optional<StateId> true_state;
};

SessionState start_session(const Plant& p, std::uint64_t seed);

struct DecodeOutcome {
  DecisionSet offered;
  ControlDecision issued;
};

/// One decoding step: absorb `obs` (absent only on the very first call), look
/// up Θ and draw one decision. Throws ThetaUndefined, ObservationNotEnabled.
DecodeOutcome decode_step(const Plant& p, SessionState& s, const IsMapping& theta,
                          std::optional<EventId> obs);

/// Information states reachable under Θ from ({x0},{{x0}}). Throws ThetaUndefined.
std::set<InformationState> reach_closure(const Plant& p, const IsMapping& theta);

struct IntruderEstimate {
  MacroState macro;
  AugmentedMacroState macro_plus;
  StateSet flat;
};

/// Macro-level information flow along s. Throws InfeasibleObservation, ThetaUndefined.
IntruderEstimate intruder_estimates(const Plant& p, const IsMapping& theta, const EventSeq& s);

/// Co-simulation of plant and decoder. The hidden plant move before each
/// observation is drawn from a stream split off the decoder's seed.
class CoSimulation {
 public:
  CoSimulation(const Plant& p, const IsMapping& theta, std::uint64_t seed);

  const SessionState& session() const noexcept { return session_; }
  const DecodeOutcome& last() const noexcept { return last_; }
  std::size_t step_index() const noexcept { return step_; }
  std::optional<EventId> last_observation() const noexcept { return last_obs_; }

  /// Observable events the hidden plant can produce next under the applied decision.
  std::vector<EventId> enabled_observations() const;

  /// Throws ObservationNotEnabled when the hidden plant cannot produce o.
  void observe(EventId o);

  /// `step <k> obs=<event|-> issued=... picked=... m=... macro=... flat=...`
  std::string transcript_line() const;

 private:
  const Plant& plant_;
  const IsMapping& theta_;
  SessionState session_;
  SplitMix64 plant_rng_;
  DecodeOutcome last_;  // set by the initial decoding step
  std::size_t step_ = 0;
  std::optional<EventId> last_obs_;
};

}  // namespace opsyn
