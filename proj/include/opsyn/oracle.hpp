#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "opsyn/conversion.hpp"
#include "opsyn/is_mapping.hpp"
#include "opsyn/runtime.hpp"

namespace opsyn {

/// Truncation of the closed-loop language. Unobservable runs longer than
/// `max_unobservable_run` are cut, which only matters for cycles.
struct DepthBound {
  std::size_t max_observable_length = 5;
  std::size_t max_unobservable_run = 1;

  /// Run bound |X|, enough to visit every state reachable without observation.
  static DepthBound for_plant(const Plant& p, std::size_t observable_length);
};

/// Intruder-side knowledge after one observation string, computed from the
/// definitions by walking plant transitions.
struct IntruderView {
  EventSeq observation;
  /// Ê_I(s): supervisor estimates right after the last observation.
  MacroState estimates;
  /// E_I(s): supervisor estimates after the decision that followed.
  MacroState after_decision;
  /// X_I(s): states the plant may be in.
  StateSet states;
};

/// Every generated observation up to the bound, shortest first then in event order.
std::vector<IntruderView> enumerate_observations(const Plant& p, const IsMapping& theta,
                                                 const DepthBound& b);
std::vector<IntruderView> enumerate_observations(const Plant& p, const FiniteSupervisor& sn,
                                                 const DepthBound& b);

/// X_I(s); empty when s is not generated.
StateSet intruder_state_estimate(const Plant& p, const IsMapping& theta, const EventSeq& s,
                                 const DepthBound& b);
StateSet intruder_state_estimate(const Plant& p, const FiniteSupervisor& sn, const EventSeq& s,
                                 const DepthBound& b);

/// Closed-loop extended strings with at most the bounded number of observations,
/// sorted. Exponential; meant for small instances.
std::vector<ExtendedString> enumerate_extended(const Plant& p, const IsMapping& theta,
                                               const DepthBound& b);
std::vector<ExtendedString> enumerate_extended(const Plant& p, const FiniteSupervisor& sn,
                                               const DepthBound& b);

struct ClosedLoopVerdict {
  bool opaque = true;
  /// Shortest revealing observation when not opaque.
  EventSeq witness;
};

ClosedLoopVerdict check_closed_loop_opacity(const Plant& p, const IsMapping& theta,
                                            const DepthBound& b);
ClosedLoopVerdict check_closed_loop_opacity(const Plant& p, const FiniteSupervisor& sn,
                                            const DepthBound& b);

/// Whether some deterministic supervisor feeding back the current estimate
/// keeps the plant opaque. Throws CapExceeded after `cap` complete candidates.
bool brute_force_deterministic_exists(const Plant& p, const DepthBound& b, std::size_t cap);

/// The twelve-state example plant, checked against every behaviour the golden
/// tests rely on. Throws std::logic_error if a check fails.
Plant reconstruct_fixture();

}  // namespace opsyn
