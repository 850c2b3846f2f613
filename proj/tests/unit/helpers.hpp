#pragma once

#include <initializer_list>
#include <string_view>

#include "opsyn/info_state.hpp"
#include "opsyn/oracle.hpp"

namespace opsyn::testing {

inline const Plant& fixture() {
  static const Plant p = reconstruct_fixture();
  return p;
}

inline StateSet S(std::initializer_list<std::string_view> names, const Plant& p = fixture()) {
  return make_states(p, names);
}

inline ControlDecision G(std::initializer_list<std::string_view> names,
                         const Plant& p = fixture()) {
  return make_decision(p, names);
}

inline EventSeq E(std::string_view text, const Plant& p = fixture()) {
  return parse_events(p, text);
}

}  // namespace opsyn::testing
