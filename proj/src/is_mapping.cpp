#include "opsyn/is_mapping.hpp"

#include "opsyn/errors.hpp"

namespace opsyn {

void IsMapping::set(const InformationState& key, DecisionSet value) {
  if (!key.macro.contains(key.estimate))
    throw InputError("information state estimate is not a member of its macro-state");
  entries_.insert_or_assign(key, std::move(value));
}

const DecisionSet* IsMapping::find(const InformationState& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

const DecisionSet& IsMapping::at(const Plant& p, const InformationState& key) const {
  if (const auto* s = find(key)) return *s;
  throw ThetaUndefined("no decision at information state " + render(p, key));
}

MacroControlDecision IsMapping::decision_for(const Plant& p, const MacroState& macro) const {
  std::vector<MacroControlDecision::Row> rows;
  rows.reserve(macro.size());
  for (const auto& m : macro) rows.emplace_back(m, at(p, {m, macro}));
  return MacroControlDecision(std::move(rows));
}

}  // namespace opsyn
