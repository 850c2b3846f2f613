#include "opsyn/synthesis.hpp"

#include <set>

#include "opsyn/errors.hpp"

namespace opsyn {

const MacroControlDecision& locally_maximal(std::span<const MacroControlDecision> cands) {
  if (cands.empty()) throw InputError("no candidate decisions");
  for (const auto& d : cands) {
    bool dominated = false;
    for (const auto& other : cands) {
      if (macro_decision_lt(d, other)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) return d;
  }
  // Strict order on a finite set always has a maximal element.
  return cands.front();
}

std::optional<IsMapping> extract(const Plant& p, const Gbts& tstar, Strategy strategy) {
  if (tstar.empty()) return std::nullopt;
  const MacroState y0{MicroState{p.initial()}};
  if (!tstar.contains(y0)) return std::nullopt;

  IsMapping theta;
  std::set<MacroState> visited{y0};
  std::vector<std::size_t> stack{*tstar.find_y(y0)};
  while (!stack.empty()) {
    const auto& node = tstar.y_nodes()[stack.back()];
    stack.pop_back();

    std::vector<MacroControlDecision> cands;
    for (const auto& [d, _] : node.decisions) cands.push_back(d);
    const auto& chosen = strategy == Strategy::First ? cands.front() : locally_maximal(cands);
    std::size_t zi = 0;
    for (const auto& [d, z] : node.decisions)
      if (d == chosen) zi = z;

    for (const auto& [m, options] : chosen.rows()) theta.set({m, node.state}, options);

    // Reverse push so successors are expanded in event order.
    const auto& succ = tstar.z_nodes()[zi].successors;
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) {
      const auto& y = tstar.y_nodes()[it->second].state;
      if (visited.insert(y).second) stack.push_back(it->second);
    }
  }
  return theta;
}

SynthesisResult synthesize_detailed(const Plant& p, Strategy strategy, std::size_t cap) {
  SynthesisResult r;
  r.total = build_total(p, cap);
  r.pruned = prune_to_fixpoint(p, remove_revealing(r.total, p), &r.rounds);
  r.theta = extract(p, r.pruned, strategy);
  return r;
}

std::optional<IsMapping> synthesize(const Plant& p, Strategy strategy, std::size_t cap) {
  return synthesize_detailed(p, strategy, cap).theta;
}

}  // namespace opsyn
