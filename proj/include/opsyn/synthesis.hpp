#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "opsyn/gbts.hpp"
#include "opsyn/is_mapping.hpp"

namespace opsyn {

enum class Strategy {
  /// Canonically first defined decision.
  First,
  /// Canonically first decision not strictly below another defined one.
  LocallyMaximal,
};

/// Throws InputError on an empty list.
const MacroControlDecision& locally_maximal(std::span<const MacroControlDecision> cands);

/// DFS extraction from a pruned G-BTS; nullopt when y0 did not survive.
std::optional<IsMapping> extract(const Plant& p, const Gbts& tstar, Strategy strategy);

struct SynthesisResult {
  Gbts total;
  Gbts pruned;
  std::vector<PruneRound> rounds;
  std::optional<IsMapping> theta;
};

/// Full pipeline: total G-BTS, revealing removal, pruning, extraction.
SynthesisResult synthesize_detailed(const Plant& p, Strategy strategy, std::size_t cap);

/// nullopt means no supervisor exists in the pruned G-BTS.
std::optional<IsMapping> synthesize(const Plant& p, Strategy strategy, std::size_t cap);

}  // namespace opsyn
