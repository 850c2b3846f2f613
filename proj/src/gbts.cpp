#include "opsyn/gbts.hpp"

#include <deque>
#include <sstream>

#include "opsyn/errors.hpp"

namespace opsyn {

std::size_t Gbts::transition_count() const {
  std::size_t n = 0;
  for (const auto& y : ys_) n += y.decisions.size();
  for (const auto& z : zs_) n += z.successors.size();
  return n;
}

std::optional<std::size_t> Gbts::find_y(const MacroState& y) const {
  auto it = y_index_.find(y);
  if (it == y_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Gbts::find_z(const AugmentedMacroState& z) const {
  auto it = z_index_.find(z);
  if (it == z_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<AugmentedMacroState> Gbts::successor(const MacroState& y,
                                                   const MacroControlDecision& d) const {
  auto i = find_y(y);
  if (!i) return std::nullopt;
  for (const auto& [dd, zi] : ys_[*i].decisions)
    if (dd == d) return zs_[zi].state;
  return std::nullopt;
}

std::optional<MacroState> Gbts::successor(const AugmentedMacroState& z, EventId o) const {
  auto i = find_z(z);
  if (!i) return std::nullopt;
  for (const auto& [e, yi] : zs_[*i].successors)
    if (e == o) return ys_[yi].state;
  return std::nullopt;
}

std::size_t Gbts::add_y(const MacroState& y) {
  auto [it, inserted] = y_index_.emplace(y, ys_.size());
  if (inserted) ys_.push_back({y, {}});
  return it->second;
}

std::size_t Gbts::add_z(const AugmentedMacroState& z) {
  auto [it, inserted] = z_index_.emplace(z, zs_.size());
  if (inserted) zs_.push_back({z, {}});
  return it->second;
}

Gbts build_total(const Plant& p, std::size_t cap, DecisionPruning pruning) {
  Gbts t;
  const MicroState m0{p.initial()};
  t.add_y(MacroState{m0});
  std::size_t next_y = 0, next_z = 0;
  // Nodes are appended in discovery order, so the index cursors act as BFS queues.
  while (next_y < t.y_nodes().size() || next_z < t.z_nodes().size()) {
    for (; next_y < t.y_nodes().size(); ++next_y) {
      const MacroState y = t.y_nodes()[next_y].state;
      for (auto& d : enumerate_compatible_decisions(p, y, cap, pruning)) {
        const std::size_t zi = t.add_z(odot(p, d));
        t.y_node(next_y).decisions.emplace_back(std::move(d), zi);
      }
    }
    for (; next_z < t.z_nodes().size(); ++next_z) {
      const AugmentedMacroState z = t.z_nodes()[next_z].state;
      for (auto o : p.observable_events()) {
        if (auto y = macro_observable_reach(p, z, o)) {
          const std::size_t yi = t.add_y(*y);
          t.z_node(next_z).successors.emplace_back(o, yi);
        }
      }
    }
  }
  return t;
}

std::set<AugmentedMacroState> revealing_z_states(const Gbts& t, const Plant& p) {
  std::set<AugmentedMacroState> out;
  for (const auto& z : t.z_nodes()) {
    const auto flat = flatten(z.state);
    if (!flat.empty() && flat.is_subset_of(p.secret_states())) out.insert(z.state);
  }
  return out;
}

StateSelection all_states(const Gbts& t) {
  StateSelection s;
  for (const auto& y : t.y_nodes()) s.y.insert(y.state);
  for (const auto& z : t.z_nodes()) s.z.insert(z.state);
  return s;
}

Gbts restrict(const Gbts& t, const StateSelection& keep) {
  Gbts out;
  if (t.empty() || !keep.y.count(t.y_nodes()[0].state)) return out;

  // Mirrors build_total's discovery order over the kept part of t.
  std::vector<std::size_t> y_src{0}, z_src;
  out.add_y(t.y_nodes()[0].state);
  std::size_t next_y = 0, next_z = 0;
  while (next_y < y_src.size() || next_z < z_src.size()) {
    for (; next_y < y_src.size(); ++next_y) {
      for (const auto& [d, zi] : t.y_nodes()[y_src[next_y]].decisions) {
        const auto& z = t.z_nodes()[zi].state;
        if (!keep.z.count(z)) continue;
        const bool fresh = !out.contains(z);
        const std::size_t oz = out.add_z(z);
        if (fresh) z_src.push_back(zi);
        out.y_node(next_y).decisions.emplace_back(d, oz);
      }
    }
    for (; next_z < z_src.size(); ++next_z) {
      for (const auto& [o, yi] : t.z_nodes()[z_src[next_z]].successors) {
        const auto& y = t.y_nodes()[yi].state;
        if (!keep.y.count(y)) continue;
        const bool fresh = !out.contains(y);
        const std::size_t oy = out.add_y(y);
        if (fresh) y_src.push_back(yi);
        out.z_node(next_z).successors.emplace_back(o, oy);
      }
    }
  }
  return out;
}

Gbts remove_revealing(const Gbts& total, const Plant& p) {
  auto keep = all_states(total);
  for (const auto& z : revealing_z_states(total, p)) keep.z.erase(z);
  return restrict(total, keep);
}

namespace {

bool z_consistent(const Plant& p, const Gbts::ZNode& z) {
  std::size_t feasible = 0;
  for (auto o : p.observable_events())
    if (observation_feasible(p, z.state, o)) ++feasible;
  return z.successors.size() == feasible;
}

}  // namespace

bool is_consistent(const Plant& p, const Gbts& t) {
  for (const auto& y : t.y_nodes())
    if (y.decisions.empty()) return false;
  for (const auto& z : t.z_nodes())
    if (!z_consistent(p, z)) return false;
  return true;
}

Gbts prune_to_fixpoint(const Plant& p, const Gbts& t0, std::vector<PruneRound>* trace) {
  Gbts t = t0;
  while (true) {
    PruneRound round;
    auto keep = all_states(t);
    for (const auto& y : t.y_nodes()) {
      if (y.decisions.empty()) {
        round.dead_y.push_back(y.state);
        keep.y.erase(y.state);
      }
    }
    for (const auto& z : t.z_nodes()) {
      if (!z_consistent(p, z)) {
        round.dead_z.push_back(z.state);
        keep.z.erase(z.state);
      }
    }
    Gbts next = restrict(t, keep);
    round.trimmed_y = keep.y.size() - next.y_nodes().size();
    round.trimmed_z = keep.z.size() - next.z_nodes().size();
    const bool changed = round.changed();
    if (trace) trace->push_back(std::move(round));
    if (!changed) return t;
    t = std::move(next);
  }
}

std::vector<MacroControlDecision> decisions_at(const Gbts& t, const MacroState& y) {
  auto i = t.find_y(y);
  if (!i) throw UnknownState("macro-state not in the G-BTS");
  std::vector<MacroControlDecision> out;
  for (const auto& [d, _] : t.y_nodes()[*i].decisions) out.push_back(d);
  return out;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Plant& p, const Gbts& t) {
  std::ostringstream out;
  out << "digraph gbts {\n";
  out << "  rankdir=LR;\n";
  for (std::size_t i = 0; i < t.y_nodes().size(); ++i)
    out << "  y" << i << " [shape=box, label=" << dot_quote(render(p, t.y_nodes()[i].state))
        << "];\n";
  for (std::size_t i = 0; i < t.z_nodes().size(); ++i)
    out << "  z" << i << " [shape=ellipse, label=" << dot_quote(render(p, t.z_nodes()[i].state))
        << "];\n";
  for (std::size_t i = 0; i < t.y_nodes().size(); ++i)
    for (const auto& [d, zi] : t.y_nodes()[i].decisions)
      out << "  y" << i << " -> z" << zi << " [label=" << dot_quote(render(p, d)) << "];\n";
  for (std::size_t i = 0; i < t.z_nodes().size(); ++i)
    for (const auto& [o, yi] : t.z_nodes()[i].successors)
      out << "  z" << i << " -> y" << yi << " [label=" << dot_quote(p.event_name(o)) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace opsyn
