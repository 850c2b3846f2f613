#include "opsyn/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "opsyn/errors.hpp"

namespace opsyn {

using nlohmann::json;

namespace {

json names(const Plant& p, const StateSet& m) {
  json out = json::array();
  for (auto x : m) out.push_back(p.state_name(x));
  return out;
}

json names(const Plant& p, const ControlDecision& g) {
  json out = json::array();
  for (auto e : g.enabled_controllable()) out.push_back(p.event_name(e));
  return out;
}

json names(const Plant& p, const DecisionSet& s) {
  json out = json::array();
  for (const auto& g : s) out.push_back(names(p, g));
  return out;
}

StateSet states_from(const Plant& p, const json& j) {
  StateSet out;
  for (const auto& n : j.get<std::vector<std::string>>()) out.insert(p.state(n));
  if (out.empty()) throw InputError("empty state set");
  return out;
}

ControlDecision decision_from(const Plant& p, const json& j) {
  const auto v = j.get<std::vector<std::string>>();
  return make_decision(p, std::span<const std::string>(v));
}

DecisionSet decisions_from(const Plant& p, const json& j) {
  std::vector<ControlDecision> out;
  for (const auto& g : j) out.push_back(decision_from(p, g));
  return DecisionSet(std::move(out));
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string write_theta(const Plant& p, const IsMapping& theta) {
  json entries = json::array();
  for (const auto& [key, options] : theta) {
    json macro = json::array();
    for (const auto& m : key.macro) macro.push_back(names(p, m));
    entries.push_back(
        {{"estimate", names(p, key.estimate)}, {"macro", macro}, {"decisions", names(p, options)}});
  }
  json out = {{"plant", p.name()}, {"entries", entries}};
  return out.dump(2) + "\n";
}

IsMapping parse_theta(const Plant& p, const std::string& text) {
  return guarded([&] {
    const json j = json::parse(text);
    IsMapping theta;
    for (const auto& e : j.at("entries")) {
      std::vector<MicroState> micros;
      for (const auto& m : e.at("macro")) micros.push_back(states_from(p, m));
      theta.set({states_from(p, e.at("estimate")), MacroState(std::move(micros))},
                decisions_from(p, e.at("decisions")));
    }
    return theta;
  });
}

std::string write_supervisor(const Plant& p, const FiniteSupervisor& sn) {
  json states = json::array();
  json output = json::object();
  for (std::size_t q = 0; q < sn.state_count(); ++q) {
    states.push_back(sn.name(q));
    output[sn.name(q)] = names(p, sn.output(q));
  }
  json update = json::array();
  for (const auto& u : sn.updates())
    update.push_back({{"from", sn.name(u.from)},
                      {"decision", names(p, u.decision)},
                      {"event", p.event_name(u.event)},
                      {"to", sn.name(u.to)}});
  json out = {{"states", states},
              {"initial", sn.name(sn.initial())},
              {"output", output},
              {"update", update}};
  return out.dump(2) + "\n";
}

FiniteSupervisor parse_supervisor(const Plant& p, const std::string& text) {
  return guarded([&] {
    const json j = json::parse(text);
    FiniteSupervisor sn;
    const auto& out = j.at("output");
    for (const auto& name : j.at("states").get<std::vector<std::string>>()) {
      if (!out.contains(name)) throw InputError("no output for supervisor state '" + name + "'");
      sn.add_state(name, decisions_from(p, out.at(name)));
    }
    auto lookup = [&](const json& n) {
      const auto name = n.get<std::string>();
      auto q = sn.find(name);
      if (!q) throw InputError("unknown supervisor state '" + name + "'");
      return *q;
    };
    sn.set_initial(lookup(j.at("initial")));
    for (const auto& u : j.at("update"))
      sn.set_update(lookup(u.at("from")), p, decision_from(p, u.at("decision")),
                    p.event(u.at("event").get<std::string>()), lookup(u.at("to")));
    return sn;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace opsyn
