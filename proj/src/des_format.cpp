#include "opsyn/des_format.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "opsyn/errors.hpp"

namespace opsyn {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

Plant parse_des(std::istream& in) {
  std::optional<std::string> name;
  std::optional<std::vector<std::string>> events, observable, controllable, secret;
  std::optional<std::string> initial;
  struct Trans {
    std::string src, event, dst;
    std::size_t line;
  };
  std::vector<Trans> trans;
  bool in_trans = false;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokens(strip_comment(raw));
    if (toks.empty()) continue;

    if (in_trans) {
      if (toks.size() != 3) throw ParseError(lineno, "expected 'src event dst'");
      trans.push_back({toks[0], toks[1], toks[2], lineno});
      continue;
    }

    if (!name) {
      if (toks[0] != "plant" || toks.size() != 2) throw ParseError(lineno, "expected 'plant <name>'");
      name = toks[1];
      continue;
    }

    const std::string key = toks[0];
    std::vector<std::string> rest(toks.begin() + 1, toks.end());
    auto set_once = [&](auto& slot) {
      if (slot) throw ParseError(lineno, "duplicate '" + key + "' line");
      slot = rest;
    };
    if (key == "events:") {
      set_once(events);
    } else if (key == "observable:") {
      set_once(observable);
    } else if (key == "controllable:") {
      set_once(controllable);
    } else if (key == "secret:") {
      set_once(secret);
    } else if (key == "initial:") {
      if (initial) throw ParseError(lineno, "duplicate 'initial:' line");
      if (rest.size() != 1) throw ParseError(lineno, "expected exactly one initial state");
      initial = rest.front();
    } else if (key == "trans:") {
      if (!rest.empty()) throw ParseError(lineno, "'trans:' takes no operands");
      in_trans = true;
    } else {
      throw ParseError(lineno, "unknown directive '" + key + "'");
    }
  }

  if (!name) throw ParseError(lineno, "missing 'plant' header");
  if (!events) throw ParseError(lineno, "missing 'events:' line");
  if (!initial) throw ParseError(lineno, "missing 'initial:' line");

  std::set<std::string> declared(events->begin(), events->end());
  if (declared.size() != events->size()) throw ParseError(lineno, "duplicate event in 'events:'");
  auto subset = [&](const std::optional<std::vector<std::string>>& s, const char* what) {
    std::set<std::string> out;
    if (!s) return out;
    for (const auto& e : *s) {
      if (!declared.contains(e))
        throw ParseError(lineno, std::string(what) + " event '" + e + "' not in events");
      out.insert(e);
    }
    return out;
  };
  const auto obs = subset(observable, "observable");
  const auto ctrl = subset(controllable, "controllable");

  try {
    PlantBuilder b(*name);
    for (const auto& e : *events) b.event(e, obs.contains(e), ctrl.contains(e));
    b.initial(*initial);
    if (secret)
      for (const auto& s : *secret) b.secret(s);
    for (const auto& t : trans) {
      if (!declared.contains(t.event))
        throw ParseError(t.line, "undeclared event '" + t.event + "'");
      try {
        b.transition(t.src, t.event, t.dst);
      } catch (const ParseError&) {
        throw;
      } catch (const InputError& e) {
        throw ParseError(t.line, e.what());
      }
    }
    return b.build();
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(lineno, e.what());
  }
}

Plant parse_des(const std::string& text) {
  std::istringstream in(text);
  return parse_des(in);
}

Plant load_des(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return parse_des(in);
}

std::string write_des(const Plant& p) {
  std::ostringstream out;
  auto list = [&](const char* key, const EventSet& events) {
    out << key;
    for (auto e : events) out << ' ' << p.event_name(e);
    out << '\n';
  };
  out << "plant " << p.name() << '\n';
  out << "events:";
  for (std::uint32_t e = 0; e < p.event_count(); ++e) out << ' ' << p.event_name(EventId{e});
  out << '\n';
  list("observable:", p.observable_events());
  list("controllable:", p.controllable_events());
  out << "initial: " << p.state_name(p.initial()) << '\n';
  out << "secret:";
  for (auto x : p.secret_states()) out << ' ' << p.state_name(x);
  out << '\n';
  out << "trans:\n";
  for (std::uint32_t x = 0; x < p.state_count(); ++x)
    for (std::uint32_t e = 0; e < p.event_count(); ++e)
      if (auto y = p.next(StateId{x}, EventId{e}))
        out << p.state_name(StateId{x}) << ' ' << p.event_name(EventId{e}) << ' '
            << p.state_name(*y) << '\n';
  return out.str();
}

}  // namespace opsyn
