#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "opsyn/plant.hpp"

namespace opsyn {

// Line-oriented plant format:
//
//   plant <name>
//   events: e1 e2 ...
//   observable: <subset>
//   controllable: <subset>
//   initial: <state>
//   secret: <state> ...
//   trans:
//   <src> <event> <dst>
//   ...
//
// '#' starts a comment. States are declared by appearance.

/// Throws ParseError with the offending line number.
Plant parse_des(std::istream& in);
Plant parse_des(const std::string& text);
Plant load_des(const std::filesystem::path& path);

/// Canonical rendering; parse_des(write_des(p)) reproduces p.
std::string write_des(const Plant& p);

}  // namespace opsyn
