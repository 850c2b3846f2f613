#pragma once

#include <string>

#include "opsyn/conversion.hpp"
#include "opsyn/is_mapping.hpp"

namespace opsyn {

/// {"plant": name, "entries": [{"estimate", "macro", "decisions"}, ...]}, canonical order.
std::string write_theta(const Plant& p, const IsMapping& theta);
/// Throws InputError on malformed JSON or names unknown to p.
IsMapping parse_theta(const Plant& p, const std::string& text);

/// {"states", "initial", "output", "update"}.
std::string write_supervisor(const Plant& p, const FiniteSupervisor& sn);
FiniteSupervisor parse_supervisor(const Plant& p, const std::string& text);

std::string read_file(const std::string& path);

}  // namespace opsyn
