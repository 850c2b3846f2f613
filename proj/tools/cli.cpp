#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "opsyn/des_format.hpp"
#include "opsyn/errors.hpp"
#include "opsyn/gbts.hpp"
#include "opsyn/oracle.hpp"
#include "opsyn/runtime.hpp"
#include "opsyn/serialize.hpp"
#include "opsyn/synthesis.hpp"

namespace opsyn::cli {

namespace {

struct Config {
  std::string plant_path;
  std::string second_path;
  std::string output_path;
  std::string strategy = "locally-maximal";
  std::string stage = "pruned";
  std::optional<std::string> script;
  std::uint64_t seed = 0;
  std::size_t depth = 5;
  std::size_t cap = 64;
};

std::string witness_text(const Plant& p, const EventSeq& w) {
  return w.empty() ? "<empty>" : render(p, w);
}

void emit(const std::string& data, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << data;
}

Strategy strategy_of(const std::string& name) {
  if (name == "first") return Strategy::First;
  return Strategy::LocallyMaximal;
}

int cmd_verify(const Config& c, std::ostream& out) {
  const Plant p = load_des(c.plant_path);
  const auto v = verify_open_loop_opacity(p, c.depth);
  if (v.opaque) {
    out << "opaque\n";
    return kOk;
  }
  out << "not opaque\n";
  out << "witness: " << witness_text(p, v.witness) << (v.witness_truncated ? " ..." : "") << "\n";
  return kNotOpaque;
}

int cmd_synth(const Config& c, std::ostream& out, std::ostream& err) {
  const Plant p = load_des(c.plant_path);
  const auto r = synthesize_detailed(p, strategy_of(c.strategy), c.cap);
  if (!r.theta) {
    out << "no solution\n";
    return kNoSolution;
  }
  emit(write_theta(p, *r.theta), c.output_path, out);
  err << "synthesized " << r.theta->size() << " entries (G-BTS " << r.total.y_nodes().size()
      << "/" << r.total.z_nodes().size() << " total, " << r.pruned.y_nodes().size() << "/"
      << r.pruned.z_nodes().size() << " pruned Y/Z states)\n";
  return kOk;
}

void print_enabled(const Plant& p, const CoSimulation& sim, std::ostream& out) {
  out << "enabled:";
  for (auto o : sim.enabled_observations()) out << ' ' << p.event_name(o);
  out << "\n";
}

int cmd_simulate(const Config& c, std::istream& in, std::ostream& out, std::ostream& err) {
  const Plant p = load_des(c.plant_path);
  const IsMapping theta = parse_theta(p, read_file(c.second_path));
  CoSimulation sim(p, theta, c.seed);
  out << sim.transcript_line() << "\n";

  if (c.script) {
    for (auto o : parse_events(p, *c.script)) {
      sim.observe(o);
      out << sim.transcript_line() << "\n";
    }
    return kOk;
  }

  std::string line;
  while (true) {
    if (sim.enabled_observations().empty()) {
      out << "no observation can occur\n";
      return kOk;
    }
    print_enabled(p, sim, out);
    out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    std::istringstream words(line);
    std::string name;
    if (!(words >> name)) continue;
    if (name == "quit" || name == "exit") break;
    const auto o = p.find_event(name);
    if (!o) {
      err << "unknown event '" << name << "'\n";
      continue;
    }
    try {
      sim.observe(*o);
    } catch (const ObservationNotEnabled& e) {
      err << e.what() << "\n";
      continue;
    } catch (const InputError& e) {
      err << e.what() << "\n";
      continue;
    }
    out << sim.transcript_line() << "\n";
  }
  out << "\n";
  return kOk;
}

int cmd_convert(const Config& c, std::ostream& out, std::ostream& err) {
  const Plant p = load_des(c.plant_path);
  const FiniteSupervisor sn = parse_supervisor(p, read_file(c.second_path));
  const IsMapping theta = convert(p, sn);
  emit(write_theta(p, theta), c.output_path, out);
  err << "converted " << sn.state_count() << " memory states into " << theta.size()
      << " entries\n";
  return kOk;
}

int cmd_export(const Config& c, std::ostream& out) {
  const Plant p = load_des(c.plant_path);
  Gbts t = build_total(p, c.cap);
  if (c.stage == "pruned") t = prune_to_fixpoint(p, remove_revealing(t, p));
  emit(to_dot(p, t), c.output_path, out);
  return kOk;
}

int cmd_oracle(const Config& c, std::ostream& out, std::ostream& err) {
  const Plant p = load_des(c.plant_path);
  const IsMapping theta = parse_theta(p, read_file(c.second_path));
  const DepthBound b = DepthBound::for_plant(p, c.depth);
  const auto views = enumerate_observations(p, theta, b);

  std::size_t checked = 0;
  for (const auto& v : views) {
    const auto inc = intruder_estimates(p, theta, v.observation);
    if (inc.macro != v.estimates || strip(inc.macro_plus) != v.after_decision ||
        inc.flat != v.states) {
      err << "mismatch at s=" << witness_text(p, v.observation) << ": incremental "
          << render(p, inc.macro) << " flat " << render(p, inc.flat) << ", enumerated "
          << render(p, v.estimates) << " flat " << render(p, v.states) << "\n";
      return kMismatch;
    }
    ++checked;
  }
  out << "agreement: " << checked << " observations\n";

  const auto verdict = check_closed_loop_opacity(p, theta, b);
  if (!verdict.opaque) {
    out << "not opaque\n";
    out << "witness: " << witness_text(p, verdict.witness) << "\n";
    return kNotOpaque;
  }
  out << "opaque up to depth " << c.depth << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Opacity verification and supervisor synthesis for discrete-event plants", "opsyn"};
  app.require_subcommand(1);
  Config c;

  auto* verify = app.add_subcommand("verify", "Open-loop current-state opacity");
  verify->add_option("plant", c.plant_path, "Plant file (.des)")->required();
  verify->add_option("--depth", c.depth, "Witness length bound")->check(CLI::PositiveNumber);

  auto* synth = app.add_subcommand("synth", "Synthesize an IS-mapping");
  synth->add_option("plant", c.plant_path, "Plant file (.des)")->required();
  synth->add_option("--strategy", c.strategy, "Decision choice")
      ->check(CLI::IsMember({"first", "max", "locally-maximal"}));
  synth->add_option("--cap", c.cap, "Decision sets per micro-state")->check(CLI::PositiveNumber);
  synth->add_option("-o,--output", c.output_path, "Output JSON (stdout if omitted)");

  auto* simulate = app.add_subcommand("simulate", "Co-simulate plant and decoder");
  simulate->add_option("plant", c.plant_path, "Plant file (.des)")->required();
  simulate->add_option("theta", c.second_path, "IS-mapping JSON")->required();
  simulate->add_option("--seed", c.seed, "Random seed");
  simulate->add_option("--script", c.script, "Observations to feed, e.g. \"o1 o2\"");

  auto* conv = app.add_subcommand("convert", "Convert a finite-memory supervisor");
  conv->add_option("plant", c.plant_path, "Plant file (.des)")->required();
  conv->add_option("supervisor", c.second_path, "Supervisor JSON")->required();
  conv->add_option("-o,--output", c.output_path, "Output JSON (stdout if omitted)");

  auto* exp = app.add_subcommand("export-gbts", "Write the G-BTS as DOT");
  exp->add_option("plant", c.plant_path, "Plant file (.des)")->required();
  exp->add_option("--stage", c.stage, "total or pruned")->check(CLI::IsMember({"total", "pruned"}));
  exp->add_option("--cap", c.cap, "Decision sets per micro-state")->check(CLI::PositiveNumber);
  exp->add_option("-o,--output", c.output_path, "Output DOT (stdout if omitted)");

  auto* orc = app.add_subcommand("oracle", "Brute-force closed-loop check of an IS-mapping");
  orc->add_option("plant", c.plant_path, "Plant file (.des)")->required();
  orc->add_option("theta", c.second_path, "IS-mapping JSON")->required();
  orc->add_option("--depth", c.depth, "Observation length bound")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(c, out);
    if (*synth) return cmd_synth(c, out, err);
    if (*simulate) return cmd_simulate(c, in, out, err);
    if (*conv) return cmd_convert(c, out, err);
    if (*exp) return cmd_export(c, out);
    if (*orc) return cmd_oracle(c, out, err);
  } catch (const CapExceeded& e) {
    err << e.what() << "\n";
    return kCapExceeded;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace opsyn::cli
