#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "condphoton/cli/config.hpp"
#include "condphoton/cli/sweep.hpp"
#include "condphoton/cli/validate.hpp"
#include "condphoton/errors.hpp"

namespace {

using namespace condphoton;
using namespace condphoton::cli;

enum Exit { kOk = 0, kConfig = 1, kValidation = 2, kRange = 3 };

struct Flags {
  std::string process;
  std::string state;
  std::vector<std::string> detectors;
  double reflectivity = 0.0;
  double gain = 0.0;
  std::string models;
  std::string grid;
  std::string preset;
  std::string format;
  std::string out;
  double epsilon = 0.0;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, Flags& f, bool sweep) {
  cmd->add_option("--process", f.process, "subtract | add | sequential");
  cmd->add_option("--state", f.state, "coherent:N0 | thermal:N0 | mixed:NC,NT | fock:M");
  cmd->add_option("--detector", f.detectors, "r:K | n:K | s:K, repeatable or comma separated");
  auto* r = cmd->add_option("--reflectivity", f.reflectivity, "beam-splitter reflectivity R");
  auto* g = cmd->add_option("--gain", f.gain, "down-conversion gain lambda");
  r->excludes(g);
  cmd->add_option("--models", f.models, "subset of exact,A,E");
  cmd->add_option("--epsilon", f.epsilon, "truncation tolerance of the input state");
  if (sweep) {
    cmd->add_option("--grid", f.grid, "MIN,MAX,POINTS (log-spaced n0)");
    cmd->add_option("--preset", f.preset, "fig1 | fig2 | fig3 | fig4");
    cmd->add_option("--format", f.format, "csv | json");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--threads", f.threads, "worker threads (0 = automatic)");
  }
}

SweepConfig build_config(const CLI::App* cmd, const Flags& f, bool sweep) {
  SweepConfig cfg = sweep && !f.preset.empty() ? preset(f.preset) : SweepConfig{};
  const bool from_preset = sweep && !f.preset.empty();
  if (cmd->count("--process")) cfg.process = parse_process(f.process);
  if (cmd->count("--state")) cfg.state = parse_state(f.state);
  if (cmd->count("--detector")) cfg.detectors = parse_detectors(f.detectors);
  if (cmd->count("--reflectivity")) {
    if (cfg.process == Process::add) throw ConfigError("--reflectivity applies to subtraction");
    cfg.parameter = f.reflectivity;
  }
  if (cmd->count("--gain")) {
    if (cfg.process != Process::add) throw ConfigError("--gain applies to addition");
    cfg.parameter = f.gain;
  }
  if (cmd->count("--models")) cfg.models = parse_models(f.models);
  if (cmd->count("--epsilon")) cfg.epsilon = f.epsilon;
  if (sweep) {
    if (cmd->count("--format")) cfg.format = parse_format(f.format);
    cfg.output_path = f.out;
    cfg.threads = f.threads;
    if (cmd->count("--grid")) {
      cfg.grid = parse_grid(f.grid);
    } else if (!from_preset || cmd->count("--reflectivity") || cmd->count("--gain") ||
               cmd->count("--process")) {
      cfg.grid = default_grid(cfg.scale());
    }
  }
  return cfg;
}

int run_sweep_command(const SweepConfig& cfg) {
  const auto rows = run_sweep(cfg);
  std::ofstream file;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + cfg.output_path + "'");
  }
  std::ostream& out = cfg.output_path.empty() ? std::cout : file;
  if (cfg.format == Format::json) {
    out << sweep_json(cfg, rows).dump(2) << '\n';
  } else {
    write_csv(out, rows);
    for (const auto& c : find_crossovers(rows)) {
      std::cerr << "crossover " << c.detector << ": n0 = " << format_double(c.n0)
                << ", n0*scale = " << format_double(c.scaled) << '\n';
    }
  }
  out.flush();
  if (!out) throw ConfigError("failed writing output");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional photon subtraction and addition on single-mode field states"};
  app.require_subcommand(1);

  Flags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "evaluate models over a log-spaced n0 grid");
  add_common(sweep, sweep_flags, true);

  Flags point_flags;
  auto* point = app.add_subcommand("point", "single evaluation, JSON to stdout");
  add_common(point, point_flags, false);

  std::string profile_name = "default";
  std::string report_path;
  auto* validate = app.add_subcommand("validate", "run every library invariant");
  validate->add_option("--profile", profile_name, "default | strict");
  validate->add_option("--out", report_path, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*sweep) return run_sweep_command(build_config(sweep, sweep_flags, true));
    if (*point) {
      std::cout << point_json(build_config(point, point_flags, false)).dump(2) << '\n';
      return kOk;
    }
    const auto profile = parse_profile(profile_name);
    const auto checks = run_validate(profile);
    const auto report = validation_report(profile, checks);
    if (report_path.empty()) {
      std::cout << report.dump(2) << '\n';
    } else {
      std::ofstream(report_path) << report.dump(2) << '\n';
    }
    return report["passed"].get<bool>() ? kOk : kValidation;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const UnsupportedCombination& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const RangeError& e) {
    std::cerr << "range error: " << e.what() << '\n';
    return kRange;
  } catch (const TruncationError& e) {
    std::cerr << "range error: " << e.what() << '\n';
    return kRange;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
}
