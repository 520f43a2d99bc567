// rindler-tp: parameter sweeps and self-checks for continuous-variable
// teleportation between inertial and uniformly accelerated observers.
//
// Exit status: 0 success, 1 verification failure or runtime error,
// 2 invalid input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rindler/sweep.hpp"

namespace {

namespace sw = rindler::sweep;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidInput = 2;

// Flag name -> raw value for every option the user actually passed.
using RawSettings = std::map<std::string, std::string>;

struct Flag {
  const char* name;
  const char* help;
};

constexpr Flag kValueFlags[] = {
    {"a-min", "Smallest acceleration (default 0.05)"},
    {"a-max", "Largest acceleration (default 50)"},
    {"a-steps", "Number of log-spaced accelerations (default 25)"},
    {"omega0", "Wavepacket centre frequency, comma list"},
    {"sigma", "Absolute wavepacket width (default 0.01*omega0)"},
    {"rs", "Input squeezing r_s, comma list"},
    {"phi", "Quadrature angle in radians, comma list"},
    {"gain", "Inertial amplifier squeezing r, comma list (default 1)"},
    {"r-omega", "Inertial resource squeezing, comma list (default 0)"},
    {"bins", "Oracle frequency bins (default 256)"},
    {"out", "Output file; otherwise $RINDLER_TP_OUT_DIR/<command>.csv or stdout"},
    {"seed", "Seed for randomised checks (default 20240601)"},
    {"fock-cutoff", "Fock truncation per mode (default 40)"},
    {"scenario", "displaced, squeezed or inertial (sweep only)"},
    {"threads", "Worker threads, 0 = all cores"},
};

void add_flags(CLI::App* cmd, RawSettings& raw, std::string& config_path) {
  for (const Flag& f : kValueFlags) {
    const std::string key = f.name;
    cmd->add_option_function<std::string>(
        fmt::format("--{}", key), [&raw, key](const std::string& v) { raw[key] = v; }, f.help);
  }
  cmd->add_flag_callback("--oracle", [&raw] { raw["oracle"] = "true"; },
                         "Add discretised mode-algebra oracle columns");
  cmd->add_option("--config", config_path, "key = value file; explicit flags take precedence");
}

std::string output_path(const sw::SweepConfig& c, const std::string& command, const char* ext) {
  if (!c.out.empty()) return c.out;
  if (const char* dir = std::getenv("RINDLER_TP_OUT_DIR"); dir && *dir) {
    return (std::filesystem::path(dir) / (command + ext)).string();
  }
  return {};
}

template <typename Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw sw::ConfigError(fmt::format("cannot write '{}'", path));
  write(os);
  std::cerr << "wrote " << path << "\n";
}

int run(const std::string& command, const RawSettings& raw, const std::string& config_path) {
  sw::SweepConfig config;
  if (!config_path.empty()) {
    for (const auto& [key, value] : sw::read_key_value_file(config_path)) {
      if (!raw.count(key)) sw::apply_setting(config, key, value);
    }
  }
  for (const auto& [key, value] : raw) sw::apply_setting(config, key, value);
  sw::validate(config);
  sw::collect_irrelevance_warnings(config, command);
  for (const auto& w : config.warnings) std::cerr << "warning: " << w << "\n";

  if (command == "verify") {
    const auto report = sw::run_verify(config);
    const std::string path = output_path(config, command, ".txt");
    emit(path, [&](std::ostream& os) { sw::write_verify_report(os, report, config); });
    if (!path.empty()) sw::write_verify_report(std::cout, report, config);
    return report.passed() ? EXIT_SUCCESS : kExitVerifyFailed;
  }

  sw::Table table;
  if (command == "fig4") {
    table = sw::run_fig4(config);
  } else if (command == "fig5") {
    table = sw::run_fig5(config);
  } else {
    table = sw::run_sweep(config);
  }
  emit(output_path(config, command, ".csv"), [&](std::ostream& os) { sw::write_csv(os, table); });
  return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation fidelity sweeps for accelerated observers"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"fig4", "Displaced-state variance versus acceleration for several omega0"},
      {"fig5", "Squeezed-state decoherence and variance at phi = 0 and pi/2"},
      {"sweep", "General lattice over the chosen scenario"},
      {"verify", "Run oracle, appendix, Fock and commutator self-checks"},
  };
  std::map<std::string, RawSettings> raw;
  std::map<std::string, std::string> config_paths;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_flags(sub, raw[c.name], config_paths[c.name]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, raw[command], config_paths[command]);
  } catch (const sw::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
}
