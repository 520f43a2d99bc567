#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rindler::sweep {

/// Bad configuration values or files; the CLI maps this to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Displaced, Squeezed, Inertial };

const char* to_string(ScenarioKind s);
ScenarioKind parse_scenario(const std::string& text);

struct SweepConfig {
  ScenarioKind scenario = ScenarioKind::Displaced;
  double a_min = 0.05;
  double a_max = 50.0;
  int a_steps = 25;
  std::vector<double> omega0{1.0};
  /// Absolute wavepacket width; 0.01 * omega0 when unset.
  std::optional<double> sigma;
  std::vector<double> r_s{0.0};
  std::vector<double> phi{0.0};
  /// Inertial scenario: amplifier and resource squeezing.
  std::vector<double> gain{1.0};
  std::vector<double> r_omega{0.0};
  int bins = 256;
  bool oracle = false;
  std::string out;
  std::uint64_t seed = 20240601;
  int fock_cutoff = 40;
  /// 0 picks std::thread::hardware_concurrency().
  int threads = 0;

  /// Keys given explicitly (flags or file), used for irrelevance warnings.
  std::set<std::string> explicit_keys;
  std::vector<std::string> warnings;
};

/// Reads `key = value` lines; '#' starts a comment, blank lines are skipped.
/// Throws ConfigError for unreadable files or malformed lines.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Applies one setting by its flag name (without dashes, e.g. "a-min").
/// List-valued keys take comma-separated numbers. Throws ConfigError for
/// unknown keys or unparsable values.
void apply_setting(SweepConfig& config, const std::string& key, const std::string& value);

/// Checks ranges and physical positivity; throws ConfigError.
void validate(const SweepConfig& config);

/// Appends a warning for every explicitly set key the scenario ignores.
void collect_irrelevance_warnings(SweepConfig& config, const std::string& command);

/// steps points, logarithmically spaced from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int steps);

double sigma_for(const SweepConfig& config, double omega0);

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// '#'-prefixed metadata block, then an RFC 4180 header line and rows.
void write_csv(std::ostream& os, const Table& table);

std::string format_number(double value);

Table run_fig4(const SweepConfig& config);
Table run_fig5(const SweepConfig& config);
Table run_sweep(const SweepConfig& config);

struct VerifyCheck {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
};

VerifyReport run_verify(const SweepConfig& config);
void write_verify_report(std::ostream& os, const VerifyReport& report, const SweepConfig& config);

/// Runs body(i) for i in [0, n) on `threads` workers (0: hardware
/// concurrency). Results must be written to per-index slots.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& body);

}  // namespace rindler::sweep

#include "rindler/detail/parallel_for.hpp"
