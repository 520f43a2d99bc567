#include "rindler/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "rindler/oracle.hpp"
#include "rindler/spectral.hpp"
#include "rindler/teleportation.hpp"

namespace rindler::sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kAppendixTolerance = 1e-8;
constexpr double kOracleTolerance = 1e-2;
constexpr double kFockTolerance = 1e-3;
constexpr double kCommutatorTolerance = 1e-10;
constexpr int kAppendixPairs = 50;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
  }
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError(fmt::format("{}: empty list", key));
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, text));
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_number(xs[i]);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool has(const SweepConfig& c, const char* key) { return c.explicit_keys.count(key) > 0; }

void add_common_metadata(Table& t, const SweepConfig& c, const std::string& command) {
  t.metadata.emplace_back("command", command);
  if (command == "sweep") t.metadata.emplace_back("scenario", to_string(c.scenario));
  t.metadata.emplace_back("oracle", c.oracle ? "on" : "off");
  if (command == "sweep" && c.scenario == ScenarioKind::Inertial) {
    t.metadata.emplace_back("seed", std::to_string(c.seed));
    for (const auto& w : c.warnings) t.metadata.emplace_back("warning", w);
    return;
  }
  t.metadata.emplace_back("a_range", fmt::format("{}..{} ({} log-spaced)", format_number(c.a_min),
                                                 format_number(c.a_max), c.a_steps));
  t.metadata.emplace_back("sigma", c.sigma ? format_number(*c.sigma) : "0.01*omega0");
  t.metadata.emplace_back("wavepacket_window", "omega0 +- 8 sigma, lower cutoff 1e-12*omega0");
  t.metadata.emplace_back("quadrature_rel_tol",
                          format_number(spectral::QuadratureOptions{}.rel_tol));
  if (c.oracle) {
    t.metadata.emplace_back("oracle_bins", std::to_string(c.bins));
    t.metadata.emplace_back("oracle_gain_r", format_number(oracle::kDefaultGain));
  }
  t.metadata.emplace_back("seed", std::to_string(c.seed));
  for (const auto& w : c.warnings) t.metadata.emplace_back("warning", w);
}

struct PointResult {
  teleport::VarianceReport closed{kNaN, kNaN, kNaN, kNaN};
  double oracle_total = kNaN;
  double oracle_deviation = kNaN;
  int panels = 0;
  double quad_error = kNaN;
  std::string status = "ok";
};

PointResult evaluate_point(const SweepConfig& c, double omega0, double a, double r_s, double phi,
                           bool squeezed) {
  PointResult p;
  try {
    const auto wp = spectral::make_wavepacket(omega0, sigma_for(c, omega0));
    const auto s = spectral::spectral_integrals(wp, a);
    p.panels = s.panels;
    p.quad_error = s.error_estimate;
    p.closed = squeezed ? teleport::squeezed_variance(s, r_s, phi) : teleport::displaced_variance(s);
    if (wp.truncation_warning) p.status = "truncation_warning";
    if (c.oracle) {
      const oracle::CircuitOptions opts{oracle::kDefaultGain, phi};
      const auto circ = squeezed ? oracle::build_squeezed_circuit(a, wp, r_s, c.bins, opts)
                                 : oracle::build_displaced_circuit(a, wp, c.bins, opts);
      p.oracle_total = oracle::photon_number_variance_lo(circ).total;
      p.oracle_deviation = std::abs(p.oracle_total - p.closed.total) / p.closed.total;
    }
  } catch (const spectral::ConvergenceError& e) {
    p.status = "nonconvergent";
  } catch (const std::exception& e) {
    p.status = fmt::format("error: {}", e.what());
  }
  return p;
}

std::vector<double> a_grid(const SweepConfig& c) { return log_space(c.a_min, c.a_max, c.a_steps); }

}  // namespace

const char* to_string(ScenarioKind s) {
  switch (s) {
    case ScenarioKind::Displaced: return "displaced";
    case ScenarioKind::Squeezed: return "squeezed";
    case ScenarioKind::Inertial: return "inertial";
  }
  return "?";
}

ScenarioKind parse_scenario(const std::string& text) {
  const std::string t = trim(text);
  if (t == "displaced") return ScenarioKind::Displaced;
  if (t == "squeezed") return ScenarioKind::Squeezed;
  if (t == "inertial") return ScenarioKind::Inertial;
  throw ConfigError(
      fmt::format("scenario must be displaced, squeezed or inertial (got '{}')", text));
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path));
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", path, number));
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    std::replace(key.begin(), key.end(), '_', '-');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_setting(SweepConfig& c, const std::string& key, const std::string& value) {
  if (key == "scenario") {
    c.scenario = parse_scenario(value);
  } else if (key == "a-min") {
    c.a_min = parse_double(key, value);
  } else if (key == "a-max") {
    c.a_max = parse_double(key, value);
  } else if (key == "a-steps") {
    c.a_steps = static_cast<int>(parse_integer(key, value));
  } else if (key == "omega0") {
    c.omega0 = parse_list(key, value);
  } else if (key == "sigma") {
    c.sigma = parse_double(key, value);
  } else if (key == "rs") {
    c.r_s = parse_list(key, value);
  } else if (key == "phi") {
    c.phi = parse_list(key, value);
  } else if (key == "gain") {
    c.gain = parse_list(key, value);
  } else if (key == "r-omega") {
    c.r_omega = parse_list(key, value);
  } else if (key == "bins") {
    c.bins = static_cast<int>(parse_integer(key, value));
  } else if (key == "oracle") {
    c.oracle = parse_bool(key, value);
  } else if (key == "out") {
    c.out = trim(value);
  } else if (key == "seed") {
    const long long s = parse_integer(key, value);
    if (s < 0) throw ConfigError("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "fock-cutoff") {
    c.fock_cutoff = static_cast<int>(parse_integer(key, value));
  } else if (key == "threads") {
    c.threads = static_cast<int>(parse_integer(key, value));
  } else {
    throw ConfigError(fmt::format("unknown setting '{}'", key));
  }
  c.explicit_keys.insert(key);
}

void validate(const SweepConfig& c) {
  auto positive = [](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(fmt::format("{} must be positive and finite (got {})", name, v));
    }
  };
  auto non_negative = [](const char* name, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError(fmt::format("{} must be non-negative and finite (got {})", name, v));
    }
  };
  positive("a-min", c.a_min);
  positive("a-max", c.a_max);
  if (c.a_max < c.a_min) throw ConfigError("a-max must not be below a-min");
  if (c.a_steps < 1) throw ConfigError("a-steps must be at least 1");
  if (c.a_steps == 1 && c.a_max != c.a_min) {
    throw ConfigError("a-steps = 1 needs a-min == a-max");
  }
  for (double w : c.omega0) positive("omega0", w);
  if (c.sigma) positive("sigma", *c.sigma);
  for (double r : c.r_s) non_negative("rs", r);
  for (double p : c.phi) {
    if (!std::isfinite(p)) throw ConfigError("phi must be finite");
  }
  for (double r : c.gain) non_negative("gain", r);
  for (double r : c.r_omega) non_negative("r-omega", r);
  if (c.bins < 1) throw ConfigError("bins must be positive");
  if (c.fock_cutoff < 1 || c.fock_cutoff > oracle::kMaxFockCutoff) {
    throw ConfigError(fmt::format("fock-cutoff must lie in [1, {}]", oracle::kMaxFockCutoff));
  }
  if (c.threads < 0) throw ConfigError("threads must be non-negative");
}

void collect_irrelevance_warnings(SweepConfig& c, const std::string& command) {
  std::vector<std::string> ignored;
  const bool inertial = command == "sweep" && c.scenario == ScenarioKind::Inertial;
  const bool squeezed_like =
      command == "fig5" || (command == "sweep" && c.scenario == ScenarioKind::Squeezed);
  if (inertial) {
    for (const char* k : {"a-min", "a-max", "a-steps", "omega0", "sigma", "rs", "phi", "bins"}) {
      if (has(c, k)) ignored.emplace_back(k);
    }
  } else {
    for (const char* k : {"gain", "r-omega", "fock-cutoff"}) {
      if (has(c, k) && command != "verify") ignored.emplace_back(k);
    }
    if (!squeezed_like && command != "verify") {
      for (const char* k : {"rs", "phi"}) {
        if (has(c, k)) ignored.emplace_back(k);
      }
    }
  }
  if (command != "sweep" && has(c, "scenario")) ignored.emplace_back("scenario");
  for (const auto& k : ignored) {
    c.warnings.push_back(fmt::format("'{}' is ignored by {}", k, command));
  }
}

std::vector<double> log_space(double lo, double hi, int steps) {
  if (steps < 1) throw ConfigError("log_space needs at least one point");
  if (steps == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double l0 = std::log(lo);
  const double l1 = std::log(hi);
  for (int i = 0; i < steps; ++i) out[i] = std::exp(l0 + (l1 - l0) * i / (steps - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

double sigma_for(const SweepConfig& c, double omega0) { return c.sigma ? *c.sigma : 0.01 * omega0; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.17g}", v);
}

void write_csv(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << csv_field(t.columns[i]);
  }
  os << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\r\n";
  }
}

Table run_fig4(const SweepConfig& c) {
  const std::vector<double> omegas =
      has(c, "omega0") ? c.omega0 : std::vector<double>{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5};
  const auto as = a_grid(c);
  Table t;
  add_common_metadata(t, c, "fig4");
  t.metadata.emplace_back("omega0", join(omegas));
  t.columns = {"omega0", "a", "variance_total", "thermal", "qnl"};
  if (c.oracle) t.columns.insert(t.columns.end(), {"oracle_total", "oracle_rel_deviation"});
  t.columns.push_back("status");

  std::vector<PointResult> results(omegas.size() * as.size());
  parallel_for(results.size(), c.threads, [&](std::size_t k) {
    results[k] = evaluate_point(c, omegas[k / as.size()], as[k % as.size()], 0.0, 0.0, false);
  });
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& p = results[k];
    std::vector<std::string> row{format_number(omegas[k / as.size()]),
                                 format_number(as[k % as.size()]), format_number(p.closed.total),
                                 format_number(p.closed.thermal_noise),
                                 format_number(p.closed.qnl_or_decoherence)};
    if (c.oracle) {
      row.push_back(format_number(p.oracle_total));
      row.push_back(format_number(p.oracle_deviation));
    }
    row.push_back(p.status);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table run_fig5(const SweepConfig& c) {
  SweepConfig cfg = c;
  const double omega0 = has(c, "omega0") ? c.omega0.front() : 1.0;
  const double r_s = has(c, "rs") ? c.r_s.front() : 0.5;
  if (has(c, "omega0") && c.omega0.size() > 1) {
    cfg.warnings.push_back("fig5 uses only the first omega0 value");
  }
  if (has(c, "rs") && c.r_s.size() > 1) cfg.warnings.push_back("fig5 uses only the first rs value");
  const auto as = a_grid(c);
  Table t;
  add_common_metadata(t, cfg, "fig5");
  t.metadata.emplace_back("omega0", format_number(omega0));
  t.metadata.emplace_back("rs", format_number(r_s));
  t.columns = {"a", "thermal", "delta_phi0", "delta_phi90", "total_phi0", "total_phi90"};
  if (c.oracle) t.columns.insert(t.columns.end(), {"oracle_total_phi0", "oracle_total_phi90"});
  t.columns.push_back("status");

  struct Fig5Point {
    PointResult at0;
    PointResult at90;
  };
  std::vector<Fig5Point> results(as.size());
  parallel_for(results.size(), c.threads, [&](std::size_t k) {
    results[k].at0 = evaluate_point(c, omega0, as[k], r_s, 0.0, true);
    results[k].at90 = evaluate_point(c, omega0, as[k], r_s, std::numbers::pi / 2, true);
  });
  for (std::size_t k = 0; k < as.size(); ++k) {
    const auto& p0 = results[k].at0;
    const auto& p90 = results[k].at90;
    std::vector<std::string> row{format_number(as[k]),
                                 format_number(p0.closed.thermal_noise),
                                 format_number(p0.closed.qnl_or_decoherence),
                                 format_number(p90.closed.qnl_or_decoherence),
                                 format_number(p0.closed.total),
                                 format_number(p90.closed.total)};
    if (c.oracle) {
      row.push_back(format_number(p0.oracle_total));
      row.push_back(format_number(p90.oracle_total));
    }
    row.push_back(p0.status == "ok" ? p90.status : p0.status);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table run_sweep(const SweepConfig& c) {
  Table t;
  add_common_metadata(t, c, "sweep");
  if (c.scenario == ScenarioKind::Inertial) {
    t.metadata.emplace_back("gain", join(c.gain));
    t.metadata.emplace_back("r_omega", join(c.r_omega));
    if (c.oracle) t.metadata.emplace_back("fock_cutoff", std::to_string(c.fock_cutoff));
    t.columns = {"r", "r_omega", "variance_x0", "variance_x90", "residual_coefficient",
                 "purity_product"};
    if (c.oracle) t.columns.insert(t.columns.end(), {"fock_deviation", "fock_leakage"});
    t.columns.push_back("status");
    const std::size_t n = c.gain.size() * c.r_omega.size();
    std::vector<std::vector<std::string>> rows(n);
    parallel_for(n, c.threads, [&](std::size_t k) {
      const double r = c.gain[k / c.r_omega.size()];
      const double rw = c.r_omega[k % c.r_omega.size()];
      const auto out = teleport::inertial_teleport_output(r, rw);
      const double v0 = teleport::quadrature_variance(out, 0.0);
      const double v90 = teleport::quadrature_variance(out, std::numbers::pi / 2);
      std::vector<std::string> row{format_number(r), format_number(rw), format_number(v0),
                                   format_number(v90),
                                   format_number(std::abs(
                                       out.coefficient(teleport::inertial::vacuum_1, true))),
                                   format_number(v0 * v90)};
      std::string status = "ok";
      if (c.oracle) {
        oracle::FockOptions fo;
        fo.throw_on_truncation = false;
        const auto f = oracle::fock_check_inertial(r, rw, c.fock_cutoff, fo);
        row.push_back(format_number(f.deviation));
        row.push_back(format_number(f.leakage));
        if (f.leakage > oracle::kFockLeakageTolerance) status = "fock_truncated";
      }
      row.push_back(status);
      rows[k] = std::move(row);
    });
    t.rows = std::move(rows);
    return t;
  }

  const bool squeezed = c.scenario == ScenarioKind::Squeezed;
  const auto as = a_grid(c);
  const std::vector<double> rs = squeezed ? c.r_s : std::vector<double>{0.0};
  const std::vector<double> phis = squeezed ? c.phi : std::vector<double>{0.0};
  t.metadata.emplace_back("omega0", join(c.omega0));
  if (squeezed) {
    t.metadata.emplace_back("rs", join(rs));
    t.metadata.emplace_back("phi", join(phis));
  }
  t.columns = {"omega0", "sigma", "a"};
  if (squeezed) t.columns.insert(t.columns.end(), {"rs", "phi"});
  t.columns.insert(t.columns.end(),
                   {"total", "thermal", "qnl_or_decoherence", "purity_product"});
  if (c.oracle) t.columns.insert(t.columns.end(), {"oracle_total", "oracle_rel_deviation"});
  t.columns.insert(t.columns.end(), {"quad_panels", "quad_rel_error", "status"});

  const std::size_t n = c.omega0.size() * rs.size() * phis.size() * as.size();
  std::vector<std::vector<std::string>> rows(n);
  parallel_for(n, c.threads, [&](std::size_t k) {
    std::size_t rest = k;
    const double a = as[rest % as.size()];
    rest /= as.size();
    const double phi = phis[rest % phis.size()];
    rest /= phis.size();
    const double r_s = rs[rest % rs.size()];
    rest /= rs.size();
    const double omega0 = c.omega0[rest];
    const PointResult p = evaluate_point(c, omega0, a, r_s, phi, squeezed);
    std::vector<std::string> row{format_number(omega0), format_number(sigma_for(c, omega0)),
                                 format_number(a)};
    if (squeezed) {
      row.push_back(format_number(r_s));
      row.push_back(format_number(phi));
    }
    for (double v : {p.closed.total, p.closed.thermal_noise, p.closed.qnl_or_decoherence,
                     p.closed.purity_product}) {
      row.push_back(format_number(v));
    }
    if (c.oracle) {
      row.push_back(format_number(p.oracle_total));
      row.push_back(format_number(p.oracle_deviation));
    }
    row.push_back(std::to_string(p.panels));
    row.push_back(format_number(p.quad_error));
    row.push_back(p.status);
    rows[k] = std::move(row);
  });
  t.rows = std::move(rows);
  return t;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

namespace {

void appendix_suite(const SweepConfig& c, VerifyReport& report) {
  struct Case {
    const char* label;
    double r_s;
    double a;
  };
  const Case cases[] = {{"displaced", 0.0, 0.5}, {"displaced", 0.0, 5.0},
                        {"squeezed", 0.3, 0.5},  {"squeezed", 0.3, 5.0}};
  const double omega0 = 1.0;
  std::map<std::string, VerifyCheck> worst;
  std::vector<std::string> order;
  try {
    const auto wp = spectral::make_wavepacket(omega0, has(c, "sigma") ? *c.sigma : 0.05 * omega0);
    std::vector<std::vector<oracle::ContractionCheck>> all(std::size(cases));
    parallel_for(std::size(cases), c.threads, [&](std::size_t k) {
      const Case& cs = cases[k];
      const auto circ = cs.r_s == 0.0 ? oracle::build_displaced_circuit(cs.a, wp, c.bins)
                                      : oracle::build_squeezed_circuit(cs.a, wp, cs.r_s, c.bins);
      std::mt19937_64 rng(c.seed + k);
      std::uniform_int_distribution<std::size_t> pick(0, circ.bins() - 1);
      for (int s = 0; s < kAppendixPairs; ++s) {
        const std::size_t w = pick(rng);
        const std::size_t g = s == 0 ? w : pick(rng);  // one diagonal pair per case
        for (auto& chk : oracle::appendix_expectations(circ, w, g)) {
          chk.name = fmt::format("appendix {} {}", cs.label, chk.name);
          all[k].push_back(std::move(chk));
        }
      }
    });
    for (const auto& list : all) {
      for (const auto& chk : list) {
        auto [it, inserted] = worst.try_emplace(chk.name);
        if (inserted) {
          order.push_back(chk.name);
          it->second.name = chk.name;
          it->second.tolerance = kAppendixTolerance;
        }
        it->second.worst = std::max(it->second.worst, chk.deviation);
      }
    }
    for (const auto& name : order) {
      VerifyCheck v = worst[name];
      v.passed = v.worst <= v.tolerance;
      v.detail = fmt::format("{} random bin pairs, N = {}", kAppendixPairs, c.bins);
      report.checks.push_back(v);
    }
  } catch (const std::exception& e) {
    report.checks.push_back({"appendix equivalence", kNaN, kAppendixTolerance, false, e.what()});
  }
}

void oracle_suite(const SweepConfig& c, VerifyReport& report) {
  const std::vector<double> as = (has(c, "a-min") || has(c, "a-max") || has(c, "a-steps"))
                                     ? a_grid(c)
                                     : std::vector<double>{0.1, 0.3, 1.0, 3.0, 10.0};
  const std::vector<double> omegas = has(c, "omega0") ? c.omega0 : std::vector<double>{0.5, 1.0, 2.0};
  const std::vector<double> rss = has(c, "rs") ? c.r_s : std::vector<double>{0.0, 0.5, 1.0};
  const double phi = has(c, "phi") ? c.phi.front() : 0.0;
  const std::size_t n = as.size() * omegas.size() * rss.size();
  std::vector<double> dev(n, kNaN);
  std::vector<std::string> where(n);
  VerifyCheck check{"oracle agreement", 0.0, kOracleTolerance, false, {}};
  try {
    parallel_for(n, c.threads, [&](std::size_t k) {
      const double a = as[k % as.size()];
      const double omega0 = omegas[(k / as.size()) % omegas.size()];
      const double r_s = rss[k / (as.size() * omegas.size())];
      const auto wp = spectral::make_wavepacket(omega0, sigma_for(c, omega0));
      const auto closed = teleport::squeezed_variance(spectral::spectral_integrals(wp, a), r_s, phi);
      const oracle::CircuitOptions opts{oracle::kDefaultGain, phi};
      const auto circ = r_s == 0.0 ? oracle::build_displaced_circuit(a, wp, c.bins, opts)
                                   : oracle::build_squeezed_circuit(a, wp, r_s, c.bins, opts);
      const double num = oracle::photon_number_variance_lo(circ).total;
      dev[k] = std::abs(num - closed.total) / closed.total;
      where[k] = fmt::format("a={}, omega0={}, rs={}", a, omega0, r_s);
    });
    const auto it = std::max_element(dev.begin(), dev.end());
    check.worst = *it;
    check.passed = check.worst <= check.tolerance;
    check.detail = fmt::format("{} lattice points, N = {}, worst at {}", n, c.bins,
                               where[static_cast<std::size_t>(it - dev.begin())]);
  } catch (const std::exception& e) {
    check.worst = kNaN;
    check.detail = fmt::format("breach: {}", e.what());
  }
  report.checks.push_back(check);
}

void fock_suite(const SweepConfig& c, VerifyReport& report) {
  const std::vector<double> gains = has(c, "gain") ? c.gain : std::vector<double>{0.5, 1.0};
  const std::vector<double> romegas =
      has(c, "r-omega") ? c.r_omega : std::vector<double>{0.0, 0.8, 1.0};
  VerifyCheck check{"inertial Fock check", 0.0, kFockTolerance, false, {}};
  double leakage = 0.0;
  const std::size_t n = gains.size() * romegas.size();
  std::vector<oracle::FockReport> reports(n);
  try {
    parallel_for(n, c.threads, [&](std::size_t k) {
      oracle::FockOptions fo;
      fo.throw_on_truncation = false;
      reports[k] = oracle::fock_check_inertial(gains[k / romegas.size()],
                                               romegas[k % romegas.size()], c.fock_cutoff, fo);
    });
    for (const auto& r : reports) {
      check.worst = std::max(check.worst, r.deviation);
      leakage = std::max(leakage, r.leakage);
    }
    check.passed = check.worst <= check.tolerance && leakage <= oracle::kFockLeakageTolerance;
    check.detail = fmt::format("cutoff {}, {} points, max top-level population {:.2e}",
                               c.fock_cutoff, n, leakage);
  } catch (const std::exception& e) {
    check.worst = kNaN;
    check.detail = e.what();
  }
  report.checks.push_back(check);
}

void commutator_suite(const SweepConfig& c, VerifyReport& report) {
  VerifyCheck check{"commutator audit", 0.0, kCommutatorTolerance, false, {}};
  try {
    const auto wp = spectral::make_wavepacket(1.0, sigma_for(c, 1.0));
    const auto circ = oracle::build_squeezed_circuit(1.0, wp, 0.5, c.bins);
    check.worst = oracle::commutator_audit(circ);
    check.passed = check.worst <= check.tolerance;
    check.detail = fmt::format("squeezed circuit, a = 1, N = {}", c.bins);
  } catch (const std::exception& e) {
    check.worst = kNaN;
    check.detail = e.what();
  }
  report.checks.push_back(check);
}

}  // namespace

VerifyReport run_verify(const SweepConfig& c) {
  VerifyReport report;
  appendix_suite(c, report);
  oracle_suite(c, report);
  fock_suite(c, report);
  commutator_suite(c, report);
  return report;
}

void write_verify_report(std::ostream& os, const VerifyReport& report, const SweepConfig& c) {
  os << "# command: verify\n";
  os << "# oracle_bins: " << c.bins << "\n";
  os << "# fock_cutoff: " << c.fock_cutoff << "\n";
  os << "# seed: " << c.seed << "\n";
  for (const auto& w : c.warnings) os << "# warning: " << w << "\n";
  for (const auto& chk : report.checks) {
    os << fmt::format("{} {:<40} worst={:<12.4e} tol={:.0e}  {}\n", chk.passed ? "PASS" : "FAIL",
                      chk.name, chk.worst, chk.tolerance, chk.detail);
  }
  os << (report.passed() ? "verify: all checks passed\n" : "verify: FAILED\n");
}

}  // namespace rindler::sweep
