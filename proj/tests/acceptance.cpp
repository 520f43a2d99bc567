// Acceptance checks. Prints one PASS/FAIL line per criterion; with
// --criterion N only that criterion runs. Exit status is non-zero when any
// selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "rindler/oracle.hpp"
#include "rindler/spectral.hpp"
#include "rindler/sweep.hpp"
#include "rindler/teleportation.hpp"

namespace {

using namespace rindler;
namespace tp = rindler::teleport;

constexpr double kHalfPi = std::numbers::pi / 2;

// Pinned tolerances and budgets.
constexpr double kNarrowbandAgreement = 1e-3;
constexpr double kLimitTolerance = 1e-12;
constexpr double kHighAccelerationTolerance = 1e-5;
constexpr double kFig4Intercept = 1e-2;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kFig5Epsilon = 1e-12;
constexpr double kClosedFormConsistency = 1e-12;
constexpr int kClosedFormSamples = 1000;
constexpr double kAppendixTolerance = 1e-8;
constexpr int kAppendixPairs = 50;
constexpr int kAppendixBins = 256;
constexpr double kOracleTolerance = 1e-2;
constexpr int kOracleBins = 512;
constexpr double kRefinementFloor = 1e-12;
constexpr double kCoefficientTolerance = 1e-12;
constexpr int kFockCutoff = 12;
constexpr int kFockInfoCutoff = 40;
constexpr double kFockTolerance = 1e-3;
constexpr double kIdentityTolerance = 1e-8;
constexpr double kCommutatorTolerance = 1e-10;
constexpr double kReductionTolerance = 1e-12;
constexpr double kBudget1 = 5.0;
constexpr double kBudget2 = 30.0;
constexpr double kBudget3 = 30.0;
constexpr double kBudget6 = 300.0;

struct Outcome {
  bool passed = true;
  std::string detail;
  std::vector<std::string> notes;  // informational lines, never affect the verdict

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Outcome criterion1() {
  Outcome o;
  const Stopwatch clock;
  const double at_zero = tp::narrowband_variance(1.0, 1e-4);
  o.require(std::abs(at_zero - 3.0) <= kLimitTolerance, fmt::format("r0=0 gives {}", at_zero));
  const double at_inf = tp::narrowband_variance(1.0, 1e6);
  o.require(std::abs(at_inf - 2.0) <= kHighAccelerationTolerance,
            fmt::format("omega0/a->0 gives {}", at_inf));
  double prev = 3.0;
  for (double a : {1.0, 1e1, 1e2, 1e3, 1e4, 1e5}) {
    const double v = tp::narrowband_variance(1.0, a);
    o.require(v < prev && v > 2.0, fmt::format("narrowband not decreasing to 2 at a={}", a));
    prev = v;
  }
  double worst = 0.0;
  for (double omega0 : {0.5, 1.0, 2.0, 3.5}) {
    const auto wp = spectral::make_wavepacket(omega0, 0.01 * omega0);
    for (double a : sweep::log_space(0.05, 50.0, 25)) {
      const double full = tp::displaced_variance(a, wp).total;
      worst = std::max(worst, std::abs(full - tp::narrowband_variance(omega0, a)));
    }
  }
  o.require(worst <= kNarrowbandAgreement, fmt::format("full vs narrowband {:.3e}", worst));
  const double t = clock.seconds();
  o.require(t < kBudget1, fmt::format("runtime {:.2f}s", t));
  o.detail = fmt::format("full-vs-narrowband worst={:.3e} (tol {:.0e}), limits 3/2 ok, {:.2f}s{}",
                         worst, kNarrowbandAgreement, t, o.passed ? "" : " | " + o.detail);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const Stopwatch clock;
  sweep::SweepConfig cfg;
  const sweep::Table t = sweep::run_fig4(cfg);
  const std::size_t steps = static_cast<std::size_t>(cfg.a_steps);
  const std::size_t curves = t.rows.size() / steps;
  o.require(curves == 7, fmt::format("{} curves", curves));
  auto value = [&](std::size_t curve, std::size_t k) { return std::stod(t.rows[curve * steps + k][2]); };
  double worst_intercept = 0.0;
  for (std::size_t c = 0; c < curves; ++c) {
    worst_intercept = std::max(worst_intercept, std::abs(value(c, 0) - 3.0));
    for (std::size_t k = 1; k < steps; ++k) {
      o.require(value(c, k) <= value(c, k - 1) + kMonotoneSlack,
                fmt::format("curve {} rises at step {}", c, k));
    }
    o.require(value(c, steps - 1) < value(c, 0) && value(c, steps - 1) > 2.0,
              fmt::format("curve {} does not fall toward 2", c));
    if (c > 0) {
      for (std::size_t k = 0; k < steps; ++k) {
        o.require(value(c, k) + kMonotoneSlack >= value(c - 1, k),
                  fmt::format("curves {} and {} out of order at step {}", c - 1, c, k));
      }
    }
    for (const auto& row : t.rows) o.require(row.back() == "ok", "row status " + row.back());
  }
  o.require(worst_intercept <= kFig4Intercept, fmt::format("intercept {:.3e}", worst_intercept));
  const double secs = clock.seconds();
  o.require(secs < kBudget2, fmt::format("runtime {:.2f}s", secs));
  o.detail = fmt::format("7 curves monotone and ordered, worst low-a |V-3|={:.3e} (tol {:.0e}), {:.2f}s{}",
                         worst_intercept, kFig4Intercept, secs, o.passed ? "" : " | " + o.detail);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Stopwatch clock;
  const double r_s = 0.5;
  const auto wp = spectral::make_wavepacket(1.0, 0.01);
  const auto as = sweep::log_space(0.01, 1e4, 57);
  double a_star = -1.0;
  double prev0 = 0.0;
  double prev90 = 0.0;
  const double small = tp::squeezed_variance(as.front(), wp, r_s, 0.0).thermal_noise;
  o.require(std::abs(small - 2.0) <= 1e-9, fmt::format("thermal at a={} is {}", as.front(), small));
  for (double a : as) {
    const auto v0 = tp::squeezed_variance(a, wp, r_s, 0.0);
    const auto v90 = tp::squeezed_variance(a, wp, r_s, kHalfPi);
    o.require(v0.thermal_noise <= 2.0 + kFig5Epsilon, fmt::format("thermal above 2 at a={}", a));
    if (a > 1.0) {
      o.require(v0.qnl_or_decoherence > prev0 && v90.qnl_or_decoherence > prev90,
                fmt::format("decoherence not growing at a={}", a));
    }
    prev0 = v0.qnl_or_decoherence;
    prev90 = v90.qnl_or_decoherence;
    if (a_star < 0 && v0.qnl_or_decoherence > v0.thermal_noise &&
        v90.qnl_or_decoherence > v90.thermal_noise) {
      a_star = a;
    }
    if (a_star > 0) {
      o.require(v90.qnl_or_decoherence > v90.thermal_noise,
                fmt::format("decoherence falls below thermal again at a={}", a));
    }
  }
  o.require(a_star > 0, "no crossover found");
  o.require(prev90 > 1e3, fmt::format("Delta(pi/2) only {} at a=1e4", prev90));
  const double secs = clock.seconds();
  o.require(secs < kBudget3, fmt::format("runtime {:.2f}s", secs));
  o.detail = fmt::format("thermal->2, <=2+eps; both Delta exceed thermal from a*~{:.3g}; Delta(pi/2)={:.3g} at a=1e4; {:.2f}s{}",
                         a_star, prev90, secs, o.passed ? "" : " | " + o.detail);
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> rs(0.0, 2.0);
  std::uniform_real_distribution<double> ic(1.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < kClosedFormSamples; ++i) {
    const double r = rs(rng);
    const double c = ic(rng);
    const double d0 = tp::delta_max(r, c);
    const double d90 = tp::delta_min(r, c);
    worst = std::max(worst, std::abs(tp::delta_decoherence(r, c, 0.0) - d0) / std::max(1.0, d0));
    worst = std::max(worst, std::abs(tp::delta_decoherence(r, c, kHalfPi) - d90) / std::max(1.0, d0));
  }
  o.require(worst <= kClosedFormConsistency, fmt::format("worst {:.3e}", worst));
  o.detail = fmt::format("{} samples, worst scaled deviation {:.3e} (tol {:.0e})", kClosedFormSamples,
                         worst, kClosedFormConsistency);
  return o;
}

Outcome criterion5() {
  Outcome o;
  struct Case {
    const char* label;
    double r_s;
    double a;
  };
  const Case cases[] = {{"displaced", 0.0, 0.5}, {"displaced", 0.0, 5.0},
                        {"squeezed", 0.3, 0.5},  {"squeezed", 0.3, 5.0}};
  const auto wp = spectral::make_wavepacket(1.0, 0.05);
  double worst = 0.0;
  std::string worst_name;
  std::size_t identities_displaced = 0;
  std::size_t identities_squeezed = 0;
  std::uint64_t seed = 20240601;
  for (const Case& cs : cases) {
    const auto circ = cs.r_s == 0.0 ? oracle::build_displaced_circuit(cs.a, wp, kAppendixBins)
                                    : oracle::build_squeezed_circuit(cs.a, wp, cs.r_s, kAppendixBins);
    std::mt19937_64 rng(seed++);
    std::uniform_int_distribution<std::size_t> pick(0, circ.bins() - 1);
    for (int s = 0; s < kAppendixPairs; ++s) {
      const std::size_t w = pick(rng);
      const std::size_t g = s == 0 ? w : pick(rng);
      const auto checks = oracle::appendix_expectations(circ, w, g);
      (cs.r_s == 0.0 ? identities_displaced : identities_squeezed) = checks.size();
      for (const auto& c : checks) {
        if (c.deviation > worst) {
          worst = c.deviation;
          worst_name = fmt::format("{} {} a={} bins ({},{})", cs.label, c.name, cs.a, w, g);
        }
      }
    }
  }
  o.require(identities_displaced == 8 + 4 && identities_squeezed == 16 + 4, "identity count");
  o.require(worst <= kAppendixTolerance, fmt::format("worst at {}", worst_name));
  o.detail = fmt::format("{}+{} identities x {} pairs, N={}, worst {:.3e} (tol {:.0e}) at {}",
                         identities_displaced, identities_squeezed, kAppendixPairs, kAppendixBins,
                         worst, kAppendixTolerance, worst_name);
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Stopwatch clock;
  const auto as = sweep::log_space(0.1, 10.0, 5);
  double worst = 0.0;
  double worst_growth = -1.0;
  int points = 0;
  for (double omega0 : {0.5, 1.0, 2.0}) {
    const auto wp = spectral::make_wavepacket(omega0, 0.01 * omega0);
    for (double r_s : {0.0, 0.5, 1.0}) {
      for (double a : as) {
        const auto s = spectral::spectral_integrals(wp, a);
        for (double phi : {0.0, kHalfPi}) {
          const double closed =
              r_s == 0.0 ? tp::displaced_variance(s).total : tp::squeezed_variance(s, r_s, phi).total;
          const oracle::CircuitOptions opts{oracle::kDefaultGain, phi};
          auto oracle_dev = [&](int bins) {
            const auto circ = r_s == 0.0 ? oracle::build_displaced_circuit(a, wp, bins, opts)
                                         : oracle::build_squeezed_circuit(a, wp, r_s, bins, opts);
            return rel(oracle::photon_number_variance_lo(circ).total, closed);
          };
          const double coarse = oracle_dev(kOracleBins);
          const double fine = oracle_dev(2 * kOracleBins);
          worst = std::max(worst, coarse);
          worst_growth = std::max(worst_growth, fine - coarse);
          o.require(coarse <= kOracleTolerance,
                    fmt::format("a={} omega0={} rs={} dev {:.3e}", a, omega0, r_s, coarse));
          o.require(fine <= coarse + kRefinementFloor,
                    fmt::format("refinement grows deviation at a={} omega0={} rs={}", a, omega0, r_s));
          ++points;
        }
      }
    }
  }
  const double secs = clock.seconds();
  o.require(secs < kBudget6, fmt::format("runtime {:.1f}s", secs));
  o.detail = fmt::format("{} points (5x3x3 x phi in {{0,pi/2}}), worst dev {:.3e} at N={} (tol {:.0e}), "
                         "max dev(2N)-dev(N) {:.1e} (floor {:.0e}), {:.1f}s{}",
                         points, worst, kOracleBins, kOracleTolerance, worst_growth, kRefinementFloor,
                         secs, o.passed ? "" : " | " + o.detail);
  return o;
}

Outcome criterion7() {
  Outcome o;
  double worst_coeff = 0.0;
  for (double r : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const auto out = tp::inertial_channel_output(r);
    const double c = std::cosh(r);
    worst_coeff = std::max({worst_coeff, std::abs(out.coefficient(tp::inertial::input, false) - 1.0),
                            std::abs(out.coefficient(tp::inertial::resource_i, true) - std::tanh(r)),
                            std::abs(out.coefficient(tp::inertial::resource_j, false) +
                                     std::sqrt(1.0 - 1.0 / (c * c)))});
  }
  double worst_residual = 0.0;
  for (double rw : {0.0, 0.5, 1.0, 3.0}) {
    const auto out = tp::inertial_teleport_output(oracle::kDefaultGain, rw);
    worst_residual = std::max({worst_residual,
                               std::abs(out.coefficient(tp::inertial::vacuum_1, true) - std::exp(-rw)),
                               std::abs(out.coefficient(tp::inertial::vacuum_2, false) + std::exp(-rw))});
  }
  o.require(worst_coeff <= kCoefficientTolerance, fmt::format("channel coefficients {:.2e}", worst_coeff));
  o.require(worst_residual <= kCoefficientTolerance, fmt::format("residual {:.2e}", worst_residual));

  auto fock_sweep = [](int cutoff, double& leak) {
    oracle::FockOptions opts;
    opts.throw_on_truncation = false;
    double worst = 0.0;
    leak = 0.0;
    for (double r : {0.0, 0.5, 1.0}) {
      for (double rw : {0.0, 0.5, 0.8, 1.0}) {
        const auto rep = oracle::fock_check_inertial(r, rw, cutoff, opts);
        worst = std::max(worst, rep.deviation);
        leak = std::max(leak, rep.leakage);
      }
    }
    return worst;
  };
  double leak12 = 0.0;
  const double fock12 = fock_sweep(kFockCutoff, leak12);
  o.require(fock12 <= kFockTolerance,
            fmt::format("Fock cutoff {} deviation {:.3e} (top-level population {:.2e})", kFockCutoff,
                        fock12, leak12));
  double leak40 = 0.0;
  const double fock40 = fock_sweep(kFockInfoCutoff, leak40);
  o.notes.push_back(fmt::format(
      "INFO criterion 7: at Fock cutoff {} the same sweep deviates by {:.3e} (top-level population "
      "{:.2e}), within {:.0e}",
      kFockInfoCutoff, fock40, leak40, kFockTolerance));
  o.detail = fmt::format("coefficients {:.1e}, residual e^-r_omega {:.1e} (tol {:.0e}); Fock cutoff {} "
                         "worst {:.3e} (tol {:.0e}){}",
                         worst_coeff, worst_residual, kCoefficientTolerance, kFockCutoff, fock12,
                         kFockTolerance, o.passed ? "" : " | " + o.detail);
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto accelerations = sweep::log_space(1e-3, 1e3, 31);
  double worst_identity = 0.0;
  double min_purity = 1e300;
  double worst_reduction = 0.0;
  for (double omega0 : {0.5, 1.0, 3.5}) {
    for (double rel_sigma : {0.01, 0.05, 0.2}) {
      const auto wp = spectral::make_wavepacket(omega0, rel_sigma * omega0);
      for (double a : accelerations) {
        const auto s = spectral::spectral_integrals(wp, a);
        worst_identity = std::max(worst_identity, std::abs(s.i_c - s.i_s - 1.0));
        const auto d = tp::displaced_variance(s);
        min_purity = std::min(min_purity, d.purity_product);
        for (double r_s : {0.25, 0.5, 1.0, 2.0}) {
          min_purity = std::min(min_purity, tp::squeezed_variance(s, r_s, 0.0).purity_product);
        }
        for (double phi : {0.0, 0.6, kHalfPi}) {
          worst_reduction =
              std::max(worst_reduction, std::abs(tp::squeezed_variance(s, 0.0, phi).total - d.total));
        }
      }
    }
  }
  o.require(worst_identity <= kIdentityTolerance, fmt::format("I_c - I_s off by {:.2e}", worst_identity));
  o.require(min_purity > 1.0, fmt::format("purity product {}", min_purity));
  o.require(worst_reduction <= kReductionTolerance, fmt::format("reduction {:.2e}", worst_reduction));

  // Oracle purity in both scenarios, independent of the closed forms.
  double min_oracle_purity = 1e300;
  const auto wp = spectral::make_wavepacket(1.0, 0.01);
  for (double a : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    min_oracle_purity = std::min(min_oracle_purity,
                                 oracle::photon_number_variance_lo(oracle::build_displaced_circuit(a, wp)).purity_product);
    min_oracle_purity = std::min(
        min_oracle_purity,
        oracle::photon_number_variance_lo(oracle::build_squeezed_circuit(a, wp, 0.5)).purity_product);
  }
  o.require(min_oracle_purity > 1.0, fmt::format("oracle purity product {}", min_oracle_purity));

  double worst_comm = 0.0;
  const auto wp2 = spectral::make_wavepacket(1.0, 0.05);
  for (double a : {0.2, 2.0, 20.0}) {
    worst_comm = std::max(worst_comm, oracle::commutator_audit(oracle::build_displaced_circuit(a, wp2, 64), 64));
    worst_comm = std::max(worst_comm, oracle::commutator_audit(oracle::build_squeezed_circuit(a, wp2, 0.8, 64), 64));
    worst_comm = std::max(worst_comm, oracle::commutator_audit(oracle::build_zero_signal_circuit(a, wp2, 64), 64));
  }
  for (double r : {0.0, 1.0, 3.0}) {
    for (double rw : {0.0, 1.0}) {
      const auto out = tp::inertial_teleport_output(r, rw);
      worst_comm = std::max(worst_comm, std::abs(modes::commutator(out, out.adjoint()) - 1.0));
    }
  }
  o.require(worst_comm <= kCommutatorTolerance, fmt::format("commutator {:.2e}", worst_comm));
  o.detail = fmt::format("I_c-I_s-1 {:.1e} (tol {:.0e}); commutators {:.1e} (tol {:.0e}); min purity "
                         "{:.4f} closed / {:.4f} oracle; r_s=0 reduction {:.1e} (tol {:.0e}){}",
                         worst_identity, kIdentityTolerance, worst_comm, kCommutatorTolerance,
                         min_purity, min_oracle_purity, worst_reduction, kReductionTolerance,
                         o.passed ? "" : " | " + o.detail);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "displaced-state limits", criterion1},
      {2, "Fig. 4 shape", criterion2},
      {3, "Fig. 5 shape", criterion3},
      {4, "closed-form consistency", criterion4},
      {5, "appendix equivalence", criterion5},
      {6, "oracle vs closed form", criterion6},
      {7, "inertial protocol", criterion7},
      {8, "property suite", criterion8},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  bool ok = true;
  for (const Criterion& c : all) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = fmt::format("exception: {}", e.what());
    }
    std::cout << fmt::format("{} criterion {} ({}): {}\n", o.passed ? "PASS" : "FAIL", c.id, c.title,
                             o.detail);
    for (const auto& note : o.notes) std::cout << note << "\n";
    ok = ok && o.passed;
  }
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
