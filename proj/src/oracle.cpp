#include "rindler/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace rindler::oracle {

namespace {

using modes::Chirality;
using modes::ModeLabel;
using modes::Sector;

ModeLabel label(Sector s, std::size_t bin) {
  const Chirality chi =
      (s == Sector::RindlerI || s == Sector::RindlerIII) ? Chirality::Right : Chirality::Left;
  return {s, chi, static_cast<std::uint32_t>(bin)};
}

OperatorExpr wavepacket_mode(const FrequencyGrid& grid, Sector s) {
  std::vector<modes::Term> terms;
  terms.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    terms.push_back({label(s, i), false, grid.weight[i]});
  }
  return OperatorExpr::from_terms({}, std::move(terms));
}

DiscretizedCircuit prepare(double a, const spectral::WavepacketSpec& wp, int bins,
                           const CircuitOptions& options) {
  if (!(a > 0.0)) throw std::invalid_argument(fmt::format("acceleration must be positive (got {})", a));
  DiscretizedCircuit circ;
  circ.a = a;
  circ.lo_phase = options.lo_phase;
  circ.grid = make_grid(wp, bins);
  circ.cosh_r.reserve(circ.grid.size());
  circ.sinh_r.reserve(circ.grid.size());
  for (double w : circ.grid.omega) {
    const auto f = spectral::unruh_factors(w, a);
    circ.cosh_r.push_back(f.cosh_r);
    circ.sinh_r.push_back(f.sinh_r);
  }
  return circ;
}

// Runs the gate list on b_g^IV. Resource roles: the amplifier idler is the
// region-III wavepacket, the beam-splitter partner the region-I one.
void run(DiscretizedCircuit& circ) {
  const OperatorExpr b_g = wavepacket_mode(circ.grid, Sector::RindlerIV);
  OperatorExpr mode = b_g;
  for (const Gate& gate : circ.gates) {
    switch (gate.kind) {
      case GateKind::SingleModeSqueeze:
        mode = modes::single_mode_squeeze(mode, gate.parameter);
        break;
      case GateKind::Displace:
        mode = modes::displace(mode, gate.amplitude);
        break;
      case GateKind::TwoModeSqueeze:
        mode = modes::two_mode_squeeze(mode, wavepacket_mode(circ.grid, Sector::RindlerIII),
                                       gate.parameter)
                   .first;
        break;
      case GateKind::BeamSplitter:
        mode = modes::beam_splitter(mode, wavepacket_mode(circ.grid, Sector::RindlerI),
                                    gate.parameter)
                   .first;
        break;
    }
  }
  circ.wavepacket_out = mode;
  // Only the projection onto g interacts:
  //   b_i -> b_i + g_i (b_g_out - b_g).
  circ.kick = modes::rindler_to_unruh(mode - b_g, circ.a, circ.grid.omega);
}

void add_teleportation(DiscretizedCircuit& circ, double gain_r) {
  const double c = std::cosh(gain_r);
  circ.gates.push_back({GateKind::TwoModeSqueeze, gain_r, {}, fmt::format("S2(IV, III; r={})", gain_r)});
  circ.gates.push_back(
      {GateKind::BeamSplitter, 1.0 / (c * c), {}, fmt::format("BS(IV, I; eta=1/cosh^2 {})", gain_r)});
}

Gate lo_gate(double phase) {
  return {GateKind::Displace, 0.0, std::polar(1.0, phase), fmt::format("D(alpha=e^(i {}))", phase)};
}

void require_bin(const DiscretizedCircuit& circ, std::size_t i) {
  if (i >= circ.bins()) {
    throw std::out_of_range(fmt::format("bin {} outside a {}-bin grid", i, circ.bins()));
  }
}

// Output operators of bin i without the wavepacket kick, in the Unruh basis.
OperatorExpr free_c(const DiscretizedCircuit& circ, std::size_t i) {
  OperatorExpr bare = circ.cosh_r[i] * OperatorExpr::annihilator(label(Sector::RindlerIV, i));
  bare.add_scaled(OperatorExpr::creator(label(Sector::RindlerII, i)), -circ.sinh_r[i]);
  return modes::rindler_to_unruh(bare, circ.a, circ.grid.omega);
}

OperatorExpr free_d(const DiscretizedCircuit& circ, std::size_t i) {
  OperatorExpr bare = circ.cosh_r[i] * OperatorExpr::annihilator(label(Sector::RindlerII, i));
  bare.add_scaled(OperatorExpr::creator(label(Sector::RindlerIV, i)), -circ.sinh_r[i]);
  return modes::rindler_to_unruh(bare, circ.a, circ.grid.omega);
}

Complex lo_amplitude(const DiscretizedCircuit& circ, double phase_shift) {
  return circ.kick.displacement() * std::polar(1.0, phase_shift);
}

// Var(N) at order |alpha|^2 for a LO rotated by `phase_shift` relative to
// the circuit's own. alpha enters only through the displacement channel,
// linearly, so rotating the LO amplitudes is exact.
teleport::VarianceReport lo_variance(const DiscretizedCircuit& circ, double phase_shift) {
  const Complex k = lo_amplitude(circ, phase_shift);
  // c_i = free_c(i) + g_i C_i kick and d_i = free_d(i) - g_i S_i kick^dag, so
  // the kick enters the linear LO cross term with two collected weights.
  std::vector<modes::Term> own;
  own.reserve(8 * circ.bins());
  Complex kick_w{};
  Complex kick_dag_w{};
  double n0 = 0.0;
  for (std::size_t i = 0; i < circ.bins(); ++i) {
    const double g = circ.grid.weight[i];
    const Complex a_i = g * circ.cosh_r[i] * k;
    const Complex b_i = -g * circ.sinh_r[i] * std::conj(k);
    n0 += std::norm(a_i) + std::norm(b_i);
    const OperatorExpr c = free_c(circ, i);
    const OperatorExpr d = free_d(circ, i);
    OperatorExpr lin = std::conj(a_i) * c;
    lin.add_scaled(c.adjoint(), a_i);
    lin.add_scaled(d, std::conj(b_i));
    lin.add_scaled(d.adjoint(), b_i);
    own.insert(own.end(), lin.terms().begin(), lin.terms().end());
    kick_w += std::conj(a_i) * g * circ.cosh_r[i] - b_i * g * circ.sinh_r[i];
    kick_dag_w += a_i * g * circ.cosh_r[i] - std::conj(b_i) * g * circ.sinh_r[i];
  }
  if (!(n0 > 0.0)) throw std::invalid_argument("circuit has no local oscillator");
  OperatorExpr total = OperatorExpr::from_terms({}, std::move(own));
  const OperatorExpr kick = circ.kick.fluctuation();
  total.add_scaled(kick, kick_w);
  total.add_scaled(kick.adjoint(), kick_dag_w);

  std::vector<modes::Term> l_terms;
  std::vector<modes::Term> r_terms;
  for (const modes::Term& t : total.terms()) {
    (t.mode.chirality == Chirality::Right ? r_terms : l_terms).push_back(t);
  }
  const OperatorExpr left = OperatorExpr::from_terms({}, std::move(l_terms));
  const OperatorExpr right = OperatorExpr::from_terms({}, std::move(r_terms));
  teleport::VarianceReport out;
  out.thermal_noise = modes::contraction(right, right).real() / n0;
  out.qnl_or_decoherence = modes::contraction(left, left).real() / n0;
  out.total = out.thermal_noise + out.qnl_or_decoherence;
  return out;
}

}  // namespace

FrequencyGrid make_grid(const spectral::WavepacketSpec& wp, int bins) {
  if (bins < kMinBins) {
    throw std::invalid_argument(
        fmt::format("oracle grid needs at least {} bins to resolve the wavepacket (got {})",
                    kMinBins, bins));
  }
  if (!(wp.upper > wp.lower) || !(wp.lower > 0.0)) {
    throw std::invalid_argument("oracle grid needs a wavepacket from make_wavepacket");
  }
  FrequencyGrid grid;
  grid.spacing = (wp.upper - wp.lower) / bins;
  grid.omega.resize(static_cast<std::size_t>(bins));
  grid.weight.resize(static_cast<std::size_t>(bins));
  double norm = 0.0;
  for (int i = 0; i < bins; ++i) {
    const double w = wp.lower + (i + 0.5) * grid.spacing;
    grid.omega[i] = w;
    grid.weight[i] = wp.amplitude(w) * std::sqrt(grid.spacing);
    norm += grid.weight[i] * grid.weight[i];
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (double& g : grid.weight) g *= scale;
  return grid;
}

DiscreteIntegrals discrete_integrals(const FrequencyGrid& grid, double a) {
  DiscreteIntegrals out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto f = spectral::unruh_factors(grid.omega[i], a);
    const double g = grid.weight[i];
    out.i_c += g * g * f.cosh_r * f.cosh_r;
    out.i_s += g * g * f.sinh_r * f.sinh_r;
    out.i_cs += g * g * f.exp_mr * f.exp_mr;
    // g_i carries sqrt(d omega); the other sqrt(d omega) restores the measure.
    out.phi_cs += g * f.exp_mr * std::sqrt(grid.spacing);
  }
  return out;
}

OperatorExpr DiscretizedCircuit::c_out(std::size_t i) const {
  require_bin(*this, i);
  OperatorExpr out = free_c(*this, i);
  out.add_scaled(kick, grid.weight[i] * cosh_r[i]);
  return out;
}

OperatorExpr DiscretizedCircuit::d_out(std::size_t i) const {
  require_bin(*this, i);
  OperatorExpr out = free_d(*this, i);
  out.add_scaled(kick.adjoint(), -grid.weight[i] * sinh_r[i]);
  return out;
}

Complex DiscretizedCircuit::lo_c(std::size_t i) const {
  require_bin(*this, i);
  return grid.weight[i] * cosh_r[i] * kick.displacement();
}

Complex DiscretizedCircuit::lo_d(std::size_t i) const {
  require_bin(*this, i);
  return -grid.weight[i] * sinh_r[i] * std::conj(kick.displacement());
}

DiscretizedCircuit build_displaced_circuit(double a, const spectral::WavepacketSpec& wp, int bins,
                                           const CircuitOptions& options) {
  DiscretizedCircuit circ = prepare(a, wp, bins, options);
  circ.gates.push_back(lo_gate(options.lo_phase));
  add_teleportation(circ, options.gain_r);
  run(circ);
  return circ;
}

DiscretizedCircuit build_squeezed_circuit(double a, const spectral::WavepacketSpec& wp, double r_s,
                                          int bins, const CircuitOptions& options) {
  if (!(r_s >= 0.0)) {
    throw std::invalid_argument(fmt::format("squeezing amplitude must be >= 0 (got {})", r_s));
  }
  DiscretizedCircuit circ = prepare(a, wp, bins, options);
  circ.r_s = r_s;
  circ.gates.push_back({GateKind::SingleModeSqueeze, r_s, {}, fmt::format("S1(IV; r_s={})", r_s)});
  circ.gates.push_back(lo_gate(options.lo_phase));
  add_teleportation(circ, options.gain_r);
  run(circ);
  return circ;
}

DiscretizedCircuit build_zero_signal_circuit(double a, const spectral::WavepacketSpec& wp,
                                             int bins, const CircuitOptions& options) {
  DiscretizedCircuit circ = prepare(a, wp, bins, options);
  circ.gates.push_back(lo_gate(options.lo_phase));
  run(circ);
  return circ;
}

double commutator_audit(const DiscretizedCircuit& circ, std::size_t full_audit_bins) {
  std::vector<std::size_t> picks;
  const std::size_t n = circ.bins();
  if (n <= full_audit_bins || full_audit_bins < 2) {
    for (std::size_t i = 0; i < n; ++i) picks.push_back(i);
  } else {
    for (std::size_t k = 0; k < full_audit_bins; ++k) {
      picks.push_back(k * (n - 1) / (full_audit_bins - 1));
    }
  }
  std::vector<OperatorExpr> ops;
  std::vector<std::size_t> ids;  // identifies (bin, sector) for the delta
  for (std::size_t i : picks) {
    ops.push_back(circ.c_out(i));
    ids.push_back(2 * i);
    ops.push_back(circ.d_out(i));
    ids.push_back(2 * i + 1);
  }
  std::vector<OperatorExpr> adj;
  adj.reserve(ops.size());
  for (const auto& x : ops) adj.push_back(x.adjoint());
  double worst = 0.0;
  for (std::size_t p = 0; p < ops.size(); ++p) {
    for (std::size_t q = 0; q < ops.size(); ++q) {
      const double delta = ids[p] == ids[q] ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(modes::commutator(ops[p], adj[q]) - delta));
      worst = std::max(worst, std::abs(modes::commutator(ops[p], ops[q])));
    }
  }
  return worst;
}

teleport::VarianceReport photon_number_variance_lo(const DiscretizedCircuit& circ) {
  teleport::VarianceReport out = lo_variance(circ, 0.0);
  const double v0 = lo_variance(circ, -circ.lo_phase).total;
  const double v90 = lo_variance(circ, std::numbers::pi / 2 - circ.lo_phase).total;
  out.purity_product = v0 * v90;
  return out;
}

RefinedVariance refined_variance(Scenario scenario, double a, const spectral::WavepacketSpec& wp,
                                 double r_s, double phi, int bins, double tolerance,
                                 bool throw_on_failure) {
  auto build = [&](int n) {
    const CircuitOptions options{kDefaultGain, phi};
    switch (scenario) {
      case Scenario::Displaced: return build_displaced_circuit(a, wp, n, options);
      case Scenario::Squeezed: return build_squeezed_circuit(a, wp, r_s, n, options);
      case Scenario::ZeroSignal: break;
    }
    return build_zero_signal_circuit(a, wp, n, options);
  };
  RefinedVariance out;
  out.bins = bins;
  out.coarse = photon_number_variance_lo(build(bins));
  out.fine = photon_number_variance_lo(build(2 * bins));
  out.relative_change = std::abs(out.fine.total - out.coarse.total) / std::abs(out.fine.total);
  out.converged = out.relative_change <= tolerance;
  if (!out.converged && throw_on_failure) {
    throw OracleConvergenceError(fmt::format(
        "oracle variance moved by {:.3e} (relative) between {} and {} bins; tolerance {:.1e}",
        out.relative_change, bins, 2 * bins, tolerance));
  }
  return out;
}

namespace {

// Connected <n_x n_y> at order |alpha|^2: the covariance with the LO on,
// minus the same covariance of the fluctuations alone.
Complex connected_number_correlation(const OperatorExpr& x, const OperatorExpr& y) {
  auto covariance = [](const OperatorExpr& p, const OperatorExpr& q) {
    const OperatorExpr pd = p.adjoint();
    const OperatorExpr qd = q.adjoint();
    const OperatorExpr four[] = {pd, p, qd, q};
    const OperatorExpr first[] = {pd, p};
    const OperatorExpr second[] = {qd, q};
    return modes::wick_expectation(four) -
           modes::wick_expectation(first) * modes::wick_expectation(second);
  };
  return covariance(x, y) - covariance(x.fluctuation(), y.fluctuation());
}

double deviation(Complex numeric, double closed, double prefactor) {
  const double scale = std::max(std::abs(closed), std::abs(prefactor));
  const double diff = std::abs(numeric - Complex{closed, 0.0});
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

std::vector<ContractionCheck> appendix_expectations(const DiscretizedCircuit& circ,
                                                    std::size_t omega_bin,
                                                    std::size_t gamma_bin) {
  require_bin(circ, omega_bin);
  require_bin(circ, gamma_bin);
  const DiscreteIntegrals di = discrete_integrals(circ.grid, circ.a);
  const auto k = teleport::appendix_coefficients(circ.r_s, di.i_c, di.i_s, di.i_cs);
  teleport::BinPair bp;
  bp.g_w = circ.grid.weight[omega_bin];
  bp.g_g = circ.grid.weight[gamma_bin];
  bp.cosh_w = circ.cosh_r[omega_bin];
  bp.sinh_w = circ.sinh_r[omega_bin];
  bp.cosh_g = circ.cosh_r[gamma_bin];
  bp.sinh_g = circ.sinh_r[gamma_bin];
  bp.same_bin = omega_bin == gamma_bin;

  const OperatorExpr c_w = circ.c_out(omega_bin);
  const OperatorExpr d_w = circ.d_out(omega_bin);
  const OperatorExpr c_g = circ.c_out(gamma_bin);
  const OperatorExpr d_g = circ.d_out(gamma_bin);
  const OperatorExpr cf_w = c_w.fluctuation();
  const OperatorExpr df_w = d_w.fluctuation();
  const OperatorExpr cf_g = c_g.fluctuation();
  const OperatorExpr df_g = d_g.fluctuation();

  auto factors = [&](teleport::Pairing p) -> std::pair<OperatorExpr, OperatorExpr> {
    using teleport::Pairing;
    switch (p) {
      case Pairing::C_C: return {cf_w, cf_g};
      case Pairing::Cd_Cd: return {cf_w.adjoint(), cf_g.adjoint()};
      case Pairing::C_Cd: return {cf_w, cf_g.adjoint()};
      case Pairing::Cd_C: return {cf_w.adjoint(), cf_g};
      case Pairing::D_D: return {df_w, df_g};
      case Pairing::Dd_Dd: return {df_w.adjoint(), df_g.adjoint()};
      case Pairing::D_Dd: return {df_w, df_g.adjoint()};
      case Pairing::Dd_D: return {df_w.adjoint(), df_g};
      case Pairing::C_D: return {cf_w, df_g};
      case Pairing::Cd_Dd: return {cf_w.adjoint(), df_g.adjoint()};
      case Pairing::D_C: return {df_w, cf_g};
      case Pairing::Dd_Cd: return {df_w.adjoint(), cf_g.adjoint()};
      case Pairing::C_Dd: return {cf_w, df_g.adjoint()};
      case Pairing::Cd_D: return {cf_w.adjoint(), df_g};
      case Pairing::D_Cd: return {df_w, cf_g.adjoint()};
      case Pairing::Dd_C: return {df_w.adjoint(), cf_g};
    }
    return {};
  };

  std::vector<ContractionCheck> out;
  const bool squeezed = std::any_of(circ.gates.begin(), circ.gates.end(), [](const Gate& g) {
    return g.kind == GateKind::SingleModeSqueeze;
  });
  auto add_pairing = [&](teleport::Pairing p) {
    const auto [x, y] = factors(p);
    const OperatorExpr pair[] = {x, y};
    ContractionCheck check;
    check.name = teleport::to_string(p);
    check.numeric = modes::wick_expectation(pair);
    check.closed_form = teleport::pairing_closed_form(p, k, bp);
    check.prefactor = teleport::pairing_prefactor(p, bp);
    check.deviation = deviation(check.numeric, check.closed_form, check.prefactor);
    out.push_back(std::move(check));
  };
  if (squeezed) {
    for (auto p : teleport::kAllPairings) add_pairing(p);
  } else {
    for (auto p : teleport::kDisplacedPairings) add_pairing(p);
  }

  // The circuit's LO has unit amplitude, so these are the |alpha|^2 coefficients.
  for (auto q : teleport::kAllQuartics) {
    const OperatorExpr& x = (q == teleport::Quartic::CC || q == teleport::Quartic::CD) ? c_w : d_w;
    const OperatorExpr& y = (q == teleport::Quartic::CC || q == teleport::Quartic::DC) ? c_g : d_g;
    ContractionCheck check;
    check.name = teleport::to_string(q);
    check.numeric = connected_number_correlation(x, y);
    check.closed_form = teleport::quartic_closed_form(q, k, bp, circ.lo_phase);
    check.prefactor = teleport::quartic_prefactor(q, bp);
    check.deviation = deviation(check.numeric, check.closed_form, check.prefactor);
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace rindler::oracle
