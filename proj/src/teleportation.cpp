#include "rindler/teleportation.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace rindler::teleport {

double thermal_term(const spectral::SpectralIntegrals& s) {
  return 2.0 * s.i_cs * (s.i_c + s.i_s);
}

VarianceReport displaced_variance(const spectral::SpectralIntegrals& s) {
  VarianceReport out;
  out.thermal_noise = thermal_term(s);
  out.qnl_or_decoherence = 1.0;
  out.total = out.thermal_noise + out.qnl_or_decoherence;
  // Phase-insensitive, so both quadratures carry the same variance.
  out.purity_product = out.total * out.total;
  return out;
}

VarianceReport displaced_variance(double a, const spectral::WavepacketSpec& wp,
                                  const spectral::QuadratureOptions& options) {
  return displaced_variance(spectral::spectral_integrals(wp, a, options));
}

double narrowband_variance(double omega0, double a) {
  const auto f = spectral::unruh_factors(omega0, a);
  const double e2 = f.exp_mr * f.exp_mr;
  return (1.0 + e2 * e2) + 1.0;
}

double delta_decoherence(double r_s, double i_c, double phi) {
  const double ch = std::cosh(r_s);
  const double sh = std::sinh(r_s);
  const double c2 = std::cosh(2.0 * r_s);
  const double k = 4.0 * i_c * (i_c - 1.0);
  const double b = 2.0 * i_c - 1.0;
  return c2 + k * (c2 - 2.0 * ch + 1.0) + 2.0 * sh * (b * b * ch - k) * std::cos(2.0 * phi);
}

double delta_max(double r_s, double i_c) {
  const double e = std::expm1(r_s);
  return std::exp(2.0 * r_s) + 4.0 * i_c * (i_c - 1.0) * e * e;
}

double delta_min(double r_s, double i_c) {
  const double e = std::expm1(-r_s);
  return std::exp(-2.0 * r_s) + 4.0 * i_c * (i_c - 1.0) * e * e;
}

VarianceReport squeezed_variance(const spectral::SpectralIntegrals& s, double r_s, double phi) {
  if (!(r_s >= 0.0)) {
    throw std::invalid_argument(fmt::format("squeezing amplitude must be >= 0 (got {})", r_s));
  }
  VarianceReport out;
  out.thermal_noise = thermal_term(s);
  out.qnl_or_decoherence = delta_decoherence(r_s, s.i_c, phi);
  out.total = out.thermal_noise + out.qnl_or_decoherence;
  out.purity_product =
      (out.thermal_noise + delta_max(r_s, s.i_c)) * (out.thermal_noise + delta_min(r_s, s.i_c));
  return out;
}

VarianceReport squeezed_variance(double a, const spectral::WavepacketSpec& wp, double r_s,
                                 double phi, const spectral::QuadratureOptions& options) {
  return squeezed_variance(spectral::spectral_integrals(wp, a, options), r_s, phi);
}

double conformal_residual(double a, const spectral::WavepacketSpec& wp,
                          const spectral::QuadratureOptions& options) {
  return spectral::spectral_integrals(wp, a, options).phi_cs;
}

VarianceReport evaluate(const ScenarioParams& params, const spectral::QuadratureOptions& options) {
  if (std::isfinite(params.channel_gain_r)) {
    throw std::invalid_argument(fmt::format(
        "closed-form variances assume infinite amplifier gain (got channel_gain_r = {})",
        params.channel_gain_r));
  }
  return squeezed_variance(params.a, params.wp, params.r_s, params.phi, options);
}

AppendixCoefficients appendix_coefficients(double r_s, double i_c, double i_s, double i_cs) {
  const double chm = std::cosh(r_s) - 1.0;
  const double sh = std::sinh(r_s);
  const double sh2 = sh * sh;
  AppendixCoefficients k;
  k.psi_cc = sh * (chm * (i_c + i_s) + 1.0);
  k.phi_cc = chm * chm * i_s + sh2 * i_c + i_cs;
  k.phibar_cc = 2.0 * chm + chm * chm * i_c + sh2 * i_s + i_cs;
  k.psi_dd = sh * (chm * (i_c + i_s) - 1.0);
  k.phi_dd = chm * chm * i_c + sh2 * i_s + i_cs;
  k.phibar_dd = -2.0 * chm + chm * chm * i_s + sh2 * i_c + i_cs;
  k.gamma_cd = chm * sh * (i_c + i_s);
  k.cosh_rs_minus_1 = chm;
  return k;
}

const char* to_string(Pairing p) {
  switch (p) {
    case Pairing::C_C: return "<c c>";
    case Pairing::Cd_Cd: return "<c+ c+>";
    case Pairing::C_Cd: return "<c c+>";
    case Pairing::Cd_C: return "<c+ c>";
    case Pairing::D_D: return "<d d>";
    case Pairing::Dd_Dd: return "<d+ d+>";
    case Pairing::D_Dd: return "<d d+>";
    case Pairing::Dd_D: return "<d+ d>";
    case Pairing::C_D: return "<c d>";
    case Pairing::Cd_Dd: return "<c+ d+>";
    case Pairing::D_C: return "<d c>";
    case Pairing::Dd_Cd: return "<d+ c+>";
    case Pairing::C_Dd: return "<c d+>";
    case Pairing::Cd_D: return "<c+ d>";
    case Pairing::D_Cd: return "<d c+>";
    case Pairing::Dd_C: return "<d+ c>";
  }
  return "?";
}

namespace {

struct Prefactors {
  double cc, dd, cd, dc;
};

Prefactors prefactors(const BinPair& b) {
  const double gg = b.g_w * b.g_g;
  return {gg * b.cosh_w * b.cosh_g, gg * b.sinh_w * b.sinh_g, gg * b.cosh_w * b.sinh_g,
          gg * b.sinh_w * b.cosh_g};
}

}  // namespace

double pairing_closed_form(Pairing p, const AppendixCoefficients& k, const BinPair& b) {
  const Prefactors f = prefactors(b);
  const double delta = b.same_bin ? 1.0 : 0.0;
  const double chm = k.cosh_rs_minus_1;
  switch (p) {
    case Pairing::C_C:
    case Pairing::Cd_Cd: return f.cc * k.psi_cc;
    case Pairing::C_Cd: return delta + f.cc * k.phibar_cc;
    case Pairing::Cd_C: return f.cc * k.phi_cc;
    case Pairing::D_D:
    case Pairing::Dd_Dd: return f.dd * k.psi_dd;
    case Pairing::D_Dd: return delta + f.dd * k.phibar_dd;
    case Pairing::Dd_D: return f.dd * k.phi_dd;
    case Pairing::C_D: return -f.cd * (k.phibar_cc - chm);
    case Pairing::Cd_Dd: return -f.cd * (k.phibar_dd + chm);
    case Pairing::D_C: return -f.dc * (k.phibar_dd + chm);
    case Pairing::Dd_Cd: return -f.dc * (k.phibar_cc - chm);
    case Pairing::C_Dd:
    case Pairing::Cd_D: return -f.cd * k.gamma_cd;
    case Pairing::D_Cd:
    case Pairing::Dd_C: return -f.dc * k.gamma_cd;
  }
  return 0.0;
}

double pairing_prefactor(Pairing p, const BinPair& b) {
  const Prefactors f = prefactors(b);
  switch (p) {
    case Pairing::C_C:
    case Pairing::Cd_Cd:
    case Pairing::C_Cd:
    case Pairing::Cd_C: return f.cc;
    case Pairing::D_D:
    case Pairing::Dd_Dd:
    case Pairing::D_Dd:
    case Pairing::Dd_D: return f.dd;
    case Pairing::C_D:
    case Pairing::Cd_Dd:
    case Pairing::C_Dd:
    case Pairing::Cd_D: return f.cd;
    case Pairing::D_C:
    case Pairing::Dd_Cd:
    case Pairing::D_Cd:
    case Pairing::Dd_C: return f.dc;
  }
  return 0.0;
}

const char* to_string(Quartic q) {
  switch (q) {
    case Quartic::CC: return "<n_c n_c>";
    case Quartic::DD: return "<n_d n_d>";
    case Quartic::CD: return "<n_c n_d>";
    case Quartic::DC: return "<n_d n_c>";
  }
  return "?";
}

double quartic_closed_form(Quartic q, const AppendixCoefficients& k, const BinPair& b,
                           double phi) {
  const Prefactors f = prefactors(b);
  const double delta = b.same_bin ? 1.0 : 0.0;
  const double c2 = std::cos(2.0 * phi);
  switch (q) {
    case Quartic::CC: return f.cc * (delta + f.cc * (2.0 * k.phibar_cc + 2.0 * c2 * k.psi_cc));
    case Quartic::DD: return f.dd * (delta + f.dd * (2.0 * k.phibar_dd + 2.0 * c2 * k.psi_dd));
    case Quartic::CD: return f.cd * f.cd * (k.phibar_cc + k.phibar_dd + 2.0 * c2 * k.gamma_cd);
    case Quartic::DC: return f.dc * f.dc * (k.phibar_cc + k.phibar_dd + 2.0 * c2 * k.gamma_cd);
  }
  return 0.0;
}

double quartic_prefactor(Quartic q, const BinPair& b) {
  const Prefactors f = prefactors(b);
  switch (q) {
    case Quartic::CC: return f.cc;
    case Quartic::DD: return f.dd;
    case Quartic::CD: return f.cd * f.cd;
    case Quartic::DC: return f.dc * f.dc;
  }
  return 0.0;
}

OperatorExpr inertial_channel_output(double r) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument(fmt::format("amplifier squeezing must be >= 0 (got {})", r));
  }
  using modes::OperatorExpr;
  const auto a_in = OperatorExpr::annihilator(inertial::input);
  const auto a_i = OperatorExpr::annihilator(inertial::resource_i);
  const auto a_j = OperatorExpr::annihilator(inertial::resource_j);
  // Rob's amplifier, then Charlie's beam splitter at eta = cosh^{-2} r.
  const auto [ch, idler] = modes::two_mode_squeeze(a_in, a_i, r);
  const double c = std::cosh(r);
  const auto [out, dump] = modes::beam_splitter(ch, a_j, 1.0 / (c * c));
  return out;
}

OperatorExpr inertial_teleport_output(double r, double r_omega) {
  if (!(r_omega >= 0.0)) {
    throw std::invalid_argument(
        fmt::format("resource squeezing must be >= 0 (got {})", r_omega));
  }
  const OperatorExpr channel = inertial_channel_output(r);
  const auto v1 = OperatorExpr::annihilator(inertial::vacuum_1);
  const auto v2 = OperatorExpr::annihilator(inertial::vacuum_2);
  const auto [a_i, a_j] = modes::two_mode_squeeze(v1, v2, r_omega);

  OperatorExpr out = OperatorExpr::scalar(channel.displacement());
  for (const modes::Term& t : channel.terms()) {
    if (t.mode == inertial::resource_i) {
      out.add_scaled(t.dagger ? a_i.adjoint() : a_i, t.coeff);
    } else if (t.mode == inertial::resource_j) {
      out.add_scaled(t.dagger ? a_j.adjoint() : a_j, t.coeff);
    } else {
      out.add_term(t.mode, t.dagger, t.coeff);
    }
  }
  return out;
}

namespace {

OperatorExpr quadrature(const OperatorExpr& a, double phi) {
  const Complex rot = std::polar(1.0, -phi);
  OperatorExpr x = rot * a;
  x.add_scaled(a.adjoint(), std::conj(rot));
  return x;
}

}  // namespace

double quadrature_variance(const OperatorExpr& a, double phi) {
  const OperatorExpr x = quadrature(a, phi).fluctuation();
  return modes::contraction(x, x).real();
}

double quadrature_mean(const OperatorExpr& a, double phi) {
  return quadrature(a, phi).displacement().real();
}

double inertial_variance(double r, double r_omega) {
  const double t = std::tanh(r);
  return 1.0 + 2.0 * t * t * std::exp(-2.0 * r_omega);
}

}  // namespace rindler::teleport
