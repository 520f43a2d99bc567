#pragma once

#include <limits>

#include "rindler/mode_algebra.hpp"
#include "rindler/spectral.hpp"

namespace rindler::teleport {

using modes::Complex;
using modes::OperatorExpr;

/// Output quadrature variance split into its physical contributions. For the
/// displaced scenario the second channel is the extra unit of QNL; for the
/// squeezed scenario it is the decoherence term Delta(phi).
struct VarianceReport {
  double total = 0.0;
  double thermal_noise = 0.0;
  double qnl_or_decoherence = 0.0;
  /// Delta X(0)^2 * Delta X(pi/2)^2; equals one for a pure Gaussian state.
  double purity_product = 0.0;
};

/// 2 I_cs (I_c + I_s): the Unruh noise carried over the conformal channel.
double thermal_term(const spectral::SpectralIntegrals& s);

/// Displaced thermal state in the strong-amplification limit:
/// (Delta X)^2 = 2 I_cs (I_c + I_s) + 1, independent of the homodyne phase.
VarianceReport displaced_variance(const spectral::SpectralIntegrals& s);
VarianceReport displaced_variance(double a, const spectral::WavepacketSpec& wp,
                                  const spectral::QuadratureOptions& options = {});

/// sigma -> 0 limit of displaced_variance: (1 + e^{-4 r0}) + 1 with
/// r0 = squeeze_param(omega0, a).
double narrowband_variance(double omega0, double a);

/// Delta(phi) = cosh 2r_s + 4 I_c (I_c - 1)(cosh 2r_s - 2 cosh r_s + 1)
///            + 2 sinh r_s [(2 I_c - 1)^2 cosh r_s - 4 I_c (I_c - 1)] cos 2phi
double delta_decoherence(double r_s, double i_c, double phi);
/// Delta(0) in factored form: e^{2 r_s} + 4 I_c (I_c - 1)(e^{r_s} - 1)^2.
double delta_max(double r_s, double i_c);
/// Delta(pi/2) in factored form: e^{-2 r_s} + 4 I_c (I_c - 1)(e^{-r_s} - 1)^2.
double delta_min(double r_s, double i_c);

/// Squeezed thermal state: (Delta X(phi))^2 = 2 I_cs (I_c + I_s) + Delta(phi).
VarianceReport squeezed_variance(const spectral::SpectralIntegrals& s, double r_s, double phi);
VarianceReport squeezed_variance(double a, const spectral::WavepacketSpec& wp, double r_s,
                                 double phi, const spectral::QuadratureOptions& options = {});

/// phi_cs = int g (cosh r - sinh r): weight of the right-moving Unruh
/// combination left on the teleported mode.
double conformal_residual(double a, const spectral::WavepacketSpec& wp,
                          const spectral::QuadratureOptions& options = {});

struct ScenarioParams {
  double a = 1.0;
  spectral::WavepacketSpec wp;
  double r_s = 0.0;
  double phi = 0.0;
  /// Amplifier squeezing. Only the infinite-gain limit has closed forms.
  double channel_gain_r = std::numeric_limits<double>::infinity();
};

/// Squeezed-scenario report (which reduces to the displaced one at r_s = 0).
/// Throws std::invalid_argument for a finite channel_gain_r or r_s < 0.
VarianceReport evaluate(const ScenarioParams& params,
                        const spectral::QuadratureOptions& options = {});

// Appendix coefficient formulas. The primed integrals equal the unprimed
// ones for a real profile, so a single SpectralIntegrals-like triple is used.

struct AppendixCoefficients {
  double psi_cc = 0.0;
  double phi_cc = 0.0;
  double phibar_cc = 0.0;
  double psi_dd = 0.0;
  double phi_dd = 0.0;
  double phibar_dd = 0.0;
  double gamma_cd = 0.0;
  double cosh_rs_minus_1 = 0.0;
};

/// Coefficients for the squeezed output operators; r_s = 0 gives the
/// displaced case (psi = gamma = 0, every phi equal to I_cs).
AppendixCoefficients appendix_coefficients(double r_s, double i_c, double i_s, double i_cs);

/// Single-bin factors entering every pairwise expectation: the profile
/// weight and the Unruh cosh/sinh at each of the two frequencies.
struct BinPair {
  double g_w = 0.0;
  double g_g = 0.0;
  double cosh_w = 0.0;
  double sinh_w = 0.0;
  double cosh_g = 0.0;
  double sinh_g = 0.0;
  bool same_bin = false;  // discrete delta(omega - gamma)
};

/// Ordered pair expectations <0| x_w y_g |0> of the fluctuation operators
/// c'' and d''. Suffix "d" marks a dagger on that factor.
enum class Pairing {
  C_C, Cd_Cd, C_Cd, Cd_C,
  D_D, Dd_Dd, D_Dd, Dd_D,
  C_D, Cd_Dd, D_C, Dd_Cd,
  C_Dd, Cd_D, D_Cd, Dd_C,
};

inline constexpr Pairing kAllPairings[] = {
    Pairing::C_C,  Pairing::Cd_Cd, Pairing::C_Cd, Pairing::Cd_C,
    Pairing::D_D,  Pairing::Dd_Dd, Pairing::D_Dd, Pairing::Dd_D,
    Pairing::C_D,  Pairing::Cd_Dd, Pairing::D_C,  Pairing::Dd_Cd,
    Pairing::C_Dd, Pairing::Cd_D,  Pairing::D_Cd, Pairing::Dd_C,
};

/// The eight pairings that are nonzero for a displaced (unsqueezed) input.
inline constexpr Pairing kDisplacedPairings[] = {
    Pairing::C_Cd, Pairing::Cd_C, Pairing::D_Dd,  Pairing::Dd_D,
    Pairing::C_D,  Pairing::Cd_Dd, Pairing::D_C, Pairing::Dd_Cd,
};

const char* to_string(Pairing p);

double pairing_closed_form(Pairing p, const AppendixCoefficients& k, const BinPair& b);
/// Natural scale g_w g_g (cosh|sinh)_w (cosh|sinh)_g of a pairing.
double pairing_prefactor(Pairing p, const BinPair& b);

/// Connected photon-number correlations at unit LO amplitude |alpha| = 1,
/// i.e. the part of <n_w n_g> - <n_w><n_g> linear in |alpha|^2.
enum class Quartic { CC, DD, CD, DC };

inline constexpr Quartic kAllQuartics[] = {Quartic::CC, Quartic::DD, Quartic::CD, Quartic::DC};

const char* to_string(Quartic q);

/// The delta term carries g(w) g(g), so the double integral over
/// w and g reproduces I_c (and I_s) in the variance.
double quartic_closed_form(Quartic q, const AppendixCoefficients& k, const BinPair& b, double phi);
double quartic_prefactor(Quartic q, const BinPair& b);

// The all-optical protocol between inertial observers.

/// Auxiliary-vacuum bins used for the inertial circuit.
namespace inertial {
inline constexpr modes::ModeLabel input{modes::Sector::AuxVacuum, modes::Chirality::Left, 0};
inline constexpr modes::ModeLabel resource_i{modes::Sector::AuxVacuum, modes::Chirality::Left, 1};
inline constexpr modes::ModeLabel resource_j{modes::Sector::AuxVacuum, modes::Chirality::Left, 2};
inline constexpr modes::ModeLabel vacuum_1{modes::Sector::AuxVacuum, modes::Chirality::Left, 3};
inline constexpr modes::ModeLabel vacuum_2{modes::Sector::AuxVacuum, modes::Chirality::Left, 4};
}  // namespace inertial

/// a_out = sqrt(eta) S2^dag a_in S2 - sqrt(1 - eta) a_j with eta = cosh^{-2} r,
/// expressed over (a_in, a_i, a_j). Throws std::invalid_argument for r < 0.
OperatorExpr inertial_channel_output(double r);

/// Same circuit with the EPR resource a_i, a_j generated from vacua v1, v2
/// by two-mode squeezing r_omega. Throws std::invalid_argument for negative
/// arguments.
OperatorExpr inertial_teleport_output(double r, double r_omega);

/// Variance of X(phi) = e^{-i phi} a + e^{i phi} a^dag in the vacuum of all
/// labels in `a` (coherent displacements do not change it).
double quadrature_variance(const OperatorExpr& a, double phi);
/// <X(phi)> in the same state.
double quadrature_mean(const OperatorExpr& a, double phi);

/// 1 + 2 tanh^2 r e^{-2 r_omega}: the X variance of inertial_teleport_output.
double inertial_variance(double r, double r_omega);

}  // namespace rindler::teleport
