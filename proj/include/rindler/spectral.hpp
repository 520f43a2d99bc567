#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rindler::spectral {

/// Raised when adaptive quadrature cannot reach its tolerance within the
/// panel budget. Typically the wavepacket reaches down to omega ~ 0, where
/// cosh^2 r_omega ~ a / (2 pi omega).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kTruncationWidth = 8.0;         // window is omega0 +- 8 sigma
inline constexpr double kLowerCutoffFraction = 1e-12;   // omega_min = 1e-12 * omega0
inline constexpr double kTruncationWarnMass = 1e-6;
inline constexpr int kMinResolution = 16;
inline constexpr int kPanelOrder = 16;

/// Two-mode squeezing amplitude relating Unruh and Rindler operators,
/// r = arctanh(exp(-pi omega / a)). Throws std::domain_error unless
/// omega > 0 and a > 0.
double squeeze_param(double omega, double a);

/// cosh r and sinh r (and derived combinations) for r = squeeze_param(omega, a),
/// evaluated from x = exp(-pi omega / a) without forming r, so that
/// cosh^2 r = 1 / (1 - x^2) stays accurate when omega / a -> 0.
struct UnruhFactors {
  double x;         // tanh r
  double cosh_r;
  double sinh_r;
  double exp_mr;    // cosh r - sinh r = e^{-r}
};

UnruhFactors unruh_factors(double omega, double a);

struct QuadratureNode {
  double omega;
  double weight;
};

/// Gaussian wavepacket profile g(omega) with g^2 a normal density of width
/// sigma, truncated to [lower, upper] and renormalised so that the integral
/// of g^2 over the window is one.
struct WavepacketSpec {
  double omega0 = 0.0;
  double sigma = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// Fraction of the untruncated norm lost below `lower`.
  double truncated_mass = 0.0;
  bool truncation_warning = false;
  /// Composite Gauss-Legendre nodes on [lower, upper].
  std::vector<QuadratureNode> grid;

  double amplitude(double omega) const;
  double amplitude_squared(double omega) const;

  /// Sum of weight * g^2 * f over the stored grid.
  template <typename F>
  double grid_average(F&& f) const {
    double acc = 0.0;
    for (const auto& node : grid) {
      acc += node.weight * amplitude_squared(node.omega) * f(node.omega);
    }
    return acc;
  }

 private:
  double mass_ = 1.0;  // normal-density mass inside the window
  friend WavepacketSpec make_wavepacket(double, double, int);
};

/// Builds the truncated, renormalised Gaussian profile. `resolution` is the
/// number of grid nodes, rounded up to a multiple of kPanelOrder.
WavepacketSpec make_wavepacket(double omega0, double sigma, int resolution = 256);

struct QuadratureOptions {
  double rel_tol = 1e-10;
  int max_panels = 20000;
};

/// The frequency integrals entering the closed-form variances:
///   i_c    = int g^2 cosh^2 r
///   i_s    = int g^2 sinh^2 r
///   i_cs   = int g^2 (cosh r - sinh r)^2
///   phi_cs = int g (cosh r - sinh r)
/// The primed integrals of the appendix coincide with these because g is real.
struct SpectralIntegrals {
  double a = 0.0;
  double i_c = 0.0;
  double i_s = 0.0;
  double i_cs = 0.0;
  double phi_cs = 0.0;
  /// Largest estimated relative quadrature error over the four integrals.
  double error_estimate = 0.0;
  int panels = 0;
};

SpectralIntegrals spectral_integrals(const WavepacketSpec& wp, double a,
                                     const QuadratureOptions& options = {});

}  // namespace rindler::spectral
