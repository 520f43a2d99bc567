#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rindler/mode_algebra.hpp"
#include "rindler/spectral.hpp"
#include "rindler/teleportation.hpp"

namespace rindler::oracle {

using modes::Complex;
using modes::OperatorExpr;

inline constexpr int kMinBins = 64;
inline constexpr int kDefaultBins = 256;
/// Amplifier squeezing standing in for the infinite-gain limit; tanh(20)
/// rounds to one in double precision.
inline constexpr double kDefaultGain = 20.0;

/// Raised when the N -> 2N refinement moves the variance by more than the
/// requested tolerance, or the grid is too coarse to trust at all.
class OracleConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform midpoint bins over the wavepacket's truncated support. The
/// discrete profile weights g_i = g(omega_i) sqrt(d omega) are rescaled to
/// unit Euclidean norm.
struct FrequencyGrid {
  std::vector<double> omega;
  std::vector<double> weight;  // g_i
  double spacing = 0.0;

  std::size_t size() const { return omega.size(); }
};

/// Throws std::invalid_argument for bins < kMinBins.
FrequencyGrid make_grid(const spectral::WavepacketSpec& wp, int bins = kDefaultBins);

/// Riemann sums of the spectral integrands over the grid.
struct DiscreteIntegrals {
  double i_c = 0.0;
  double i_s = 0.0;
  double i_cs = 0.0;
  double phi_cs = 0.0;
};

DiscreteIntegrals discrete_integrals(const FrequencyGrid& grid, double a);

enum class GateKind { SingleModeSqueeze, Displace, TwoModeSqueeze, BeamSplitter };

/// One step acting on the wavepacket-projected modes, in state-time order.
struct Gate {
  GateKind kind;
  double parameter = 0.0;  // r_s, r or eta
  Complex amplitude{};     // displacement only
  std::string description;
};

struct CircuitOptions {
  double gain_r = kDefaultGain;
  /// Phase of the unit-amplitude local oscillator, alpha = e^{i lo_phase}.
  double lo_phase = 0.0;
};

struct DiscretizedCircuit {
  double a = 0.0;
  double r_s = 0.0;
  double lo_phase = 0.0;
  FrequencyGrid grid;
  std::vector<Gate> gates;

  /// b_g^IV after the circuit, in the Rindler basis.
  OperatorExpr wavepacket_out;
  /// (b_g^IV)_out - b_g^IV mapped to the Unruh basis: the part every
  /// interacting bin receives with weight g_i.
  OperatorExpr kick;
  /// cosh r and sinh r per bin.
  std::vector<double> cosh_r;
  std::vector<double> sinh_r;

  std::size_t bins() const { return grid.size(); }

  /// Left-moving output Unruh operators of bin i, built on demand so that
  /// fine grids do not hold N dense expressions in memory.
  OperatorExpr c_out(std::size_t i) const;
  OperatorExpr d_out(std::size_t i) const;

  /// Local-oscillator part of c_out(i) and d_out(i).
  Complex lo_c(std::size_t i) const;
  Complex lo_d(std::size_t i) const;
};

/// D(alpha) -> S2(IV, III; r) -> BS(IV, I; cosh^{-2} r) on b_g.
DiscretizedCircuit build_displaced_circuit(double a, const spectral::WavepacketSpec& wp,
                                           int bins = kDefaultBins,
                                           const CircuitOptions& options = {});

/// S1(r_s) -> D(alpha) -> S2 -> BS. The squeeze precedes the local
/// oscillator so that the LO itself stays coherent.
DiscretizedCircuit build_squeezed_circuit(double a, const spectral::WavepacketSpec& wp,
                                          double r_s, int bins = kDefaultBins,
                                          const CircuitOptions& options = {});

/// Local oscillator only: no squeezing, no teleportation unitaries.
DiscretizedCircuit build_zero_signal_circuit(double a, const spectral::WavepacketSpec& wp,
                                             int bins = kDefaultBins,
                                             const CircuitOptions& options = {});

/// Largest |[x, y^dag] - delta| and |[x, y]| over the output c and d
/// operators, on all bins when there are at most `full_audit_bins`, else on
/// an evenly strided subset of that many bins.
double commutator_audit(const DiscretizedCircuit& circ, std::size_t full_audit_bins = 32);

/// Self-homodyne variance: Var(N) at order |alpha|^2 over the left-moving
/// Unruh bins, normalised by <N_0> = sum |LO|^2. The thermal part is the
/// contribution of right-moving modes, the rest is QNL or decoherence.
teleport::VarianceReport photon_number_variance_lo(const DiscretizedCircuit& circ);

enum class Scenario { Displaced, Squeezed, ZeroSignal };

struct RefinedVariance {
  int bins = 0;
  teleport::VarianceReport coarse;  // N bins
  teleport::VarianceReport fine;    // 2N bins
  double relative_change = 0.0;
  bool converged = false;
};

/// Evaluates at N and 2N bins. With `throw_on_failure`, raises
/// OracleConvergenceError when the relative change exceeds `tolerance`.
RefinedVariance refined_variance(Scenario scenario, double a, const spectral::WavepacketSpec& wp,
                                 double r_s, double phi, int bins = kDefaultBins,
                                 double tolerance = 1e-3, bool throw_on_failure = false);

/// One dual-path comparison: numeric Wick evaluation vs coefficient formula.
struct ContractionCheck {
  std::string name;
  Complex numeric{};
  double closed_form = 0.0;
  double prefactor = 0.0;
  /// |numeric - closed| / max(|closed|, |prefactor|).
  double deviation = 0.0;
};

/// All pairwise identities (16 for a squeezed circuit, 8 for r_s = 0) plus
/// the four quartic photon-number correlations for bins omega_bin and
/// gamma_bin. Throws std::out_of_range for invalid bins.
std::vector<ContractionCheck> appendix_expectations(const DiscretizedCircuit& circ,
                                                    std::size_t omega_bin,
                                                    std::size_t gamma_bin);

// Truncated Fock-space brute force for the inertial protocol.

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxFockCutoff = 64;
inline constexpr double kFockLeakageTolerance = 1e-3;

struct FockOptions {
  Complex input_amplitude{0.5, 0.0};
  bool throw_on_truncation = true;
};

struct FockReport {
  double r = 0.0;
  double r_omega = 0.0;
  int cutoff = 0;
  double predicted_mean = 0.0;
  double simulated_mean = 0.0;
  double predicted_variance = 0.0;
  double simulated_variance = 0.0;
  /// max over X(0) and X(pi/2) of |simulated - predicted| for mean and variance.
  double deviation = 0.0;
  /// Largest population in the top Fock level of any mode.
  double leakage = 0.0;
};

/// Simulates the inertial circuit on three truncated modes (input and the
/// two resource vacua) and compares output quadratures with mode_algebra.
/// Throws std::invalid_argument for cutoff outside [1, kMaxFockCutoff] or
/// negative squeezing, and TruncationError when leakage exceeds
/// kFockLeakageTolerance (unless disabled in `options`).
FockReport fock_check_inertial(double r, double r_omega, int cutoff,
                               const FockOptions& options = {});

}  // namespace rindler::oracle
