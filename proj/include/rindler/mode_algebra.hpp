#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rindler::modes {

using Complex = std::complex<double>;

enum class Sector : std::uint8_t {
  UnruhC,
  UnruhD,
  RindlerI,
  RindlerII,
  RindlerIII,
  RindlerIV,
  AuxVacuum,
};

enum class Chirality : std::uint8_t { Left, Right };

/// One discretised bosonic mode. Rindler regions follow the light-cone
/// association: II and IV hold left-movers, I and III right-movers.
struct ModeLabel {
  Sector sector = Sector::AuxVacuum;
  Chirality chirality = Chirality::Left;
  std::uint32_t bin = 0;

  friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

std::string to_string(const ModeLabel& mode);

/// True for sectors whose annihilators kill the reference vacuum.
constexpr bool is_vacuum_sector(Sector s) {
  return s == Sector::UnruhC || s == Sector::UnruhD || s == Sector::AuxVacuum;
}

constexpr bool is_rindler_sector(Sector s) { return !is_vacuum_sector(s); }

// Only underflow-level residue is dropped: wavepacket-tail products such as
// g(w) g(w') legitimately reach 1e-20 and must survive.
inline constexpr double kPruneThreshold = 1e-300;

struct Term {
  ModeLabel mode;
  bool dagger = false;
  Complex coeff;
};

/// A c-number plus a finite linear combination of mode operators. Every
/// Gaussian unitary in the teleportation circuits maps this form to itself.
///
/// Terms are kept sorted by (mode, dagger) with no coefficient of magnitude
/// below kPruneThreshold.
class OperatorExpr {
 public:
  OperatorExpr() = default;

  static OperatorExpr annihilator(const ModeLabel& mode);
  static OperatorExpr creator(const ModeLabel& mode);
  static OperatorExpr scalar(Complex value);
  /// Sorts `terms`, merges repeated (mode, dagger) keys and prunes.
  static OperatorExpr from_terms(Complex displacement, std::vector<Term> terms);

  Complex displacement() const { return displacement_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Complex coefficient(const ModeLabel& mode, bool dagger) const;

  /// Hermitian conjugate.
  OperatorExpr adjoint() const;
  /// The operator part alone (displacement dropped).
  OperatorExpr fluctuation() const;

  bool shares_mode_with(const OperatorExpr& other) const;

  /// this += scale * other
  OperatorExpr& add_scaled(const OperatorExpr& other, Complex scale);
  OperatorExpr& add_term(const ModeLabel& mode, bool dagger, Complex coeff);
  OperatorExpr& add_displacement(Complex value) {
    displacement_ += value;
    return *this;
  }

  OperatorExpr& operator+=(const OperatorExpr& other) { return add_scaled(other, 1.0); }
  OperatorExpr& operator-=(const OperatorExpr& other) { return add_scaled(other, -1.0); }
  OperatorExpr& operator*=(Complex scale);

  friend OperatorExpr operator+(OperatorExpr x, const OperatorExpr& y) { return x += y; }
  friend OperatorExpr operator-(OperatorExpr x, const OperatorExpr& y) { return x -= y; }
  friend OperatorExpr operator*(Complex s, OperatorExpr x) { return x *= s; }
  friend OperatorExpr operator*(OperatorExpr x, Complex s) { return x *= s; }
  friend OperatorExpr operator-(OperatorExpr x) { return x *= -1.0; }

 private:
  Complex displacement_{};
  std::vector<Term> terms_;
};

/// The c-number [x, y] for affine expressions. Rindler labels are canonical
/// modes in their own right, so any sector is accepted.
Complex commutator(const OperatorExpr& x, const OperatorExpr& y);

OperatorExpr displace(const OperatorExpr& expr, Complex alpha);

/// a1 -> a1 cosh r + e^{i phase} a2^dag sinh r, a2 -> a2 cosh r + e^{i phase} a1^dag sinh r.
/// Throws std::invalid_argument when a1 and a2 share a mode.
std::pair<OperatorExpr, OperatorExpr> two_mode_squeeze(const OperatorExpr& a1,
                                                       const OperatorExpr& a2, double r,
                                                       double phase = 0.0);

/// a -> a cosh r_s + a^dag sinh r_s.
OperatorExpr single_mode_squeeze(const OperatorExpr& a, double r_s);

/// a1 -> sqrt(eta) a1 - sqrt(1 - eta) a2, a2 -> sqrt(1 - eta) a1 + sqrt(eta) a2.
/// Throws std::invalid_argument for eta outside [0, 1] or shared modes.
std::pair<OperatorExpr, OperatorExpr> beam_splitter(const OperatorExpr& a1,
                                                    const OperatorExpr& a2, double eta);

/// <0| x y |0> for the operator parts of x and y (displacements ignored).
/// Every label must belong to a vacuum sector.
Complex contraction(const OperatorExpr& x, const OperatorExpr& y);

/// Vacuum expectation of an ordered product via Wick's theorem, with the
/// displacement of each factor carried exactly. Throws std::invalid_argument
/// for Rindler labels: map them with rindler_to_unruh first.
Complex wick_expectation(std::span<const OperatorExpr> product);

/// Replaces every Rindler label by its two-mode-squeezed Unruh combination,
///   IV  -> cosh r c_l + sinh r d_l^dag     II  -> cosh r d_l + sinh r c_l^dag
///   III -> cosh r c_r + sinh r d_r^dag     I   -> cosh r d_r + sinh r c_r^dag
/// with r = squeeze_param(bin_frequencies[bin], a). Vacuum-sector labels pass
/// through unchanged.
OperatorExpr rindler_to_unruh(const OperatorExpr& expr, double a,
                              std::span<const double> bin_frequencies);

}  // namespace rindler::modes
