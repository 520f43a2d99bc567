#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "rindler/oracle.hpp"
#include "rindler/teleportation.hpp"

namespace rindler::oracle {

namespace {

constexpr int kModes = 3;  // input, resource i, resource j
constexpr int kInput = 0;
constexpr int kResourceI = 1;
constexpr int kResourceJ = 2;

using State = std::vector<Complex>;

// coeff * prod_k (a_{mode_k}^dag if create_k else a_{mode_k}); modes distinct.
struct Monomial {
  Complex coeff;
  std::vector<std::pair<int, bool>> ladders;
};

class FockSpace {
 public:
  explicit FockSpace(int cutoff) : dim_(cutoff + 1) {
    std::size_t n = 1;
    for (int m = 0; m < kModes; ++m) {
      stride_[m] = n;
      n *= static_cast<std::size_t>(dim_);
    }
    size_ = n;
  }

  std::size_t size() const { return size_; }
  int dim() const { return dim_; }

  int level(std::size_t index, int mode) const {
    return static_cast<int>((index / stride_[mode]) % static_cast<std::size_t>(dim_));
  }

  // out += G psi for G a sum of monomials. Ladders leaving the space are
  // dropped, which keeps anti-Hermitian generators anti-Hermitian.
  void apply(const std::vector<Monomial>& gen, const State& psi, State& out) const {
    for (std::size_t idx = 0; idx < size_; ++idx) {
      const Complex amp = psi[idx];
      if (amp == Complex{}) continue;
      for (const Monomial& m : gen) {
        std::size_t target = idx;
        double factor = 1.0;
        bool inside = true;
        // Rightmost ladder acts first.
        for (auto it = m.ladders.rbegin(); it != m.ladders.rend(); ++it) {
          const int n = level(target, it->first);
          if (it->second) {
            if (n + 1 >= dim_) {
              inside = false;
              break;
            }
            factor *= std::sqrt(static_cast<double>(n + 1));
            target += stride_[it->first];
          } else {
            if (n == 0) {
              inside = false;
              break;
            }
            factor *= std::sqrt(static_cast<double>(n));
            target -= stride_[it->first];
          }
        }
        if (inside) out[target] += m.coeff * factor * amp;
      }
    }
  }

  // psi <- exp(G) psi by Taylor series on sub-steps small enough that the
  // series converges in a few dozen terms.
  void evolve(const std::vector<Monomial>& gen, State& psi) const {
    double bound = 0.0;
    for (const Monomial& m : gen) bound += std::abs(m.coeff) * std::pow(dim_, 0.5 * m.ladders.size());
    const int steps = std::max(1, static_cast<int>(std::ceil(bound / 0.5)));
    std::vector<Monomial> step_gen = gen;
    for (Monomial& m : step_gen) m.coeff /= steps;
    State term(size_);
    State next(size_);
    for (int s = 0; s < steps; ++s) {
      term = psi;
      for (int k = 1; k <= 80; ++k) {
        std::fill(next.begin(), next.end(), Complex{});
        apply(step_gen, term, next);
        double norm = 0.0;
        for (std::size_t i = 0; i < size_; ++i) {
          next[i] /= static_cast<double>(k);
          psi[i] += next[i];
          norm += std::norm(next[i]);
        }
        term.swap(next);
        if (norm < 1e-34) break;
      }
    }
  }

 private:
  int dim_;
  std::array<std::size_t, kModes> stride_{};
  std::size_t size_ = 0;
};

// exp(r (a_p^dag a_q^dag - a_p a_q)): a_p -> a_p cosh r + a_q^dag sinh r.
std::vector<Monomial> two_mode_squeezer(int p, int q, double r) {
  return {{r, {{p, true}, {q, true}}}, {-r, {{p, false}, {q, false}}}};
}

// exp(alpha a^dag - alpha^* a): a -> a + alpha.
std::vector<Monomial> displacer(int p, Complex alpha) {
  return {{alpha, {{p, true}}}, {-std::conj(alpha), {{p, false}}}};
}

// exp(-theta (a_p^dag a_q - a_p a_q^dag)): a_p -> cos(theta) a_p - sin(theta) a_q.
std::vector<Monomial> beam_splitter_gen(int p, int q, double theta) {
  return {{-theta, {{p, true}, {q, false}}}, {theta, {{p, false}, {q, true}}}};
}

struct Moments {
  Complex a;
  Complex a2;
  double n;
};

Moments input_moments(const FockSpace& space, const State& psi) {
  const std::vector<Monomial> lower{{1.0, {{kInput, false}}}};
  State a_psi(space.size());
  space.apply(lower, psi, a_psi);
  State a2_psi(space.size());
  space.apply(lower, a_psi, a2_psi);
  Moments m{{}, {}, 0.0};
  for (std::size_t i = 0; i < space.size(); ++i) {
    m.a += std::conj(psi[i]) * a_psi[i];
    m.a2 += std::conj(psi[i]) * a2_psi[i];
    m.n += std::norm(a_psi[i]);
  }
  return m;
}

}  // namespace

FockReport fock_check_inertial(double r, double r_omega, int cutoff, const FockOptions& options) {
  if (cutoff < 1 || cutoff > kMaxFockCutoff) {
    throw std::invalid_argument(
        fmt::format("Fock cutoff must lie in [1, {}] (got {})", kMaxFockCutoff, cutoff));
  }
  if (!(r >= 0.0) || !(r_omega >= 0.0)) {
    throw std::invalid_argument(
        fmt::format("squeezing must be non-negative (got r={}, r_omega={})", r, r_omega));
  }
  const FockSpace space(cutoff);
  State psi(space.size());
  psi[0] = 1.0;

  // State-time order: resource, input, amplifier, beam splitter.
  const double c = std::cosh(r);
  const double theta = std::acos(1.0 / c);  // cos^2 theta = cosh^{-2} r
  space.evolve(two_mode_squeezer(kResourceI, kResourceJ, r_omega), psi);
  space.evolve(displacer(kInput, options.input_amplitude), psi);
  space.evolve(two_mode_squeezer(kInput, kResourceI, r), psi);
  space.evolve(beam_splitter_gen(kInput, kResourceJ, theta), psi);

  FockReport report;
  report.r = r;
  report.r_omega = r_omega;
  report.cutoff = cutoff;
  for (int mode = 0; mode < kModes; ++mode) {
    double top = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (space.level(i, mode) == space.dim() - 1) top += std::norm(psi[i]);
    }
    report.leakage = std::max(report.leakage, top);
  }

  const Moments m = input_moments(space, psi);
  const OperatorExpr out = teleport::inertial_teleport_output(r, r_omega);
  OperatorExpr displaced = out;
  const Complex alpha = options.input_amplitude;
  displaced.add_displacement(out.coefficient(teleport::inertial::input, false) * alpha +
                             out.coefficient(teleport::inertial::input, true) * std::conj(alpha));

  for (double phi : {0.0, std::numbers::pi / 2}) {
    const Complex rot = std::polar(1.0, -phi);
    const double mean = 2.0 * (rot * m.a).real();
    const double second = 2.0 * (rot * rot * m.a2).real() + 2.0 * m.n + 1.0;
    const double variance = second - mean * mean;
    const double p_mean = teleport::quadrature_mean(displaced, phi);
    const double p_var = teleport::quadrature_variance(out, phi);
    if (phi == 0.0) {
      report.simulated_mean = mean;
      report.simulated_variance = variance;
      report.predicted_mean = p_mean;
      report.predicted_variance = p_var;
    }
    report.deviation =
        std::max({report.deviation, std::abs(mean - p_mean), std::abs(variance - p_var)});
  }

  if (options.throw_on_truncation && report.leakage > kFockLeakageTolerance) {
    throw TruncationError(fmt::format(
        "Fock cutoff {} too low for r={}, r_omega={}: top-level population {:.2e} exceeds {:.0e} "
        "(quadrature deviation {:.2e})",
        cutoff, r, r_omega, report.leakage, kFockLeakageTolerance, report.deviation));
  }
  return report;
}

}  // namespace rindler::oracle
