#include "rindler/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

namespace rindler::spectral {

namespace {

template <int N>
std::vector<std::pair<double, double>> legendre_rule() {
  using Rule = boost::math::quadrature::gauss<double, N>;
  std::vector<std::pair<double, double>> nodes;
  const auto& xs = Rule::abscissa();
  const auto& ws = Rule::weights();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] == 0.0) {
      nodes.emplace_back(0.0, ws[k]);
    } else {
      nodes.emplace_back(-xs[k], ws[k]);
      nodes.emplace_back(xs[k], ws[k]);
    }
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

constexpr int kAdaptiveOrder = 20;
using Values = std::array<double, 4>;

struct Panel {
  double lo;
  double hi;
  Values value;     // two-half estimate
  Values error;     // component-wise |coarse - fine|
  double priority;  // largest error relative to the running scale
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const { return x.priority < y.priority; }
};

}  // namespace

double squeeze_param(double omega, double a) {
  if (!(omega > 0.0) || !(a > 0.0)) {
    throw std::domain_error(
        fmt::format("squeeze_param requires omega > 0 and a > 0 (got omega={}, a={})", omega, a));
  }
  const double t = std::numbers::pi * omega / a;
  const double x = std::exp(-t);
  if (x < 0.5) return std::atanh(x);
  // arctanh x = 0.5 log((1 + x) / (1 - x)) with 1 - x = -expm1(-t).
  return 0.5 * std::log((1.0 + x) / -std::expm1(-t));
}

UnruhFactors unruh_factors(double omega, double a) {
  if (!(omega > 0.0) || !(a > 0.0)) {
    throw std::domain_error(
        fmt::format("unruh_factors requires omega > 0 and a > 0 (got omega={}, a={})", omega, a));
  }
  const double t = std::numbers::pi * omega / a;
  const double x = std::exp(-t);
  const double one_minus_x = -std::expm1(-t);
  const double one_plus_x = 1.0 + x;
  const double root = std::sqrt(one_minus_x * one_plus_x);
  UnruhFactors f;
  f.x = x;
  f.cosh_r = 1.0 / root;
  f.sinh_r = x / root;
  f.exp_mr = std::sqrt(one_minus_x / one_plus_x);
  return f;
}

double WavepacketSpec::amplitude_squared(double omega) const {
  if (omega < lower || omega > upper) return 0.0;
  const double z = (omega - omega0) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi) * mass_);
}

double WavepacketSpec::amplitude(double omega) const { return std::sqrt(amplitude_squared(omega)); }

WavepacketSpec make_wavepacket(double omega0, double sigma, int resolution) {
  if (!(omega0 > 0.0) || !(sigma > 0.0) || !std::isfinite(omega0) || !std::isfinite(sigma)) {
    throw std::invalid_argument(
        fmt::format("wavepacket needs omega0 > 0 and sigma > 0 (got {}, {})", omega0, sigma));
  }
  if (resolution < kMinResolution) {
    throw std::invalid_argument(
        fmt::format("wavepacket resolution must be at least {} nodes (got {})", kMinResolution,
                    resolution));
  }
  WavepacketSpec wp;
  wp.omega0 = omega0;
  wp.sigma = sigma;
  wp.lower = std::max(kLowerCutoffFraction * omega0, omega0 - kTruncationWidth * sigma);
  wp.upper = omega0 + kTruncationWidth * sigma;
  const double z_lo = (wp.lower - omega0) / sigma;
  const double z_hi = (wp.upper - omega0) / sigma;
  wp.truncated_mass = normal_cdf(z_lo);
  wp.truncation_warning = wp.truncated_mass > kTruncationWarnMass;
  wp.mass_ = normal_cdf(z_hi) - normal_cdf(z_lo);

  static const auto rule = legendre_rule<kPanelOrder>();
  const int panels = (resolution + kPanelOrder - 1) / kPanelOrder;
  const double width = (wp.upper - wp.lower) / panels;
  wp.grid.reserve(static_cast<std::size_t>(panels) * kPanelOrder);
  for (int p = 0; p < panels; ++p) {
    const double lo = wp.lower + p * width;
    const double mid = lo + 0.5 * width;
    for (const auto& [x, w] : rule) {
      wp.grid.push_back({mid + 0.5 * width * x, 0.5 * width * w});
    }
  }
  return wp;
}

SpectralIntegrals spectral_integrals(const WavepacketSpec& wp, double a,
                                     const QuadratureOptions& options) {
  if (!(a > 0.0)) {
    throw std::domain_error(fmt::format("acceleration must be positive (got {})", a));
  }
  if (wp.grid.empty() || !(wp.upper > wp.lower)) {
    throw std::invalid_argument("spectral_integrals needs a wavepacket from make_wavepacket");
  }
  static const auto rule = legendre_rule<kAdaptiveOrder>();

  auto integrand = [&](double omega) {
    const UnruhFactors f = unruh_factors(omega, a);
    const double g2 = wp.amplitude_squared(omega);
    return Values{g2 * f.cosh_r * f.cosh_r, g2 * f.sinh_r * f.sinh_r, g2 * f.exp_mr * f.exp_mr,
                  std::sqrt(g2) * f.exp_mr};
  };
  auto gauss = [&](double lo, double hi) {
    Values acc{};
    const double half = 0.5 * (hi - lo);
    const double mid = lo + half;
    for (const auto& [x, w] : rule) {
      const Values v = integrand(mid + half * x);
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += half * w * v[k];
    }
    return acc;
  };
  Values scale{};
  auto make_panel = [&](double lo, double hi, const Values& coarse) {
    const double mid = 0.5 * (lo + hi);
    const Values left = gauss(lo, mid);
    const Values right = gauss(mid, hi);
    Panel p{lo, hi, {}, {}, 0.0};
    for (std::size_t k = 0; k < p.value.size(); ++k) {
      p.value[k] = left[k] + right[k];
      p.error[k] = std::abs(p.value[k] - coarse[k]);
      p.priority = std::max(p.priority, p.error[k] / std::max(scale[k], 1e-300));
    }
    return p;
  };

  // Start from panels two sigma wide so the Gaussian core is resolved before
  // the error budget is spent elsewhere.
  const int initial = 8;
  const double width = (wp.upper - wp.lower) / initial;
  std::vector<std::pair<double, double>> spans;
  for (int i = 0; i < initial; ++i) {
    const double lo = wp.lower + i * width;
    spans.emplace_back(lo, (i + 1 == initial) ? wp.upper : lo + width);
  }
  for (const auto& [lo, hi] : spans) {
    const Values v = gauss(lo, hi);
    for (std::size_t k = 0; k < scale.size(); ++k) scale[k] += std::abs(v[k]);
  }
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  for (const auto& [lo, hi] : spans) queue.push(make_panel(lo, hi, gauss(lo, hi)));

  auto converged = [&](const Values& total, const Values& err) {
    for (std::size_t k = 0; k < total.size(); ++k) {
      if (err[k] > options.rel_tol * std::abs(total[k]) && err[k] > 1e-300) return false;
    }
    return true;
  };

  Values total{};
  Values err{};
  auto account = [&](const Panel& p, double sign) {
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += sign * p.value[k];
    for (std::size_t k = 0; k < err.size(); ++k) err[k] += sign * p.error[k];
  };
  {
    auto copy = queue;
    for (; !copy.empty(); copy.pop()) account(copy.top(), 1.0);
  }

  int panels = initial;
  for (;;) {
    if (converged(total, err)) {
      // Re-sum exactly; the running totals carry cancellation noise.
      Values exact{};
      Values exact_err{};
      for (; !queue.empty(); queue.pop()) {
        for (std::size_t k = 0; k < exact.size(); ++k) exact[k] += queue.top().value[k];
        for (std::size_t k = 0; k < exact.size(); ++k) exact_err[k] += queue.top().error[k];
      }
      SpectralIntegrals out;
      out.a = a;
      out.i_c = exact[0];
      out.i_s = exact[1];
      out.i_cs = exact[2];
      out.phi_cs = exact[3];
      for (std::size_t k = 0; k < exact.size(); ++k) {
        if (exact[k] > 0.0) {
          out.error_estimate = std::max(out.error_estimate, exact_err[k] / exact[k]);
        }
      }
      out.panels = panels;
      return out;
    }
    if (panels >= options.max_panels) {
      throw ConvergenceError(fmt::format(
          "spectral integrals did not converge for a={} (omega0={}, sigma={}) within {} panels; "
          "the integrand near omega=0 is unresolved{}",
          a, wp.omega0, wp.sigma, options.max_panels,
          wp.truncation_warning ? " (wavepacket carries a truncation warning)" : ""));
    }
    const Panel worst = queue.top();
    queue.pop();
    account(worst, -1.0);
    const double mid = 0.5 * (worst.lo + worst.hi);
    for (const auto& [lo, hi] : {std::pair{worst.lo, mid}, std::pair{mid, worst.hi}}) {
      Panel p = make_panel(lo, hi, gauss(lo, hi));
      account(p, 1.0);
      queue.push(std::move(p));
    }
    ++panels;
  }
}

}  // namespace rindler::spectral
