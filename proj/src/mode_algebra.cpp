#include "rindler/mode_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "rindler/spectral.hpp"

namespace rindler::modes {

namespace {

bool key_less(const Term& x, const Term& y) {
  if (x.mode != y.mode) return x.mode < y.mode;
  return x.dagger < y.dagger;
}

bool same_key(const Term& x, const Term& y) { return x.mode == y.mode && x.dagger == y.dagger; }

bool negligible(Complex c) { return std::abs(c) < kPruneThreshold; }

const char* sector_name(Sector s) {
  switch (s) {
    case Sector::UnruhC: return "c";
    case Sector::UnruhD: return "d";
    case Sector::RindlerI: return "bI";
    case Sector::RindlerII: return "bII";
    case Sector::RindlerIII: return "bIII";
    case Sector::RindlerIV: return "bIV";
    case Sector::AuxVacuum: return "v";
  }
  return "?";
}

void require_vacuum_labels(const OperatorExpr& x) {
  for (const Term& t : x.terms()) {
    if (!is_vacuum_sector(t.mode.sector)) {
      throw std::invalid_argument(fmt::format(
          "vacuum expectation over Rindler mode {}: map to the Unruh basis first",
          to_string(t.mode)));
    }
  }
}

Complex expect(std::vector<const OperatorExpr*>& factors, std::size_t begin,
               std::vector<bool>& used) {
  std::size_t first = begin;
  while (first < factors.size() && used[first]) ++first;
  if (first == factors.size()) return 1.0;
  used[first] = true;
  // (s + f) R  ->  s <R> + sum_j <f x_j> <R \ x_j>
  Complex result = factors[first]->displacement() * expect(factors, first + 1, used);
  for (std::size_t j = first + 1; j < factors.size(); ++j) {
    if (used[j]) continue;
    const Complex c = contraction(*factors[first], *factors[j]);
    if (c == Complex{}) continue;
    used[j] = true;
    result += c * expect(factors, first + 1, used);
    used[j] = false;
  }
  used[first] = false;
  return result;
}

}  // namespace

std::string to_string(const ModeLabel& mode) {
  return fmt::format("{}_{}[{}]", sector_name(mode.sector),
                     mode.chirality == Chirality::Left ? 'l' : 'r', mode.bin);
}

OperatorExpr OperatorExpr::annihilator(const ModeLabel& mode) {
  OperatorExpr e;
  e.terms_.push_back({mode, false, 1.0});
  return e;
}

OperatorExpr OperatorExpr::creator(const ModeLabel& mode) {
  OperatorExpr e;
  e.terms_.push_back({mode, true, 1.0});
  return e;
}

OperatorExpr OperatorExpr::scalar(Complex value) {
  OperatorExpr e;
  e.displacement_ = value;
  return e;
}

OperatorExpr OperatorExpr::from_terms(Complex displacement, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), key_less);
  OperatorExpr e;
  e.displacement_ = displacement;
  e.terms_.reserve(terms.size());
  for (std::size_t k = 0; k < terms.size();) {
    Term merged = terms[k++];
    while (k < terms.size() && same_key(terms[k], merged)) merged.coeff += terms[k++].coeff;
    if (!negligible(merged.coeff)) e.terms_.push_back(merged);
  }
  return e;
}

Complex OperatorExpr::coefficient(const ModeLabel& mode, bool dagger) const {
  const Term probe{mode, dagger, {}};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, key_less);
  if (it != terms_.end() && same_key(*it, probe)) return it->coeff;
  return {};
}

OperatorExpr OperatorExpr::adjoint() const {
  OperatorExpr out;
  out.displacement_ = std::conj(displacement_);
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) out.terms_.push_back({t.mode, !t.dagger, std::conj(t.coeff)});
  // Flipping dagger swaps the order only within a (mode, *) pair.
  std::sort(out.terms_.begin(), out.terms_.end(), key_less);
  return out;
}

OperatorExpr OperatorExpr::fluctuation() const {
  OperatorExpr out = *this;
  out.displacement_ = {};
  return out;
}

bool OperatorExpr::shares_mode_with(const OperatorExpr& other) const {
  auto i = terms_.begin();
  auto j = other.terms_.begin();
  while (i != terms_.end() && j != other.terms_.end()) {
    if (i->mode == j->mode) return true;
    if (i->mode < j->mode) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

OperatorExpr& OperatorExpr::add_scaled(const OperatorExpr& other, Complex scale) {
  displacement_ += scale * other.displacement_;
  if (other.terms_.empty() || scale == Complex{}) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto i = terms_.begin();
  auto j = other.terms_.begin();
  while (i != terms_.end() || j != other.terms_.end()) {
    Term next;
    if (j == other.terms_.end() || (i != terms_.end() && key_less(*i, *j))) {
      next = *i++;
    } else if (i == terms_.end() || key_less(*j, *i)) {
      next = {j->mode, j->dagger, scale * j->coeff};
      ++j;
    } else {
      next = {i->mode, i->dagger, i->coeff + scale * j->coeff};
      ++i;
      ++j;
    }
    if (!negligible(next.coeff)) merged.push_back(next);
  }
  terms_ = std::move(merged);
  return *this;
}

OperatorExpr& OperatorExpr::add_term(const ModeLabel& mode, bool dagger, Complex coeff) {
  const Term probe{mode, dagger, coeff};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, key_less);
  if (it != terms_.end() && same_key(*it, probe)) {
    it->coeff += coeff;
    if (negligible(it->coeff)) terms_.erase(it);
  } else if (!negligible(coeff)) {
    terms_.insert(it, probe);
  }
  return *this;
}

OperatorExpr& OperatorExpr::operator*=(Complex scale) {
  displacement_ *= scale;
  for (Term& t : terms_) t.coeff *= scale;
  std::erase_if(terms_, [](const Term& t) { return negligible(t.coeff); });
  return *this;
}

Complex commutator(const OperatorExpr& x, const OperatorExpr& y) {
  // [a_m, a_m^dag] = 1 is the only non-vanishing elementary commutator.
  Complex acc{};
  auto xs = x.terms();
  auto ys = y.terms();
  auto i = xs.begin();
  auto j = ys.begin();
  while (i != xs.end() && j != ys.end()) {
    if (i->mode < j->mode) {
      ++i;
    } else if (j->mode < i->mode) {
      ++j;
    } else {
      const ModeLabel m = i->mode;
      Complex x_ann{}, x_cre{}, y_ann{}, y_cre{};
      for (; i != xs.end() && i->mode == m; ++i) (i->dagger ? x_cre : x_ann) = i->coeff;
      for (; j != ys.end() && j->mode == m; ++j) (j->dagger ? y_cre : y_ann) = j->coeff;
      acc += x_ann * y_cre - x_cre * y_ann;
    }
  }
  return acc;
}

OperatorExpr displace(const OperatorExpr& expr, Complex alpha) {
  OperatorExpr out = expr;
  out.add_displacement(alpha);
  return out;
}

std::pair<OperatorExpr, OperatorExpr> two_mode_squeeze(const OperatorExpr& a1,
                                                       const OperatorExpr& a2, double r,
                                                       double phase) {
  if (a1.shares_mode_with(a2)) {
    throw std::invalid_argument("two_mode_squeeze needs two independent modes");
  }
  const Complex s = std::polar(std::sinh(r), phase);
  const double c = std::cosh(r);
  OperatorExpr out1 = c * a1;
  out1.add_scaled(a2.adjoint(), s);
  OperatorExpr out2 = c * a2;
  out2.add_scaled(a1.adjoint(), s);
  return {std::move(out1), std::move(out2)};
}

OperatorExpr single_mode_squeeze(const OperatorExpr& a, double r_s) {
  OperatorExpr out = std::cosh(r_s) * a;
  out.add_scaled(a.adjoint(), std::sinh(r_s));
  return out;
}

std::pair<OperatorExpr, OperatorExpr> beam_splitter(const OperatorExpr& a1,
                                                    const OperatorExpr& a2, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument(fmt::format("beam splitter eta must lie in [0, 1] (got {})", eta));
  }
  if (a1.shares_mode_with(a2)) {
    throw std::invalid_argument("beam_splitter needs two independent modes");
  }
  const double t = std::sqrt(eta);
  const double rho = std::sqrt(1.0 - eta);
  OperatorExpr out1 = t * a1;
  out1.add_scaled(a2, -rho);
  OperatorExpr out2 = rho * a1;
  out2.add_scaled(a2, t);
  return {std::move(out1), std::move(out2)};
}

Complex contraction(const OperatorExpr& x, const OperatorExpr& y) {
  // <0| a_m a_n^dag |0> = delta_mn; every other ordered pair vanishes.
  Complex acc{};
  auto xs = x.terms();
  auto ys = y.terms();
  auto i = xs.begin();
  auto j = ys.begin();
  while (i != xs.end() && j != ys.end()) {
    if (i->mode < j->mode) {
      ++i;
    } else if (j->mode < i->mode) {
      ++j;
    } else {
      const ModeLabel m = i->mode;
      Complex x_ann{}, y_cre{};
      for (; i != xs.end() && i->mode == m; ++i) {
        if (!i->dagger) x_ann = i->coeff;
      }
      for (; j != ys.end() && j->mode == m; ++j) {
        if (j->dagger) y_cre = j->coeff;
      }
      acc += x_ann * y_cre;
    }
  }
  return acc;
}

Complex wick_expectation(std::span<const OperatorExpr> product) {
  std::vector<const OperatorExpr*> factors;
  factors.reserve(product.size());
  for (const OperatorExpr& x : product) {
    require_vacuum_labels(x);
    factors.push_back(&x);
  }
  std::vector<bool> used(factors.size(), false);
  return expect(factors, 0, used);
}

OperatorExpr rindler_to_unruh(const OperatorExpr& expr, double a,
                              std::span<const double> bin_frequencies) {
  std::vector<Term> out;
  out.reserve(2 * expr.size());
  for (const Term& t : expr.terms()) {
    if (is_vacuum_sector(t.mode.sector)) {
      out.push_back(t);
      continue;
    }
    Sector primary = Sector::UnruhC;
    Sector partner = Sector::UnruhD;
    Chirality expected = Chirality::Left;
    switch (t.mode.sector) {
      case Sector::RindlerIV: break;
      case Sector::RindlerII: std::swap(primary, partner); break;
      case Sector::RindlerIII: expected = Chirality::Right; break;
      case Sector::RindlerI:
        std::swap(primary, partner);
        expected = Chirality::Right;
        break;
      default: break;
    }
    if (t.mode.chirality != expected) {
      throw std::invalid_argument(
          fmt::format("no Unruh pairing for {}: wrong chirality for its region", to_string(t.mode)));
    }
    if (t.mode.bin >= bin_frequencies.size()) {
      throw std::invalid_argument(
          fmt::format("{} lies outside the {}-bin grid", to_string(t.mode), bin_frequencies.size()));
    }
    const auto f = spectral::unruh_factors(bin_frequencies[t.mode.bin], a);
    // b = C p + S q^dag, so b^dag = C p^dag + S q.
    const ModeLabel p{primary, t.mode.chirality, t.mode.bin};
    const ModeLabel q{partner, t.mode.chirality, t.mode.bin};
    out.push_back({p, t.dagger, f.cosh_r * t.coeff});
    out.push_back({q, !t.dagger, f.sinh_r * t.coeff});
  }
  return OperatorExpr::from_terms(expr.displacement(), std::move(out));
}

}  // namespace rindler::modes
