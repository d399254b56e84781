#pragma once

#include <cmath>
#include <string>

#include "bieber/bieberbach.hpp"
#include "bieber/cutoff.hpp"
#include "bieber/errors.hpp"
#include "bieber/spectrum.hpp"

namespace bieber {

struct ActionValue {
  double value{0};
  double lambda{0};
  std::string spectrum_descriptor;
};

namespace detail {

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum{0}, comp{0};
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double result() const { return sum + comp; }
};

// Visit entries in ascending |lambda|, negative sign before positive at equal
// magnitude. Entries are stored ascending by eigenvalue, so this walks
// outward from the smallest magnitude with two cursors.
template <typename Visitor>
void visit_by_magnitude(const WeightedSpectrum& s, Visitor&& visit) {
  const auto& e = s.entries;
  std::ptrdiff_t n = static_cast<std::ptrdiff_t>(e.size());
  std::ptrdiff_t pos = 0;
  while (pos < n && e[pos].key.sgn < 0) ++pos;
  std::ptrdiff_t i = pos - 1;  // negatives, outward
  std::ptrdiff_t j = pos;      // zero + positives, outward
  while (i >= 0 || j < n) {
    bool take_neg;
    if (i < 0)
      take_neg = false;
    else if (j >= n)
      take_neg = true;
    else {
      int c = (e[i].key.lambda_sq - e[j].key.lambda_sq).sign();
      take_neg = c <= 0;  // tie: negative sign first
    }
    if (take_neg)
      visit(e[i--]);
    else
      visit(e[j++]);
  }
}

}  // namespace detail

// Sum of mult * f(lambda / Lambda) over the truncated spectrum, accumulated
// in a fixed order (ascending |lambda|, negative before positive) with
// compensated summation.
//
// Tail policy: the spectrum must reach at least tail_factor * Lambda. With
// the default factor 12 the discarded tail is bounded by exp(-144) per entry
// for the gaussian kind and exp(-12) for the exponential kinds; callers that
// need tighter exponential tails pass a larger factor. A tabulated cutoff
// with support inside lambda_max / Lambda is always safe.
inline ActionValue truncated_action(const WeightedSpectrum& s,
                                    const CutoffFunction& f, double lambda,
                                    double tail_factor = 12.0) {
  if (!(lambda > 0)) throw Error("NonpositiveLambda", "need Lambda > 0");
  const double reach = s.lambda_max.to_double() / lambda;
  const double needed = std::min(tail_factor, f.support_radius());
  if (reach < needed - 1e-9)
    throw TruncationTooTight(
        "spectrum reaches |lambda|/Lambda = " + std::to_string(reach) +
        ", need " + std::to_string(needed));
  detail::CompensatedSum acc;
  detail::visit_by_magnitude(s, [&](const SpectrumEntry& e) {
    acc.add(e.mult.to_double() * f(e.key.eigenvalue() / lambda));
  });
  return {acc.result(), lambda, s.descriptor};
}

// Poisson leading term of the torus action:
//   (8 pi / sin phi) Lambda^3 * integral_0^inf f_e(rho) rho^2 drho.
// Derivation: the trace is 2 sum_points f_e(lambda/Lambda); Poisson summation
// replaces the lattice sum by Lambda^3 / sin(phi) times the R^3 integral of
// f_e(|x|), which is 4 pi times the radial moment.
inline ActionValue torus_leading_term(const Angle& phi, const CutoffFunction& f,
                                      double lambda) {
  if (!(lambda > 0)) throw Error("NonpositiveLambda", "need Lambda > 0");
  double m2 = f.radial2_moment();
  double v = 8.0 * M_PI / phi.sin_value() * lambda * lambda * lambda * m2;
  return {v, lambda, "leading(Sp3,phi=" + phi.name + ")"};
}

// Leading term of the circle action: (1/alpha) Lambda * integral_R f_e.
// The odd part contributes no Lambda-order term.
inline ActionValue circle_leading_term(const CircleDirac& d,
                                       const CutoffFunction& f, double lambda) {
  if (!(lambda > 0)) throw Error("NonpositiveLambda", "need Lambda > 0");
  double v = lambda * f.line_moment() / d.alpha.to_double();
  return {v, lambda, "leading(" + d.str() + ")"};
}

// S(G_x, Lambda) - (1/n) S(T^3, Lambda), evaluated through the exact circle
// decomposition of the spectra rather than by cancelling two large sums:
//   2 sum_{Sp1_{n,beta'}} f(./Lambda) - (2/n) sum_{Sp1_{1,beta}} f(./Lambda).
// Cases without circle surgery have identical rescaled spectra and return
// exact zero.
inline ActionValue action_difference(ManifoldId m, const SpinStructure& s,
                                     const CutoffFunction& f, double lambda,
                                     const Rational& lambda_max,
                                     double tail_factor = 12.0) {
  if (m == ManifoldId::T3)
    throw Error("InvalidManifold", "action_difference needs a quotient");
  CaseDecomposition c = decompose(m, s);
  std::string desc = "S(" + manifold_name(m) + s.str() + ") - (1/" +
                     std::to_string(c.n) + ")S(T3)";
  if (!c.has_surgery) return {0.0, lambda, desc};
  ActionValue added = truncated_action(circle_eigenvalues(c.added, lambda_max),
                                       f, lambda, tail_factor);
  ActionValue removed = truncated_action(
      circle_eigenvalues(c.removed, lambda_max), f, lambda, tail_factor);
  double v = 2.0 * added.value - 2.0 / c.n * removed.value;
  return {v, lambda, desc};
}

}  // namespace bieber
