#pragma once

#include <string>

#include "bieber/errors.hpp"
#include "bieber/spectrum.hpp"
#include "bieber/spin.hpp"

namespace bieber {

// How a Bieberbach spectrum is obtained from its covering torus spectrum:
//   prefactor * ( Sp3 \ 2*removed ) U 2*added      when has_surgery,
//   prefactor * Sp3                                otherwise.
// The removed circle operator always carries the torus's own eps1 shift, so
// the subtraction cancels exactly the k-axis lattice points.
struct CaseDecomposition {
  int n{1};                 // covering degree (group order)
  Angle phi;                // torus modulus
  bool has_surgery{false};  // circle subtraction/union present
  CircleDirac removed{Rational(1), Rational(0)};
  CircleDirac added{Rational(1), Rational(0)};

  Rational prefactor() const { return Rational(1, n); }
};

inline CaseDecomposition decompose(ManifoldId m, const SpinStructure& s) {
  if (m == ManifoldId::T3)
    throw Error("InvalidManifold", "T3 has no quotient decomposition");
  if (!is_admissible(m, s))
    throw InadmissibleSpin("spin " + s.str() + " not admissible for " +
                           manifold_name(m));
  const Rational h(1, 2);
  CaseDecomposition c;
  c.n = group_order(m);
  switch (m) {
    case ManifoldId::G2:
      c.phi = Angle::pi_over_2();
      if (s.eps2 == Rational(0) && s.eps3 == Rational(0)) {
        c.has_surgery = true;
        c.removed = {Rational(1), h};
        c.added = {Rational(2), h - Rational(s.delta)};
      }
      break;
    case ManifoldId::G3:
      c.phi = Angle::two_pi_over_3();
      c.has_surgery = true;
      if (s.eps1 == h) {
        c.removed = {Rational(1), h};
        c.added = {Rational(3), h};
      } else {
        c.removed = {Rational(1), Rational(0)};
        c.added = {Rational(3), Rational(-1)};
      }
      break;
    case ManifoldId::G4:
      c.phi = Angle::pi_over_4();
      if (s.eps2 == Rational(0) && s.eps3 == Rational(0)) {
        c.has_surgery = true;
        c.removed = {Rational(1), h};
        c.added = {Rational(4), Rational(3, 2) - Rational(s.delta)};
      }
      break;
    case ManifoldId::G5:
      c.phi = Angle::two_pi_over_3();
      c.has_surgery = true;
      c.removed = {Rational(1), h};
      c.added = {Rational(6), s.delta > 0 ? h : Rational(7, 2)};
      break;
    case ManifoldId::G6:
      c.phi = Angle::pi_over_2();
      break;
    default:
      break;
  }
  return c;
}

// The added circle spectrum Sp1_{alpha,beta} is a symmetric multiset exactly
// when beta reduces to 0 or alpha/2 mod alpha.
inline bool circle_spectrum_symmetric(const CircleDirac& d) {
  Rational q = d.beta / d.alpha;
  Rational frac = q - Rational(q.floor());
  return frac == Rational(0) || frac == Rational(1, 2);
}

// True when the manifold/spin case produces a spectrum with nonzero
// spectral asymmetry.
inline bool case_is_asymmetric(ManifoldId m, const SpinStructure& s) {
  if (m == ManifoldId::T3) return false;
  CaseDecomposition c = decompose(m, s);
  return c.has_surgery && !circle_spectrum_symmetric(c.added);
}

inline WeightedSpectrum bieberbach_spectrum(ManifoldId m,
                                            const SpinStructure& s,
                                            const Rational& lambda_max) {
  CaseDecomposition c = decompose(m, s);
  WeightedSpectrum torus = torus_eigenvalues({c.phi, s}, lambda_max);
  WeightedSpectrum out;
  if (c.has_surgery) {
    WeightedSpectrum rem =
        scale_multiplicity(circle_eigenvalues(c.removed, lambda_max), Rational(2));
    WeightedSpectrum add =
        scale_multiplicity(circle_eigenvalues(c.added, lambda_max), Rational(2));
    out = union_spectrum(
        scale_multiplicity(subtract_spectrum(torus, rem), c.prefactor()), add);
  } else {
    out = scale_multiplicity(torus, c.prefactor());
  }
  out.descriptor = "Sp(" + manifold_name(m) + ",eps=(" + s.eps1.str() + "," +
                   s.eps2.str() + "," + s.eps3.str() + ")" +
                   (s.delta ? (s.delta > 0 ? ",delta=+1" : ",delta=-1") : "") +
                   ")";
  return out;
}

}  // namespace bieber
