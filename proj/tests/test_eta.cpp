#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bieber/eta.hpp"

using namespace bieber;

namespace {
const Rational h(1, 2);
const Rational z(0);

// Brute-force series oracles over a wide index window.
double series_heat(double alpha, double beta, double p) {
  double s = 0;
  for (long k = -4000; k <= 4000; ++k)
    s += std::exp(-p * std::abs(alpha * k + beta));
  return s;
}

double series_sign_heat(double alpha, double beta, double p) {
  double s = 0;
  for (long k = -4000; k <= 4000; ++k) {
    double v = alpha * k + beta;
    if (v != 0) s += (v > 0 ? 1.0 : -1.0) * std::exp(-p * std::abs(v));
  }
  return s;
}

std::vector<CircleDirac> case_table_circles() {
  return {{Rational(1), h},        {Rational(1), z},
          {Rational(2), Rational(-1, 2)}, {Rational(2), Rational(3, 2)},
          {Rational(3), h},        {Rational(3), Rational(-1)},
          {Rational(4), h},        {Rational(4), Rational(5, 2)},
          {Rational(6), h},        {Rational(6), Rational(7, 2)}};
}
}  // namespace

TEST_CASE("beta canonicalization") {
  CHECK(canonicalize_beta(Rational(2), Rational(3, 2)) == Rational(-1, 2));
  CHECK(canonicalize_beta(Rational(2), Rational(1)) == Rational(1));
  CHECK(canonicalize_beta(Rational(2), Rational(-1)) == Rational(1));
  CHECK(canonicalize_beta(Rational(6), Rational(7, 2)) == Rational(-5, 2));
  CHECK(canonicalize_beta(Rational(1), Rational(17, 2)) == Rational(1, 2));
  CHECK(canonicalize_beta(Rational(3), Rational(-1)) == Rational(-1));
}

TEST_CASE("exact circle eta values") {
  CHECK(eta_circle({Rational(1), h}) == z);
  CHECK(eta_circle({Rational(1), z}) == z);
  CHECK(eta_circle({Rational(2), Rational(-1, 2)}) == Rational(-1, 2));
  CHECK(eta_circle({Rational(2), Rational(3, 2)}) == Rational(-1, 2));
  CHECK(eta_circle({Rational(3), h}) == Rational(2, 3));
  CHECK(eta_circle({Rational(3), Rational(-1)}) == Rational(-1, 3));
  CHECK(eta_circle({Rational(4), h}) == Rational(3, 4));
  CHECK(eta_circle({Rational(4), Rational(5, 2)}) == Rational(-1, 4));
  CHECK(eta_circle({Rational(6), h}) == Rational(5, 6));
  CHECK(eta_circle({Rational(6), Rational(7, 2)}) == Rational(-1, 6));
}

TEST_CASE("eta formula equals the zeta-function oracle on random inputs") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 6), aden(1, 4);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 200; ++i) {
    Rational alpha(std::abs(num(rng)) + 1, aden(rng));
    Rational beta(num(rng), den(rng));
    CircleDirac d{alpha, beta};
    CHECK(eta_circle(d) == eta_hurwitz_oracle(d));
    ++checked;
  }
  CHECK(checked == 200);
  for (const auto& d : case_table_circles())
    CHECK(eta_circle(d) == eta_hurwitz_oracle(d));
}

TEST_CASE("closed-form traces match series summation") {
  for (const auto& d : case_table_circles()) {
    double a = d.alpha.to_double(), b = d.beta.to_double();
    for (double p : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      double ht = heat_trace_circle(d, p);
      CHECK(ht == doctest::Approx(series_heat(a, b, p)).epsilon(1e-12));
      double st = sign_heat_trace_circle(d, p);
      double ref = series_sign_heat(a, b, p);
      CHECK(st == doctest::Approx(ref).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(heat_trace_circle({Rational(1), z}, 0.0), NonpositiveP);
  CHECK_THROWS_AS(sign_heat_trace_circle({Rational(1), z}, -1.0), NonpositiveP);
}

TEST_CASE("small-p limits of the traces") {
  for (const auto& d : case_table_circles()) {
    const double p = 1e-3;
    double a = d.alpha.to_double();
    CHECK(std::abs(p * heat_trace_circle(d, p) - 2.0 / a) < 1e-3);
    CHECK(std::abs(sign_heat_trace_circle(d, p) -
                   eta_circle(d).to_double()) < 1e-3);
  }
}

TEST_CASE("sign trace of a truncated spectrum matches the closed form") {
  CircleDirac d{Rational(3), h};
  auto sp = circle_eigenvalues(d, Rational(200));
  for (double t : {0.3, 0.5, 1.0})
    CHECK(sign_trace_spectrum(sp, t) ==
          doctest::Approx(sign_heat_trace_circle(d, t)).epsilon(1e-12));
}

TEST_CASE("extrapolation fit recovers eta from the sign trace") {
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(0.5 - 0.05 * i);

  for (const auto& d : {CircleDirac{Rational(3), h},
                        CircleDirac{Rational(4), Rational(5, 2)},
                        CircleDirac{Rational(6), Rational(7, 2)}}) {
    auto sp = circle_eigenvalues(d, Rational(700));
    auto fit = fit_bismut_freed(sp, grid);
    CHECK(std::abs(fit.eta - eta_circle(d).to_double()) < 1e-3);
    CHECK(fit.condition < 1e13);
  }

  // symmetric spectrum: fixed-order summation cancels exactly, eta fits to 0
  auto sym = circle_eigenvalues({Rational(1), h}, Rational(700));
  auto fit0 = fit_bismut_freed(sym, grid);
  CHECK(std::abs(fit0.eta) < 1e-12);
}

TEST_CASE("extrapolation grid validation") {
  auto sp = circle_eigenvalues({Rational(3), h}, Rational(700));
  CHECK_THROWS(fit_bismut_freed(sp, {0.5, 0.4, 0.3}));            // too few
  CHECK_THROWS(fit_bismut_freed(sp, {0.3, 0.4, 0.5, 0.6, 0.7, 0.8}));  // rising
  CHECK_THROWS(fit_bismut_freed(sp, {1.5, 1.0, 0.8, 0.6, 0.4, 0.2}));  // > 1
  auto tiny = circle_eigenvalues({Rational(3), h}, Rational(40));
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(0.5 - 0.05 * i);
  CHECK_THROWS_AS(fit_bismut_freed(tiny, grid), TruncationTooTight);
}

TEST_CASE("quotient eta values") {
  auto val = [](ManifoldId m, const SpinStructure& s) {
    return eta_bieberbach(m, s, false);
  };
  auto g3a = val(ManifoldId::G3, {h, z, z, +1, 0});
  CHECK(g3a.formula == Rational(4, 3));
  CHECK(g3a.oracle == Rational(4, 3));
  CHECK_FALSE(g3a.discrepancy_flag);
  auto g3b = val(ManifoldId::G3, {z, z, z, -1, 0});
  CHECK(g3b.formula == Rational(-2, 3));
  auto g4a = val(ManifoldId::G4, {h, z, z, +1, 0});
  CHECK(g4a.formula == Rational(3, 2));
  auto g4b = val(ManifoldId::G4, {h, z, z, -1, 0});
  CHECK(g4b.formula == Rational(-1, 2));
  auto g5a = val(ManifoldId::G5, {h, z, z, +1, 0});
  CHECK(g5a.formula == Rational(5, 3));
  auto g5b = val(ManifoldId::G5, {h, z, z, -1, 0});
  CHECK(g5b.formula == Rational(-1, 3));

  // G2 computes -1 for both labels; the published table prints +1 in its
  // first column, so that row alone is flagged.
  auto g2a = val(ManifoldId::G2, {h, z, z, +1, 0});
  CHECK(g2a.formula == Rational(-1));
  CHECK(g2a.discrepancy_flag);
  auto g2b = val(ManifoldId::G2, {h, z, z, -1, 0});
  CHECK(g2b.formula == Rational(-1));
  CHECK_FALSE(g2b.discrepancy_flag);

  // symmetric cases are exactly zero with no table entry
  auto g6 = val(ManifoldId::G6, {h, h, h, +1, +1});
  CHECK(g6.formula == z);
  CHECK_FALSE(g6.published_table.has_value());
  auto t3 = val(ManifoldId::T3, {z, z, z, 0, 0});
  CHECK(t3.formula == z);
}

TEST_CASE("quotient eta extrapolation agrees with the oracle") {
  for (ManifoldId m : {ManifoldId::G3, ManifoldId::G5}) {
    for (const auto& s : admissible_spin_structures(m)) {
      auto rep = eta_bieberbach(m, s, true);
      REQUIRE(rep.has_extrapolated);
      CHECK(rep.extrapolation_ok);
      CHECK(std::abs(rep.extrapolated - rep.oracle.to_double()) < 1e-3);
    }
  }
}
