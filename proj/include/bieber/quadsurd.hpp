#pragma once

#include <cmath>

#include "bieber/rational.hpp"

namespace bieber {

// Element a + b*sqrt(2) of Q(sqrt(2)). Sign and comparison are exact: the
// mixed-sign case reduces to comparing a^2 against 2 b^2.
struct QuadSurd {
  Rational a;
  Rational b;

  QuadSurd() = default;
  QuadSurd(Rational a_, Rational b_ = Rational(0)) : a(a_), b(b_) {}

  bool is_rational() const { return b.is_zero(); }

  int sign() const {
    int sa = a.sign();
    int sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // a and b have opposite signs: a + b*sqrt(2) has the sign of the larger
    // magnitude, decided by a^2 vs 2 b^2.
    Rational lhs = a * a;
    Rational rhs = Rational(2) * b * b;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  double to_double() const {
    static const double sqrt2 = std::sqrt(2.0);
    return a.to_double() + b.to_double() * sqrt2;
  }

  QuadSurd operator-() const { return QuadSurd(-a, -b); }
  friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
    return QuadSurd(x.a + y.a, x.b + y.b);
  }
  friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) {
    return QuadSurd(x.a - y.a, x.b - y.b);
  }
  friend QuadSurd operator*(const QuadSurd& x, const Rational& c) {
    return QuadSurd(x.a * c, x.b * c);
  }

  friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const QuadSurd& x, const QuadSurd& y) {
    return !(x == y);
  }
  friend bool operator<(const QuadSurd& x, const QuadSurd& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator<=(const QuadSurd& x, const QuadSurd& y) {
    return (x - y).sign() <= 0;
  }
  friend bool operator>(const QuadSurd& x, const QuadSurd& y) { return y < x; }
  friend bool operator>=(const QuadSurd& x, const QuadSurd& y) {
    return y <= x;
  }

  std::string str() const {
    if (b.is_zero()) return a.str();
    return a.str() + "+" + b.str() + "*sqrt(2)";
  }
};

}  // namespace bieber
