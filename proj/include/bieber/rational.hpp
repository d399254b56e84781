#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>

#include "bieber/errors.hpp"

namespace bieber {

namespace detail {

using i128 = __int128;

inline i128 abs128(i128 x) { return x < 0 ? -x : x; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t narrow(i128 x) {
  if (x > static_cast<i128>(std::numeric_limits<std::int64_t>::max()) ||
      x < static_cast<i128>(std::numeric_limits<std::int64_t>::min()))
    throw OverflowError("rational component exceeds 64 bits");
  return static_cast<std::int64_t>(x);
}

}  // namespace detail

// Exact rational on int64 components, always normalized (den > 0, gcd 1).
// Intermediates go through __int128; overflow of the reduced form throws.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  static Rational make(detail::i128 n, detail::i128 d) {
    if (d == 0) throw Error("DivisionByZero", "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    detail::i128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::narrow(n);
    r.den_ = detail::narrow(d);
    return r;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& x, const Rational& y) {
    return make(static_cast<detail::i128>(x.num_) * y.den_ +
                    static_cast<detail::i128>(y.num_) * x.den_,
                static_cast<detail::i128>(x.den_) * y.den_);
  }
  friend Rational operator-(const Rational& x, const Rational& y) {
    return make(static_cast<detail::i128>(x.num_) * y.den_ -
                    static_cast<detail::i128>(y.num_) * x.den_,
                static_cast<detail::i128>(x.den_) * y.den_);
  }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return make(static_cast<detail::i128>(x.num_) * y.num_,
                static_cast<detail::i128>(x.den_) * y.den_);
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw Error("DivisionByZero", "rational division by zero");
    return make(static_cast<detail::i128>(x.num_) * y.den_,
                static_cast<detail::i128>(x.den_) * y.num_);
  }

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Rational& x, const Rational& y) {
    return !(x == y);
  }
  friend bool operator<(const Rational& x, const Rational& y) {
    return static_cast<detail::i128>(x.num_) * y.den_ <
           static_cast<detail::i128>(y.num_) * x.den_;
  }
  friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
  friend bool operator<=(const Rational& x, const Rational& y) {
    return !(y < x);
  }
  friend bool operator>=(const Rational& x, const Rational& y) {
    return !(x < y);
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  // Largest integer <= value.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  std::int64_t ceil() const { return -(-*this).floor(); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // "p" for integers, "p/q" otherwise.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p", "p/q", and plain decimals like "-1.25" or "0.5".
  static Rational parse(const std::string& s) {
    if (s.empty()) throw Error("ParseError", "empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      std::int64_t n = parse_int(s.substr(0, slash));
      std::int64_t d = parse_int(s.substr(slash + 1));
      return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(parse_int(s));
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty()) return Rational(parse_int(whole));
    bool neg = !whole.empty() && whole[0] == '-';
    std::string digits = whole + frac;
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+'))
      digits = whole.substr(1) + frac;
    detail::i128 n = 0;
    for (char c : digits) {
      if (c < '0' || c > '9')
        throw Error("ParseError", "bad rational literal: " + s);
      n = n * 10 + (c - '0');
      if (n > static_cast<detail::i128>(1) << 100)
        throw OverflowError("decimal literal too long: " + s);
    }
    detail::i128 d = 1;
    for (size_t i = 0; i < frac.size(); ++i) d *= 10;
    return make(neg ? -n : n, d);
  }

 private:
  void assign(std::int64_t n, std::int64_t d) {
    *this = make(n, d);
  }

  static std::int64_t parse_int(const std::string& t) {
    if (t.empty()) throw Error("ParseError", "empty integer literal");
    size_t pos = 0;
    long long v = std::stoll(t, &pos);
    if (pos != t.size()) throw Error("ParseError", "bad integer literal: " + t);
    return v;
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational half() { return Rational(1, 2); }

}  // namespace bieber
