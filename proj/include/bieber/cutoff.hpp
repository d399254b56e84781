#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bieber/errors.hpp"
#include "bieber/quadrature.hpp"

namespace bieber {

enum class CutoffKind { gaussian, exp_even, exp_odd, tabulated };

inline std::string cutoff_kind_name(CutoffKind k) {
  switch (k) {
    case CutoffKind::gaussian: return "gaussian";
    case CutoffKind::exp_even: return "exp_even";
    case CutoffKind::exp_odd: return "exp_odd";
    case CutoffKind::tabulated: return "tabulated";
  }
  return "?";
}

inline CutoffKind parse_cutoff_kind(const std::string& s) {
  if (s == "gaussian") return CutoffKind::gaussian;
  if (s == "exp_even") return CutoffKind::exp_even;
  if (s == "exp_odd") return CutoffKind::exp_odd;
  if (s == "tabulated") return CutoffKind::tabulated;
  throw Error("ParseError", "unknown cutoff kind: " + s);
}

// Test function for the spectral action. Built-in kinds:
//   gaussian  f(x) = exp(-x^2)
//   exp_even  f(x) = exp(-|x|)
//   exp_odd   f(x) = sign(x) exp(-|x|)   (sign(0) = 0, so f(0) = 0)
// plus tabulated samples with linear interpolation, zero outside the grid.
// Analytic moments of the built-in kinds bypass quadrature.
class CutoffFunction {
 public:
  static CutoffFunction gaussian() { return CutoffFunction(CutoffKind::gaussian); }
  static CutoffFunction exp_even() { return CutoffFunction(CutoffKind::exp_even); }
  static CutoffFunction exp_odd() { return CutoffFunction(CutoffKind::exp_odd); }

  static CutoffFunction tabulated(std::vector<double> xs,
                                  std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
      throw Error("InvalidCutoff", "tabulated grid needs >= 2 matching points");
    if (!std::is_sorted(xs.begin(), xs.end()))
      throw Error("InvalidCutoff", "tabulated grid must be sorted");
    CutoffFunction f(CutoffKind::tabulated);
    f.xs_ = std::move(xs);
    f.ys_ = std::move(ys);
    return f;
  }

  CutoffKind kind() const { return kind_; }

  double operator()(double x) const {
    switch (kind_) {
      case CutoffKind::gaussian:
        return std::exp(-x * x);
      case CutoffKind::exp_even:
        return std::exp(-std::abs(x));
      case CutoffKind::exp_odd:
        return x == 0.0 ? 0.0 : (x > 0 ? 1.0 : -1.0) * std::exp(-std::abs(x));
      case CutoffKind::tabulated:
        return interpolate(x);
    }
    return 0.0;
  }

  double even_part(double x) const { return 0.5 * ((*this)(x) + (*this)(-x)); }
  double odd_part(double x) const { return 0.5 * ((*this)(x) - (*this)(-x)); }

  bool is_even_kind() const {
    return kind_ == CutoffKind::gaussian || kind_ == CutoffKind::exp_even;
  }
  bool is_odd_kind() const { return kind_ == CutoffKind::exp_odd; }

  // Value of the even profile at 0 for odd kinds: f(x) = sign(x) phi(|x|).
  double phi0() const {
    if (kind_ == CutoffKind::exp_odd) return 1.0;
    if (kind_ == CutoffKind::tabulated) return right_limit_at_zero();
    throw Error("InvalidCutoff", "phi(0) defined only for odd kinds");
  }

  // integral over R of the even part
  double line_moment() const {
    switch (kind_) {
      case CutoffKind::gaussian:
        return std::sqrt(M_PI);
      case CutoffKind::exp_even:
        return 2.0;
      case CutoffKind::exp_odd:
        return 0.0;
      case CutoffKind::tabulated:
        return quad_moment([this](double x) { return even_part(x); }, 0);
    }
    return 0.0;
  }

  // integral over [0, inf) of f_e(rho) rho^2
  double radial2_moment() const {
    switch (kind_) {
      case CutoffKind::gaussian:
        return std::sqrt(M_PI) / 4.0;  // Gamma(3/2)/2
      case CutoffKind::exp_even:
        return 2.0;  // Gamma(3)
      case CutoffKind::exp_odd:
        return 0.0;
      case CutoffKind::tabulated:
        return quad_moment([this](double x) { return even_part(x); }, 2, true);
    }
    return 0.0;
  }

  // Ratio lambda_max / Lambda needed so the discarded tail is negligible
  // relative to the sum. exp(-144) and the default policy are discussed at
  // the truncated_action call site.
  double default_tail_factor() const { return 12.0; }

  double support_radius() const {
    if (kind_ == CutoffKind::tabulated)
      return std::max(std::abs(xs_.front()), std::abs(xs_.back()));
    return std::numeric_limits<double>::infinity();
  }

 private:
  explicit CutoffFunction(CutoffKind k) : kind_(k) {}

  double interpolate(double x) const {
    if (x <= xs_.front() || x >= xs_.back()) {
      if (x == xs_.front()) return ys_.front();
      if (x == xs_.back()) return ys_.back();
      return 0.0;
    }
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    size_t i = static_cast<size_t>(it - xs_.begin());
    double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
  }

  double right_limit_at_zero() const {
    // Odd tabulated profiles: phi(0+) from the first positive sample.
    for (size_t i = 0; i < xs_.size(); ++i)
      if (xs_[i] > 0) return ys_[i];
    return 0.0;
  }

  template <typename F>
  double quad_moment(F&& fe, int power, bool half_line = false) const {
    double X = support_radius();
    if (!std::isfinite(X)) X = 60.0;
    auto integrand = [&](double x) {
      double w = 1.0;
      for (int i = 0; i < power; ++i) w *= x;
      return fe(x) * w;
    };
    QuadResult full = half_line
                          ? integrate_adaptive(integrand, 0.0, X, 1e-12)
                          : integrate_adaptive(integrand, -X, X, 1e-12);
    if (!full.converged)
      throw DivergentMoment("moment quadrature did not converge");
    return full.value;
  }

  CutoffKind kind_;
  std::vector<double> xs_, ys_;
};

}  // namespace bieber
