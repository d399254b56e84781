#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace bieber {

namespace detail {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n.
inline GaussRule gauss_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

inline const GaussRule& rule12() {
  static const GaussRule r = gauss_rule(12);
  return r;
}
inline const GaussRule& rule24() {
  static const GaussRule r = gauss_rule(24);
  return r;
}

inline double apply_rule(const GaussRule& r,
                         const std::function<double(double)>& f, double a,
                         double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0;
  for (size_t i = 0; i < r.nodes.size(); ++i)
    s += r.weights[i] * f(c + h * r.nodes[i]);
  return s * h;
}

}  // namespace detail

struct QuadResult {
  double value{0};
  double error_estimate{0};
  bool converged{false};
  std::size_t intervals{0};
};

// Adaptive integration with an embedded Gauss 12/24 pair: each interval is
// accepted when the two rules agree to the local share of the tolerance,
// otherwise bisected.
inline QuadResult integrate_adaptive(const std::function<double(double)>& f,
                                     double a, double b, double rel_tol,
                                     std::size_t max_intervals = 20000) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  struct Seg {
    double a, b, coarse;
  };
  double whole = detail::apply_rule(detail::rule12(), f, a, b);
  std::vector<Seg> stack{{a, b, whole}};
  double scale = std::max(std::abs(whole), 1e-300);
  double total = 0, err = 0;
  while (!stack.empty()) {
    if (++out.intervals > max_intervals) {
      out.value = total;
      out.error_estimate = err;
      out.converged = false;
      return out;
    }
    Seg s = stack.back();
    stack.pop_back();
    double fine = detail::apply_rule(detail::rule24(), f, s.a, s.b);
    double diff = std::abs(fine - s.coarse);
    double local_tol = rel_tol * scale * (s.b - s.a) / (b - a);
    if (diff <= std::max(local_tol, 1e-300) || (s.b - s.a) < 1e-14 * (b - a)) {
      total += fine;
      err += diff;
      scale = std::max(scale, std::abs(total));
    } else {
      double mid = 0.5 * (s.a + s.b);
      stack.push_back({s.a, mid, detail::apply_rule(detail::rule12(), f, s.a, mid)});
      stack.push_back({mid, s.b, detail::apply_rule(detail::rule12(), f, mid, s.b)});
    }
  }
  out.value = total;
  out.error_estimate = err;
  out.converged = err <= 10 * rel_tol * std::max(std::abs(total), 1e-300) + 1e-290;
  return out;
}

}  // namespace bieber
