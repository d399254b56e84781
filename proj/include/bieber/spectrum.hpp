#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bieber/errors.hpp"
#include "bieber/quadsurd.hpp"
#include "bieber/rational.hpp"
#include "bieber/spin.hpp"

namespace bieber {

// ---------------------------------------------------------------------------
// Dirac operator descriptions
// ---------------------------------------------------------------------------

// Torus modulus tau = e^{i phi}. For the three supported angles 2 cos(phi) is
// exact in Q(sqrt(2)); other angles are accepted but flagged nonstandard and
// carry a continued-fraction rational approximation of 2 cos(phi).
struct Angle {
  double radians{0};
  QuadSurd two_cos;  // exact (or approximated) value of 2 cos(phi)
  bool standard{true};
  std::string name;

  static Angle pi_over_2() {
    return {M_PI / 2.0, QuadSurd(Rational(0)), true, "pi/2"};
  }
  static Angle two_pi_over_3() {
    return {2.0 * M_PI / 3.0, QuadSurd(Rational(-1)), true, "2pi/3"};
  }
  static Angle pi_over_4() {
    return {M_PI / 4.0, QuadSurd(Rational(0), Rational(1)), true, "pi/4"};
  }

  // Nonstandard phi: 2 cos(phi) replaced by a rational best approximation
  // with denominator <= 2^20 (precision ~1e-12 for generic angles).
  static Angle custom(double phi) {
    if (!(std::sin(phi) > 0.0))
      throw Error("InvalidAngle", "need sin(phi) > 0");
    Angle a;
    a.radians = phi;
    a.standard = false;
    a.name = "custom(" + std::to_string(phi) + ")";
    a.two_cos = QuadSurd(rational_approx(2.0 * std::cos(phi), 1 << 20));
    return a;
  }

  static Angle parse(const std::string& s) {
    if (s == "pi/2") return pi_over_2();
    if (s == "2pi/3") return two_pi_over_3();
    if (s == "pi/4") return pi_over_4();
    double phi = std::stod(s);
    if (std::abs(phi - M_PI / 2) < 1e-15) return pi_over_2();
    if (std::abs(phi - 2 * M_PI / 3) < 1e-15) return two_pi_over_3();
    if (std::abs(phi - M_PI / 4) < 1e-15) return pi_over_4();
    return custom(phi);
  }

  double sin_value() const { return std::sin(radians); }

  static Rational rational_approx(double x, std::int64_t max_den) {
    // Stern-Brocot style continued fraction expansion.
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int i = 0; i < 64; ++i) {
      double fl = std::floor(v);
      std::int64_t ai = static_cast<std::int64_t>(fl);
      std::int64_t p2 = ai * p1 + p0;
      std::int64_t q2 = ai * q1 + q0;
      if (q2 > max_den || q2 < 0) break;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
      double rem = v - fl;
      if (rem < 1e-18) break;
      v = 1.0 / rem;
    }
    if (q1 == 0) return Rational(p0, q0 == 0 ? 1 : q0);
    return Rational(p1, q1);
  }
};

struct TorusDirac {
  Angle phi;
  SpinStructure spin;
};

struct CircleDirac {
  Rational alpha;  // > 0
  Rational beta;

  std::string str() const {
    return "Sp1(" + alpha.str() + "," + beta.str() + ")";
  }
};

// ---------------------------------------------------------------------------
// Weighted spectra
// ---------------------------------------------------------------------------

// Exact identity of an eigenvalue: sign and lambda^2 in Q(sqrt(2)).
struct SpectrumKey {
  int sgn{0};  // -1, 0, +1
  QuadSurd lambda_sq;

  double eigenvalue() const {
    double m = std::sqrt(std::max(0.0, lambda_sq.to_double()));
    return sgn * m;
  }

  friend bool operator==(const SpectrumKey& x, const SpectrumKey& y) {
    return x.sgn == y.sgn && x.lambda_sq == y.lambda_sq;
  }
};

// Total order by the real eigenvalue the key represents.
inline int compare_keys(const SpectrumKey& x, const SpectrumKey& y) {
  if (x.sgn != y.sgn) return x.sgn < y.sgn ? -1 : 1;
  if (x.sgn == 0) return 0;
  int c = (x.lambda_sq - y.lambda_sq).sign();
  return x.sgn > 0 ? c : -c;
}

struct SpectrumEntry {
  SpectrumKey key;
  Rational mult;  // > 0
};

struct WeightedSpectrum {
  std::vector<SpectrumEntry> entries;  // strictly sorted by eigenvalue
  Rational lambda_max{0};
  std::string descriptor;

  Rational total_multiplicity() const {
    Rational t(0);
    for (const auto& e : entries) t += e.mult;
    return t;
  }

  // Multiplicity of a key, zero if absent.
  Rational multiplicity(const SpectrumKey& k) const {
    auto it = std::lower_bound(
        entries.begin(), entries.end(), k,
        [](const SpectrumEntry& e, const SpectrumKey& key) {
          return compare_keys(e.key, key) < 0;
        });
    if (it != entries.end() && it->key == k) return it->mult;
    return Rational(0);
  }

  bool is_symmetric() const {
    for (const auto& e : entries) {
      SpectrumKey mirror{-e.key.sgn, e.key.lambda_sq};
      if (multiplicity(mirror) != e.mult) return false;
    }
    return true;
  }
};

namespace detail {

inline void require_positive_lambda_max(const Rational& lambda_max) {
  if (!(lambda_max > Rational(0)))
    throw Error("NonpositiveLambdaMax",
                "lambda_max must be positive, got " + lambda_max.str());
}

// sign of A + B*sqrt(2) for 128-bit integers (|A|,|B| < 2^62).
inline int sign_int_surd(i128 A, i128 B) {
  int sa = A > 0 ? 1 : (A < 0 ? -1 : 0);
  int sb = B > 0 ? 1 : (B < 0 ? -1 : 0);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  i128 lhs = A * A;
  i128 rhs = 2 * B * B;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

// Eigenvalues alpha*k + beta with |value| <= lambda_max, multiplicity 1 each.
inline WeightedSpectrum circle_eigenvalues(const CircleDirac& d,
                                           const Rational& lambda_max) {
  detail::require_positive_lambda_max(lambda_max);
  if (!(d.alpha > Rational(0)))
    throw Error("InvalidCircleDirac", "alpha must be positive");
  WeightedSpectrum s;
  s.lambda_max = lambda_max;
  s.descriptor = d.str();
  std::int64_t kmin = ((-lambda_max - d.beta) / d.alpha).ceil();
  std::int64_t kmax = ((lambda_max - d.beta) / d.alpha).floor();
  for (std::int64_t k = kmin; k <= kmax; ++k) {
    Rational lam = d.alpha * Rational(k) + d.beta;
    SpectrumKey key{lam.sign(), QuadSurd(lam * lam)};
    s.entries.push_back({key, Rational(1)});
  }
  return s;
}

// Full torus spectrum: every lattice point (k,l,m) with lambda^2 <= R^2
// contributes +lambda and -lambda with multiplicity 1 each; a zero eigenvalue
// contributes multiplicity 2 per lattice point. Grouping is by exact key.
inline WeightedSpectrum torus_eigenvalues(const TorusDirac& d,
                                          const Rational& lambda_max) {
  detail::require_positive_lambda_max(lambda_max);
  if (!d.spin.eps_valid())
    throw Error("InvalidSpin", "eps components must be 0 or 1/2");

  WeightedSpectrum s;
  s.lambda_max = lambda_max;
  s.descriptor = "Sp3(phi=" + d.phi.name + ",eps=(" + d.spin.eps1.str() + "," +
                 d.spin.eps2.str() + "," + d.spin.eps3.str() + "))";

  const double lm = lambda_max.to_double();
  const double abs_cos = std::min(0.999999, std::abs(d.phi.two_cos.to_double()) / 2.0);
  // Smallest eigenvalue of the (l,m) quadratic form is 1 - |cos phi|; a box
  // of that radius cannot miss points of the ellipse.
  const std::int64_t box =
      static_cast<std::int64_t>(std::ceil(lm / std::sqrt(1.0 - abs_cos))) + 2;
  const std::int64_t kbox = static_cast<std::int64_t>(std::ceil(lm)) + 2;

  const bool fast = d.phi.two_cos.a.is_integer() && d.phi.two_cos.b.is_integer();

  // lambda^2 values scaled by 4 so all quantities are integers when eps are
  // half-integers and 2 cos(phi) has integer components in Q(sqrt(2)).
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;  // (4a, 4b)

  if (fast) {
    const std::int64_t e1 = (d.spin.eps1 * Rational(2)).num();
    const std::int64_t e2 = (d.spin.eps2 * Rational(2)).num();
    const std::int64_t e3 = (d.spin.eps3 * Rational(2)).num();
    const std::int64_t ca = d.phi.two_cos.a.num();
    const std::int64_t cb = d.phi.two_cos.b.num();
    const Rational bound = lambda_max * lambda_max * Rational(4);
    const std::int64_t bn = bound.num();
    const std::int64_t bd = bound.den();
    auto within = [&](std::int64_t a4, std::int64_t b4) {
      // a4 + b4*sqrt(2) <= bn/bd, exactly.
      detail::i128 A = static_cast<detail::i128>(a4) * bd - bn;
      detail::i128 B = static_cast<detail::i128>(b4) * bd;
      return detail::sign_int_surd(A, B) <= 0;
    };
    auto scan_rows = [&](std::int64_t l_begin, std::int64_t l_end,
                         std::vector<std::pair<std::int64_t, std::int64_t>>&
                             sink) {
      for (std::int64_t l = l_begin; l < l_end; ++l) {
        const std::int64_t ul = 2 * l + e2;
        for (std::int64_t m = -box; m <= box; ++m) {
          const std::int64_t vm = 2 * m + e3;
          const std::int64_t cross = ul * vm;
          const std::int64_t q4 = ul * ul + vm * vm + ca * cross;
          const std::int64_t qb4 = cb * cross;
          if (!within(q4, qb4)) continue;
          for (std::int64_t k = -kbox; k <= kbox; ++k) {
            const std::int64_t tk = 2 * k + e1;
            const std::int64_t a4 = tk * tk + q4;
            if (within(a4, qb4)) sink.emplace_back(a4, qb4);
          }
        }
      }
    };
    // Parallel row scan; the final sort makes the result independent of the
    // partitioning. Thread count from BIEBER_THREADS, default hardware.
    unsigned nthreads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("BIEBER_THREADS")) {
      long v = std::strtol(env, nullptr, 10);
      if (v >= 1 && v <= 256) nthreads = static_cast<unsigned>(v);
    }
    const std::int64_t rows = 2 * box + 1;
    if (nthreads <= 1 || rows < 64) {
      scan_rows(-box, box + 1, pts);
    } else {
      nthreads = std::min<unsigned>(nthreads, 32);
      std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> parts(
          nthreads);
      std::vector<std::thread> workers;
      for (unsigned t = 0; t < nthreads; ++t) {
        std::int64_t lo = -box + rows * t / nthreads;
        std::int64_t hi = -box + rows * (t + 1) / nthreads;
        workers.emplace_back(
            [&, lo, hi, t] { scan_rows(lo, hi, parts[t]); });
      }
      for (auto& w : workers) w.join();
      for (auto& part : parts)
        pts.insert(pts.end(), part.begin(), part.end());
    }
    std::sort(pts.begin(), pts.end());
  } else {
    // Nonstandard angle: rational-approximate cross term, exact arithmetic on
    // the approximated form.
    const Rational R2 = lambda_max * lambda_max;
    std::map<std::pair<Rational, Rational>, std::int64_t,
             decltype([](const std::pair<Rational, Rational>& x,
                         const std::pair<Rational, Rational>& y) {
               if (x.first != y.first) return x.first < y.first;
               return x.second < y.second;
             })>
        counts;
    for (std::int64_t l = -box; l <= box; ++l) {
      const Rational u = Rational(l) + d.spin.eps2;
      for (std::int64_t m = -box; m <= box; ++m) {
        const Rational v = Rational(m) + d.spin.eps3;
        const QuadSurd q = QuadSurd(u * u + v * v) + d.phi.two_cos * (u * v);
        if ((q - QuadSurd(R2)).sign() > 0) continue;
        for (std::int64_t k = -kbox; k <= kbox; ++k) {
          const Rational t = Rational(k) + d.spin.eps1;
          const QuadSurd lsq = q + QuadSurd(t * t);
          if ((lsq - QuadSurd(R2)).sign() <= 0) ++counts[{lsq.a, lsq.b}];
        }
      }
    }
    std::vector<std::pair<QuadSurd, Rational>> grouped;
    for (const auto& [ab, n] : counts)
      grouped.emplace_back(QuadSurd(ab.first, ab.second), Rational(n));
    std::sort(grouped.begin(), grouped.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<SpectrumEntry> neg, pos;
    Rational zero_mult(0);
    for (const auto& [lsq, n] : grouped) {
      if (lsq.sign() == 0) {
        zero_mult = n * Rational(2);
      } else {
        pos.push_back({SpectrumKey{+1, lsq}, n});
        neg.push_back({SpectrumKey{-1, lsq}, n});
      }
    }
    std::reverse(neg.begin(), neg.end());
    s.entries = std::move(neg);
    if (!zero_mult.is_zero())
      s.entries.push_back({SpectrumKey{0, QuadSurd(Rational(0))}, zero_mult});
    s.entries.insert(s.entries.end(), pos.begin(), pos.end());
    return s;
  }

  // Group equal (4a, 4b) pairs, then order distinct keys by value.
  std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::int64_t>>
      grouped;
  for (size_t i = 0; i < pts.size();) {
    size_t j = i;
    while (j < pts.size() && pts[j] == pts[i]) ++j;
    grouped.push_back({pts[i], static_cast<std::int64_t>(j - i)});
    i = j;
  }
  std::sort(grouped.begin(), grouped.end(), [](const auto& x, const auto& y) {
    detail::i128 A = static_cast<detail::i128>(x.first.first) - y.first.first;
    detail::i128 B = static_cast<detail::i128>(x.first.second) - y.first.second;
    return detail::sign_int_surd(A, B) < 0;
  });

  std::vector<SpectrumEntry> neg, pos;
  Rational zero_mult(0);
  for (const auto& [ab4, n] : grouped) {
    QuadSurd lsq(Rational(ab4.first, 4), Rational(ab4.second, 4));
    if (ab4.first == 0 && ab4.second == 0) {
      zero_mult = Rational(2 * n);
    } else {
      pos.push_back({SpectrumKey{+1, lsq}, Rational(n)});
      neg.push_back({SpectrumKey{-1, lsq}, Rational(n)});
    }
  }
  std::reverse(neg.begin(), neg.end());
  s.entries = std::move(neg);
  if (!zero_mult.is_zero())
    s.entries.push_back({SpectrumKey{0, QuadSurd(Rational(0))}, zero_mult});
  s.entries.insert(s.entries.end(), pos.begin(), pos.end());
  return s;
}

// ---------------------------------------------------------------------------
// Multiset algebra
// ---------------------------------------------------------------------------

inline WeightedSpectrum scale_multiplicity(const WeightedSpectrum& s,
                                           const Rational& c) {
  if (!(c > Rational(0)))
    throw Error("NonpositiveScale", "multiplicity factor must be positive");
  WeightedSpectrum out = s;
  for (auto& e : out.entries) e.mult *= c;
  out.descriptor = c.str() + "*" + s.descriptor;
  return out;
}

inline void require_same_truncation(const WeightedSpectrum& a,
                                    const WeightedSpectrum& b) {
  if (a.lambda_max != b.lambda_max)
    throw Error("TruncationMismatch", "lambda_max " + a.lambda_max.str() +
                                          " vs " + b.lambda_max.str());
}

// Multiplicity-wise subtraction; entries reaching zero are dropped.
inline WeightedSpectrum subtract_spectrum(const WeightedSpectrum& a,
                                          const WeightedSpectrum& b) {
  require_same_truncation(a, b);
  WeightedSpectrum out;
  out.lambda_max = a.lambda_max;
  out.descriptor = "(" + a.descriptor + " \\ " + b.descriptor + ")";
  size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    if (j == b.entries.size()) {
      out.entries.push_back(a.entries[i++]);
      continue;
    }
    if (i == a.entries.size())
      throw NegativeMultiplicity("entry " +
                                 std::to_string(b.entries[j].key.eigenvalue()) +
                                 " absent from minuend");
    int c = compare_keys(a.entries[i].key, b.entries[j].key);
    if (c < 0) {
      out.entries.push_back(a.entries[i++]);
    } else if (c > 0) {
      throw NegativeMultiplicity(
          "entry " + std::to_string(b.entries[j].key.eigenvalue()) +
          " absent from minuend");
    } else {
      Rational m = a.entries[i].mult - b.entries[j].mult;
      if (m.sign() < 0)
        throw NegativeMultiplicity(
            "multiplicity underflow at " +
            std::to_string(a.entries[i].key.eigenvalue()));
      if (m.sign() > 0) out.entries.push_back({a.entries[i].key, m});
      ++i;
      ++j;
    }
  }
  return out;
}

// Multiset union: multiplicity addition with exact key merging.
inline WeightedSpectrum union_spectrum(const WeightedSpectrum& a,
                                       const WeightedSpectrum& b) {
  require_same_truncation(a, b);
  WeightedSpectrum out;
  out.lambda_max = a.lambda_max;
  out.descriptor = "(" + a.descriptor + " U " + b.descriptor + ")";
  size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    if (i == a.entries.size()) {
      out.entries.push_back(b.entries[j++]);
    } else if (j == b.entries.size()) {
      out.entries.push_back(a.entries[i++]);
    } else {
      int c = compare_keys(a.entries[i].key, b.entries[j].key);
      if (c < 0)
        out.entries.push_back(a.entries[i++]);
      else if (c > 0)
        out.entries.push_back(b.entries[j++]);
      else {
        out.entries.push_back(
            {a.entries[i].key, a.entries[i].mult + b.entries[j].mult});
        ++i;
        ++j;
      }
    }
  }
  return out;
}

}  // namespace bieber
