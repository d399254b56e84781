#pragma once

#include <string>
#include <vector>

#include "bieber/errors.hpp"
#include "bieber/rational.hpp"

namespace bieber {

enum class ManifoldId { T3, G2, G3, G4, G5, G6 };

// Order of the deck group of the covering torus -> quotient.
inline int group_order(ManifoldId m) {
  switch (m) {
    case ManifoldId::T3: return 1;
    case ManifoldId::G2: return 2;
    case ManifoldId::G3: return 3;
    case ManifoldId::G4: return 4;
    case ManifoldId::G5: return 6;
    case ManifoldId::G6: return 4;  // Z2 x Z2
  }
  return 1;
}

inline std::string manifold_name(ManifoldId m) {
  switch (m) {
    case ManifoldId::T3: return "T3";
    case ManifoldId::G2: return "G2";
    case ManifoldId::G3: return "G3";
    case ManifoldId::G4: return "G4";
    case ManifoldId::G5: return "G5";
    case ManifoldId::G6: return "G6";
  }
  return "?";
}

inline ManifoldId parse_manifold(const std::string& s) {
  if (s == "T3") return ManifoldId::T3;
  if (s == "G2") return ManifoldId::G2;
  if (s == "G3") return ManifoldId::G3;
  if (s == "G4") return ManifoldId::G4;
  if (s == "G5") return ManifoldId::G5;
  if (s == "G6") return ManifoldId::G6;
  throw Error("ParseError", "unknown manifold: " + s);
}

// Spin structure data: lattice shifts eps_i in {0, 1/2} plus the
// representation label delta = +-1 (0 when the case table does not use it).
// delta2 is the second Z2 label, used only for G6's four structures.
struct SpinStructure {
  Rational eps1{0};
  Rational eps2{0};
  Rational eps3{0};
  int delta{0};
  int delta2{0};

  bool eps_valid() const {
    auto ok = [](const Rational& e) {
      return e == Rational(0) || e == Rational(1, 2);
    };
    return ok(eps1) && ok(eps2) && ok(eps3);
  }

  friend bool operator==(const SpinStructure& x, const SpinStructure& y) {
    return x.eps1 == y.eps1 && x.eps2 == y.eps2 && x.eps3 == y.eps3 &&
           x.delta == y.delta && x.delta2 == y.delta2;
  }

  std::string str() const {
    std::string s =
        "(" + eps1.str() + "," + eps2.str() + "," + eps3.str() + ")";
    if (delta != 0) s += delta > 0 ? ",delta=+1" : ",delta=-1";
    if (delta2 != 0) s += delta2 > 0 ? ",delta2=+1" : ",delta2=-1";
    return s;
  }
};

// The spin structures that project to the quotient, per manifold.
inline std::vector<SpinStructure> admissible_spin_structures(ManifoldId m) {
  const Rational h(1, 2);
  std::vector<SpinStructure> out;
  switch (m) {
    case ManifoldId::T3:
      for (int e1 = 0; e1 < 2; ++e1)
        for (int e2 = 0; e2 < 2; ++e2)
          for (int e3 = 0; e3 < 2; ++e3)
            out.push_back({e1 ? h : Rational(0), e2 ? h : Rational(0),
                           e3 ? h : Rational(0), 0, 0});
      break;
    case ManifoldId::G2:
      for (int e2 = 0; e2 < 2; ++e2)
        for (int e3 = 0; e3 < 2; ++e3)
          for (int d : {+1, -1})
            out.push_back(
                {h, e2 ? h : Rational(0), e3 ? h : Rational(0), d, 0});
      break;
    case ManifoldId::G3:
      // delta is determined by eps1.
      out.push_back({h, Rational(0), Rational(0), +1, 0});
      out.push_back({Rational(0), Rational(0), Rational(0), -1, 0});
      break;
    case ManifoldId::G4:
      for (int d : {+1, -1}) out.push_back({h, h, h, d, 0});
      for (int d : {+1, -1}) out.push_back({h, Rational(0), Rational(0), d, 0});
      break;
    case ManifoldId::G5:
      for (int d : {+1, -1}) out.push_back({h, Rational(0), Rational(0), d, 0});
      break;
    case ManifoldId::G6:
      // Four labels of the Z2 x Z2 representation; all share eps = 1/2 and
      // the same spectrum.
      for (int d : {+1, -1})
        for (int d2 : {+1, -1}) out.push_back({h, h, h, d, d2});
      break;
  }
  return out;
}

inline bool is_admissible(ManifoldId m, const SpinStructure& s) {
  for (const auto& t : admissible_spin_structures(m))
    if (t == s) return true;
  return false;
}

}  // namespace bieber
