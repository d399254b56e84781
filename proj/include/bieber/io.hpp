#pragma once

#include <charconv>
#include <string>

#include <json.hpp>

#include "bieber/eta.hpp"
#include "bieber/spectrum.hpp"
#include "bieber/verify.hpp"

namespace bieber {

// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// CSV: header then one row per entry, ascending eigenvalue.
inline std::string spectrum_csv(const WeightedSpectrum& s) {
  std::string out = "eigenvalue,multiplicity_num,multiplicity_den\n";
  for (const auto& e : s.entries) {
    out += format_double(e.key.eigenvalue());
    out += ",";
    out += std::to_string(e.mult.num());
    out += ",";
    out += std::to_string(e.mult.den());
    out += "\n";
  }
  return out;
}

// JSON variant carries the exact keys: lambda^2 = a + b sqrt(2) as integer
// fraction pairs plus the sign.
inline nlohmann::json spectrum_json(const WeightedSpectrum& s) {
  nlohmann::json j;
  j["descriptor"] = s.descriptor;
  j["lambda_max"] = s.lambda_max.str();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : s.entries) {
    j["entries"].push_back({
        {"eigenvalue", e.key.eigenvalue()},
        {"sign", e.key.sgn},
        {"a_num", e.key.lambda_sq.a.num()},
        {"a_den", e.key.lambda_sq.a.den()},
        {"b_num", e.key.lambda_sq.b.num()},
        {"b_den", e.key.lambda_sq.b.den()},
        {"mult_num", e.mult.num()},
        {"mult_den", e.mult.den()},
    });
  }
  return j;
}

inline nlohmann::json spin_json(const SpinStructure& s) {
  nlohmann::json j;
  j["eps1"] = s.eps1.str();
  j["eps2"] = s.eps2.str();
  j["eps3"] = s.eps3.str();
  if (s.delta != 0)
    j["delta"] = s.delta;
  else
    j["delta"] = nullptr;
  if (s.delta2 != 0) j["delta2"] = s.delta2;
  return j;
}

inline nlohmann::json eta_report_json(ManifoldId m, const SpinStructure& s,
                                      const EtaReport& r) {
  nlohmann::json j;
  j["manifold"] = manifold_name(m);
  j["spin"] = spin_json(s);
  j["formula"] = r.formula.str();
  j["oracle"] = r.oracle.str();
  if (r.has_extrapolated)
    j["extrapolated"] = r.extrapolated;
  else
    j["extrapolated"] = nullptr;
  if (r.published_table)
    j["published_table"] = r.published_table->str();
  else
    j["published_table"] = nullptr;
  j["discrepancy_flag"] = r.discrepancy_flag;
  return j;
}

inline nlohmann::json check_report_json(const CheckReport& r) {
  return {
      {"check", r.check_name}, {"inputs", r.inputs},
      {"status", r.status},    {"max_error", r.max_error},
      {"violations", r.violations}, {"notes", r.notes},
  };
}

}  // namespace bieber
