#pragma once

#include <stdexcept>
#include <string>

namespace bieber {

// Error taxonomy for the library. Each carries a stable name so the CLI can
// report machine-readable failure categories.
struct Error : std::runtime_error {
  Error(std::string name, const std::string& msg)
      : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

struct NegativeMultiplicity : Error {
  explicit NegativeMultiplicity(const std::string& msg)
      : Error("NegativeMultiplicity", msg) {}
};

struct InadmissibleSpin : Error {
  explicit InadmissibleSpin(const std::string& msg)
      : Error("InadmissibleSpin", msg) {}
};

struct TruncationTooTight : Error {
  explicit TruncationTooTight(const std::string& msg)
      : Error("TruncationTooTight", msg) {}
};

struct DivergentMoment : Error {
  explicit DivergentMoment(const std::string& msg)
      : Error("DivergentMoment", msg) {}
};

struct NonpositiveP : Error {
  explicit NonpositiveP(const std::string& msg) : Error("NonpositiveP", msg) {}
};

struct IllConditionedFit : Error {
  explicit IllConditionedFit(const std::string& msg)
      : Error("IllConditionedFit", msg) {}
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& msg)
      : Error("OverflowError", msg) {}
};

}  // namespace bieber
