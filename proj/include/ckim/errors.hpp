#pragma once

#include <stdexcept>
#include <string>

namespace ckim {

// Curve-family hypothesis violations. Each tag names the hypothesis that failed.
enum class Violation {
  NotSquarefree,
  GcdViolation,
  NotHyperbolic,
  ReduciblePuncture,
  InconsistentGeneric,
  BadFamilyParameter,
};

inline const char* violation_name(Violation v) {
  switch (v) {
    case Violation::NotSquarefree: return "NotSquarefree";
    case Violation::GcdViolation: return "GcdViolation";
    case Violation::NotHyperbolic: return "NotHyperbolic";
    case Violation::ReduciblePuncture: return "ReduciblePuncture";
    case Violation::InconsistentGeneric: return "InconsistentGeneric";
    case Violation::BadFamilyParameter: return "BadFamilyParameter";
  }
  return "?";
}

class ValidationError : public std::runtime_error {
 public:
  ValidationError(Violation tag, const std::string& what)
      : std::runtime_error(std::string(violation_name(tag)) + ": " + what), tag_(tag) {}
  Violation tag() const { return tag_; }

 private:
  Violation tag_;
};

// Arithmetic inputs that cannot come from any consistent curve (e.g. a
// negative Selmer dimension).
class InputInconsistency : public std::runtime_error {
 public:
  explicit InputInconsistency(const std::string& what) : std::runtime_error(what) {}
};

// Requested computation is not defined for the given curve family.
class UnsupportedFamily : public std::runtime_error {
 public:
  explicit UnsupportedFamily(const std::string& what) : std::runtime_error(what) {}
};

// A prime failed the admissibility checks but was used anyway.
class InadmissiblePrime : public std::runtime_error {
 public:
  explicit InadmissiblePrime(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ckim
