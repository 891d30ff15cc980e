#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zcs {

enum class ErrorKind {
  CompositeModulus,
  NonResidue,
  FieldMismatch,
  ShapeMismatch,
  SingularModel,
  BadReduction,
  PointNotOnCurve,
  InvalidDivisor,
  NonIntegralAtP,
  PrecisionExhausted,
  EmbeddingUnavailable,
  NoAdmissiblePrimes,
  HypothesisUnmet,
  Unsupported,
  FactorizationLimit,
  ParseError,
  ConfigError,
  IoError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::CompositeModulus: return "CompositeModulus";
    case ErrorKind::NonResidue: return "NonResidue";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SingularModel: return "SingularModel";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorKind::InvalidDivisor: return "InvalidDivisor";
    case ErrorKind::NonIntegralAtP: return "NonIntegralAtP";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::EmbeddingUnavailable: return "EmbeddingUnavailable";
    case ErrorKind::NoAdmissiblePrimes: return "NoAdmissiblePrimes";
    case ErrorKind::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::FactorizationLimit: return "FactorizationLimit";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace zcs
