#pragma once

#include <stdexcept>
#include <string>

namespace umo {

// Failure categories surfaced by the library. The C API maps these 1:1 to
// integer status codes, so the order here is part of the ABI.
enum class ErrorCode {
  None = 0,
  Parse,
  Io,
  Config,
  InvalidArgument,
  InvalidPopulation,
  InvalidProbability,
  DegenerateVariance,
  WrongRepresentation,
  UnboundedSupport,
  PairingError,
  IncompatibleHistograms,
  UnknownOperator,
  IncompatibleIndividuals,
  InvalidDecisionVector,
  UnknownProblem,
  IndicatorDomainError,
  MissingBounds,
  EmptyReference,
  NoRuns,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::None: return "ok";
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::Io: return "io-error";
    case ErrorCode::Config: return "config-error";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidPopulation: return "invalid-population";
    case ErrorCode::InvalidProbability: return "invalid-probability";
    case ErrorCode::DegenerateVariance: return "degenerate-variance";
    case ErrorCode::WrongRepresentation: return "wrong-representation";
    case ErrorCode::UnboundedSupport: return "unbounded-support";
    case ErrorCode::PairingError: return "pairing-error";
    case ErrorCode::IncompatibleHistograms: return "incompatible-histograms";
    case ErrorCode::UnknownOperator: return "unknown-operator";
    case ErrorCode::IncompatibleIndividuals: return "incompatible-individuals";
    case ErrorCode::InvalidDecisionVector: return "invalid-decision-vector";
    case ErrorCode::UnknownProblem: return "unknown-problem";
    case ErrorCode::IndicatorDomainError: return "indicator-domain-error";
    case ErrorCode::MissingBounds: return "missing-bounds";
    case ErrorCode::EmptyReference: return "empty-reference";
    case ErrorCode::NoRuns: return "no-runs";
    case ErrorCode::Internal: return "internal-error";
  }
  return "unknown-error";
}

}  // namespace umo
