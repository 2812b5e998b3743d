#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

// Every failure the engine can signal. Report-valued checks do not throw;
// constructors and algebraic operations with violated preconditions do.
enum class Err {
  DivisionByZero,
  UnsupportedSpecialization,
  MixedAlgebras,
  InvalidCoefficient,
  DerivationOrderExceeded,
  RelationViolation,
  UnsupportedInversion,
  RankMismatch,
  NotFree,
  NotLieHom,
  NotCompatible,
  AmbiguousModuleMap,
  DomainMismatch,
  NotInvertible,
  NotInBasisSpan,
  NotHermitian,
  NotComplement,
  NotOrthogonal,
  NotSurjective,
  GramSingular,
  NotTangential,
  SingularMatrix,
  ParseError,
  ConfigError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::UnsupportedSpecialization: return "UnsupportedSpecialization";
    case Err::MixedAlgebras: return "MixedAlgebras";
    case Err::InvalidCoefficient: return "InvalidCoefficient";
    case Err::DerivationOrderExceeded: return "DerivationOrderExceeded";
    case Err::RelationViolation: return "RelationViolation";
    case Err::UnsupportedInversion: return "UnsupportedInversion";
    case Err::RankMismatch: return "RankMismatch";
    case Err::NotFree: return "NotFree";
    case Err::NotLieHom: return "NotLieHom";
    case Err::NotCompatible: return "NotCompatible";
    case Err::AmbiguousModuleMap: return "AmbiguousModuleMap";
    case Err::DomainMismatch: return "DomainMismatch";
    case Err::NotInvertible: return "NotInvertible";
    case Err::NotInBasisSpan: return "NotInBasisSpan";
    case Err::NotHermitian: return "NotHermitian";
    case Err::NotComplement: return "NotComplement";
    case Err::NotOrthogonal: return "NotOrthogonal";
    case Err::NotSurjective: return "NotSurjective";
    case Err::GramSingular: return "GramSingular";
    case Err::NotTangential: return "NotTangential";
    case Err::SingularMatrix: return "SingularMatrix";
    case Err::ParseError: return "ParseError";
    case Err::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

class EngineError : public std::runtime_error {
 public:
  EngineError(Err kind, const std::string& msg)
      : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) {
  throw EngineError(kind, msg);
}

inline void require(bool cond, Err kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

}  // namespace ncg
