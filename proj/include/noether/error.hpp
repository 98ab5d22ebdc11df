#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace noether {

/// Every failure the library can raise. The CLI maps each code to an exit
/// status through category().
enum class Errc {
  // lattice-core
  AsymmetricGram,
  DimensionMismatch,
  DuplicateName,
  LatticeMismatch,
  EmptySubset,
  IndexOutOfRange,
  SingularSystem,
  UnknownLabel,
  // zariski
  NotPseudoEffectiveInConfiguration,
  NegativeOffDiagonalOnSupport,
  SplitMismatch,
  // invariants
  NotNNef,
  NotNEquivalent,
  NegativePattern,
  SupportTooLarge,
  // chains
  InvalidChain,
  // noether
  H0TooSmall,
  PmTooSmall,
  NotFibreMultiple,
  PencilScenario,
  NonIntegralMultiple,
  IterationDiverged,
  BoundaryHypothesisViolated,
  GenusCheckFailed,
  CoefficientCheckFailed,
  InconsistentTriple,
  DTooSmall,
  // cli
  ParseError,
  ValidationError,
  MissingSection,
};

enum class ErrorCategory { Usage = 1, Validation = 2, Mathematical = 3 };

constexpr std::string_view name(Errc code) {
  switch (code) {
    case Errc::AsymmetricGram: return "AsymmetricGram";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::LatticeMismatch: return "LatticeMismatch";
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::NotPseudoEffectiveInConfiguration: return "NotPseudoEffectiveInConfiguration";
    case Errc::NegativeOffDiagonalOnSupport: return "NegativeOffDiagonalOnSupport";
    case Errc::SplitMismatch: return "SplitMismatch";
    case Errc::NotNNef: return "NotNNef";
    case Errc::NotNEquivalent: return "NotNEquivalent";
    case Errc::NegativePattern: return "NegativePattern";
    case Errc::SupportTooLarge: return "SupportTooLarge";
    case Errc::InvalidChain: return "InvalidChain";
    case Errc::H0TooSmall: return "H0TooSmall";
    case Errc::PmTooSmall: return "PmTooSmall";
    case Errc::NotFibreMultiple: return "NotFibreMultiple";
    case Errc::PencilScenario: return "PencilScenario";
    case Errc::NonIntegralMultiple: return "NonIntegralMultiple";
    case Errc::IterationDiverged: return "IterationDiverged";
    case Errc::BoundaryHypothesisViolated: return "BoundaryHypothesisViolated";
    case Errc::GenusCheckFailed: return "GenusCheckFailed";
    case Errc::CoefficientCheckFailed: return "CoefficientCheckFailed";
    case Errc::InconsistentTriple: return "InconsistentTriple";
    case Errc::DTooSmall: return "DTooSmall";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::MissingSection: return "MissingSection";
  }
  return "Unknown";
}

/// Input problems are validation failures; everything that only shows up once
/// the mathematics runs (a singular system, a failed decomposition, a lemma
/// check that does not hold) is a mathematical failure.
constexpr ErrorCategory category(Errc code) {
  switch (code) {
    case Errc::SingularSystem:
    case Errc::NotPseudoEffectiveInConfiguration:
    case Errc::NegativeOffDiagonalOnSupport:
    case Errc::NotNNef:
    case Errc::NotNEquivalent:
    case Errc::SupportTooLarge:
    case Errc::NotFibreMultiple:
    case Errc::IterationDiverged:
    case Errc::BoundaryHypothesisViolated:
    case Errc::GenusCheckFailed:
    case Errc::CoefficientCheckFailed:
    case Errc::InconsistentTriple:
      return ErrorCategory::Mathematical;
    default:
      return ErrorCategory::Validation;
  }
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(name(code)) + ": " + what), code_(code), message_(what) {}

  Errc code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace noether
