#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gkz {

enum class ErrorCode {
  InvalidInput,
  DegenerateSimplex,
  IndexNotInSimplex,
  NormalizationImpossible,
  NotATriangulation,
  ZeroVolume,
  NotAdjacent,
  NotConvergent,
  PoleHit,
  NonConverged,
  OutsideDomain,
  NotASeriesInZj,
  SectorViolation,
  ContourHitsPole,
  QuadratureNotConverged,
  ResonantParameters,
  RepresentativeMismatch,
  EmptySector,
  MarginTooSmall,
  BudgetExceeded,
};

constexpr std::string_view name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::IndexNotInSimplex: return "IndexNotInSimplex";
    case ErrorCode::NormalizationImpossible: return "NormalizationImpossible";
    case ErrorCode::NotATriangulation: return "NotATriangulation";
    case ErrorCode::ZeroVolume: return "ZeroVolume";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::NotConvergent: return "NotConvergent";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::NonConverged: return "NonConverged";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NotASeriesInZj: return "NotASeriesInZj";
    case ErrorCode::SectorViolation: return "SectorViolation";
    case ErrorCode::ContourHitsPole: return "ContourHitsPole";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::ResonantParameters: return "ResonantParameters";
    case ErrorCode::RepresentativeMismatch: return "RepresentativeMismatch";
    case ErrorCode::EmptySector: return "EmptySector";
    case ErrorCode::MarginTooSmall: return "MarginTooSmall";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(name(code)) + ": " + what), code_(code), message_(what) {}
  ErrorCode code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace gkz
