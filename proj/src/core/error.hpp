#pragma once
#include <stdexcept>
#include <string>

namespace grc {

// One error type for the whole library; the code is what the C API and the
// CLI report, the message carries the human-readable detail.
enum class ErrCode {
  Parse,
  Validation,
  NonSquare,
  AmbiguousLeadingTerm,
  VanishingCoefficient,
  RankDeficient,
  NotVertical,
  NotHorizontal,
  RepresentationMismatch,
  GenericityExhausted,
  NotFinite,
  DimensionMismatch,
  Unsupported,
  Internal,
};

struct Error : std::runtime_error {
  ErrCode code;
  Error(ErrCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

inline const char* err_code_name(ErrCode c) {
  switch (c) {
    case ErrCode::Parse: return "Parse";
    case ErrCode::Validation: return "Validation";
    case ErrCode::NonSquare: return "NonSquare";
    case ErrCode::AmbiguousLeadingTerm: return "AmbiguousLeadingTerm";
    case ErrCode::VanishingCoefficient: return "VanishingCoefficient";
    case ErrCode::RankDeficient: return "RankDeficient";
    case ErrCode::NotVertical: return "NotVertical";
    case ErrCode::NotHorizontal: return "NotHorizontal";
    case ErrCode::RepresentationMismatch: return "RepresentationMismatch";
    case ErrCode::GenericityExhausted: return "GenericityExhausted";
    case ErrCode::NotFinite: return "NotFinite";
    case ErrCode::DimensionMismatch: return "DimensionMismatch";
    case ErrCode::Unsupported: return "Unsupported";
    case ErrCode::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace grc
