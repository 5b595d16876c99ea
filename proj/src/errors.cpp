#include "esd/errors.hpp"

namespace esd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::WernerParamOutOfRange: return "WernerParamOutOfRange";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::InternalChannelError: return "InternalChannelError";
    case ErrorCode::EigFailure: return "EigFailure";
    case ErrorCode::NotInSubspaceI: return "NotInSubspaceI";
    case ErrorCode::AllRatesZero: return "AllRatesZero";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::BadStateFile: return "BadStateFile";
    case ErrorCode::WriteError: return "WriteError";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::BadGrid: return "BadGrid";
  }
  return "Unknown";
}

}  // namespace esd
