#include "arae/types.hpp"

namespace arae {

const char* frame_name(Frame f) {
    switch (f) {
        case Frame::Robot: return "R";
        case Frame::Shoulder: return "S";
        case Frame::Pelvis: return "P";
    }
    return "?";
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Unreachable: return "Unreachable";
        case ErrorCode::BaseSingularity: return "BaseSingularity";
        case ErrorCode::ElevationSingularity: return "ElevationSingularity";
        case ErrorCode::InconsistentLengths: return "InconsistentLengths";
        case ErrorCode::ZeroElbow: return "ZeroElbow";
        case ErrorCode::NoIntersection: return "NoIntersection";
        case ErrorCode::LateralOverreach: return "LateralOverreach";
        case ErrorCode::WorkspaceViolation: return "WorkspaceViolation";
        case ErrorCode::SolverFailure: return "SolverFailure";
        case ErrorCode::JointLimitViolation: return "JointLimitViolation";
        case ErrorCode::FrameMismatch: return "FrameMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::ZeroBaseline: return "ZeroBaseline";
        case ErrorCode::SampleRateTooLow: return "SampleRateTooLow";
        case ErrorCode::MissingGroundTruth: return "MissingGroundTruth";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace arae
