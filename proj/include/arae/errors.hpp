#pragma once

#include <stdexcept>
#include <string>

namespace arae {

enum class ErrorCode {
    // kinematics / solvers
    Unreachable,
    BaseSingularity,
    ElevationSingularity,
    InconsistentLengths,
    ZeroElbow,
    NoIntersection,
    LateralOverreach,
    WorkspaceViolation,
    SolverFailure,
    JointLimitViolation,
    FrameMismatch,
    // metrics / signal processing
    LengthMismatch,
    ZeroBaseline,
    SampleRateTooLow,
    MissingGroundTruth,
    // input handling
    ParseError,
    ConfigError,
};

/// All library failures are reported as Error; `code` identifies the cause so
/// callers (and the CLI exit-code mapping) can react without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

    /// True for malformed input (files, config); false for numeric/solver failures.
    bool is_input_error() const {
        return code_ == ErrorCode::ParseError || code_ == ErrorCode::ConfigError;
    }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace arae
