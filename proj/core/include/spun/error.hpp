#pragma once

#include <stdexcept>
#include <string>

namespace spun {

enum class ErrorKind {
    MalformedDocument,
    UnpairedFace,
    NonInvolutivePairing,
    OrientationViolation,
    NonTorusLink,
    DegenerateShape,
    NotPointed,
    DimensionMismatch,
    IncompatibleSupports,
    DegenerateSupport,
    NoAdmissibleSolution,
    Io,
};

const char* to_string(ErrorKind kind);

// Broad grouping used by the command line tool to pick an exit status.
enum class ErrorClass { Validation, Computation, Io };
ErrorClass classify(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace spun
