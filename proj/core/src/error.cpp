#include "spun/error.hpp"

namespace spun {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::UnpairedFace: return "UnpairedFace";
    case ErrorKind::NonInvolutivePairing: return "NonInvolutivePairing";
    case ErrorKind::OrientationViolation: return "OrientationViolation";
    case ErrorKind::NonTorusLink: return "NonTorusLink";
    case ErrorKind::DegenerateShape: return "DegenerateShape";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IncompatibleSupports: return "IncompatibleSupports";
    case ErrorKind::DegenerateSupport: return "DegenerateSupport";
    case ErrorKind::NoAdmissibleSolution: return "NoAdmissibleSolution";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

ErrorClass classify(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedDocument:
    case ErrorKind::UnpairedFace:
    case ErrorKind::NonInvolutivePairing:
    case ErrorKind::OrientationViolation:
    case ErrorKind::NonTorusLink:
    case ErrorKind::DimensionMismatch:
        return ErrorClass::Validation;
    case ErrorKind::Io:
        return ErrorClass::Io;
    default:
        return ErrorClass::Computation;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace spun
