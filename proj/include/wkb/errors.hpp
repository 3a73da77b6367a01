#pragma once

#include <stdexcept>
#include <string>

namespace wkb {

/* Every failure mode carries a kind so callers (the CLI in particular) can
 * separate bad input from a verification that genuinely failed. */
enum class ErrorKind {
    DimensionMismatch,
    IndexOutOfRange,
    NonClosedForm,
    NonInvertible,
    NotASquare,
    EmptyWindow,
    NonHomogeneous,
    NotSymplectic,
    SolverFailure,
    NotInner,
    InconsistentCovering,
    NonCentralDefect,
    IsoViolated,
    ParseError,
    BadDocument,
    BadRequest,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    /* Input-side problems exit a CLI run with status 2; failed mathematical
     * verification on well-formed input exits with status 1. */
    bool is_input_error() const {
        switch (kind_) {
        case ErrorKind::DimensionMismatch:
        case ErrorKind::IndexOutOfRange:
        case ErrorKind::NonInvertible:
        case ErrorKind::NotASquare:
        case ErrorKind::EmptyWindow:
        case ErrorKind::NonHomogeneous:
        case ErrorKind::NotSymplectic:
        case ErrorKind::ParseError:
        case ErrorKind::BadDocument:
        case ErrorKind::BadRequest:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

} // namespace wkb
