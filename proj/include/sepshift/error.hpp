#pragma once

#include <stdexcept>
#include <string>

namespace sepshift {

/// Failure categories. The CLI maps each to an exit code.
enum class ErrorKind {
    Usage,         // malformed input, bad arguments, schema violations
    Shape,         // element does not match its group descriptor
    Resource,      // a configurable size or work cap was exceeded
    Verification,  // an object was produced but failed its checks
    Unsupported,   // operation is not defined for this kind of input
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string & what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string & what) { throw Error(kind, what); }

inline const char * to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Verification: return "verification";
    case ErrorKind::Unsupported: return "unsupported";
    }
    return "unknown";
}

} // namespace sepshift
