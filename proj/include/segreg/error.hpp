#ifndef SEGREG_ERROR_HPP
#define SEGREG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace segreg {

enum class ErrorKind {
    InvalidArgument,   // bad parameters, degenerate mesh, out-of-range index
    Validation,        // problem data violates a scheme hypothesis
    UnknownBenchmark,  // catalog miss
    Unavailable,       // requested reference/exact data not present
    Numerical,         // NaN/Inf detected during iteration
    Io,                // file read/write failure
};

/// Library-wide exception. The message carries the diagnostic; `kind`
/// lets the C boundary map to a stable status code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

} // namespace segreg

#endif
