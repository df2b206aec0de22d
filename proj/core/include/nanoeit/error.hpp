#pragma once

#include <stdexcept>
#include <string>

namespace nanoeit {

/// Broad failure classes. The CLI maps each one onto a process exit code.
enum class ErrorKind {
    InvalidArgument,   // parameter set violates a type invariant
    Precondition,      // operation called outside its domain
    DegenerateGeometry,
    Singularity,       // exact pole of a closed-form response
    Instability,       // divergent or unstable dynamics
    Resource,          // problem too large for the dense solvers
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace nanoeit
