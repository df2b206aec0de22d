#include "nanoeit/error.hpp"

namespace nanoeit {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::Precondition: return "precondition violated";
        case ErrorKind::DegenerateGeometry: return "degenerate geometry";
        case ErrorKind::Singularity: return "singular response";
        case ErrorKind::Instability: return "numerical instability";
        case ErrorKind::Resource: return "resource limit";
    }
    return "unknown";
}

}  // namespace nanoeit
