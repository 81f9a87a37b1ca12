#pragma once

#include <stdexcept>
#include <string>

namespace zd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// input problems: exit code 2 at the CLI
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct ReferenceError : Error { using Error::Error; };

// computation problems: exit code 3
struct DomainError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct NotRepresentable : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct InvalidModel : Error { using Error::Error; };
struct Unbounded : Error { using Error::Error; };
struct OracleInconsistency : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };

}  // namespace zd
