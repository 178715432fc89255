#pragma once

#include <stdexcept>
#include <string>

namespace xlab {

enum class ErrorKind {
    Input,       // malformed file, bad CLI value, violated precondition
    Domain,      // point or parameter outside the admissible set
    Geometry,    // invalid support (e.g. critical point on a lemniscate)
    Tracing,     // curve tracer failed to converge
    Symmetry,    // transfer map needs a symmetric measure
    Capability,  // geometry not supported by the requested operation
    Map,         // conformal map cannot be inverted at a point
    Numeric,     // non-finite values, root finder failure
    Degeneracy,  // orthonormalization broke down
    Resolution,  // quadrature grading underflowed
    Overflow,    // kernel evaluation overflowed
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Orthonormalization stopped before the requested degree.
class DegeneracyError : public Error {
public:
    DegeneracyError(int achieved_degree, const std::string& what)
        : Error(ErrorKind::Degeneracy, what), achieved_degree_(achieved_degree) {}
    [[nodiscard]] int achieved_degree() const { return achieved_degree_; }

private:
    int achieved_degree_;
};

/// CLI exit status for an error: 2 for input-side problems, 3 for numerics.
int exit_code(ErrorKind kind);

}  // namespace xlab
