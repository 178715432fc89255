#include "xlab/errors.hpp"

#include "xlab/numeric.hpp"

namespace xlab {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Input: return "input error";
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::Geometry: return "geometry error";
        case ErrorKind::Tracing: return "tracing error";
        case ErrorKind::Symmetry: return "symmetry error";
        case ErrorKind::Capability: return "capability error";
        case ErrorKind::Map: return "map error";
        case ErrorKind::Numeric: return "numeric error";
        case ErrorKind::Degeneracy: return "degeneracy error";
        case ErrorKind::Resolution: return "resolution error";
        case ErrorKind::Overflow: return "overflow error";
    }
    return "error";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Input:
        case ErrorKind::Domain:
        case ErrorKind::Geometry:
        case ErrorKind::Symmetry:
        case ErrorKind::Capability:
            return 2;
        default:
            return 3;
    }
}

Precision precision_from_bits(int bits) {
    if (bits <= 0) throw Error(ErrorKind::Input, "precision must be positive, got " + std::to_string(bits));
    if (bits <= 53) return Precision::Double;
    if (bits <= 64) return Precision::LongDouble;
    if (bits <= 106) return Precision::DoubleDouble;
    if (bits <= 128) return Precision::Quad;
    throw Error(ErrorKind::Input, "precision above 128 bits is not supported, got " + std::to_string(bits));
}

std::string to_string(Precision p) {
    switch (p) {
        case Precision::Double: return "binary64";
        case Precision::LongDouble: return "x87-extended";
        case Precision::DoubleDouble: return "double-double";
        case Precision::Quad: return "binary128";
    }
    return "?";
}

}  // namespace xlab
