#pragma once

// Scalar types used by the precision-generic kernels.
//
// Every numerical kernel that touches inner products is templated on a real
// type R drawn from {double, long double, DoubleDouble, Float128}. The
// helpers in xlab::num give those types a uniform math surface, and Cx<R> is
// a minimal complex number that works for all four (std::complex is only
// specified for the built-in floating types).

#include <cmath>
#include <complex>
#include <limits>
#include <quadmath.h>
#include <string>

#include "xlab/double_double.hpp"

namespace xlab {

using Float128 = __float128;
using Complex = std::complex<double>;

/// Working precision of a computation, named by significand bits.
enum class Precision : int {
    Double = 53,
    LongDouble = 64,
    DoubleDouble = 106,
    Quad = 113,
};

/// Maps a requested bit count to the smallest supported precision that
/// provides at least that many significand bits. 128 selects IEEE binary128
/// (113-bit significand). Throws InputError for counts above 128.
Precision precision_from_bits(int bits);
[[nodiscard]] inline int bits_of(Precision p) { return static_cast<int>(p); }
std::string to_string(Precision p);

namespace num {

inline double sqrt(double x) { return std::sqrt(x); }
inline long double sqrt(long double x) { return std::sqrt(x); }
inline Float128 sqrt(Float128 x) { return sqrtq(x); }
inline DoubleDouble sqrt(DoubleDouble x) { return xlab::sqrt(x); }

inline double abs(double x) { return std::fabs(x); }
inline long double abs(long double x) { return std::fabs(x); }
inline Float128 abs(Float128 x) { return fabsq(x); }
inline DoubleDouble abs(DoubleDouble x) { return xlab::abs(x); }

inline double sin(double x) { return std::sin(x); }
inline long double sin(long double x) { return std::sin(x); }
inline Float128 sin(Float128 x) { return sinq(x); }
inline DoubleDouble sin(DoubleDouble x) { return xlab::sin(x); }

inline double cos(double x) { return std::cos(x); }
inline long double cos(long double x) { return std::cos(x); }
inline Float128 cos(Float128 x) { return cosq(x); }
inline DoubleDouble cos(DoubleDouble x) { return xlab::cos(x); }

inline double atan2(double y, double x) { return std::atan2(y, x); }
inline long double atan2(long double y, long double x) { return std::atan2(y, x); }
inline Float128 atan2(Float128 y, Float128 x) { return atan2q(y, x); }
inline DoubleDouble atan2(DoubleDouble y, DoubleDouble x) { return xlab::atan2(y, x); }

template <class R> R pi();
template <> inline double pi<double>() { return 3.14159265358979323846; }
template <> inline long double pi<long double>() { return 3.14159265358979323846264338327950288L; }
template <> inline Float128 pi<Float128>() { return M_PIq; }
template <> inline DoubleDouble pi<DoubleDouble>() { return DoubleDouble::pi(); }

template <class R> R epsilon();
template <> inline double epsilon<double>() { return std::numeric_limits<double>::epsilon(); }
template <> inline long double epsilon<long double>() { return std::numeric_limits<long double>::epsilon(); }
template <> inline Float128 epsilon<Float128>() { return FLT128_EPSILON; }
template <> inline DoubleDouble epsilon<DoubleDouble>() { return DoubleDouble::epsilon(); }

template <class R> constexpr int digits();
template <> constexpr int digits<double>() { return 53; }
template <> constexpr int digits<long double>() { return 64; }
template <> constexpr int digits<DoubleDouble>() { return 106; }
template <> constexpr int digits<Float128>() { return 113; }

template <class R> inline double to_double(R x) { return static_cast<double>(x); }

template <class R> inline bool is_finite(R x) { return std::isfinite(to_double(x)); }

}  // namespace num

/// Minimal complex number over any of the supported real types.
template <class R>
struct Cx {
    R re{};
    R im{};

    constexpr Cx() = default;
    constexpr Cx(R r) : re(r), im(R(0.0)) {}  // NOLINT
    constexpr Cx(R r, R i) : re(r), im(i) {}
    static Cx from(Complex z) { return {R(z.real()), R(z.imag())}; }
    [[nodiscard]] Complex to_std() const { return {num::to_double(re), num::to_double(im)}; }

    friend Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator-(Cx a) { return {-a.re, -a.im}; }
    friend Cx operator*(Cx a, Cx b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    friend Cx operator*(R s, Cx a) { return {s * a.re, s * a.im}; }
    friend Cx operator*(Cx a, R s) { return {s * a.re, s * a.im}; }
    friend Cx operator/(Cx a, R s) { return {a.re / s, a.im / s}; }
    friend Cx operator/(Cx a, Cx b) {
        const R d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Cx& operator+=(Cx b) { re += b.re; im += b.im; return *this; }
    Cx& operator-=(Cx b) { re -= b.re; im -= b.im; return *this; }
    Cx& operator*=(Cx b) { return *this = *this * b; }
};

template <class R> inline Cx<R> conj(Cx<R> z) { return {z.re, -z.im}; }
template <class R> inline R norm(Cx<R> z) { return z.re * z.re + z.im * z.im; }
template <class R> inline R abs(Cx<R> z) { return num::sqrt(norm(z)); }
template <class R> inline Cx<R> expi(R t) { return {num::cos(t), num::sin(t)}; }

/// Runs f.template operator()<R>() with R selected by precision.
template <class F>
decltype(auto) dispatch_precision(Precision p, F&& f) {
    switch (p) {
        case Precision::Double: return f.template operator()<double>();
        case Precision::LongDouble: return f.template operator()<long double>();
        case Precision::DoubleDouble: return f.template operator()<DoubleDouble>();
        case Precision::Quad: break;
    }
    return f.template operator()<Float128>();
}

}  // namespace xlab
