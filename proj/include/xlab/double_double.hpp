#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo of two doubles with
// |lo| <= ulp(hi)/2, giving a 106-bit significand.
//
// Error-free transformations follow Dekker (1971) and Knuth's TwoSum; the
// product uses a hardware FMA. Transcendentals reduce the argument and sum
// a Taylor series in double-double, which is accurate to a few ulp for the
// argument ranges used here (|x| up to a few thousand radians).

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace xlab {

class DoubleDouble {
public:
    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double hi) : hi_(hi) {}  // NOLINT: implicit widening is intended
    constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}
    constexpr DoubleDouble(int v) : hi_(static_cast<double>(v)) {}
    constexpr DoubleDouble(long v) : hi_(static_cast<double>(v)), lo_(static_cast<double>(v - static_cast<long>(static_cast<double>(v)))) {}
    constexpr DoubleDouble(unsigned long v) : DoubleDouble(static_cast<long>(v)) {}

    [[nodiscard]] constexpr double hi() const { return hi_; }
    [[nodiscard]] constexpr double lo() const { return lo_; }
    explicit constexpr operator double() const { return hi_ + lo_; }

    friend DoubleDouble operator-(DoubleDouble a) { return {-a.hi_, -a.lo_}; }

    friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
        double s, e;
        two_sum(a.hi_, b.hi_, s, e);
        double t, f;
        two_sum(a.lo_, b.lo_, t, f);
        e += t;
        fast_two_sum(s, e, s, e);
        e += f;
        fast_two_sum(s, e, s, e);
        return {s, e};
    }
    friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

    friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
        double p = a.hi_ * b.hi_;
        double e = std::fma(a.hi_, b.hi_, -p);
        e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
        fast_two_sum(p, e, p, e);
        return {p, e};
    }

    friend DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
        // Two Newton-style correction steps on the quotient.
        double q1 = a.hi_ / b.hi_;
        DoubleDouble r = a - b * DoubleDouble(q1);
        double q2 = r.hi_ / b.hi_;
        r = r - b * DoubleDouble(q2);
        double q3 = r.hi_ / b.hi_;
        DoubleDouble q(q1, q2);
        fast_two_sum(q.hi_, q.lo_, q.hi_, q.lo_);
        return q + DoubleDouble(q3);
    }

    DoubleDouble& operator+=(DoubleDouble b) { return *this = *this + b; }
    DoubleDouble& operator-=(DoubleDouble b) { return *this = *this - b; }
    DoubleDouble& operator*=(DoubleDouble b) { return *this = *this * b; }
    DoubleDouble& operator/=(DoubleDouble b) { return *this = *this / b; }

    friend bool operator==(DoubleDouble a, DoubleDouble b) { return a.hi_ == b.hi_ && a.lo_ == b.lo_; }
    friend bool operator<(DoubleDouble a, DoubleDouble b) { return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_); }
    friend bool operator>(DoubleDouble a, DoubleDouble b) { return b < a; }
    friend bool operator<=(DoubleDouble a, DoubleDouble b) { return !(b < a); }
    friend bool operator>=(DoubleDouble a, DoubleDouble b) { return !(a < b); }

    static DoubleDouble pi() { return {3.141592653589793116e+00, 1.224646799147353207e-16}; }
    static DoubleDouble epsilon() { return {4.93038065763132e-32, 0.0}; }  // 2^-104

private:
    static void two_sum(double a, double b, double& s, double& e) {
        s = a + b;
        double bb = s - a;
        e = (a - (s - bb)) + (b - bb);
    }
    static void fast_two_sum(double a, double b, double& s, double& e) {
        s = a + b;
        e = b - (s - a);
    }

    double hi_ = 0.0;
    double lo_ = 0.0;
};

DoubleDouble sqrt(DoubleDouble x);
DoubleDouble abs(DoubleDouble x);
DoubleDouble sin(DoubleDouble x);
DoubleDouble cos(DoubleDouble x);
DoubleDouble atan2(DoubleDouble y, DoubleDouble x);
DoubleDouble exp(DoubleDouble x);
DoubleDouble log(DoubleDouble x);
std::string to_string(DoubleDouble x);

}  // namespace xlab
