#pragma once

#include <string>

#include "xlab/numeric.hpp"

namespace xlab {

/// A curve parameter value of the form offset + (pi_num/pi_den)*pi.
///
/// Jump locations such as pi/2 must stay exact when nodes are generated in
/// extended precision, so the pi multiple is kept symbolic and only
/// materialized in the working type.
struct ParamValue {
    double offset = 0.0;
    long pi_num = 0;
    long pi_den = 1;

    constexpr ParamValue() = default;
    constexpr ParamValue(double v) : offset(v) {}  // NOLINT
    static ParamValue pi_fraction(long num, long den);

    [[nodiscard]] double approx() const;
    template <class R>
    [[nodiscard]] R as() const {
        R v(offset);
        if (pi_num != 0) v = v + R(static_cast<double>(pi_num)) * num::pi<R>() / R(static_cast<double>(pi_den));
        return v;
    }

    /// Adds a rational multiple of pi, keeping the result exact.
    [[nodiscard]] ParamValue plus_pi(long num, long den) const;
    [[nodiscard]] ParamValue plus(double delta) const;

    /// Parses a decimal ("1.25") or a pi expression ("pi/2", "3*pi/2",
    /// "-pi/4", "2pi"). Throws InputError on anything else.
    static ParamValue parse(const std::string& text);
    [[nodiscard]] std::string to_string() const;
};

/// Linear interpolation a + (b - a) * f evaluated in the working type.
/// Panel endpoints are all of this form.
struct ParamPoint {
    ParamValue a;
    ParamValue b;
    double fraction = 0.0;

    [[nodiscard]] double approx() const { return a.approx() + (b.approx() - a.approx()) * fraction; }
    template <class R>
    [[nodiscard]] R as() const {
        if (fraction == 0.0) return a.as<R>();
        if (fraction == 1.0) return b.as<R>();
        const R ra = a.as<R>();
        return ra + (b.as<R>() - ra) * R(fraction);
    }
};

}  // namespace xlab
