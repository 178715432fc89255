#include "xlab/double_double.hpp"

#include <cstdio>

namespace xlab {
namespace {

const DoubleDouble kHalfPi{1.570796326794896558e+00, 6.123233995736766036e-17};
const DoubleDouble kLn2{6.931471805599452862e-01, 2.319046813846299558e-17};

// Taylor series of sin and cos on |r| <= pi/4.
void sin_cos_reduced(DoubleDouble r, DoubleDouble& s, DoubleDouble& c) {
    const DoubleDouble r2 = r * r;
    DoubleDouble term = r;
    s = r;
    for (int k = 1; k < 40; ++k) {
        term = term * r2 / DoubleDouble(static_cast<double>((2 * k) * (2 * k + 1)));
        term = -term;
        s += term;
        if (std::fabs(term.hi()) < 1e-34) break;
    }
    term = DoubleDouble(1.0);
    c = term;
    for (int k = 1; k < 40; ++k) {
        term = term * r2 / DoubleDouble(static_cast<double>((2 * k - 1) * (2 * k)));
        term = -term;
        c += term;
        if (std::fabs(term.hi()) < 1e-34) break;
    }
}

void sin_cos(DoubleDouble x, DoubleDouble& s, DoubleDouble& c) {
    const double k = std::nearbyint(x.hi() / kHalfPi.hi());
    const DoubleDouble r = x - kHalfPi * DoubleDouble(k);
    DoubleDouble sr, cr;
    sin_cos_reduced(r, sr, cr);
    const long q = static_cast<long>(k) & 3L;
    switch (q) {
        case 0: s = sr; c = cr; break;
        case 1: s = cr; c = -sr; break;
        case 2: s = -sr; c = -cr; break;
        default: s = -cr; c = sr; break;
    }
}

}  // namespace

DoubleDouble abs(DoubleDouble x) { return x.hi() < 0.0 ? -x : x; }

DoubleDouble sqrt(DoubleDouble x) {
    if (x.hi() <= 0.0) return DoubleDouble(x.hi() == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
    const double s = std::sqrt(x.hi());
    const DoubleDouble sd(s);
    return sd + (x - sd * sd) / DoubleDouble(2.0 * s);
}

DoubleDouble sin(DoubleDouble x) {
    DoubleDouble s, c;
    sin_cos(x, s, c);
    return s;
}

DoubleDouble cos(DoubleDouble x) {
    DoubleDouble s, c;
    sin_cos(x, s, c);
    return c;
}

DoubleDouble atan2(DoubleDouble y, DoubleDouble x) {
    DoubleDouble a(std::atan2(y.hi(), x.hi()));
    for (int it = 0; it < 2; ++it) {
        DoubleDouble s, c;
        sin_cos(a, s, c);
        a += (y * c - x * s) / (x * c + y * s);
    }
    return a;
}

DoubleDouble exp(DoubleDouble x) {
    const double k = std::nearbyint(x.hi() / kLn2.hi());
    DoubleDouble r = x - kLn2 * DoubleDouble(k);
    r = r / DoubleDouble(1024.0);
    DoubleDouble term(1.0);
    DoubleDouble sum(1.0);
    for (int n = 1; n < 30; ++n) {
        term = term * r / DoubleDouble(static_cast<double>(n));
        sum += term;
        if (std::fabs(term.hi()) < 1e-34) break;
    }
    for (int i = 0; i < 10; ++i) sum = sum * sum;
    const int e = static_cast<int>(k);
    return {std::ldexp(sum.hi(), e), std::ldexp(sum.lo(), e)};
}

DoubleDouble log(DoubleDouble x) {
    DoubleDouble a(std::log(x.hi()));
    for (int it = 0; it < 2; ++it) a += x * exp(-a) - DoubleDouble(1.0);
    return a;
}

std::string to_string(DoubleDouble x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17g", x.hi(), x.lo());
    return buf;
}

}  // namespace xlab
