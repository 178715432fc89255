#include "xlab/potential.hpp"

#include <cmath>
#include <cstdio>

namespace xlab {
namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void off_support(Complex z, double distance) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "point (%.12g, %.12g) is %.3g away from the support", z.real(), z.imag(), distance);
    throw Error(ErrorKind::Domain, buf);
}

}  // namespace

const char* to_string(DensitySource s) {
    switch (s) {
        case DensitySource::ClosedFormCircle: return "closed-form-circle";
        case DensitySource::ClosedFormInterval: return "closed-form-interval";
        case DensitySource::Lemniscate: return "lemniscate";
        case DensitySource::ExteriorMap: return "exterior-map";
    }
    return "?";
}

ExteriorMapSpec ExteriorMapSpec::circle(Complex center, double radius) {
    if (!(radius > 0.0)) throw Error(ErrorKind::Input, "circle radius must be positive");
    return {center, radius, radius, 0.0};
}

ExteriorMapSpec ExteriorMapSpec::ellipse(double a, double b, Complex center, double rotation) {
    if (!(a > 0.0) || !(b > 0.0) || a < b) throw Error(ErrorKind::Input, "ellipse needs a >= b > 0");
    return {center, a, b, rotation};
}

Complex ExteriorMapSpec::inverse(Complex w) const {
    return center + std::polar(1.0, rotation) * (0.5 * ((a + b) * w + (a - b) / w));
}

Complex ExteriorMapSpec::inverse_derivative(Complex w) const {
    return std::polar(1.0, rotation) * (0.5 * ((a + b) - (a - b) / (w * w)));
}

Complex ExteriorMapSpec::phi(Complex z) const {
    const Complex zeta = std::polar(1.0, -rotation) * (z - center);
    const Complex root = std::sqrt(zeta * zeta - (a * a - b * b));
    Complex w = (zeta + root) / (a + b);
    const Complex other = (zeta - root) / (a + b);
    if (std::abs(other) > std::abs(w)) w = other;
    return w;
}

EquilibriumDensity density_circle(double radius, Complex center) {
    if (!(radius > 0.0)) throw Error(ErrorKind::Input, "circle radius must be positive");
    return EquilibriumDensity(DensitySource::ClosedFormCircle, [radius, center](Complex z) {
        const double d = std::fabs(std::abs(z - center) - radius);
        if (d > kSupportTolerance) off_support(z, d);
        return 1.0 / (2.0 * kPi * radius);
    });
}

double density_interval(double a, double b, Complex x) {
    if (!(a < b)) throw Error(ErrorKind::Input, "interval needs a < b");
    if (std::fabs(x.imag()) > kSupportTolerance) off_support(x, std::fabs(x.imag()));
    const double s = (2.0 * x.real() - a - b) / (b - a);
    if (!(std::fabs(s) < 1.0))
        throw Error(ErrorKind::Domain, "the arcsine density is infinite at and beyond the endpoints");
    return 2.0 / (kPi * (b - a) * std::sqrt(1.0 - s * s));
}

double density_lemniscate(const ComplexPolynomial& poly, Complex z) {
    // Project onto |T| = 1 by Newton steps along the gradient of |T|.
    Complex p = z;
    for (int it = 0; it < 8; ++it) {
        const Complex t = poly(p);
        const Complex dt = poly.derivative_at(p);
        const double mag = std::abs(t);
        if (std::abs(dt) == 0.0 || mag == 0.0) break;
        const double r = 1.0 - mag;
        if (std::fabs(r) < 1e-15) break;
        p += r * std::conj(dt) * t / (mag * std::norm(dt));
    }
    const double d = std::abs(p - z);
    if (d > kSupportTolerance || std::fabs(std::abs(poly(p)) - 1.0) > 1e-12) off_support(z, d);
    return std::abs(poly.derivative_at(p)) / (2.0 * kPi * poly.degree());
}

double density_exterior_map(const ExteriorMapSpec& map, Complex z) {
    Complex w = map.phi(z);
    w /= std::abs(w);
    const double d = std::abs(map.inverse(w) - z);
    if (d > kSupportTolerance) off_support(z, d);
    const double dzdw = std::abs(map.inverse_derivative(w));
    if (!(dzdw > 1e-14)) throw Error(ErrorKind::Map, "exterior map is not invertible at this point");
    return 1.0 / (2.0 * kPi * dzdw);
}

double green_normal_derivative(double density_value) {
    if (!(density_value > 0.0)) throw Error(ErrorKind::Input, "density must be positive");
    return 2.0 * kPi * density_value;
}

EquilibriumDensity equilibrium_density(const SupportSpec& support) {
    switch (support.kind()) {
        case SupportKind::Circle: {
            const auto& c = support.as<CircleSupport>();
            return density_circle(c.radius, c.center);
        }
        case SupportKind::Interval: {
            const auto& iv = support.as<IntervalSupport>();
            return EquilibriumDensity(DensitySource::ClosedFormInterval,
                                      [iv](Complex x) { return density_interval(iv.a, iv.b, x); });
        }
        case SupportKind::Ellipse: {
            const auto& e = support.as<EllipseSupport>();
            const auto map = ExteriorMapSpec::ellipse(e.a, e.b, e.center, e.rotation);
            return EquilibriumDensity(DensitySource::ExteriorMap, [map](Complex z) { return density_exterior_map(map, z); });
        }
        case SupportKind::Lemniscate: {
            const auto poly = support.as<LemniscateSupport>().poly;
            return EquilibriumDensity(DensitySource::Lemniscate, [poly](Complex z) { return density_lemniscate(poly, z); });
        }
        case SupportKind::Arcs: break;
    }
    throw Error(ErrorKind::Capability, "no equilibrium density for arc chains");
}

}  // namespace xlab
