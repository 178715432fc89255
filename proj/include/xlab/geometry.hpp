#pragma once

// Supports of measures: intervals, circles, ellipses, polynomial lemniscates
// and chains of such arcs, with regular parametrizations that can be
// evaluated in any working precision.

#include <algorithm>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "xlab/errors.hpp"
#include "xlab/numeric.hpp"
#include "xlab/param.hpp"
#include "xlab/polynomial.hpp"

namespace xlab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// One component of a lemniscate {|T(z)| = 1}, parametrized by the
/// continuous argument phi of T: z(phi) solves T(z) = exp(i phi).
///
/// arg T increases monotonically along the curve (the level set has no
/// critical points), so phi is a regular parameter. A component enclosing
/// m zeros of T spans phi in [begin, begin + 2 pi m).
class LemniscateComponent {
public:
    LemniscateComponent(ComplexPolynomial poly, double phi_begin, int winding, std::vector<Complex> table);

    [[nodiscard]] const ComplexPolynomial& poly() const { return poly_; }
    [[nodiscard]] int winding() const { return winding_; }
    [[nodiscard]] double phi_begin() const { return phi_begin_; }
    [[nodiscard]] double phi_end() const { return phi_begin_ + kTwoPi * winding_; }
    [[nodiscard]] double table_step() const { return kTwoPi * winding_ / static_cast<double>(table_.size()); }
    [[nodiscard]] const std::vector<Complex>& table() const { return table_; }

    template <class R>
    [[nodiscard]] Cx<R> point(R phi) const;
    template <class R>
    [[nodiscard]] Cx<R> velocity(R phi) const;

    /// Continuous-argument parameter of the point of this component closest
    /// to z, and the distance to it.
    [[nodiscard]] std::pair<double, double> locate(Complex z) const;

private:
    ComplexPolynomial poly_;
    double phi_begin_;
    int winding_;
    std::vector<Complex> table_;  // z at phi_begin + j * table_step()
};

struct SegmentShape {
    Complex p0;
    Complex p1;
};
struct CircleShape {
    Complex center;
    double radius;
};
/// z = center + e^{i rotation} (a cos t + i b sin t)
struct EllipseShape {
    Complex center;
    double a;
    double b;
    double rotation;
};
struct LemniscateShape {
    std::shared_ptr<const LemniscateComponent> component;
};

enum class Smoothness { Linear, Analytic };

/// A regular parametrization t in [t_lo, t_hi] -> point on the plane.
class ArcParametrization {
public:
    using Shape = std::variant<SegmentShape, CircleShape, EllipseShape, LemniscateShape>;

    ArcParametrization(Shape shape, ParamValue t_lo, ParamValue t_hi, bool closed);

    [[nodiscard]] const Shape& shape() const { return shape_; }
    [[nodiscard]] const ParamValue& t_lo() const { return t_lo_; }
    [[nodiscard]] const ParamValue& t_hi() const { return t_hi_; }
    [[nodiscard]] double lo() const { return t_lo_.approx(); }
    [[nodiscard]] double hi() const { return t_hi_.approx(); }
    /// True if point(t_lo) == point(t_hi) and the curve closes smoothly.
    [[nodiscard]] bool closed() const { return closed_; }
    [[nodiscard]] Smoothness smoothness() const;
    [[nodiscard]] bool is_segment() const { return std::holds_alternative<SegmentShape>(shape_); }

    template <class R>
    [[nodiscard]] Cx<R> point(R t) const;
    template <class R>
    [[nodiscard]] Cx<R> velocity(R t) const;

    [[nodiscard]] Complex point(double t) const { return point<double>(t).to_std(); }
    [[nodiscard]] Complex velocity(double t) const { return velocity<double>(t).to_std(); }
    [[nodiscard]] double speed(double t) const { return std::abs(velocity(t)); }

    struct Location {
        double t;
        double distance;
    };
    /// Parameter of the nearest point on the arc (refined by Gauss-Newton).
    [[nodiscard]] Location locate(Complex z) const;

    /// Arc length by Gauss-Legendre panels, refined until two successive
    /// panel counts agree to rel_tol.
    [[nodiscard]] double length(double rel_tol = 1e-10) const;
    /// Length of the sub-arc [t0, t1].
    [[nodiscard]] double length_between(double t0, double t1, double rel_tol = 1e-10) const;

private:
    Shape shape_;
    ParamValue t_lo_;
    ParamValue t_hi_;
    bool closed_;
};

struct IntervalSupport {
    double a;
    double b;
};
struct CircleSupport {
    Complex center;
    double radius;
};
struct EllipseSupport {
    double a;  // semi-major axis
    double b;  // semi-minor axis
    Complex center;
    double rotation;
};
struct LemniscateSupport {
    ComplexPolynomial poly;
};
struct ArcsSupport {
    std::vector<ArcParametrization> arcs;
};

enum class SupportKind { Interval, Circle, Ellipse, Lemniscate, Arcs };
const char* to_string(SupportKind kind);

/// Geometric support of a measure. Factories validate the invariants.
class SupportSpec {
public:
    using Variant = std::variant<IntervalSupport, CircleSupport, EllipseSupport, LemniscateSupport, ArcsSupport>;

    static SupportSpec interval(double a, double b);
    static SupportSpec circle(Complex center, double radius);
    static SupportSpec ellipse(double a, double b, Complex center = {}, double rotation = 0.0);
    /// Rejects polynomials whose level set {|T| = 1} passes within
    /// critical_tolerance of a critical point.
    static SupportSpec lemniscate(ComplexPolynomial poly, double critical_tolerance = 1e-6);
    static SupportSpec arcs(std::vector<ArcParametrization> arcs);

    [[nodiscard]] SupportKind kind() const { return static_cast<SupportKind>(data_.index()); }
    [[nodiscard]] const Variant& get() const { return data_; }
    template <class T>
    [[nodiscard]] const T& as() const { return std::get<T>(data_); }
    /// Closed curves (circle, ellipse, lemniscate) carry periodic weights.
    [[nodiscard]] bool is_closed_curve() const;

private:
    explicit SupportSpec(Variant v) : data_(std::move(v)) {}
    Variant data_;
};

struct TraceOptions {
    int samples_per_component = 512;
    double chord_tolerance = 1e-8;
    double merge_tolerance = 1e-6;
    double critical_tolerance = 1e-6;
    int seeds = 8;
};

/// Arcs covering the support once. Lemniscates are traced.
std::vector<ArcParametrization> parametrize(const SupportSpec& support, const TraceOptions& options = {});

/// Throws GeometryError naming the first critical point z* of T with
/// ||T(z*)| - 1| < tolerance.
void check_lemniscate_regular(const ComplexPolynomial& poly, double tolerance = 1e-6);

/// Closed parametrizations of every component of {|T(z)| = 1}, found by
/// predictor-corrector tracing from preimages of equally spaced points of
/// the unit circle. Component parameter ranges are disjoint and ordered.
std::vector<ArcParametrization> trace_lemniscate(const ComplexPolynomial& poly, int samples_per_component = 512,
                                                 const TraceOptions& options = {});

/// The lemniscate split at the N preimages of base_point_image (|.| = 1):
/// N arcs, each mapped by T one-to-one onto the circle minus that point.
std::vector<ArcParametrization> partition_arcs(const ComplexPolynomial& poly, Complex base_point_image,
                                               const TraceOptions& options = {});

/// Same split applied to already traced components.
std::vector<ArcParametrization> partition_arcs(const std::vector<ArcParametrization>& components,
                                               Complex base_point_image);

// ---------------------------------------------------------------------------

template <class R>
Cx<R> LemniscateComponent::point(R phi) const {
    const R period = R(static_cast<double>(2 * winding_)) * num::pi<R>();
    const double k = std::floor((num::to_double(phi) - phi_begin_) / (kTwoPi * winding_));
    if (k != 0.0) phi = phi - R(k) * period;
    const double step = table_step();
    const double rel = (num::to_double(phi) - phi_begin_) / step;
    auto j = static_cast<long>(std::nearbyint(rel));
    const long count = static_cast<long>(table_.size());
    j = std::clamp(j, 0L, count);
    const Complex seed_z = table_[static_cast<std::size_t>(j % count)];
    const R seed_phi = R(phi_begin_) + R(static_cast<double>(j)) * period / R(static_cast<double>(count));
    Cx<R> z = Cx<R>::from(seed_z);
    const Cx<R> target = expi(phi);
    // First-order predictor along dz/dphi = i T / T', then Newton on T(z) = target.
    {
        Cx<R> t, dt;
        poly_.evaluate(z, t, dt);
        z = z + Cx<R>(R(0.0), phi - seed_phi) * t / dt;
    }
    const double eps = num::to_double(num::epsilon<R>());
    double previous = HUGE_VAL;
    for (int it = 0; it < 40; ++it) {
        Cx<R> t, dt;
        poly_.evaluate(z, t, dt);
        const Cx<R> dz = (t - target) / dt;
        z = z - dz;
        const double step = num::to_double(abs(dz));
        const double scale = 1.0 + num::to_double(abs(z));
        if (step <= 16.0 * eps * scale) return z;
        // Stalled at the rounding floor of the working type.
        if (step >= 0.5 * previous && step <= 1e4 * eps * scale) return z;
        previous = step;
    }
    throw Error(ErrorKind::Tracing, "lemniscate point evaluation did not converge at phi=" +
                                        std::to_string(num::to_double(phi)));
}

template <class R>
Cx<R> LemniscateComponent::velocity(R phi) const {
    const Cx<R> z = point(phi);
    Cx<R> t, dt;
    poly_.evaluate(z, t, dt);
    return Cx<R>(R(0.0), R(1.0)) * t / dt;
}

template <class R>
Cx<R> ArcParametrization::point(R t) const {
    return std::visit(
        [&](const auto& s) -> Cx<R> {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, SegmentShape>) {
                const R lo = t_lo_.as<R>();
                const R hi = t_hi_.as<R>();
                const R f = (t - lo) / (hi - lo);
                const Cx<R> p0 = Cx<R>::from(s.p0);
                return p0 + (Cx<R>::from(s.p1) - p0) * f;
            } else if constexpr (std::is_same_v<S, CircleShape>) {
                return Cx<R>::from(s.center) + R(s.radius) * expi(t);
            } else if constexpr (std::is_same_v<S, EllipseShape>) {
                const Cx<R> local(R(s.a) * num::cos(t), R(s.b) * num::sin(t));
                return Cx<R>::from(s.center) + expi(R(s.rotation)) * local;
            } else {
                return s.component->point(t);
            }
        },
        shape_);
}

template <class R>
Cx<R> ArcParametrization::velocity(R t) const {
    return std::visit(
        [&](const auto& s) -> Cx<R> {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, SegmentShape>) {
                const R lo = t_lo_.as<R>();
                const R hi = t_hi_.as<R>();
                return (Cx<R>::from(s.p1) - Cx<R>::from(s.p0)) / (hi - lo);
            } else if constexpr (std::is_same_v<S, CircleShape>) {
                return Cx<R>(R(0.0), R(s.radius)) * expi(t);
            } else if constexpr (std::is_same_v<S, EllipseShape>) {
                const Cx<R> local(-R(s.a) * num::sin(t), R(s.b) * num::cos(t));
                return expi(R(s.rotation)) * local;
            } else {
                return s.component->velocity(t);
            }
        },
        shape_);
}

}  // namespace xlab
