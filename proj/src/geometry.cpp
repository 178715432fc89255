#include "xlab/geometry.hpp"

#include <cmath>
#include <cstdio>

#include "xlab/gauss_legendre.hpp"

namespace xlab {
namespace {

std::string fmt_point(Complex z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "(%.10g, %.10g)", z.real(), z.imag());
    return buf;
}

// Wraps t into [lo, lo + period).
double wrap(double t, double lo, double period) {
    double u = std::fmod(t - lo, period);
    if (u < 0.0) u += period;
    return lo + u;
}

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double s = ((p - a) * std::conj(d)).real() / len2;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(p - (a + s * d));
}

// Unit tangent of the level curve |T| = 1 in the direction of increasing arg T.
Complex level_tangent(const ComplexPolynomial& poly, Complex z) {
    const Complex t = poly(z);
    const Complex dt = poly.derivative_at(z);
    const Complex g = t * std::conj(dt);
    return Complex(0.0, 1.0) * g / std::abs(g);
}

// Newton on r -> |T(z + r n)| - 1 along the normal n at z.
bool correct_onto_level(const ComplexPolynomial& poly, Complex& z) {
    const Complex t0 = poly(z);
    const Complex d0 = poly.derivative_at(z);
    const Complex g = t0 * std::conj(d0);
    const Complex n = g / std::abs(g);
    double r = 0.0;
    for (int it = 0; it < 30; ++it) {
        const Complex w = z + r * n;
        const Complex t = poly(w);
        const double mod = std::abs(t);
        const double f = mod - 1.0;
        if (std::fabs(f) < 1e-15) {
            z = w;
            return true;
        }
        const double fp = (std::conj(t) * poly.derivative_at(w) * n).real() / mod;
        if (fp == 0.0 || !std::isfinite(fp)) return false;
        r -= f / fp;
        if (!std::isfinite(r)) return false;
    }
    const Complex w = z + r * n;
    if (std::fabs(std::abs(poly(w)) - 1.0) < 1e-12) {
        z = w;
        return true;
    }
    return false;
}

struct Trace {
    std::vector<Complex> points;
    std::vector<double> phis;  // continuous arg T at each point
    int winding = 0;
};

// Predictor-corrector tracing of one closed component starting at seed.
Trace trace_component(const ComplexPolynomial& poly, Complex seed, const TraceOptions& opt) {
    Trace tr;
    Complex z = seed;
    if (!correct_onto_level(poly, z)) throw Error(ErrorKind::Tracing, "cannot project seed " + fmt_point(seed) + " onto the lemniscate");
    const Complex start = z;
    double phi = std::arg(poly(z));
    const double phi0 = phi;
    tr.points.push_back(z);
    tr.phis.push_back(phi);
    const double scale = std::max(1.0, std::abs(z));
    double h = 1e-3 * scale;
    Complex tau = level_tangent(poly, z);
    const long max_steps = 50'000'000;
    for (long step = 0; step < max_steps; ++step) {
        Complex zn = z + h * tau;
        if (!correct_onto_level(poly, zn)) {
            h *= 0.5;
            if (h < 1e-13 * scale) throw Error(ErrorKind::Tracing, "corrector failed to converge near " + fmt_point(z));
            continue;
        }
        const Complex taun = level_tangent(poly, zn);
        const double turn = std::fabs(std::arg(taun / tau));
        const double chord = std::abs(zn - z);
        const double sagitta = chord * turn / 8.0;
        const double dphi = std::arg(poly(zn) / poly(z));
        if (sagitta > opt.chord_tolerance || dphi <= 0.0 || turn > 0.3) {
            h *= 0.5;
            if (h < 1e-13 * scale) throw Error(ErrorKind::Tracing, "step size underflow near " + fmt_point(z));
            continue;
        }
        const double phin = phi + dphi;
        // Closure: crossing a multiple of 2 pi past the start near the seed.
        const double laps_before = std::floor((phi - phi0) / kTwoPi);
        const double laps_after = std::floor((phin - phi0) / kTwoPi);
        if (laps_after > laps_before && std::abs(zn - start) <= 2.0 * chord + 1e-9 * scale) {
            tr.winding = static_cast<int>(laps_after);
            return tr;
        }
        z = zn;
        tau = taun;
        phi = phin;
        tr.points.push_back(z);
        tr.phis.push_back(phi);
        const double grow = sagitta > 0.0 ? std::sqrt(opt.chord_tolerance / sagitta) : 2.0;
        h *= std::clamp(0.9 * grow, 0.5, 2.0);
    }
    throw Error(ErrorKind::Tracing, "lemniscate component did not close; last point " + fmt_point(z));
}

double distance_to_polyline(Complex p, const std::vector<Complex>& pts) {
    double best = HUGE_VAL;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, point_segment_distance(p, pts[i], pts[(i + 1) % n]));
    return best;
}

// Gauss-Legendre integral of |velocity| over [a, b] with m panels.
double speed_integral(const ArcParametrization& arc, double a, double b, int m) {
    const auto& gl = gauss_legendre<double>();
    const double h = (b - a) / m;
    double sum = 0.0;
    for (int p = 0; p < m; ++p) {
        const double c = a + (p + 0.5) * h;
        double panel = 0.0;
        for (int i = 0; i < kPanelOrder; ++i) panel += gl.weights[i] * arc.speed(c + 0.5 * h * gl.nodes[i]);
        sum += 0.5 * h * panel;
    }
    return sum;
}

}  // namespace

// ---------------------------------------------------------------------------
// LemniscateComponent

LemniscateComponent::LemniscateComponent(ComplexPolynomial poly, double phi_begin, int winding,
                                         std::vector<Complex> table)
    : poly_(std::move(poly)), phi_begin_(phi_begin), winding_(winding), table_(std::move(table)) {
    if (winding_ < 1) throw Error(ErrorKind::Geometry, "lemniscate component must enclose at least one zero");
    if (table_.size() < 8) throw Error(ErrorKind::Input, "lemniscate table needs at least 8 points");
}

std::pair<double, double> LemniscateComponent::locate(Complex z) const {
    std::size_t best = 0;
    double bd = HUGE_VAL;
    for (std::size_t j = 0; j < table_.size(); ++j) {
        const double d = std::abs(table_[j] - z);
        if (d < bd) {
            bd = d;
            best = j;
        }
    }
    const double phi_j = phi_begin_ + static_cast<double>(best) * table_step();
    // Correct by the argument difference; for points near the curve this is
    // the parameter of the foot point to first order.
    const Complex tz = poly_(z);
    double phi = phi_j;
    if (std::abs(tz) > 0.0) phi += std::arg(tz / poly_(table_[best]));
    for (int it = 0; it < 3; ++it) {
        const Complex p = point<double>(phi).to_std();
        const Complex v = velocity<double>(phi).to_std();
        phi -= ((p - z) * std::conj(v)).real() / std::norm(v);
    }
    phi = wrap(phi, phi_begin_, kTwoPi * winding_);
    return {phi, std::abs(point<double>(phi).to_std() - z)};
}

// ---------------------------------------------------------------------------
// ArcParametrization

ArcParametrization::ArcParametrization(Shape shape, ParamValue t_lo, ParamValue t_hi, bool closed)
    : shape_(std::move(shape)), t_lo_(t_lo), t_hi_(t_hi), closed_(closed) {
    if (!(t_lo_.approx() < t_hi_.approx())) throw Error(ErrorKind::Input, "arc parameter range must be increasing");
    if (const auto* s = std::get_if<SegmentShape>(&shape_); s && s->p0 == s->p1)
        throw Error(ErrorKind::Input, "degenerate segment");
    if (const auto* c = std::get_if<CircleShape>(&shape_); c && !(c->radius > 0.0))
        throw Error(ErrorKind::Input, "circle radius must be positive");
    if (const auto* e = std::get_if<EllipseShape>(&shape_); e && !(e->a > 0.0 && e->b > 0.0))
        throw Error(ErrorKind::Input, "ellipse semi-axes must be positive");
    if (const auto* l = std::get_if<LemniscateShape>(&shape_); l && !l->component)
        throw Error(ErrorKind::Input, "lemniscate arc without component");
}

Smoothness ArcParametrization::smoothness() const {
    return is_segment() ? Smoothness::Linear : Smoothness::Analytic;
}

ArcParametrization::Location ArcParametrization::locate(Complex z) const {
    const double lo = t_lo_.approx();
    const double hi = t_hi_.approx();
    double t = lo;
    bool refine = true;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, SegmentShape>) {
                const Complex d = s.p1 - s.p0;
                const double f = std::clamp(((z - s.p0) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
                t = lo + f * (hi - lo);
                refine = false;
            } else if constexpr (std::is_same_v<S, CircleShape>) {
                t = std::arg(z - s.center);
                refine = false;
            } else if constexpr (std::is_same_v<S, EllipseShape>) {
                const Complex local = std::polar(1.0, -s.rotation) * (z - s.center);
                t = std::atan2(local.imag() / s.b, local.real() / s.a);
            } else {
                t = s.component->locate(z).first;
                refine = false;
            }
        },
        shape_);
    if (!is_segment()) {
        // Bring t into range, accounting for the arc possibly wrapping past
        // its natural period (closed curves) or being a sub-arc.
        const double period = [&] {
            if (const auto* l = std::get_if<LemniscateShape>(&shape_)) return kTwoPi * l->component->winding();
            return kTwoPi;
        }();
        t = wrap(t, lo, period);
        if (t > hi) {
            // Outside a sub-arc: nearest endpoint.
            const double d_lo = std::abs(point(lo) - z);
            const double d_hi = std::abs(point(hi) - z);
            t = d_lo <= d_hi ? lo : hi;
            refine = false;
        }
    }
    if (refine) {
        for (int it = 0; it < 6; ++it) {
            const Complex p = point(t);
            const Complex v = velocity(t);
            const double dt = ((p - z) * std::conj(v)).real() / std::norm(v);
            t = std::clamp(t - dt, lo, hi);
            if (std::fabs(dt) < 1e-16 * (1.0 + std::fabs(t))) break;
        }
    }
    return {t, std::abs(point(t) - z)};
}

double ArcParametrization::length_between(double t0, double t1, double rel_tol) const {
    int m = 4;
    double prev = speed_integral(*this, t0, t1, m);
    for (int round = 0; round < 12; ++round) {
        m *= 2;
        const double cur = speed_integral(*this, t0, t1, m);
        if (std::fabs(cur - prev) <= rel_tol * std::fabs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

double ArcParametrization::length(double rel_tol) const { return length_between(lo(), hi(), rel_tol); }

// ---------------------------------------------------------------------------
// SupportSpec

const char* to_string(SupportKind kind) {
    switch (kind) {
        case SupportKind::Interval: return "interval";
        case SupportKind::Circle: return "circle";
        case SupportKind::Ellipse: return "ellipse";
        case SupportKind::Lemniscate: return "lemniscate";
        case SupportKind::Arcs: return "arcs";
    }
    return "?";
}

SupportSpec SupportSpec::interval(double a, double b) {
    if (!(a < b)) throw Error(ErrorKind::Input, "interval needs a < b");
    return SupportSpec(IntervalSupport{a, b});
}

SupportSpec SupportSpec::circle(Complex center, double radius) {
    if (!(radius > 0.0)) throw Error(ErrorKind::Input, "circle radius must be positive");
    return SupportSpec(CircleSupport{center, radius});
}

SupportSpec SupportSpec::ellipse(double a, double b, Complex center, double rotation) {
    if (!(b > 0.0 && a >= b)) throw Error(ErrorKind::Input, "ellipse needs semi-axes a >= b > 0");
    return SupportSpec(EllipseSupport{a, b, center, rotation});
}

SupportSpec SupportSpec::lemniscate(ComplexPolynomial poly, double critical_tolerance) {
    if (poly.degree() < 1) throw Error(ErrorKind::Input, "lemniscate polynomial must have degree at least 1");
    check_lemniscate_regular(poly, critical_tolerance);
    return SupportSpec(LemniscateSupport{std::move(poly)});
}

SupportSpec SupportSpec::arcs(std::vector<ArcParametrization> arcs) {
    if (arcs.empty()) throw Error(ErrorKind::Input, "arc list is empty");
    for (std::size_t i = 1; i < arcs.size(); ++i) {
        if (arcs[i].lo() < arcs[i - 1].hi())
            throw Error(ErrorKind::Input, "arc parameter ranges must be disjoint and increasing");
    }
    return SupportSpec(ArcsSupport{std::move(arcs)});
}

bool SupportSpec::is_closed_curve() const {
    const auto k = kind();
    return k == SupportKind::Circle || k == SupportKind::Ellipse || k == SupportKind::Lemniscate;
}

void check_lemniscate_regular(const ComplexPolynomial& poly, double tolerance) {
    if (poly.degree() < 2) return;
    for (const Complex& c : poly.derivative().roots()) {
        const double level = std::abs(poly(c));
        if (std::fabs(level - 1.0) < tolerance) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "critical point z=%s of T lies on the lemniscate (|T(z)| = %.12g)",
                          fmt_point(c).c_str(), level);
            throw Error(ErrorKind::Geometry, buf);
        }
    }
}

std::vector<ArcParametrization> parametrize(const SupportSpec& support, const TraceOptions& options) {
    std::vector<ArcParametrization> arcs;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, IntervalSupport>) {
                arcs.emplace_back(SegmentShape{{s.a, 0.0}, {s.b, 0.0}}, ParamValue(s.a), ParamValue(s.b), false);
            } else if constexpr (std::is_same_v<S, CircleSupport>) {
                arcs.emplace_back(CircleShape{s.center, s.radius}, ParamValue(0.0), ParamValue::pi_fraction(2, 1), true);
            } else if constexpr (std::is_same_v<S, EllipseSupport>) {
                arcs.emplace_back(EllipseShape{s.center, s.a, s.b, s.rotation}, ParamValue(0.0),
                                  ParamValue::pi_fraction(2, 1), true);
            } else if constexpr (std::is_same_v<S, LemniscateSupport>) {
                arcs = trace_lemniscate(s.poly, options.samples_per_component, options);
            } else {
                arcs = s.arcs;
            }
        },
        support.get());
    return arcs;
}

std::vector<ArcParametrization> trace_lemniscate(const ComplexPolynomial& poly, int samples_per_component,
                                                 const TraceOptions& options) {
    const int n = poly.degree();
    if (n < 1) throw Error(ErrorKind::Input, "lemniscate polynomial must have degree at least 1");
    if (samples_per_component < 8) throw Error(ErrorKind::Input, "need at least 8 samples per component");
    check_lemniscate_regular(poly, options.critical_tolerance);

    std::vector<Trace> traces;
    for (int k = 0; k < options.seeds; ++k) {
        const Complex w = std::polar(1.0, kTwoPi * k / options.seeds);
        for (const Complex& seed : preimages(poly, w)) {
            bool known = false;
            for (const auto& tr : traces) {
                if (distance_to_polyline(seed, tr.points) < options.merge_tolerance) {
                    known = true;
                    break;
                }
            }
            if (!known) traces.push_back(trace_component(poly, seed, options));
        }
    }

    int total_winding = 0;
    for (const auto& tr : traces) total_winding += tr.winding;
    if (total_winding != n) {
        throw Error(ErrorKind::Geometry, "traced components enclose " + std::to_string(total_winding) +
                                             " zeros but the polynomial has degree " + std::to_string(n));
    }

    double min_derivative = HUGE_VAL;
    for (const auto& tr : traces)
        for (const auto& z : tr.points) min_derivative = std::min(min_derivative, std::abs(poly.derivative_at(z)));
    if (!(min_derivative > options.critical_tolerance)) {
        throw Error(ErrorKind::Geometry, "|T'| on the lemniscate drops to " + std::to_string(min_derivative) +
                                             ", below the critical-point tolerance");
    }

    std::vector<ArcParametrization> arcs;
    double next_begin = -HUGE_VAL;
    for (const auto& tr : traces) {
        // Place this component's parameter range after the previous one; the
        // shift is a multiple of 2 pi so T(z(phi)) = exp(i phi) still holds.
        double begin = tr.phis.front();
        if (begin < next_begin) begin += kTwoPi * std::ceil((next_begin - begin) / kTwoPi - 1e-12);
        const int count = std::max(samples_per_component, 64) * tr.winding;
        const double step = kTwoPi * tr.winding / count;
        std::vector<Complex> table;
        table.reserve(static_cast<std::size_t>(count));
        std::size_t cursor = 0;
        for (int j = 0; j < count; ++j) {
            const double phi = tr.phis.front() + step * j;
            while (cursor + 1 < tr.phis.size() && tr.phis[cursor + 1] <= phi) ++cursor;
            Complex z = tr.points[cursor];
            const Complex target = std::polar(1.0, phi);
            for (int it = 0; it < 50; ++it) {
                const Complex dz = (poly(z) - target) / poly.derivative_at(z);
                z -= dz;
                if (std::abs(dz) < 1e-15 * (1.0 + std::abs(z))) break;
            }
            if (std::abs(poly(z) - target) > 1e-10 * std::max(1.0, poly.magnitude_scale(z)))
                throw Error(ErrorKind::Tracing, "resampling the lemniscate failed near " + fmt_point(z));
            table.push_back(z);
        }
        auto comp = std::make_shared<const LemniscateComponent>(poly, begin, tr.winding, std::move(table));
        arcs.emplace_back(LemniscateShape{comp}, ParamValue(begin), ParamValue(begin).plus_pi(2L * tr.winding, 1),
                          true);
        next_begin = comp->phi_end();
    }
    return arcs;
}

std::vector<ArcParametrization> partition_arcs(const std::vector<ArcParametrization>& components,
                                               Complex base_point_image) {
    if (std::fabs(std::abs(base_point_image) - 1.0) > 1e-12)
        throw Error(ErrorKind::Domain, "base point image must lie on the unit circle");
    const double theta = std::arg(base_point_image);
    std::vector<ArcParametrization> out;
    for (const auto& arc : components) {
        const auto* shape = std::get_if<LemniscateShape>(&arc.shape());
        if (shape == nullptr) throw Error(ErrorKind::Input, "partition_arcs expects traced lemniscate components");
        const auto& comp = *shape->component;
        // First phi >= begin with phi = theta (mod 2 pi); the other cut points
        // on this component follow at 2 pi spacing.
        const double begin = comp.phi_begin();
        double first = theta + kTwoPi * std::ceil((begin - theta) / kTwoPi);
        if (first - begin >= kTwoPi) first -= kTwoPi;
        for (int k = 0; k < comp.winding(); ++k) {
            const ParamValue lo = ParamValue(first).plus_pi(2L * k, 1);
            out.emplace_back(arc.shape(), lo, lo.plus_pi(2, 1), false);
        }
    }
    return out;
}

std::vector<ArcParametrization> partition_arcs(const ComplexPolynomial& poly, Complex base_point_image,
                                               const TraceOptions& options) {
    return partition_arcs(trace_lemniscate(poly, options.samples_per_component, options), base_point_image);
}

}  // namespace xlab
