#include "xlab/measure.hpp"

#include <cmath>
#include <cstdio>

namespace xlab {
namespace {

constexpr double kPi = 3.14159265358979323846;

bool near(double a, double b) { return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(a) + std::fabs(b)); }

// Position of t relative to the periodic jump pattern: u in [0, 2 pi).
double periodic_offset(double t, double t0) {
    double u = std::fmod(t - t0, kTwoPi);
    if (u < 0.0) u += kTwoPi;
    return u;
}

}  // namespace

void JumpWeight::validate() const {
    if (!(A > 0.0) || !(B > 0.0) || !std::isfinite(A) || !std::isfinite(B))
        throw Error(ErrorKind::Input, "jump weight needs A > 0 and B > 0");
    if (!std::isfinite(jump_param.approx())) throw Error(ErrorKind::Input, "jump parameter is not finite");
}

SmoothFactor SmoothFactor::constant(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::Input, "constant smooth factor must be positive");
    return SmoothFactor(std::vector<double>{c});
}

SmoothFactor SmoothFactor::polynomial(std::vector<double> coeffs) {
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    if (coeffs.empty()) throw Error(ErrorKind::Input, "smooth factor needs coefficients");
    for (double c : coeffs)
        if (!std::isfinite(c)) throw Error(ErrorKind::Input, "smooth factor coefficient is not finite");
    return SmoothFactor(std::move(coeffs));
}

SmoothFactor SmoothFactor::scaled(double c) const {
    if (!(c > 0.0)) throw Error(ErrorKind::Input, "scale factor must be positive");
    std::vector<double> s = coeffs_;
    for (double& v : s) v *= c;
    return SmoothFactor(std::move(s));
}

MeasureSpec::MeasureSpec(SupportSpec support, JumpWeight jump, SmoothFactor w0, Reference reference,
                         std::optional<Complex> z0, const TraceOptions& trace)
    : support_(std::move(support)),
      arcs_(parametrize(support_, trace)),
      jump_(jump),
      w0_(std::move(w0)),
      reference_(reference),
      layout_(support_.is_closed_curve() ? JumpLayout::Periodic : JumpLayout::Step),
      trace_(trace) {
    jump_.validate();
    if (reference_ == Reference::Chebyshev && support_.kind() != SupportKind::Interval)
        throw Error(ErrorKind::Input, "the Chebyshev reference measure is only defined on intervals");

    const double lo = arcs_.front().lo();
    const double hi = arcs_.back().hi();
    for (int i = 0; i <= 2000; ++i) {
        const double t = lo + (hi - lo) * i / 2000.0;
        if (!(w0_(t) > 0.0))
            throw Error(ErrorKind::Input, "smooth factor w0 is not positive at parameter " + std::to_string(t));
    }

    if (!z0) {
        if (layout_ == JumpLayout::Periodic) {
            // Lift t0 into the first arc's range by whole turns.
            const double first = arcs_.front().lo();
            const double t0 = jump_.jump_param.approx();
            const long turns = static_cast<long>(std::ceil((first - t0) / kTwoPi - 1e-12));
            z0_param_ = jump_.jump_param.plus_pi(2 * turns, 1);
            z0_arc_ = 0;
        } else {
            z0_param_ = jump_.jump_param;
            const double t0 = z0_param_.approx();
            if (t0 < arcs_.front().lo() || t0 > arcs_.back().hi()) {
                if (jump_.A != jump_.B)
                    throw Error(ErrorKind::Input, "jump parameter " + jump_.jump_param.to_string() + " lies outside the support");
                // No jump to speak of: evaluate at the middle of the first arc.
                z0_param_ = ParamValue(0.5 * (arcs_.front().lo() + arcs_.front().hi()));
            }
            z0_arc_ = arc_of(z0_param_.approx());
        }
        z0_ = arcs_[z0_arc_].point(z0_param_.approx());
        return;
    }

    double best = HUGE_VAL;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const auto loc = arcs_[i].locate(*z0);
        if (loc.distance < best) {
            best = loc.distance;
            z0_arc_ = i;
            z0_param_ = ParamValue(loc.t);
        }
    }
    const double scale = std::max(1.0, std::abs(*z0));
    if (!(best <= 1e-10 * scale)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "z0 = (%.12g, %.12g) is %.3g away from the support", z0->real(), z0->imag(), best);
        throw Error(ErrorKind::Domain, buf);
    }
    // Snap to an exact jump parameter if z0 is one.
    for (const auto& j : jump_points(z0_arc_)) {
        if (near(j.approx(), z0_param_.approx())) z0_param_ = j;
    }
    if (layout_ == JumpLayout::Step && near(jump_.jump_param.approx(), z0_param_.approx())) z0_param_ = jump_.jump_param;
    z0_ = *z0;
}

bool MeasureSpec::z0_at_jump() const {
    const double t = z0_param_.approx();
    if (layout_ == JumpLayout::Step) return near(t, jump_.jump_param.approx());
    const double u = periodic_offset(t, jump_.jump_param.approx());
    return near(u, 0.0) || near(u, kPi) || near(u, kTwoPi);
}

std::size_t MeasureSpec::arc_of(double t) const {
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const double lo = arcs_[i].lo();
        const double hi = arcs_[i].hi();
        const double tol = 1e-12 * (1.0 + std::fabs(lo) + std::fabs(hi));
        if (t >= lo - tol && t <= hi + tol) return i;
    }
    throw Error(ErrorKind::Domain, "parameter " + std::to_string(t) + " is outside the parameter domain");
}

double MeasureSpec::jump_value(double t, std::optional<Side> side) const {
    (void)arc_of(t);
    const double t0 = jump_.jump_param.approx();
    if (layout_ == JumpLayout::Step) {
        if (near(t, t0)) return side == Side::Right ? jump_.B : jump_.A;
        return t <= t0 ? jump_.A : jump_.B;
    }
    const double u = periodic_offset(t, t0);
    if (near(u, 0.0) || near(u, kTwoPi)) return side == Side::Left ? jump_.A : jump_.B;
    if (near(u, kPi)) return side == Side::Right ? jump_.A : jump_.B;
    return u < kPi ? jump_.B : jump_.A;
}

double MeasureSpec::weight_at(double t, std::optional<Side> side) const { return w0_(t) * jump_value(t, side); }

double MeasureSpec::reference_density(std::size_t arc, double t) const {
    if (reference_ == Reference::ArcLength) return 1.0;
    const double lo = arcs_.at(arc).lo();
    const double hi = arcs_.at(arc).hi();
    const double s = (2.0 * t - lo - hi) / (hi - lo);
    if (!(std::fabs(s) < 1.0)) throw Error(ErrorKind::Domain, "Chebyshev reference density is infinite at the endpoints");
    return 1.0 / std::sqrt(1.0 - s * s);
}

std::vector<ParamValue> MeasureSpec::jump_points(std::size_t arc) const {
    const auto& a = arcs_.at(arc);
    const double lo = a.lo();
    const double hi = a.hi();
    std::vector<ParamValue> out;
    auto inside = [&](double t) {
        const double tol = 1e-13 * (1.0 + std::fabs(lo) + std::fabs(hi));
        return t > lo + tol && t < hi - tol;
    };
    if (layout_ == JumpLayout::Step) {
        if (inside(jump_.jump_param.approx())) out.push_back(jump_.jump_param);
        return out;
    }
    const double t0 = jump_.jump_param.approx();
    const long k_lo = static_cast<long>(std::floor((lo - t0) / kPi)) - 1;
    const long k_hi = static_cast<long>(std::ceil((hi - t0) / kPi)) + 1;
    for (long k = k_lo; k <= k_hi; ++k) {
        const ParamValue p = jump_.jump_param.plus_pi(k, 1);
        if (inside(p.approx())) out.push_back(p);
    }
    return out;
}

MeasureSpec MeasureSpec::scaled(double c) const {
    MeasureSpec m = *this;
    m.w0_ = w0_.scaled(c);
    return m;
}

MeasureSpec MeasureSpec::with_z0(Complex z0) const {
    return MeasureSpec(support_, jump_, w0_, reference_, z0, trace_);
}

MeasureSpec symmetrize_to_interval(const MeasureSpec& circle_measure) {
    if (circle_measure.support().kind() != SupportKind::Circle)
        throw Error(ErrorKind::Symmetry, "symmetrization needs a circle measure");
    const auto& c = circle_measure.support().as<CircleSupport>();
    if (std::abs(c.center) != 0.0 || c.radius != 1.0)
        throw Error(ErrorKind::Symmetry, "symmetrization needs the unit circle centered at the origin");
    if (!circle_measure.w0().is_constant())
        throw Error(ErrorKind::Symmetry, "symmetrization needs a constant smooth factor");
    const auto& jump = circle_measure.jump();
    // The weight must be invariant under t -> -t.
    if (jump.A != jump.B) {
        const double u = periodic_offset(jump.jump_param.approx(), kPi / 2);
        if (!(near(u, 0.0) || near(u, kPi) || near(u, kTwoPi)))
            throw Error(ErrorKind::Symmetry, "circle weight is not symmetric under t -> -t (jump must sit at +-pi/2)");
    }
    const double upper = circle_measure.jump_value(kPi / 4);      // x = cos t > 0
    const double lower = circle_measure.jump_value(3 * kPi / 4);  // x < 0
    JumpWeight folded{lower, upper, ParamValue(0.0)};
    const double x0 = std::clamp(circle_measure.z0().real(), -1.0, 1.0);
    std::optional<Complex> z0;
    if (std::fabs(x0) < 1.0) z0 = Complex(x0, 0.0);
    return MeasureSpec(SupportSpec::interval(-1.0, 1.0), folded, circle_measure.w0(), Reference::Chebyshev, z0);
}

MeasureSpec pullback_to_lemniscate(const MeasureSpec& circle_measure, const ComplexPolynomial& poly,
                                   const TraceOptions& trace) {
    if (circle_measure.support().kind() != SupportKind::Circle)
        throw Error(ErrorKind::Input, "pullback needs a measure on the unit circle");
    const auto& c = circle_measure.support().as<CircleSupport>();
    if (std::abs(c.center) != 0.0 || c.radius != 1.0)
        throw Error(ErrorKind::Input, "pullback needs the unit circle centered at the origin");
    if (!circle_measure.w0().is_constant())
        throw Error(ErrorKind::Input, "pullback needs a pure jump weight (constant smooth factor)");
    SupportSpec lem = SupportSpec::lemniscate(poly, trace.critical_tolerance);
    // Auto-jump placement first, then move z0 to the preimage of the circle's z0.
    MeasureSpec pulled(lem, circle_measure.jump(), circle_measure.w0(), Reference::ArcLength, std::nullopt, trace);
    if (circle_measure.z0_at_jump() && circle_measure.z0_param().approx() == circle_measure.jump().jump_param.approx())
        return pulled;
    const auto& first = pulled.arcs().front();
    double tau = circle_measure.z0_param().approx();
    tau += kTwoPi * std::ceil((first.lo() - tau) / kTwoPi - 1e-12);
    return pulled.with_z0(first.point(tau));
}

}  // namespace xlab
