#pragma once

// Measures dmu = w0(t) v(t) dref on a support, where v is a pure jump with
// one-sided values A and B, w0 a positive smooth factor in the curve
// parameter, and dref either arc length or (on intervals) the Chebyshev
// reference dx / sqrt(1 - s^2).

#include <optional>
#include <vector>

#include "xlab/geometry.hpp"

namespace xlab {

enum class Side { Left, Right };

/// Pure jump: value A before the jump parameter, B after it.
///
/// On closed curves the weight is 2 pi periodic in the parameter with a
/// second jump half a period away: A on (t0 - pi, t0), B on (t0, t0 + pi).
/// With t0 = pi/2 on the unit circle this is A on |t| < pi/2 and B on
/// [pi/2, 3pi/2]. On intervals and arc chains it is A for t <= t0 and B for
/// t > t0.
struct JumpWeight {
    double A = 1.0;
    double B = 1.0;
    ParamValue jump_param;

    void validate() const;
};

/// Smooth positive factor w0, a polynomial in the curve parameter.
class SmoothFactor {
public:
    SmoothFactor() : coeffs_{1.0} {}
    static SmoothFactor constant(double c);
    /// Ascending coefficients in the parameter t.
    static SmoothFactor polynomial(std::vector<double> coeffs);

    [[nodiscard]] double operator()(double t) const { return eval<double>(t); }
    template <class R>
    [[nodiscard]] R eval(R t) const {
        R v(coeffs_.back());
        for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) v = v * t + R(*it);
        return v;
    }
    [[nodiscard]] bool is_constant() const { return coeffs_.size() == 1; }
    [[nodiscard]] const std::vector<double>& coefficients() const { return coeffs_; }
    [[nodiscard]] SmoothFactor scaled(double c) const;

private:
    explicit SmoothFactor(std::vector<double> c) : coeffs_(std::move(c)) {}
    std::vector<double> coeffs_;
};

enum class Reference { ArcLength, Chebyshev };
enum class JumpLayout { Periodic, Step };

class MeasureSpec {
public:
    /// Builds the measure and resolves z0. Without z0 the evaluation point is
    /// the image of the jump parameter. Throws DomainError if z0 is farther
    /// than 1e-10 from the support, InputError for inconsistent pieces.
    MeasureSpec(SupportSpec support, JumpWeight jump, SmoothFactor w0 = {}, Reference reference = Reference::ArcLength,
                std::optional<Complex> z0 = std::nullopt, const TraceOptions& trace = {});

    [[nodiscard]] const SupportSpec& support() const { return support_; }
    [[nodiscard]] const std::vector<ArcParametrization>& arcs() const { return arcs_; }
    [[nodiscard]] const JumpWeight& jump() const { return jump_; }
    [[nodiscard]] const SmoothFactor& w0() const { return w0_; }
    [[nodiscard]] Reference reference() const { return reference_; }
    [[nodiscard]] JumpLayout layout() const { return layout_; }

    [[nodiscard]] Complex z0() const { return z0_; }
    [[nodiscard]] std::size_t z0_arc() const { return z0_arc_; }
    [[nodiscard]] const ParamValue& z0_param() const { return z0_param_; }
    /// True if z0 sits on a jump of the weight.
    [[nodiscard]] bool z0_at_jump() const;

    /// w0(t) * v(t); side picks the one-sided limit at a jump. Without a
    /// side, closed curves take B at t0 and at t0 + pi (the closed half
    /// [t0, t0 + pi] carries B) and intervals take A at t0.
    [[nodiscard]] double weight_at(double t, std::optional<Side> side = std::nullopt) const;
    /// The jump factor v(t) alone.
    [[nodiscard]] double jump_value(double t, std::optional<Side> side = std::nullopt) const;
    /// Density of the reference measure against arc length at parameter t of
    /// arc `arc` (1 for arc length; 1/sqrt(1 - s^2) for Chebyshev).
    [[nodiscard]] double reference_density(std::size_t arc, double t) const;

    /// Jump parameters strictly inside arc `arc`, exact in the working type.
    [[nodiscard]] std::vector<ParamValue> jump_points(std::size_t arc) const;
    /// Index of the arc whose parameter range contains t; throws DomainError.
    [[nodiscard]] std::size_t arc_of(double t) const;

    /// The measure c * mu (w0 scaled by c).
    [[nodiscard]] MeasureSpec scaled(double c) const;
    /// Same measure with a different evaluation point.
    [[nodiscard]] MeasureSpec with_z0(Complex z0) const;

private:
    SupportSpec support_;
    std::vector<ArcParametrization> arcs_;
    JumpWeight jump_;
    SmoothFactor w0_;
    Reference reference_;
    JumpLayout layout_;
    TraceOptions trace_;
    Complex z0_;
    std::size_t z0_arc_ = 0;
    ParamValue z0_param_;
};

/// The circle measure folded onto [-1, 1] by e^{it} -> cos t: density
/// v(arccos x) / sqrt(1 - x^2), so that the integral of f(cos t) against the
/// circle measure is twice the integral of f against the result. Needs a unit
/// circle centered at 0, a weight symmetric under t -> -t and a constant w0;
/// throws SymmetryError otherwise.
MeasureSpec symmetrize_to_interval(const MeasureSpec& circle_measure);

/// The measure v(T(z)) w0 ds on the lemniscate {|T| = 1} for a jump weight on
/// the unit circle. z0 becomes the preimage of the circle's z0 on the first
/// traced component.
MeasureSpec pullback_to_lemniscate(const MeasureSpec& circle_measure, const ComplexPolynomial& poly,
                                   const TraceOptions& trace = {});

}  // namespace xlab
