#pragma once

// Equilibrium densities d omega / ds and normal derivatives of the Green
// function with pole at infinity, d g / d n = 2 pi d omega / ds.

#include <functional>
#include <string>

#include "xlab/geometry.hpp"

namespace xlab {

enum class DensitySource { ClosedFormCircle, ClosedFormInterval, Lemniscate, ExteriorMap };
const char* to_string(DensitySource s);

/// Exterior conformal map Phi onto {|w| > 1}, Phi(inf) = inf, given through
/// its inverse z(w) = center + e^{i rotation} ((a + b) w + (a - b) / w) / 2.
/// a = b = r is the circle of radius r.
struct ExteriorMapSpec {
    Complex center;
    double a = 1.0;
    double b = 1.0;
    double rotation = 0.0;

    static ExteriorMapSpec circle(Complex center, double radius);
    static ExteriorMapSpec ellipse(double a, double b, Complex center = {}, double rotation = 0.0);

    [[nodiscard]] Complex inverse(Complex w) const;
    [[nodiscard]] Complex inverse_derivative(Complex w) const;
    /// Phi(z) for z on or outside the curve (the root with |w| >= 1).
    [[nodiscard]] Complex phi(Complex z) const;
};

class EquilibriumDensity {
public:
    EquilibriumDensity(DensitySource source, std::function<double(Complex)> evaluator)
        : source_(source), eval_(std::move(evaluator)) {}
    [[nodiscard]] DensitySource source() const { return source_; }
    /// Density against arc length at a support point. Points within 1e-8 of
    /// the support are projected onto it; others raise DomainError.
    [[nodiscard]] double operator()(Complex z) const { return eval_(z); }

private:
    DensitySource source_;
    std::function<double(Complex)> eval_;
};

/// Off-support tolerance shared by all evaluators.
inline constexpr double kSupportTolerance = 1e-8;

EquilibriumDensity density_circle(double radius, Complex center = {});
/// Arcsine law 2 / (pi (b - a) sqrt(1 - s^2)), s = (2x - a - b)/(b - a),
/// per unit length of [a, b]. DomainError at or beyond the endpoints.
double density_interval(double a, double b, Complex x);
/// |T'(z)| / (2 pi N) on {|T| = 1}.
double density_lemniscate(const ComplexPolynomial& poly, Complex z);
/// |Phi'(z)| / (2 pi) = 1 / (2 pi |dz/dw|) at w = Phi(z).
double density_exterior_map(const ExteriorMapSpec& map, Complex z);
/// 2 pi times the density.
double green_normal_derivative(double density_value);

/// Density of the equilibrium measure of a support. Arc chains raise
/// CapabilityError.
EquilibriumDensity equilibrium_density(const SupportSpec& support);

}  // namespace xlab
