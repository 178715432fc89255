#pragma once

#include <vector>

#include "xlab/numeric.hpp"

namespace xlab {

/// Polynomial with complex coefficients stored in ascending degree order.
class ComplexPolynomial {
public:
    /// Throws InputError if the list is empty or the leading coefficient is zero.
    explicit ComplexPolynomial(std::vector<Complex> ascending);

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] const std::vector<Complex>& coefficients() const { return coeffs_; }
    [[nodiscard]] Complex leading() const { return coeffs_.back(); }

    [[nodiscard]] Complex operator()(Complex z) const;
    [[nodiscard]] Complex derivative_at(Complex z) const;
    [[nodiscard]] ComplexPolynomial derivative() const;

    /// Value and first derivative by a single Horner pass in the working type.
    template <class R>
    void evaluate(Cx<R> z, Cx<R>& value, Cx<R>& deriv) const {
        value = Cx<R>::from(coeffs_.back());
        deriv = Cx<R>(R(0.0));
        for (int k = degree() - 1; k >= 0; --k) {
            deriv = deriv * z + value;
            value = value * z + Cx<R>::from(coeffs_[static_cast<std::size_t>(k)]);
        }
    }

    /// Sum of |c_k| |z|^k, the natural scale for residuals at z.
    [[nodiscard]] double magnitude_scale(Complex z) const;

    /// This polynomial minus a constant.
    [[nodiscard]] ComplexPolynomial shifted(Complex w) const;

    /// All roots with multiplicity: companion-matrix eigenvalues followed by
    /// Newton polishing. Degree 0 returns an empty list.
    [[nodiscard]] std::vector<Complex> roots() const;

private:
    std::vector<Complex> coeffs_;
};

/// The N solutions of T(z) = w with multiplicity, Newton-polished.
/// Throws NumericError (with the residuals in the message) if some
/// |T(z_i) - w| exceeds tolerance * max(1, scale at z_i).
std::vector<Complex> preimages(const ComplexPolynomial& poly, Complex w, double tolerance = 1e-10);

}  // namespace xlab
