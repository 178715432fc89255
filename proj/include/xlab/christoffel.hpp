#pragma once

// Orthonormal polynomials by Arnoldi on the quadrature nodes, the
// Christoffel-Darboux kernel diagonal and the Christoffel function
//
//   lambda_n(mu, z) = inf { int |P|^2 dmu : deg P <= n, P(z) = 1 }
//                   = 1 / sum_{k <= n} |p_k(z)|^2.
//
// No monomial Gram matrix is ever formed. The Hessenberg matrix of the
// Arnoldi process doubles as a recurrence that evaluates p_k anywhere.

#include <optional>
#include <vector>

#include "xlab/quadrature.hpp"

namespace xlab {

enum class Method { Kernel, Direct };
const char* to_string(Method m);
Method parse_method(const std::string& text);

template <class R>
class OrthoBasisT {
public:
    /// Arnoldi with one full reorthogonalization pass. Throws DegeneracyError
    /// (with the achieved degree) if a subdiagonal entry drops below 1e-14
    /// times the norm of the vector it came from.
    OrthoBasisT(const QuadratureRuleT<R>& rule, int degree);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
    [[nodiscard]] R mass() const { return mass_; }
    /// H(j, k) for j <= k + 1 <= degree: z p_k = sum_{j <= k+1} H(j, k) p_j.
    [[nodiscard]] Cx<R> hessenberg(int j, int k) const { return h_[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]; }
    /// p_k at node i.
    [[nodiscard]] Cx<R> node_value(std::size_t i, int k) const {
        return q_[static_cast<std::size_t>(k)][i] / sqrt_w_[i];
    }
    /// sqrt(w_i) p_k(node_i), the orthonormal columns themselves.
    [[nodiscard]] Cx<R> weighted_value(std::size_t i, int k) const { return q_[static_cast<std::size_t>(k)][i]; }

    /// p_0(z), ..., p_n(z) by the Hessenberg recurrence (n = degree() by default).
    [[nodiscard]] std::vector<Cx<R>> values(Cx<R> z, int n = -1) const;
    /// sum_{k <= n} |p_k(z)|^2. Throws OverflowError if it is not finite.
    [[nodiscard]] R kernel_diag(Cx<R> z, int n = -1) const;
    /// Partial sums K_0(z), ..., K_degree(z).
    [[nodiscard]] std::vector<R> kernel_prefix(Cx<R> z) const;
    /// max |<p_j, p_k> - delta_jk| over j, k <= n in the discrete inner product.
    [[nodiscard]] R norm_residual(int n = -1) const;

private:
    int degree_ = 0;
    R mass_{};
    std::vector<Cx<R>> nodes_;
    std::vector<R> sqrt_w_;
    std::vector<std::vector<Cx<R>>> q_;  // columns sqrt(w_i) p_k(node_i)
    std::vector<std::vector<Cx<R>>> h_;  // column k holds H(0..k+1, k)
};

using OrthoBasis = OrthoBasisT<double>;

struct ChristoffelValue {
    int n = 0;
    Complex z;
    double lambda = 0.0;
    Method method = Method::Kernel;
    Precision precision = Precision::Double;
    /// Coefficients of the extremal polynomial in p_0..p_n (direct method).
    std::optional<std::vector<Complex>> extremal_coeffs;
};

/// lambda_n at z from a prebuilt basis. The kernel method inverts the
/// kernel diagonal. The direct method forms the minimizer's coefficients
/// c_k = conj(p_k(z)) / K_n(z) and integrates |P|^2 with the quadrature
/// using the stored node values, so it also checks orthonormality and the
/// off-grid recurrence.
template <class R>
ChristoffelValue lambda(const OrthoBasisT<R>& basis, int n, Complex z, Method method);

/// Values of the extremal polynomial sum c_k p_k at the given points.
template <class R>
std::vector<Complex> extremal_polynomial_values(const ChristoffelValue& value, const OrthoBasisT<R>& basis,
                                                const std::vector<Complex>& points);

struct LambdaOptions {
    Method method = Method::Kernel;
    std::optional<int> precision_bits;  // default: choose_precision(n)
    int nodes_per_degree = 8;
    GradingPolicy grading;
};

/// Builds the rule and basis in the selected precision and evaluates
/// lambda_n(mu, z). If z lies on the support, the rule is graded toward z.
ChristoffelValue lambda(const MeasureSpec& measure, int n, Complex z, const LambdaOptions& options = {});

extern template class OrthoBasisT<double>;
extern template class OrthoBasisT<long double>;
extern template class OrthoBasisT<DoubleDouble>;
extern template class OrthoBasisT<Float128>;

}  // namespace xlab
