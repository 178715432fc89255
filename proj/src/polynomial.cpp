#include "xlab/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <cstdio>
#include <string>

#include "xlab/errors.hpp"

namespace xlab {

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> ascending) : coeffs_(std::move(ascending)) {
    if (coeffs_.empty()) throw Error(ErrorKind::Input, "polynomial needs at least one coefficient");
    if (coeffs_.back() == Complex(0.0, 0.0)) throw Error(ErrorKind::Input, "leading coefficient of polynomial is zero");
    for (const auto& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw Error(ErrorKind::Input, "polynomial coefficient is not finite");
    }
}

Complex ComplexPolynomial::operator()(Complex z) const {
    Complex v = coeffs_.back();
    for (int k = degree() - 1; k >= 0; --k) v = v * z + coeffs_[static_cast<std::size_t>(k)];
    return v;
}

Complex ComplexPolynomial::derivative_at(Complex z) const {
    Complex v(0.0, 0.0);
    Complex d(0.0, 0.0);
    v = coeffs_.back();
    for (int k = degree() - 1; k >= 0; --k) {
        d = d * z + v;
        v = v * z + coeffs_[static_cast<std::size_t>(k)];
    }
    return d;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
    if (degree() == 0) throw Error(ErrorKind::Input, "derivative of a constant polynomial is identically zero");
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return ComplexPolynomial(std::move(d));
}

double ComplexPolynomial::magnitude_scale(Complex z) const {
    double s = 0.0;
    double p = 1.0;
    const double r = std::abs(z);
    for (const auto& c : coeffs_) {
        s += std::abs(c) * p;
        p *= r;
    }
    return s;
}

ComplexPolynomial ComplexPolynomial::shifted(Complex w) const {
    std::vector<Complex> c = coeffs_;
    c[0] -= w;
    if (c.size() == 1 && c[0] == Complex(0.0, 0.0)) throw Error(ErrorKind::Input, "shifted polynomial vanishes identically");
    return ComplexPolynomial(std::move(c));
}

std::vector<Complex> ComplexPolynomial::roots() const {
    const int n = degree();
    std::vector<Complex> out;
    if (n == 0) return out;
    if (n == 1) {
        out.push_back(-coeffs_[0] / coeffs_[1]);
        return out;
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[static_cast<std::size_t>(i)] / coeffs_.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::Numeric, "companion eigenvalue solver did not converge");
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Complex z = solver.eigenvalues()(i);
        double res = std::abs((*this)(z));
        // Polish only while the residual keeps shrinking; multiple roots
        // make Newton linear and it may stall.
        for (int it = 0; it < 20 && res > 0.0; ++it) {
            const Complex d = derivative_at(z);
            if (d == Complex(0.0, 0.0)) break;
            const Complex cand = z - (*this)(z) / d;
            const double cres = std::abs((*this)(cand));
            if (!(cres < res)) break;
            z = cand;
            res = cres;
        }
        out.push_back(z);
    }
    return out;
}

std::vector<Complex> preimages(const ComplexPolynomial& poly, Complex w, double tolerance) {
    if (poly.degree() < 1) throw Error(ErrorKind::Input, "preimages need a polynomial of degree at least 1");
    const ComplexPolynomial shifted = poly.shifted(w);
    std::vector<Complex> zs = shifted.roots();
    std::string bad;
    for (const auto& z : zs) {
        const double res = std::abs(shifted(z));
        const double scale = std::max(1.0, shifted.magnitude_scale(z));
        if (!(res <= tolerance * scale)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, " z=(%.6g,%.6g) residual=%.3g", z.real(), z.imag(), res);
            bad += buf;
        }
    }
    if (!bad.empty()) throw Error(ErrorKind::Numeric, "preimage root finder did not converge:" + bad);
    return zs;
}

}  // namespace xlab
