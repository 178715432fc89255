#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "xlab/christoffel.hpp"

using namespace xlab;

namespace {

const double kPi = 3.14159265358979323846;

MeasureSpec circle(double A, double B, double t0 = kPi / 2) {
    ParamValue jump = t0 == kPi / 2 ? ParamValue::pi_fraction(1, 2) : ParamValue(t0);
    return MeasureSpec(SupportSpec::circle({0.0, 0.0}, 1.0), JumpWeight{A, B, jump});
}

// Moments m_l = int e^{ilt} v(t) dt for A on (-pi/2, pi/2), B elsewhere.
Complex jump_moment(int l, double A, double B) {
    if (l == 0) return (A + B) * kPi;
    return (A - B) * 2.0 * std::sin(l * kPi / 2) / l;
}

// lambda_n from the Toeplitz Gram matrix G_jk = m_{k-j}: 1 / (u^H G^{-1} u),
// u_k = conj(z)^k. The symbol is bounded between B and A, so G is well
// conditioned at every n.
double toeplitz_lambda(int n, Complex z, double A, double B) {
    Eigen::MatrixXcd g(n + 1, n + 1);
    Eigen::VectorXcd u(n + 1);
    for (int j = 0; j <= n; ++j) {
        u(j) = std::pow(std::conj(z), j);
        for (int k = 0; k <= n; ++k) g(j, k) = jump_moment(k - j, A, B);
    }
    const Eigen::VectorXcd x = g.ldlt().solve(u);
    return 1.0 / std::real(u.dot(x));
}

OrthoBasis basis_for(const MeasureSpec& m, int n) { return OrthoBasis(build_rule(m, n), n); }

}  // namespace

TEST_CASE("unit circle with weight 1: monomials and exact lambdas") {
    const auto m = circle(1.0, 1.0);
    const auto b = basis_for(m, 30);
    for (int k = 0; k < 30; ++k) {
        CHECK(std::abs(b.hessenberg(k + 1, k).re - 1.0) < 1e-12);
        for (int j = 0; j <= k; ++j) CHECK(std::abs(b.hessenberg(j, k).to_std()) < 1e-12);
    }
    const Complex z = std::polar(1.0, 0.7);
    const auto p = b.values(Cx<double>::from(z));
    for (int k = 0; k <= 30; ++k) CHECK(std::abs(p[static_cast<std::size_t>(k)].to_std() - std::pow(z, k) / std::sqrt(2 * kPi)) < 1e-12);
    for (int n : {0, 1, 5, 30}) {
        CHECK(lambda(b, n, 1.0, Method::Kernel).lambda == doctest::Approx(2 * kPi / (n + 1)).epsilon(1e-12));
        CHECK(lambda(b, n, 0.0, Method::Kernel).lambda == doctest::Approx(2 * kPi).epsilon(1e-12));
        CHECK(b.kernel_diag(Cx<double>(1.0), n) == doctest::Approx((n + 1) / (2 * kPi)).epsilon(1e-12));
    }
}

TEST_CASE("Chebyshev weight on [-1, 1]: scaled cosines") {
    const MeasureSpec m(SupportSpec::interval(-1.0, 1.0), JumpWeight{}, {}, Reference::Chebyshev);
    const auto b = basis_for(m, 20);
    for (double th : {0.1, 0.9, 2.0, 3.0}) {
        const auto p = b.values(Cx<double>(std::cos(th)));
        CHECK(std::abs(p[0].to_std() - 1.0 / std::sqrt(kPi)) < 1e-13);
        for (int k = 1; k <= 20; ++k) {
            // Up to a unimodular factor; the leading coefficient is positive here.
            CHECK(std::abs(std::abs(p[static_cast<std::size_t>(k)].to_std()) - std::sqrt(2 / kPi) * std::fabs(std::cos(k * th))) < 1e-11);
        }
    }
}

TEST_CASE("circle jump, n = 1: two-by-two Gram oracle") {
    // Moments by direct integration, Gram-Schmidt by hand.
    const double m0 = 3 * kPi;
    const double m1 = 2.0;
    CHECK(std::abs(jump_moment(0, 2, 1) - m0) < 1e-15);
    CHECK(std::abs(jump_moment(1, 2, 1) - m1) < 1e-15);
    Eigen::Matrix2cd g;
    g << m0, m1, m1, m0;
    Eigen::Vector2cd u(1.0, std::conj(Complex(0.0, 1.0)));
    const double oracle = 1.0 / std::real(u.dot(g.inverse() * u));
    CHECK(oracle == doctest::Approx((9 * kPi * kPi - 4) / (6 * kPi)).epsilon(1e-14));

    const auto b = basis_for(circle(2.0, 1.0), 1);
    // p_1 is proportional to z - m1 / m0.
    const auto p = b.values(Cx<double>(0.0));
    CHECK(std::abs(p[1].to_std() / (b.values(Cx<double>(1.0))[1].to_std() - p[1].to_std()) - (-m1 / m0)) < 1e-13);
    const double l = lambda(circle(2.0, 1.0), 1, {0.0, 1.0}).lambda;
    CHECK(l == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(l == doctest::Approx(4.5001).epsilon(1e-4));
}

TEST_CASE("circle jump against the Toeplitz moment oracle") {
    const auto m = circle(2.0, 1.0);
    const auto b = basis_for(m, 80);
    for (Complex z : {Complex(0.0, 1.0), std::polar(1.0, 0.3), std::polar(1.0, 2.5), Complex(0.2, 0.1)}) {
        for (int n : {2, 10, 40, 80}) {
            const double oracle = toeplitz_lambda(n, z, 2.0, 1.0);
            CHECK(lambda(b, n, z, Method::Kernel).lambda == doctest::Approx(oracle).epsilon(1e-11));
        }
    }
}

TEST_CASE("extremal polynomial") {
    const auto b = basis_for(circle(1.0, 1.0), 1);
    const auto v = lambda(b, 1, 1.0, Method::Direct);
    REQUIRE(v.extremal_coeffs);
    const auto vals = extremal_polynomial_values(v, b, {1.0, -1.0, 0.0, Complex(0.0, 1.0)});
    CHECK(std::abs(vals[0] - 1.0) < 1e-12);
    CHECK(std::abs(vals[1]) < 1e-12);
    CHECK(std::abs(vals[2] - 0.5) < 1e-12);
    CHECK(std::abs(vals[3] - Complex(0.5, 0.5)) < 1e-12);

    const auto jb = basis_for(circle(2.0, 1.0), 12);
    const auto c0 = lambda(jb, 0, {0.0, 1.0}, Method::Direct);
    for (auto w : extremal_polynomial_values(c0, jb, {2.0, Complex(-0.3, 0.7)})) CHECK(std::abs(w - 1.0) < 1e-12);

    const Complex z0 = std::polar(1.0, 1.1);
    const auto c = lambda(jb, 12, z0, Method::Direct);
    CHECK(std::abs(extremal_polynomial_values(c, jb, {z0})[0] - 1.0) < 1e-9);
    // int |P|^2 dmu = lambda: sum of squared coefficients.
    double s = 0.0;
    for (auto x : *c.extremal_coeffs) s += std::norm(x);
    CHECK(s == doctest::Approx(c.lambda).epsilon(1e-8));
    CHECK_THROWS_AS(extremal_polynomial_values(lambda(jb, 3, z0, Method::Kernel), jb, {z0}), Error);
}

TEST_CASE("properties: monotonicity, scaling, method agreement") {
    const std::vector<MeasureSpec> measures = {
        circle(2.0, 1.0),
        circle(1.0, 5.0, 0.4),
        MeasureSpec(SupportSpec::interval(-1.0, 1.0), JumpWeight{1.0, 2.0, ParamValue(0.0)}, {}, Reference::Chebyshev),
        MeasureSpec(SupportSpec::ellipse(1.25, 0.75), JumpWeight{2.0, 1.0, ParamValue::pi_fraction(-1, 2)}),
        MeasureSpec(SupportSpec::lemniscate(ComplexPolynomial({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}})),
                    JumpWeight{2.0, 1.0, ParamValue::pi_fraction(1, 2)}),
    };
    for (const auto& m : measures) {
        const auto b = basis_for(m, 60);
        const Complex z = m.z0();
        double prev = HUGE_VAL;
        for (int n = 0; n <= 60; ++n) {
            const double k = lambda(b, n, z, Method::Kernel).lambda;
            const double d = lambda(b, n, z, Method::Direct).lambda;
            CHECK(k > 0.0);
            CHECK(k <= prev * (1 + 1e-13));
            CHECK(std::fabs(k - d) <= 1e-10 * k);
            prev = k;
        }
        for (double c : {0.5, 2.0, 10.0}) {
            const auto bs = basis_for(m.scaled(c), 30);
            CHECK(lambda(bs, 30, z, Method::Kernel).lambda ==
                  doctest::Approx(c * lambda(b, 30, z, Method::Kernel).lambda).epsilon(1e-12));
        }
    }
}

TEST_CASE("basis invariants: orthonormality, positive subdiagonal, recurrence at nodes") {
    const auto m = circle(2.0, 1.0);
    const auto rule = build_rule(m, 100);
    const OrthoBasis b(rule, 100);
    CHECK(b.norm_residual() <= 1e-10);
    for (int k = 0; k < 100; ++k) CHECK(b.hessenberg(k + 1, k).re > 0.0);
    for (std::size_t i = 0; i < rule.size(); i += 97) {
        const auto p = b.values(rule.nodes[i]);
        for (int k = 0; k <= 100; k += 7) CHECK(std::abs((p[static_cast<std::size_t>(k)] - b.node_value(i, k)).to_std()) < 1e-9);
    }

    const auto lem = MeasureSpec(SupportSpec::lemniscate(ComplexPolynomial({{-4.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}})),
                                 JumpWeight{2.0, 1.0, ParamValue::pi_fraction(1, 2)});
    CHECK(basis_for(lem, 60).norm_residual() <= 1e-10);
}

TEST_CASE("extended precision bases") {
    const auto m = circle(2.0, 1.0);
    const OrthoBasisT<DoubleDouble> dd(build_rule<DoubleDouble>(m, {40, 8, {}}), 40);
    CHECK(num::to_double(dd.norm_residual()) <= 1e-20);
    const OrthoBasisT<Float128> q(build_rule<Float128>(m, {30, 8, {}}), 30);
    CHECK(num::to_double(q.norm_residual()) <= 1e-20);
    const Complex z(0.0, 1.0);
    const double ref = toeplitz_lambda(30, z, 2.0, 1.0);
    CHECK(lambda(q, 30, z, Method::Kernel).lambda == doctest::Approx(ref).epsilon(1e-12));
    CHECK(lambda(dd, 30, z, Method::Direct).lambda == doctest::Approx(ref).epsilon(1e-12));
    CHECK(lambda(q, 30, z, Method::Kernel).precision == Precision::Quad);

    LambdaOptions opt;
    opt.precision_bits = 106;
    const auto v = lambda(m, 30, z, opt);
    CHECK(v.precision == Precision::DoubleDouble);
    CHECK(v.lambda == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("errors: degeneracy, overflow, bad degree") {
    // Three nodes support polynomials of degree 2 only.
    QuadratureRule tiny;
    for (int i = 0; i < 3; ++i) {
        tiny.nodes.push_back(Cx<double>::from(std::polar(1.0, 2 * kPi * i / 3)));
        tiny.weights.push_back(1.0);
    }
    tiny.max_exact_degree = 5;
    try {
        OrthoBasis b(tiny, 5);
        FAIL("expected a degeneracy error");
    } catch (const DegeneracyError& e) {
        CHECK(e.achieved_degree() == 2);
        CHECK(e.kind() == ErrorKind::Degeneracy);
    }

    const auto b = basis_for(circle(2.0, 1.0), 200);
    try {
        (void)lambda(b, 200, Complex(1e300, 0.0), Method::Kernel);
        FAIL("expected an overflow error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Overflow);
    }
    CHECK_THROWS_AS(lambda(b, 201, 1.0, Method::Kernel), Error);
    CHECK_THROWS_AS(OrthoBasis(build_rule(circle(2.0, 1.0), 10), 11), Error);
    CHECK_THROWS_AS(parse_method("qr"), Error);
    CHECK(parse_method("direct") == Method::Direct);
}

TEST_CASE("off-support evaluation points are accepted") {
    // Interior of the disk: lambda stays bounded below by a positive constant.
    const auto v = lambda(circle(2.0, 1.0), 40, Complex(0.3, 0.0));
    CHECK(v.lambda > 1.0);
    const auto w = lambda(circle(2.0, 1.0), 40, Complex(1.5, 0.0));
    CHECK(w.lambda > 0.0);
    CHECK(w.lambda < 1e-6);
}
