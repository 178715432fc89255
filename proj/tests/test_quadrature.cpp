#include <cmath>
#include <random>

#include "doctest.h"
#include "xlab/gauss_legendre.hpp"
#include "xlab/quadrature.hpp"

using namespace xlab;

namespace {

const double kPi = 3.14159265358979323846;

MeasureSpec circle(double A, double B) {
    return MeasureSpec(SupportSpec::circle({0.0, 0.0}, 1.0), JumpWeight{A, B, ParamValue::pi_fraction(1, 2)});
}

template <class F>
double simpson(F f, double a, double b, int m = 20000) {
    const double h = (b - a) / m;
    double s = f(a) + f(b);
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex v{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

}  // namespace

TEST_CASE("circle: mass and trigonometric moments") {
    const auto uniform = build_rule(circle(1.0, 1.0), 40);
    CHECK(uniform.mass() == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    for (int k = 1; k <= 40; ++k) {
        const Complex m = integrate(uniform, [k](Complex z) { return std::pow(z, k); });
        CHECK(std::abs(m) < 1e-12);
    }

    const double A = 2.0;
    const double B = 1.0;
    const auto jump = build_rule(circle(A, B), 40);
    CHECK(jump.mass() == doctest::Approx(3.0 * kPi).epsilon(1e-14));
    for (int k = 1; k <= 40; ++k) {
        // Closed form: A on (-pi/2, pi/2), B elsewhere.
        const double exact = (A - B) * 2.0 * std::sin(k * kPi / 2) / k;
        const Complex m = integrate(jump, [k](Complex z) { return std::pow(z, k); });
        CHECK(std::abs(m - exact) < 1e-12);
    }
}

TEST_CASE("node count covers nodes_per_degree times max_degree") {
    for (int n : {0, 1, 7, 64, 300}) {
        for (int npd : {4, 8, 12}) {
            const auto r = build_rule(circle(2.0, 1.0), n, npd);
            CHECK(r.size() >= static_cast<std::size_t>(npd * n));
            CHECK(r.size() % kPanelOrder == 0);
        }
    }
    const MeasureSpec iv(SupportSpec::interval(-1.0, 2.0), JumpWeight{2.0, 1.0, ParamValue(0.5)});
    CHECK(build_rule(iv, 100).size() >= 800);
}

TEST_CASE("grading reaches the finest panel size at the jump") {
    const auto r = build_rule(circle(2.0, 1.0), 64);
    CHECK(r.finest_panel <= GradingPolicy{}.finest(64) * 1.0000001);
    CHECK(r.finest_panel >= GradingPolicy{}.finest(64) * 0.5 * 0.999);
    // No node sits exactly on a jump.
    for (double t : r.params) {
        CHECK(std::fabs(t - kPi / 2) > 0.0);
        CHECK(std::fabs(t - 3 * kPi / 2) > 0.0);
    }
}

TEST_CASE("exactness against a 4x refined rule for random polynomial products") {
    std::mt19937_64 rng(20261019);
    std::normal_distribution<double> g;
    const std::vector<MeasureSpec> measures = {
        circle(2.0, 1.0),
        MeasureSpec(SupportSpec::interval(-1.0, 1.0), JumpWeight{2.0, 1.0, ParamValue(0.0)}, {}, Reference::Chebyshev),
        MeasureSpec(SupportSpec::interval(-1.0, 1.0), JumpWeight{3.0, 1.0, ParamValue(0.25)}),
        MeasureSpec(SupportSpec::ellipse(1.25, 0.75), JumpWeight{2.0, 1.0, ParamValue::pi_fraction(-1, 2)}),
        MeasureSpec(SupportSpec::lemniscate(ComplexPolynomial({{-4.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}})),
                    JumpWeight{2.0, 1.0, ParamValue::pi_fraction(1, 2)}),
    };
    for (const auto& m : measures) {
        for (int n : {5, 20, 60}) {
            const auto coarse = build_rule(m, n);
            const auto fine = build_rule(m, n, 32);
            std::vector<Complex> p, q;
            for (int k = 0; k <= n / 2; ++k) {
                p.emplace_back(g(rng), g(rng));
                q.emplace_back(g(rng), g(rng));
            }
            auto f = [&](Complex z) { return horner(p, z) * std::conj(horner(q, z)); };
            const Complex a = integrate(coarse, f);
            const Complex b = integrate(fine, f);
            double scale = 0.0;
            for (std::size_t i = 0; i < fine.size(); ++i) scale += fine.weights[i] * std::abs(f(fine.nodes[i].to_std()));
            CHECK(std::abs(a - b) <= 1e-11 * scale);
        }
    }
}

TEST_CASE("interval measures against closed forms") {
    const MeasureSpec arc(SupportSpec::interval(-1.0, 1.0), JumpWeight{2.0, 1.0, ParamValue(0.0)});
    const auto r = build_rule(arc, 10);
    CHECK(r.mass() == doctest::Approx(3.0).epsilon(1e-14));
    for (int k = 1; k <= 10; ++k) {
        const double lower = (k % 2 == 0 ? 1.0 : -1.0) / (k + 1);
        const double upper = 1.0 / (k + 1);
        const double exact = 2.0 * lower + upper;
        CHECK(integrate(r, [k](Complex z) { return std::pow(z, k); }).real() == doctest::Approx(exact).epsilon(1e-13));
    }

    const MeasureSpec cheb(SupportSpec::interval(-1.0, 1.0), JumpWeight{1.0, 1.0, ParamValue(0.0)}, {},
                           Reference::Chebyshev);
    const auto rc = build_rule(cheb, 10);
    CHECK(rc.mass() == doctest::Approx(kPi).epsilon(1e-14));
    // Chebyshev polynomials are orthogonal: int T_2 T_2 = pi / 2.
    auto t2 = [](Complex z) { return (2.0 * z * z - 1.0) * (2.0 * z * z - 1.0); };
    CHECK(integrate(rc, t2).real() == doctest::Approx(kPi / 2).epsilon(1e-13));

    // Off-center interval with a smooth factor, against Simpson in theta.
    const MeasureSpec warped(SupportSpec::interval(0.5, 3.0), JumpWeight{1.5, 0.5, ParamValue(1.0)},
                             SmoothFactor::polynomial({1.0, 0.2}), Reference::Chebyshev);
    const auto rw = build_rule(warped, 20);
    auto dens = [](double th) {
        const double x = 0.5 + 2.5 * (1.0 - std::cos(th)) / 2.0;
        return (1.0 + 0.2 * x) * x * x * 1.25;
    };
    const double th_jump = std::acos(1.0 - 2.0 * 0.5 / 2.5);
    const double oracle = 1.5 * simpson(dens, 0.0, th_jump) + 0.5 * simpson(dens, th_jump, kPi);
    CHECK(integrate(rw, [](Complex z) { return z * z; }).real() == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("ellipse perimeter") {
    const MeasureSpec m(SupportSpec::ellipse(1.25, 0.75), JumpWeight{});
    const double perimeter =
        simpson([](double t) { return std::hypot(1.25 * std::sin(t), 0.75 * std::cos(t)); }, 0.0, 2.0 * kPi);
    CHECK(build_rule(m, 8).mass() == doctest::Approx(perimeter).epsilon(1e-13));
}

TEST_CASE("lemniscate integral identities") {
    // int g(T(z)) |T'(z)| ds = sum over components of winding * int_circle g.
    const std::vector<ComplexPolynomial> polys = {
        ComplexPolynomial({{-4.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}),
        ComplexPolynomial({{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}),
        ComplexPolynomial({{0.3, 0.1}, {0.0, 0.0}, {0.0, 0.0}, {0.9, 0.0}}),
    };
    for (const auto& t : polys) {
        const MeasureSpec m(SupportSpec::lemniscate(t), JumpWeight{});
        const auto rule = build_rule(m, 24);
        const double n = t.degree();
        auto identity = [&](int j) {
            return integrate(rule, [&](Complex z) { return std::pow(t(z), j) * std::abs(t.derivative_at(z)); });
        };
        CHECK(identity(0).real() == doctest::Approx(2.0 * kPi * n).epsilon(1e-9));
        CHECK(std::abs(identity(1)) < 1e-9);
        CHECK(std::abs(identity(3)) < 1e-9);
    }

    // Jump weight pulled back along z^2 - 4: 2 (A + B) pi.
    const ComplexPolynomial t({{-4.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    const MeasureSpec m(SupportSpec::lemniscate(t), JumpWeight{2.0, 1.0, ParamValue::pi_fraction(1, 2)});
    const auto rule = build_rule(m, 24);
    const Complex v = integrate(rule, [&](Complex z) { return Complex(std::abs(t.derivative_at(z)), 0.0); });
    CHECK(v.real() == doctest::Approx(6.0 * kPi).epsilon(1e-9));
}

TEST_CASE("lemniscate split into fiber arcs: same length, each arc maps onto the circle") {
    const ComplexPolynomial t({{-4.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    const MeasureSpec whole(SupportSpec::lemniscate(t), JumpWeight{});
    const MeasureSpec split(SupportSpec::arcs(partition_arcs(t, Complex(0.0, 1.0))), JumpWeight{});
    REQUIRE(split.arcs().size() == 2);
    const auto a = build_rule(whole, 24);
    const auto b = build_rule(split, 24);
    CHECK(b.mass() == doctest::Approx(a.mass()).epsilon(1e-12));
    // int over one arc of |T'| ds is the length of the unit circle.
    std::vector<double> per_arc(2, 0.0);
    for (std::size_t i = 0; i < b.size(); ++i)
        per_arc[b.arc_ids[i]] += b.weights[i] * std::abs(t.derivative_at(b.nodes[i].to_std()));
    CHECK(per_arc[0] == doctest::Approx(2.0 * kPi).epsilon(1e-11));
    CHECK(per_arc[1] == doctest::Approx(2.0 * kPi).epsilon(1e-11));
}

TEST_CASE("extended precision rules") {
    const auto m = circle(2.0, 1.0);
    const auto dd = build_rule<DoubleDouble>(m, {16, 8, {}});
    CHECK(dd.precision_bits == 106);
    CHECK(std::fabs(num::to_double(dd.mass() - DoubleDouble(3.0) * DoubleDouble::pi())) < 1e-29);
    const auto q = build_rule<Float128>(m, {16, 8, {}});
    CHECK(q.precision_bits == 113);
    CHECK(std::fabs(static_cast<double>(q.mass() - Float128(3) * num::pi<Float128>())) < 1e-31);
    const auto ld = build_rule<long double>(m, {16, 8, {}});
    CHECK(std::fabs(static_cast<double>(ld.mass() - 3.0L * num::pi<long double>())) < 1e-17);
}

TEST_CASE("precision policy") {
    CHECK(choose_precision(100) == Precision::Double);
    CHECK(choose_precision(151) == Precision::Quad);
    CHECK(choose_precision(500, 53) == Precision::Double);
    CHECK(choose_precision(10, 106) == Precision::DoubleDouble);
    CHECK(choose_precision(10, 128) == Precision::Quad);
    CHECK_THROWS_AS(choose_precision(10, 200), Error);
}

TEST_CASE("errors: bad options, unresolvable grading, non-finite integrands") {
    const auto m = circle(2.0, 1.0);
    CHECK_THROWS_AS(build_rule(m, -1), Error);
    CHECK_THROWS_AS(build_rule(m, 10, 2), Error);
    try {
        (void)build_rule(m, 100000000);
        FAIL("expected a resolution error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resolution);
    }
    const auto r = build_rule(m, 4);
    try {
        (void)integrate(r, [](Complex z) { return z.real() > 0.9 ? Complex(NAN, 0.0) : z; });
        FAIL("expected a numeric error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Numeric);
        CHECK(std::string(e.what()).find("node") != std::string::npos);
    }
}
