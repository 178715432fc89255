#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "xlab/geometry.hpp"

using namespace xlab;

namespace {

const double kPi = 3.14159265358979323846;

bool contains_point(const std::vector<Complex>& pts, Complex z, double tol) {
    return std::any_of(pts.begin(), pts.end(), [&](Complex p) { return std::abs(p - z) < tol; });
}

ComplexPolynomial poly(std::vector<Complex> c) { return ComplexPolynomial(std::move(c)); }

// Radius r > 0 with |T(center + r e^{i theta})| = 1, found by bisection on
// [r_lo, r_hi] where |T| - 1 changes sign. Independent of the tracer.
double radial_level_root(const ComplexPolynomial& t, Complex center, double theta, double r_lo, double r_hi) {
    auto f = [&](double r) { return std::abs(t(center + std::polar(r, theta))) - 1.0; };
    double flo = f(r_lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (r_lo + r_hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            r_lo = mid;
            flo = fm;
        } else {
            r_hi = mid;
        }
    }
    return 0.5 * (r_lo + r_hi);
}

}  // namespace

TEST_CASE("parametrize: unit-speed circle and identity interval") {
    auto circle = parametrize(SupportSpec::circle({0.0, 0.0}, 1.0));
    REQUIRE(circle.size() == 1);
    CHECK(circle[0].lo() == 0.0);
    CHECK(circle[0].hi() == doctest::Approx(2.0 * kPi));
    for (double t : {0.0, 0.3, 2.0, 5.5}) {
        CHECK(std::abs(circle[0].point(t) - std::polar(1.0, t)) < 1e-15);
        CHECK(circle[0].speed(t) == doctest::Approx(1.0));
    }

    auto interval = parametrize(SupportSpec::interval(-1.0, 1.0));
    REQUIRE(interval.size() == 1);
    for (double t : {-1.0, -0.25, 0.0, 0.8}) {
        CHECK(interval[0].point(t) == Complex(t, 0.0));
        CHECK(interval[0].speed(t) == doctest::Approx(1.0));
    }
}

TEST_CASE("lemniscate with a critical point on the level set is rejected") {
    // T(z) = z^2 - 1: T'(0) = 0 and |T(0)| = 1.
    try {
        (void)SupportSpec::lemniscate(poly({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}));
        FAIL("expected a geometry error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Geometry);
        CHECK(std::string(e.what()).find("critical point") != std::string::npos);
    }
    CHECK_THROWS_AS(trace_lemniscate(poly({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}})), Error);
}

TEST_CASE("invalid supports") {
    CHECK_THROWS_AS(SupportSpec::interval(1.0, 1.0), Error);
    CHECK_THROWS_AS(SupportSpec::circle({0.0, 0.0}, 0.0), Error);
    CHECK_THROWS_AS(SupportSpec::ellipse(0.5, 0.75), Error);
    CHECK_THROWS_AS(poly({{1.0, 0.0}, {0.0, 0.0}}), Error);
}

TEST_CASE("trace_lemniscate: T(z) = z and T(z) = z^2 give the unit circle") {
    for (int n : {1, 2}) {
        std::vector<Complex> c(static_cast<std::size_t>(n + 1), {0.0, 0.0});
        c.back() = 1.0;
        const auto t = poly(c);
        auto comps = trace_lemniscate(t, 256);
        REQUIRE(comps.size() == 1);
        const auto& shape = std::get<LemniscateShape>(comps[0].shape());
        CHECK(shape.component->winding() == n);
        for (double phi = comps[0].lo(); phi < comps[0].hi(); phi += 0.37) {
            const Complex z = comps[0].point(phi);
            CHECK(std::abs(std::abs(z) - 1.0) < 1e-14);
            CHECK(std::abs(t(z) - std::polar(1.0, phi)) < 1e-13);
        }
        CHECK(comps[0].length() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    }
}

TEST_CASE("trace_lemniscate: T(z) = z^2 - 4 has two ovals around +-2") {
    const auto t = poly({{-4.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    auto comps = trace_lemniscate(t, 512);
    REQUIRE(comps.size() == 2);
    int around_plus = 0;
    int around_minus = 0;
    for (const auto& arc : comps) {
        const auto& comp = *std::get<LemniscateShape>(arc.shape()).component;
        CHECK(comp.winding() == 1);
        const Complex centroid = [&] {
            Complex s{};
            for (auto z : comp.table()) s += z;
            return s / static_cast<double>(comp.table().size());
        }();
        const Complex center = centroid.real() > 0 ? Complex(2.0, 0.0) : Complex(-2.0, 0.0);
        (centroid.real() > 0 ? around_plus : around_minus)++;
        // Oracle: each oval is star-shaped about its center; compare with radial bisection.
        for (double phi = arc.lo(); phi < arc.hi(); phi += 0.05) {
            const Complex z = arc.point(phi);
            const double theta = std::arg(z - center);
            const double r = radial_level_root(t, center, theta, 0.0, 1.0);
            CHECK(std::abs(std::abs(z - center) - r) < 1e-12);
        }
    }
    CHECK(around_plus == 1);
    CHECK(around_minus == 1);
}

TEST_CASE("preimages: fibers of simple polynomials") {
    auto sq = preimages(poly({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}), {-1.0, 0.0});
    REQUIRE(sq.size() == 2);
    CHECK(contains_point(sq, {0.0, 1.0}, 1e-14));
    CHECK(contains_point(sq, {0.0, -1.0}, 1e-14));

    auto cube = preimages(poly({{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}), {1.0, 0.0});
    REQUIRE(cube.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(contains_point(cube, std::polar(1.0, 2.0 * kPi * k / 3.0), 1e-14));

    auto shifted = preimages(poly({{-4.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}), {1.0, 0.0});
    REQUIRE(shifted.size() == 2);
    CHECK(contains_point(shifted, {std::sqrt(5.0), 0.0}, 1e-14));
    CHECK(contains_point(shifted, {-std::sqrt(5.0), 0.0}, 1e-14));
}

TEST_CASE("preimages: N points with small residual for random polynomials up to degree 12") {
    std::mt19937_64 rng(20261019);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 12;
        std::vector<Complex> c;
        for (int k = 0; k <= n; ++k) c.emplace_back(gauss(rng), gauss(rng));
        const auto t = poly(c);
        const Complex w = std::polar(1.0, angle(rng));
        auto zs = preimages(t, w);
        REQUIRE(static_cast<int>(zs.size()) == n);
        for (auto z : zs) CHECK(std::abs(t(z) - w) < 1e-10 * std::max(1.0, t.magnitude_scale(z)));
    }
}

TEST_CASE("partition_arcs: cut points and arc lengths") {
    const auto sq = poly({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    auto arcs = partition_arcs(sq, std::polar(1.0, -kPi / 2));
    REQUIRE(arcs.size() == 2);
    std::vector<Complex> starts;
    for (const auto& a : arcs) starts.push_back(a.point(a.lo()));
    CHECK(contains_point(starts, std::polar(1.0, -kPi / 4), 1e-12));
    CHECK(contains_point(starts, std::polar(1.0, 3 * kPi / 4), 1e-12));

    const auto id = poly({{0.0, 0.0}, {1.0, 0.0}});
    auto single = partition_arcs(id, {1.0, 0.0});
    REQUIRE(single.size() == 1);
    CHECK(std::abs(single[0].point(single[0].lo()) - Complex(1.0, 0.0)) < 1e-13);
    CHECK(single[0].length() == doctest::Approx(2.0 * kPi).epsilon(1e-12));

    const auto cube = poly({{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    auto thirds = partition_arcs(cube, std::polar(1.0, -kPi / 2));
    REQUIRE(thirds.size() == 3);
    for (const auto& a : thirds) {
        // Oracle: polyline length of the arc sampled densely.
        double poly_len = 0.0;
        const int m = 20000;
        for (int i = 0; i < m; ++i) {
            const double t0 = a.lo() + (a.hi() - a.lo()) * i / m;
            const double t1 = a.lo() + (a.hi() - a.lo()) * (i + 1) / m;
            poly_len += std::abs(a.point(t1) - a.point(t0));
        }
        CHECK(a.length() == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-10));
        CHECK(poly_len == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-8));
        // T is one-to-one from the arc onto the circle minus the base point.
        CHECK(std::abs(cube(a.point(a.lo())) - Complex(0.0, -1.0)) < 1e-12);
    }
}

TEST_CASE("lemniscate invariants: fiber consistency, arc cover, regularity") {
    const std::vector<ComplexPolynomial> polys = {
        poly({{-4.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}),
        poly({{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}),
        poly({{0.3, 0.1}, {0.0, 0.0}, {0.0, 0.0}, {0.9, 0.0}}),
        poly({{-0.5, 0.0}, {0.2, 0.0}, {1.0, 0.0}}),
    };
    for (const auto& t : polys) {
        auto comps = trace_lemniscate(t, 512);
        double total = 0.0;
        for (const auto& c : comps) {
            total += c.length();
            for (double phi = c.lo(); phi < c.hi(); phi += 0.41) {
                const Complex z = c.point(phi);
                CHECK(std::abs(std::abs(t(z)) - 1.0) < 1e-13);
                CHECK(contains_point(preimages(t, t(z)), z, 1e-8));
                CHECK(std::abs(t.derivative_at(z)) > 1e-6);
            }
        }
        auto arcs = partition_arcs(comps, std::polar(1.0, -kPi / 2));
        CHECK(static_cast<int>(arcs.size()) == t.degree());
        double pieces = 0.0;
        for (const auto& a : arcs) pieces += a.length();
        CHECK(pieces == doctest::Approx(total).epsilon(1e-9));
    }
}

TEST_CASE("locate recovers parameters on each arc kind") {
    auto ell = parametrize(SupportSpec::ellipse(1.25, 0.75));
    for (double t : {0.0, 0.7, 2.5, 4.0, 6.1}) {
        auto loc = ell[0].locate(ell[0].point(t));
        CHECK(loc.t == doctest::Approx(t).epsilon(1e-12));
        CHECK(loc.distance < 1e-14);
    }
    auto lem = trace_lemniscate(poly({{-4.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}), 256);
    for (const auto& arc : lem) {
        const double t = arc.lo() + 1.234;
        auto loc = arc.locate(arc.point(t));
        CHECK(loc.t == doctest::Approx(t).epsilon(1e-12));
        CHECK(loc.distance < 1e-13);
    }
}
