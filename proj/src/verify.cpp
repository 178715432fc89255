#include "xlab/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <map>

#include "xlab/christoffel.hpp"
#include "xlab/potential.hpp"
#include "xlab/sweep.hpp"

namespace xlab {
namespace {

constexpr double kPi = 3.14159265358979323846;
const double kLn2 = std::log(2.0);

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

ComplexPolynomial monomial(int n) {
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    c.back() = 1.0;
    return ComplexPolynomial(std::move(c));
}

MeasureSpec circle_uniform() {
    return MeasureSpec(SupportSpec::circle({0.0, 0.0}, 1.0), JumpWeight{}, {}, Reference::ArcLength, Complex(1.0, 0.0));
}
MeasureSpec circle_jump(double A = 2.0, double B = 1.0) {
    return MeasureSpec(SupportSpec::circle({0.0, 0.0}, 1.0), JumpWeight{A, B, ParamValue::pi_fraction(1, 2)});
}
MeasureSpec interval_jump() { return symmetrize_to_interval(circle_jump()); }
MeasureSpec lemniscate_jump(int degree = 2) { return pullback_to_lemniscate(circle_jump(), monomial(degree)); }
MeasureSpec ellipse_jump() { return MeasureSpec(SupportSpec::ellipse(1.25, 0.75), JumpWeight{2.0, 1.0, ParamValue(0.0)}); }

std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int n = lo; n <= hi; ++n) v.push_back(n);
    return v;
}

class Recorder {
public:
    Recorder(SuiteReport& r, const VerifyOptions& o) : report_(r), options_(o) {}

    // |measured - reference| / |reference| <= tol. Headline checks take --tol.
    void relative(const std::string& name, double measured, double reference, double tol, bool headline = false,
                  std::string note = "") {
        add(name, measured, reference, rel(measured, reference), pick(tol, headline), std::move(note));
    }
    // measured <= bound.
    void bound(const std::string& name, double measured, double bound, bool headline = false, std::string note = "") {
        add(name, measured, NAN, measured, pick(bound, headline), std::move(note));
    }
    void note(std::string s) { report_.notes.push_back(std::move(s)); }
    [[nodiscard]] int bits() const { return options_.precision_bits; }

private:
    [[nodiscard]] double pick(double tol, bool headline) const {
        return headline ? options_.tolerance.value_or(tol) : tol;
    }
    void add(const std::string& name, double measured, double reference, double error, double tol, std::string note) {
        Check c{name, measured, reference, error, tol, std::isfinite(error) && error <= tol, std::move(note)};
        report_.passed = report_.passed && c.passed;
        report_.checks.push_back(std::move(c));
    }
    SuiteReport& report_;
    const VerifyOptions& options_;
};

SweepResult sweep(const MeasureSpec& m, const std::vector<int>& schedule, int bits, Method method = Method::Kernel) {
    SweepOptions o;
    o.method = method;
    o.precision_bits = bits;
    return run_sweep(m, m.z0(), schedule, o);
}

// Largest relative increase lambda_{k+1}/lambda_k - 1 along a sweep.
double worst_increase(const SweepResult& s) {
    double worst = -HUGE_VAL;
    for (std::size_t i = 1; i < s.rows.size(); ++i)
        worst = std::max(worst, s.rows[i].lambda_n / s.rows[i - 1].lambda_n - 1.0);
    return worst;
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::vector<int> jump_schedule() { return geometric_schedule(32, 512, 1.25); }

// Sweep over [32, 512], extrapolate, compare with the prediction and the
// prediction with its closed form.
SweepResult jump_experiment(Recorder& rec, const std::string& label, const MeasureSpec& m, double closed_form,
                            double tol) {
    const auto s = sweep(m, jump_schedule(), rec.bits());
    rec.relative(label + ": predicted limit against closed form", s.predicted_limit, closed_form, 1e-9);
    const auto e = extrapolate(s);
    rec.relative(label + ": extrapolated n lambda_n over n in [32, 512]", e.limit, s.predicted_limit, tol, true,
                 e.fit_model);
    rec.bound(label + ": lambda_n non-increasing (largest relative increase)", worst_increase(s), 0.0);
    for (const auto& r : s.rows)
        rec.note(label + ": n=" + std::to_string(r.n) + fmt(" n*lambda_n=%.10g rel.err=%.3e", r.n_lambda_n, r.relative_error));
    return s;
}

void circle_exact(Recorder& rec) {
    const auto m = circle_uniform();
    for (Method method : {Method::Kernel, Method::Direct}) {
        const auto s = sweep(m, range(0, 100), 53, method);
        double worst = 0.0;
        int at = 0;
        for (const auto& r : s.rows) {
            const double e = rel(r.lambda_n, 2 * kPi / (r.n + 1));
            if (e > worst) worst = e, at = r.n;
        }
        rec.bound(std::string("lambda_n(ds, 1) against 2 pi/(n + 1) for n <= 100, ") + to_string(method) +
                      " method (max relative error)",
                  worst, 1e-12, true, "worst at n=" + std::to_string(at));
    }
}

void method_equivalence(Recorder& rec) {
    const std::vector<std::pair<std::string, MeasureSpec>> cases = {
        {"circle-uniform", circle_uniform()},
        {"circle-jump", circle_jump()},
        {"interval-jump", interval_jump()},
        {"lemniscate-jump", lemniscate_jump()},
    };
    for (const auto& [label, m] : cases) {
        const auto rule = build_rule<double>(m, RuleOptions{60, 8, {}});
        const OrthoBasis basis(rule, 60);
        double worst = 0.0;
        int at = 0;
        for (int n = 0; n <= 60; ++n) {
            const double k = lambda(basis, n, m.z0(), Method::Kernel).lambda;
            const double d = lambda(basis, n, m.z0(), Method::Direct).lambda;
            if (rel(d, k) > worst) worst = rel(d, k), at = n;
        }
        rec.bound(label + ": kernel vs direct lambda_n, n <= 60 (max relative difference)", worst, 1e-10, true,
                  "worst at n=" + std::to_string(at));
    }
}

void circle_jump_suite(Recorder& rec) {
    const auto s = jump_experiment(rec, "circle A=2 B=1 at i", circle_jump(), 2 * kPi / kLn2, 0.02);
    const auto& last = s.rows.back();
    rec.relative("circle A=2 B=1 at i: raw n lambda_n at n = 512", last.n_lambda_n, s.predicted_limit, 0.05);

    // The 53-bit sweep against double-double on the lower part of the schedule.
    const auto schedule = geometric_schedule(32, 128, 1.25);
    const auto lo = sweep(circle_jump(), schedule, rec.bits());
    const auto hi = sweep(circle_jump(), schedule, 106);
    double worst = 0.0;
    for (std::size_t i = 0; i < schedule.size(); ++i) worst = std::max(worst, rel(lo.rows[i].lambda_n, hi.rows[i].lambda_n));
    rec.bound("circle A=2 B=1 at i: working precision against 106 bits, n <= 128 (max relative difference)", worst, 1e-9);
}

void interval_jump_suite(Recorder& rec) {
    jump_experiment(rec, "interval [-1,1] at 0", interval_jump(), kPi / kLn2, 0.02);
}

// Degree halving: P(z^2) has degree 2m and the same L2 norm on the
// lemniscate as P on the circle, so lambda_2m(lemniscate) <= lambda_m(circle);
// both n lambda_n tend to the same limit.
void lemniscate_jump_suite(Recorder& rec) {
    const auto lem = jump_experiment(rec, "lemniscate z^2 at e^{i pi/4}", lemniscate_jump(), 2 * kPi / kLn2, 0.03);
    std::vector<int> halves;
    std::vector<const SweepRow*> rows;
    for (const auto& r : lem.rows) {
        if (r.n >= 64 && r.n % 2 == 0) {
            halves.push_back(r.n / 2);
            rows.push_back(&r);
        }
    }
    const auto circ = sweep(circle_jump(), halves, rec.bits());
    double worst = 0.0;
    double ineq = -HUGE_VAL;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& c = circ.rows[i];
        worst = std::max(worst, rel(rows[i]->n_lambda_n, c.n_lambda_n));
        ineq = std::max(ineq, rows[i]->lambda_n / c.lambda_n - 1.0);
        rec.note("halving: n=" + std::to_string(rows[i]->n) +
                 fmt(" lemniscate n*lambda_n=%.10g circle (n/2)*lambda_{n/2}=%.10g", rows[i]->n_lambda_n, c.n_lambda_n));
    }
    rec.bound("lemniscate n lambda_n vs circle (n/2) lambda_{n/2}, even n >= 64 (max relative difference)", worst, 0.05);
    rec.bound("lambda_n(lemniscate) <= lambda_{n/2}(circle) (largest relative excess)", ineq, 1e-10);
}

void ellipse_jump_suite(Recorder& rec) {
    jump_experiment(rec, "ellipse a=1.25 b=0.75 at 1.25", ellipse_jump(), 1.5 * kPi / kLn2, 0.05);
}

void continuity_suite(Recorder& rec) {
    const auto m = circle_jump(1.0 + 1e-6, 1.0);
    rec.relative("A = 1 + 1e-6: predicted limit against 2 pi", predicted_limit(m, m.z0()), 2 * kPi, 1e-5);
    const auto s = sweep(m, {256}, rec.bits());
    rec.relative("A = 1 + 1e-6: n lambda_n at n = 256 against 2 pi", s.rows[0].n_lambda_n, 2 * kPi, 0.05, true);
}

// Identities on {|T| = 1} for f(z) = 1/(1 + |z - c|^2), with F(z) the sum of
// f over the fiber T^{-1}(T(z)) and sigma_j the arcs between the preimages
// of 1: (1) int_{sigma_j} F |T'| ds = int f |T'| ds for every j,
// (2) int F |T'| ds = N int f |T'| ds, (3) int g(T) |T'| ds = N int g(e^{it}) dt.
void lemniscate_identities(Recorder& rec, int degree) {
    const auto t = monomial(degree);
    const double N = degree;
    const std::string label = "T = z^" + std::to_string(degree);
    auto f = [](Complex z) { return 1.0 / (1.0 + std::norm(z - Complex(0.3, 0.2))); };
    auto F = [&](Complex z) {
        double s = 0.0;
        for (const Complex& p : preimages(t, t(z))) s += f(p);
        return s;
    };
    auto dT = [&](Complex z) { return std::abs(t.derivative_at(z)); };

    const auto rule = build_rule(MeasureSpec(SupportSpec::lemniscate(t), JumpWeight{}), 48);
    double i_f = 0.0;
    double i_F = 0.0;
    double i_g = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const Complex z = rule.nodes[i].to_std();
        const double w = rule.weights[i] * dT(z);
        i_f += w * f(z);
        i_F += w * F(z);
        i_g += w * (1.0 + std::pow(t(z).real(), 2));
    }

    const auto arcs = partition_arcs(t, Complex(1.0, 0.0));
    const auto prule = build_rule(MeasureSpec(SupportSpec::arcs(arcs), JumpWeight{}), 48);
    std::vector<double> per_arc(arcs.size(), 0.0);
    for (std::size_t i = 0; i < prule.size(); ++i) {
        const Complex z = prule.nodes[i].to_std();
        per_arc[prule.arc_ids[i]] += prule.weights[i] * dT(z) * F(z);
    }
    double worst = 0.0;
    for (double v : per_arc) worst = std::max(worst, rel(v, i_f));
    rec.bound(label + ": fiber sums over each of the " + std::to_string(arcs.size()) +
                  " arcs (max relative difference)",
              worst, 1e-9);
    rec.relative(label + ": fiber sum over the whole lemniscate equals N int f |T'| ds", i_F, N * i_f, 1e-9);
    rec.relative(label + ": int (1 + Re(T)^2) |T'| ds = 3 pi N", i_g, 3 * kPi * N, 1e-9);
}

void density_masses(Recorder& rec) {
    const std::vector<std::pair<std::string, SupportSpec>> cases = {
        {"unit circle", SupportSpec::circle({0.0, 0.0}, 1.0)},
        {"circle r=2.5 at 1-2i", SupportSpec::circle({1.0, -2.0}, 2.5)},
        {"interval [-1,1]", SupportSpec::interval(-1.0, 1.0)},
        {"interval [0.5,4]", SupportSpec::interval(0.5, 4.0)},
        {"ellipse 1.25 x 0.75", SupportSpec::ellipse(1.25, 0.75)},
        {"ellipse 2 x 0.5 rotated", SupportSpec::ellipse(2.0, 0.5, {0.3, 0.1}, 0.4)},
        {"lemniscate z^2", SupportSpec::lemniscate(monomial(2))},
        {"lemniscate z^3", SupportSpec::lemniscate(monomial(3))},
        {"lemniscate z^2 - 4", SupportSpec::lemniscate(ComplexPolynomial({{-4.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}))},
    };
    for (const auto& [label, s] : cases) {
        const auto rule = build_rule(MeasureSpec(s, JumpWeight{}), 64);
        const auto d = equilibrium_density(s);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * d(rule.nodes[i].to_std());
        rec.relative(label + ": equilibrium density integrates to 1", sum, 1.0, 1e-8);
    }
}

// Slope of log(sup |P_n| / ||P_n||) against log n for the extremal
// polynomials at z0, sup taken over the quadrature nodes.
double nikolskii_exponent(const MeasureSpec& m, const std::vector<int>& ns) {
    const int top = ns.back();
    const auto rule = build_rule<double>(m, RuleOptions{top, 16, {}});
    const OrthoBasis basis(rule, top);
    std::vector<Complex> pts;
    pts.reserve(rule.size());
    for (const auto& z : rule.nodes) pts.push_back(z.to_std());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n : ns) {
        const auto v = lambda(basis, n, m.z0(), Method::Direct);
        double sup = 0.0;
        for (const Complex& p : extremal_polynomial_values(v, basis, pts)) sup = std::max(sup, std::abs(p));
        const double x = std::log(n);
        const double y = std::log(sup / std::sqrt(v.lambda));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double k = static_cast<double>(ns.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

void properties(Recorder& rec) {
    const std::vector<std::pair<std::string, MeasureSpec>> jumps = {
        {"circle-jump", circle_jump()},
        {"circle A=4 B=1", circle_jump(4.0, 1.0)},
        {"interval-jump", interval_jump()},
        {"lemniscate z^2 jump", lemniscate_jump(2)},
        {"lemniscate z^3 jump", lemniscate_jump(3)},
        {"ellipse-jump", ellipse_jump()},
    };
    const auto all = range(1, 128);
    for (const auto& [label, m] : jumps) {
        const auto s = sweep(m, all, 53);
        rec.bound(label + ": lambda_n non-increasing for n <= 128 (largest relative increase)", worst_increase(s), 0.0);

        // Majorization n lambda_n <= C with C = 1.25 times the limit.
        double sup = 0.0;
        for (const auto& r : s.rows) sup = std::max(sup, r.n_lambda_n);
        rec.bound(label + ": sup n lambda_n / predicted limit, n <= 128", sup / s.predicted_limit, 1.25);

        const auto scaled = sweep(m.scaled(3.7), all, 53);
        double worst = 0.0;
        for (std::size_t i = 0; i < all.size(); ++i)
            worst = std::max(worst, rel(scaled.rows[i].lambda_n, 3.7 * s.rows[i].lambda_n));
        rec.bound(label + ": lambda_n(3.7 mu) = 3.7 lambda_n(mu) (max relative difference)", worst, 1e-12);
    }
    lemniscate_identities(rec, 2);
    lemniscate_identities(rec, 3);
    density_masses(rec);

    const auto ns = geometric_schedule(8, 128, 1.25);
    for (const auto& [label, m] : {jumps[0], jumps[2], jumps[3], jumps[5]})
        rec.bound(label + ": Nikolskii growth exponent of sup|P_n| / ||P_n|| over n in [8, 128]",
                  nikolskii_exponent(m, ns), 1.1);
}

using SuiteFn = void (*)(Recorder&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> s = {
        {"circle-exact", circle_exact},       {"method-equivalence", method_equivalence},
        {"circle-jump", circle_jump_suite},   {"interval-jump", interval_jump_suite},
        {"lemniscate-jump", lemniscate_jump_suite}, {"ellipse-jump", ellipse_jump_suite},
        {"properties", properties},           {"continuity", continuity_suite},
    };
    return s;
}

nlohmann::json number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : suites()) v.push_back(s.first);
        return v;
    }();
    return names;
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& options) {
    for (const auto& [n, fn] : suites()) {
        if (n != name) continue;
        SuiteReport report;
        report.suite = name;
        Recorder rec(report, options);
        const auto t0 = std::chrono::steady_clock::now();
        fn(rec);
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return report;
    }
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw Error(ErrorKind::Input, "unknown suite '" + name + "' (known: " + known + ")");
}

std::string to_json(const std::vector<SuiteReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : r.checks) {
            checks.push_back({{"name", c.name},
                              {"measured", number(c.measured)},
                              {"reference", number(c.reference)},
                              {"error", number(c.error)},
                              {"tolerance", c.tolerance},
                              {"passed", c.passed},
                              {"note", c.note}});
        }
        out.push_back({{"suite", r.suite},
                       {"passed", r.passed},
                       {"seconds", r.seconds},
                       {"checks", checks},
                       {"notes", r.notes}});
    }
    return out.dump(2) + "\n";
}

std::string to_text(const SuiteReport& r) {
    std::string out;
    char buf[160];
    for (const auto& c : r.checks) {
        out += c.passed ? "  ok    " : "  FAIL  ";
        out += c.name;
        if (std::isfinite(c.reference))
            std::snprintf(buf, sizeof buf, ": %.12g vs %.12g, rel %.3e (tol %.3g)", c.measured, c.reference, c.error,
                          c.tolerance);
        else
            std::snprintf(buf, sizeof buf, ": %.6g (bound %.3g)", c.measured, c.tolerance);
        out += buf;
        out += "\n";
        if (!c.note.empty()) out += "        " + c.note + "\n";
    }
    std::snprintf(buf, sizeof buf, "%s: %s (%.1f s)\n", r.suite.c_str(), r.passed ? "PASS" : "FAIL", r.seconds);
    return out + buf;
}

}  // namespace xlab
