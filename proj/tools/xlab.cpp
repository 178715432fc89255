// xlab: Christoffel functions of jump-weight measures from the command line.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "xlab/measure_file.hpp"
#include "xlab/potential.hpp"
#include "xlab/sweep.hpp"
#include "xlab/verify.hpp"

using namespace xlab;

namespace {

struct Point {
    std::string text = "auto-jump";
    [[nodiscard]] bool automatic() const { return text == "auto-jump"; }
};

// The measure keeps its own z0 (from the file) unless --z names the jump
// explicitly; an evaluation point off the support is passed separately.
MeasureSpec load(const std::string& path) { return build_measure(read_measure_file(path)); }

Complex evaluation_point(const MeasureSpec& m, const Point& z) { return z.automatic() ? m.z0() : parse_complex(z.text); }

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Input, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorKind::Input, "write to '" + path + "' failed");
}

std::string complex_text(Complex z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", z.real(), z.imag());
    return buf;
}

int cmd_lambda(const std::string& measure, const Point& z, int n, const std::string& method,
               std::optional<int> bits, int npd) {
    const auto m = load(measure);
    LambdaOptions o;
    o.method = parse_method(method);
    o.precision_bits = bits;
    o.nodes_per_degree = npd;
    const Complex p = evaluation_point(m, z);
    const auto v = lambda(m, n, p, o);
    std::printf("n %d\nz %s\nlambda_n %.17g\nn_lambda_n %.17g\nmethod %s\nprecision %s\n", v.n, complex_text(v.z).c_str(),
                v.lambda, v.n * v.lambda, to_string(v.method), to_string(v.precision).c_str());
    return 0;
}

int cmd_sweep(const std::string& measure, const Point& z, int n_min, int n_max, double ratio, bool extrap,
              const std::string& out, const std::string& method, std::optional<int> bits, int npd) {
    const auto m = load(measure);
    SweepOptions o;
    o.method = parse_method(method);
    o.precision_bits = bits;
    o.nodes_per_degree = npd;
    auto result = run_sweep(m, evaluation_point(m, z), geometric_schedule(n_min, n_max, ratio), o);
    write_output(out, to_csv(result));

    // Summary goes to stderr when the CSV is on stdout.
    FILE* info = (out.empty() || out == "-") ? stderr : stdout;
    std::fprintf(info, "# precision %s, basis %.2f s, achieved degree %d, predicted limit %.12g\n",
                 to_string(result.precision).c_str(), result.basis_time, result.achieved_degree, result.predicted_limit);
    int failed = 0;
    for (const auto& r : result.rows) failed += r.failed;
    if (failed) std::fprintf(info, "# %d rows failed: %s\n", failed, result.rows.back().error.c_str());
    if (extrap) {
        const auto e = extrapolate(result);
        std::fprintf(info, "# extrapolated %.12g (%s), relative error %.3e\n", e.limit, e.ok ? "fit accepted" : "WARNING: fit rejected",
                     std::fabs(e.limit - result.predicted_limit) / result.predicted_limit);
        std::fprintf(info, "# %s\n", e.fit_model.c_str());
    }
    return failed ? 3 : 0;
}

int cmd_equilibrium(const std::string& measure, int samples, const std::string& out) {
    if (samples < 1) throw Error(ErrorKind::Input, "--samples must be positive");
    const auto m = load(measure);
    const auto density = equilibrium_density(m.support());
    const auto& arcs = m.arcs();
    std::string csv = "t_param,re,im,density,normal_derivative\n";
    char buf[200];
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        const auto& arc = arcs[a];
        const int k = samples / static_cast<int>(arcs.size()) + (static_cast<int>(a) < samples % static_cast<int>(arcs.size()));
        for (int i = 0; i < k; ++i) {
            // Closed curves start at t_lo; open arcs use midpoints to avoid endpoint singularities.
            const double s = arc.closed() ? static_cast<double>(i) / k : (i + 0.5) / k;
            const double t = arc.lo() + s * (arc.hi() - arc.lo());
            const Complex z = arc.point(t);
            const double d = density(z);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", t, z.real(), z.imag(), d,
                          green_normal_derivative(d));
            csv += buf;
        }
    }
    write_output(out, csv);
    return 0;
}

int cmd_verify(const std::string& suite, std::optional<double> tol, bool json, int bits) {
    VerifyOptions o;
    o.tolerance = tol;
    o.precision_bits = bits;
    std::vector<SuiteReport> reports;
    const std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
    bool ok = true;
    for (const auto& name : names) {
        reports.push_back(run_suite(name, o));
        ok = ok && reports.back().passed;
        if (!json) std::cout << to_text(reports.back()) << std::flush;
    }
    if (json) std::cout << to_json(reports);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Christoffel functions of jump-weight measures"};
    app.require_subcommand(1);

    std::string measure, method = "kernel", out;
    Point z;
    int n = 0, npd = 8, n_min = 8, n_max = 512, samples = 256, verify_bits = 53;
    double ratio = 1.25;
    std::optional<int> bits;
    std::optional<double> tol;
    bool extrap = false, json = false;
    std::string suite;

    auto* lam = app.add_subcommand("lambda", "lambda_n(mu, z) at one degree");
    lam->add_option("--measure", measure, "measure file")->required()->check(CLI::ExistingFile);
    lam->add_option("--z", z.text, "evaluation point re,im or auto-jump")->capture_default_str();
    lam->add_option("--n", n, "degree")->required()->check(CLI::NonNegativeNumber);
    lam->add_option("--method", method, "kernel or direct")->capture_default_str();
    lam->add_option("--precision", bits, "working precision in bits (53, 64, 106, 113/128)");
    lam->add_option("--nodes-per-degree", npd, "quadrature nodes per degree")->capture_default_str();

    auto* sw = app.add_subcommand("sweep", "n lambda_n over a geometric schedule, as CSV");
    sw->add_option("--measure", measure, "measure file")->required()->check(CLI::ExistingFile);
    sw->add_option("--z", z.text, "evaluation point re,im or auto-jump")->capture_default_str();
    sw->add_option("--n-min", n_min)->capture_default_str();
    sw->add_option("--n-max", n_max)->capture_default_str();
    sw->add_option("--ratio", ratio)->capture_default_str();
    sw->add_flag("--extrapolate", extrap, "fit L + c1/n + c2/n^2 and report L");
    sw->add_option("--out", out, "CSV file (default stdout)");
    sw->add_option("--method", method, "kernel or direct")->capture_default_str();
    sw->add_option("--precision", bits, "working precision in bits (default: 53 up to n = 150, else 113)");
    sw->add_option("--nodes-per-degree", npd)->capture_default_str();

    auto* eq = app.add_subcommand("equilibrium", "equilibrium density samples, as CSV");
    eq->add_option("--measure", measure, "measure file")->required()->check(CLI::ExistingFile);
    eq->add_option("--samples", samples)->capture_default_str();
    eq->add_option("--out", out, "CSV file (default stdout)");

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite, "suite name or 'all'")->required();
    ver->add_option("--tol", tol, "tolerance for the suite's headline checks");
    ver->add_flag("--json", json, "JSON report on stdout");
    ver->add_option("--precision", verify_bits, "working precision of the long sweeps")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*lam) return cmd_lambda(measure, z, n, method, bits, npd);
        if (*sw) return cmd_sweep(measure, z, n_min, n_max, ratio, extrap, out, method, bits, npd);
        if (*eq) return cmd_equilibrium(measure, samples, out);
        if (*ver) return cmd_verify(suite, tol, json, verify_bits);
    } catch (const Error& e) {
        std::fprintf(stderr, "xlab: %s: %s\n", to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "xlab: error: %s\n", e.what());
        return 3;
    }
    return 0;
}
