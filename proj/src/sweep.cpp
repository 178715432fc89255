#include "xlab/sweep.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "xlab/potential.hpp"

namespace xlab {
namespace {

constexpr double kPi = 3.14159265358979323846;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    if (!std::isfinite(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

double jump_factor(double A, double B) {
    if (!(A > 0.0) || !(B > 0.0) || !std::isfinite(A) || !std::isfinite(B))
        throw Error(ErrorKind::Domain, "jump factor needs A > 0 and B > 0");
    if (std::fabs(A - B) < 1e-12 * (A + B)) return A;
    return (A - B) / (std::log(A) - std::log(B));
}

LimitPrediction predict_limit(const MeasureSpec& measure, Complex z0) {
    const MeasureSpec* m = &measure;
    std::optional<MeasureSpec> moved;
    if (std::abs(z0 - measure.z0()) > 1e-14) {
        moved.emplace(measure.with_z0(z0));
        m = &*moved;
    }
    const double t = m->z0_param().approx();
    LimitPrediction p;
    p.weight_factor = m->w0()(t) * m->reference_density(m->z0_arc(), t);
    const auto& j = m->jump();
    p.jump_factor = m->z0_at_jump() ? jump_factor(j.A, j.B) : m->jump_value(t);
    p.density = equilibrium_density(m->support())(m->z0());
    p.normal_derivative = green_normal_derivative(p.density);
    p.by_density = p.weight_factor * p.jump_factor / p.density;
    p.by_normal_derivative = 2.0 * kPi * p.weight_factor * p.jump_factor / p.normal_derivative;
    return p;
}

const SweepRow& SweepResult::last_ok() const {
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
        if (!it->failed) return *it;
    throw Error(ErrorKind::Numeric, "sweep has no successful rows");
}

std::vector<int> geometric_schedule(int n_min, int n_max, double ratio) {
    if (n_min < 1 || n_max < n_min) throw Error(ErrorKind::Input, "schedule needs 1 <= n_min <= n_max");
    if (!(ratio > 1.0)) throw Error(ErrorKind::Input, "schedule ratio must exceed 1");
    std::vector<int> out;
    double x = n_min;
    while (true) {
        const int n = static_cast<int>(std::lround(x));
        if (n >= n_max) break;
        if (out.empty() || n > out.back()) out.push_back(n);
        x *= ratio;
    }
    out.push_back(n_max);
    return out;
}

SweepResult run_sweep(const MeasureSpec& measure, Complex z0, const std::vector<int>& schedule,
                      const SweepOptions& options) {
    if (schedule.empty()) throw Error(ErrorKind::Input, "empty n schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 0 || (i > 0 && schedule[i] <= schedule[i - 1]))
            throw Error(ErrorKind::Input, "n schedule must be non-negative and strictly increasing");
    }
    const MeasureSpec* m = &measure;
    std::optional<MeasureSpec> moved;
    if (std::abs(z0 - measure.z0()) > 1e-14) {
        try {
            moved.emplace(measure.with_z0(z0));
            m = &*moved;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Domain) throw;
        }
    }

    SweepResult result;
    result.z0 = z0;
    result.method = options.method;
    const int n_max = schedule.back();
    result.precision = choose_precision(n_max, options.precision_bits);
    result.predicted_limit = NAN;
    try {
        result.predicted_limit = predicted_limit(*m, z0);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Domain && e.kind() != ErrorKind::Capability) throw;
    }

    dispatch_precision(result.precision, [&]<class R>() {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rule = build_rule<R>(*m, RuleOptions{n_max, options.nodes_per_degree, options.grading});
        int degree = n_max;
        std::optional<OrthoBasisT<R>> basis;
        std::string failure;
        try {
            basis.emplace(rule, degree);
        } catch (const DegeneracyError& e) {
            failure = e.what();
            degree = e.achieved_degree();
            if (degree >= 0) basis.emplace(rule, degree);
        }
        result.achieved_degree = degree;
        result.basis_time = seconds_since(t0);

        std::vector<R> prefix;
        if (basis) prefix = basis->kernel_prefix(Cx<R>::from(z0));
        for (int n : schedule) {
            SweepRow row;
            row.n = n;
            row.predicted_limit = result.predicted_limit;
            const auto t1 = std::chrono::steady_clock::now();
            if (n > degree) {
                row.failed = true;
                row.error = failure;
                row.lambda_n = row.n_lambda_n = row.relative_error = NAN;
            } else if (options.method == Method::Kernel) {
                row.lambda_n = num::to_double(R(1.0) / prefix[static_cast<std::size_t>(n)]);
            } else {
                row.lambda_n = lambda(*basis, n, z0, Method::Direct).lambda;
            }
            if (!row.failed) {
                row.n_lambda_n = n * row.lambda_n;
                row.relative_error = std::fabs(row.n_lambda_n - row.predicted_limit) / row.predicted_limit;
            }
            row.wall_time = seconds_since(t1);
            result.rows.push_back(row);
        }
        return 0;
    });
    return result;
}

namespace {

// Least squares over the given rows with columns 1, 1/n, 1/n^2 and, if
// parity is set, (-1)^n / n.
Extrapolation fit(const std::vector<const SweepRow*>& rows, bool parity) {
    const auto k = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd a(k, parity ? 4 : 3);
    Eigen::VectorXd y(k);
    double lo = HUGE_VAL;
    double hi = -HUGE_VAL;
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto& r = *rows[static_cast<std::size_t>(i)];
        const double inv = 1.0 / r.n;
        a(i, 0) = 1.0;
        a(i, 1) = inv;
        a(i, 2) = inv * inv;
        if (parity) a(i, 3) = (r.n % 2 == 0 ? 1.0 : -1.0) * inv;
        y(i) = r.n_lambda_n;
        lo = std::min(lo, r.n_lambda_n);
        hi = std::max(hi, r.n_lambda_n);
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);

    Extrapolation e;
    e.rows_used = static_cast<int>(k);
    e.limit = c(0);
    e.c1 = c(1);
    e.c2 = c(2);
    if (parity) e.c_parity = c(3);
    e.residual = (a * c - y).cwiseAbs().maxCoeff();
    e.spread = hi - lo;
    e.ok = std::isfinite(e.limit) && e.residual <= 0.1 * e.spread;
    char buf[240];
    std::snprintf(buf, sizeof buf, "n*lambda_n = L + c1/n + c2/n^2%s over n=%d..%d: L=%.12g c1=%.6g c2=%.6g%s residual=%.3g",
                  parity ? " + c3 (-1)^n/n" : "", rows.front()->n, rows.back()->n, e.limit, e.c1, e.c2,
                  parity ? (" c3=" + std::to_string(e.c_parity)).c_str() : "", e.residual);
    e.fit_model = buf;
    return e;
}

}  // namespace

Extrapolation extrapolate(const std::vector<SweepRow>& rows) {
    std::vector<const SweepRow*> ok;
    for (const auto& r : rows)
        if (!r.failed && r.n > 0) ok.push_back(&r);
    if (ok.size() < 4) throw Error(ErrorKind::Input, "extrapolation needs at least 4 successful rows");
    const std::size_t k = std::min<std::size_t>(6, ok.size());
    const std::vector<const SweepRow*> last(ok.end() - static_cast<std::ptrdiff_t>(k), ok.end());

    Extrapolation e = fit(last, false);
    if (e.ok) return e;
    // Odd and even degrees can converge from different sides (symmetric
    // supports evaluated at a center of symmetry). Retry with a parity term.
    int odd = 0;
    for (const auto* r : last) odd += r->n % 2;
    if (k >= 5 && odd > 0 && odd < static_cast<int>(k)) {
        Extrapolation p = fit(last, true);
        if (p.ok) {
            p.fit_model += " (parity term added: the plain fit left residual " + std::to_string(e.residual) + ")";
            return p;
        }
    }
    e.limit = ok.back()->n_lambda_n;
    e.fit_model += " (rejected: residual exceeds 10% of the spread; returning the last raw value)";
    return e;
}

std::string to_csv(const SweepResult& result) {
    std::string out = "n,lambda_n,n_lambda_n,predicted_limit,relative_error\n";
    for (const auto& r : result.rows) {
        out += std::to_string(r.n) + "," + fmt(r.lambda_n) + "," + fmt(r.n_lambda_n) + "," + fmt(r.predicted_limit) + "," +
               fmt(r.relative_error) + "\n";
    }
    return out;
}

}  // namespace xlab
