#pragma once

// Sweeps of n lambda_n(mu, z0), the predicted limit
//
//   lim n lambda_n = w(z0) (A - B)/(log A - log B) / (d omega / ds)(z0)
//                  = 2 pi w(z0) (A - B)/(log A - log B) / (dg/dn)(z0),
//
// and a least-squares extrapolation of the sweep.

#include <optional>
#include <string>
#include <vector>

#include "xlab/christoffel.hpp"

namespace xlab {

/// (A - B)/(log A - log B), or A when |A - B| < 1e-12 (A + B).
double jump_factor(double A, double B);

struct LimitPrediction {
    double weight_factor = 0.0;  // w0 and reference density at z0
    double jump_factor = 0.0;    // (A - B)/(log A - log B), or the local value off the jump
    double density = 0.0;        // d omega / ds at z0
    double normal_derivative = 0.0;
    double by_density = 0.0;
    double by_normal_derivative = 0.0;
    [[nodiscard]] double value() const { return by_density; }
};

/// Both routes of the limit formula. At a point where the weight is
/// continuous the jump factor is replaced by the local weight value.
/// Throws CapabilityError for supports without an equilibrium density.
LimitPrediction predict_limit(const MeasureSpec& measure, Complex z0);
inline double predicted_limit(const MeasureSpec& measure, Complex z0) { return predict_limit(measure, z0).value(); }

struct SweepRow {
    int n = 0;
    double lambda_n = 0.0;
    double n_lambda_n = 0.0;
    double predicted_limit = 0.0;
    double relative_error = 0.0;
    double wall_time = 0.0;  // seconds
    bool failed = false;
    std::string error;
};

struct Extrapolation {
    double limit = 0.0;
    bool ok = true;  // false: fit rejected, limit is the last raw value
    std::string fit_model;
    double c1 = 0.0;
    double c2 = 0.0;
    double c_parity = 0.0;  // coefficient of (-1)^n / n when the parity model was used
    double residual = 0.0;
    double spread = 0.0;
    int rows_used = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double predicted_limit = 0.0;
    Complex z0;
    Method method = Method::Kernel;
    Precision precision = Precision::Double;
    int achieved_degree = 0;
    double basis_time = 0.0;  // seconds spent building rule and basis
    std::optional<Extrapolation> extrapolation;

    [[nodiscard]] const SweepRow& last_ok() const;
};

struct SweepOptions {
    Method method = Method::Kernel;
    std::optional<int> precision_bits;  // default: choose_precision(max n)
    int nodes_per_degree = 8;
    GradingPolicy grading;
};

/// n_min, round(n_min r), ... up to and including n_max, strictly increasing.
std::vector<int> geometric_schedule(int n_min, int n_max, double ratio);

/// One orthonormalization at the largest n; every row reuses the partial
/// kernel sums. If the basis breaks down, rows beyond the achieved degree
/// are marked failed and the rest still computed.
SweepResult run_sweep(const MeasureSpec& measure, Complex z0, const std::vector<int>& schedule,
                      const SweepOptions& options = {});

/// Fit n lambda_n = L + c1/n + c2/n^2 to the largest six successful rows.
/// If the residual exceeds 10% of the spread and the rows mix odd and even
/// n, a (-1)^n/n term is added; if that fit is rejected too, the last raw
/// value is returned with ok = false. Needs at least four rows.
Extrapolation extrapolate(const std::vector<SweepRow>& rows);
inline Extrapolation extrapolate(const SweepResult& result) { return extrapolate(result.rows); }

/// CSV with header n,lambda_n,n_lambda_n,predicted_limit,relative_error.
/// Failed rows carry "nan" in the numeric columns.
std::string to_csv(const SweepResult& result);

}  // namespace xlab
