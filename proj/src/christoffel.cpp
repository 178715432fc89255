#include "xlab/christoffel.hpp"

#include <cmath>

namespace xlab {
namespace {

template <class R>
Cx<R> dot(const std::vector<Cx<R>>& a, const std::vector<Cx<R>>& b) {
    // sum conj(a_i) b_i
    R re(0.0);
    R im(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        re = re + a[i].re * b[i].re + a[i].im * b[i].im;
        im = im + a[i].re * b[i].im - a[i].im * b[i].re;
    }
    return {re, im};
}

template <class R>
R norm2(const std::vector<Cx<R>>& a) {
    R s(0.0);
    for (const auto& x : a) s = s + norm(x);
    return num::sqrt(s);
}

int resolve(int n, int degree) {
    if (n < 0) return degree;
    if (n > degree) throw Error(ErrorKind::Input, "degree " + std::to_string(n) + " exceeds the basis degree " + std::to_string(degree));
    return n;
}

}  // namespace

const char* to_string(Method m) { return m == Method::Kernel ? "kernel" : "direct"; }

Method parse_method(const std::string& text) {
    if (text == "kernel") return Method::Kernel;
    if (text == "direct") return Method::Direct;
    throw Error(ErrorKind::Input, "unknown method '" + text + "' (expected kernel or direct)");
}

template <class R>
OrthoBasisT<R>::OrthoBasisT(const QuadratureRuleT<R>& rule, int degree) : degree_(degree), nodes_(rule.nodes) {
    if (degree < 0) throw Error(ErrorKind::Input, "degree must be non-negative");
    if (rule.max_exact_degree < degree)
        throw Error(ErrorKind::Input, "quadrature rule resolves degree " + std::to_string(rule.max_exact_degree) +
                                          ", basis needs " + std::to_string(degree));
    const std::size_t m = rule.size();
    sqrt_w_.resize(m);
    mass_ = R(0.0);
    for (std::size_t i = 0; i < m; ++i) {
        sqrt_w_[i] = num::sqrt(rule.weights[i]);
        mass_ = mass_ + rule.weights[i];
    }
    if (!(mass_ > R(0.0))) throw DegeneracyError(-1, "measure has zero mass");

    const R inv = R(1.0) / num::sqrt(mass_);
    q_.reserve(static_cast<std::size_t>(degree) + 1);
    h_.reserve(static_cast<std::size_t>(degree));
    q_.emplace_back(m);
    for (std::size_t i = 0; i < m; ++i) q_[0][i] = Cx<R>(sqrt_w_[i] * inv);

    const R tiny(1e-14);
    for (int k = 0; k < degree; ++k) {
        const auto& qk = q_[static_cast<std::size_t>(k)];
        std::vector<Cx<R>> v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = nodes_[i] * qk[i];
        const R scale = norm2(v);
        std::vector<Cx<R>> h(static_cast<std::size_t>(k) + 2);
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<Cx<R>> c(static_cast<std::size_t>(k) + 1);
            for (int j = 0; j <= k; ++j) c[static_cast<std::size_t>(j)] = dot(q_[static_cast<std::size_t>(j)], v);
            for (int j = 0; j <= k; ++j) {
                const Cx<R> cj = c[static_cast<std::size_t>(j)];
                const auto& qj = q_[static_cast<std::size_t>(j)];
                for (std::size_t i = 0; i < m; ++i) v[i] -= cj * qj[i];
                h[static_cast<std::size_t>(j)] += cj;
            }
        }
        const R beta = norm2(v);
        if (!num::is_finite(beta) || !(beta > tiny * scale))
            throw DegeneracyError(k, "orthonormalization broke down at degree " + std::to_string(k + 1) +
                                         " (achieved degree " + std::to_string(k) +
                                         "); increase nodes per degree or precision");
        h[static_cast<std::size_t>(k) + 1] = Cx<R>(beta);
        const R ib = R(1.0) / beta;
        for (auto& x : v) x = x * ib;
        q_.push_back(std::move(v));
        h_.push_back(std::move(h));
    }
}

template <class R>
std::vector<Cx<R>> OrthoBasisT<R>::values(Cx<R> z, int n) const {
    n = resolve(n, degree_);
    std::vector<Cx<R>> p(static_cast<std::size_t>(n) + 1);
    p[0] = Cx<R>(R(1.0) / num::sqrt(mass_));
    for (int k = 0; k < n; ++k) {
        const auto& h = h_[static_cast<std::size_t>(k)];
        Cx<R> s = z * p[static_cast<std::size_t>(k)];
        for (int j = 0; j <= k; ++j) s -= h[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(j)];
        p[static_cast<std::size_t>(k) + 1] = s / h[static_cast<std::size_t>(k) + 1].re;
    }
    return p;
}

template <class R>
R OrthoBasisT<R>::kernel_diag(Cx<R> z, int n) const {
    const auto p = values(z, resolve(n, degree_));
    R s(0.0);
    for (const auto& x : p) s = s + norm(x);
    if (!num::is_finite(s)) throw Error(ErrorKind::Overflow, "kernel diagonal overflowed at |z| = " + std::to_string(num::to_double(abs(z))));
    return s;
}

template <class R>
std::vector<R> OrthoBasisT<R>::kernel_prefix(Cx<R> z) const {
    const auto p = values(z);
    std::vector<R> out(p.size());
    R s(0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        s = s + norm(p[k]);
        out[k] = s;
    }
    if (!num::is_finite(s)) throw Error(ErrorKind::Overflow, "kernel diagonal overflowed at |z| = " + std::to_string(num::to_double(abs(z))));
    return out;
}

template <class R>
R OrthoBasisT<R>::norm_residual(int n) const {
    n = resolve(n, degree_);
    R worst(0.0);
    for (int j = 0; j <= n; ++j) {
        for (int k = j; k <= n; ++k) {
            Cx<R> g = dot(q_[static_cast<std::size_t>(j)], q_[static_cast<std::size_t>(k)]);
            if (j == k) g.re = g.re - R(1.0);
            const R d = abs(g);
            if (d > worst) worst = d;
        }
    }
    return worst;
}

template <class R>
ChristoffelValue lambda(const OrthoBasisT<R>& basis, int n, Complex z, Method method) {
    if (n < 0) throw Error(ErrorKind::Input, "n must be non-negative");
    const auto p = basis.values(Cx<R>::from(z), n);
    R k(0.0);
    for (const auto& x : p) k = k + norm(x);
    if (!num::is_finite(k)) throw Error(ErrorKind::Overflow, "kernel diagonal overflowed");
    if (!(num::to_double(k) > 1e-300)) throw Error(ErrorKind::Numeric, "kernel diagonal underflowed");

    ChristoffelValue out;
    out.n = n;
    out.z = z;
    out.method = method;
    out.precision = precision_from_bits(num::digits<R>());
    if (method == Method::Kernel) {
        out.lambda = num::to_double(R(1.0) / k);
        return out;
    }
    std::vector<Cx<R>> c(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) c[j] = conj(p[j]) / k;
    // int |P|^2 dmu on the nodes, with P from the stored node values.
    R l2(0.0);
    for (std::size_t i = 0; i < basis.node_count(); ++i) {
        Cx<R> s;
        for (int j = 0; j <= n; ++j) s += c[static_cast<std::size_t>(j)] * basis.weighted_value(i, j);
        l2 = l2 + norm(s);
    }
    out.lambda = num::to_double(l2);
    std::vector<Complex> cd;
    for (const auto& x : c) cd.push_back(x.to_std());
    out.extremal_coeffs = std::move(cd);
    return out;
}

template <class R>
std::vector<Complex> extremal_polynomial_values(const ChristoffelValue& value, const OrthoBasisT<R>& basis,
                                                const std::vector<Complex>& points) {
    if (!value.extremal_coeffs) throw Error(ErrorKind::Input, "extremal coefficients are only kept by the direct method");
    const auto& c = *value.extremal_coeffs;
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<Complex> out;
    out.reserve(points.size());
    for (Complex z : points) {
        const auto p = basis.values(Cx<R>::from(z), n);
        Cx<R> s;
        for (int j = 0; j <= n; ++j) s += Cx<R>::from(c[static_cast<std::size_t>(j)]) * p[static_cast<std::size_t>(j)];
        out.push_back(s.to_std());
    }
    return out;
}

ChristoffelValue lambda(const MeasureSpec& measure, int n, Complex z, const LambdaOptions& options) {
    if (n < 0) throw Error(ErrorKind::Input, "n must be non-negative");
    const MeasureSpec* m = &measure;
    std::optional<MeasureSpec> moved;
    if (std::abs(z - measure.z0()) > 1e-14) {
        try {
            moved.emplace(measure.with_z0(z));
            m = &*moved;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Domain) throw;  // off the support: no grading toward z
        }
    }
    const Precision prec = choose_precision(n, options.precision_bits);
    return dispatch_precision(prec, [&]<class R>() {
        const auto rule = build_rule<R>(*m, RuleOptions{n, options.nodes_per_degree, options.grading});
        const OrthoBasisT<R> basis(rule, n);
        return lambda(basis, n, z, options.method);
    });
}

#define XLAB_INSTANTIATE(R)                                                                                    \
    template class OrthoBasisT<R>;                                                                             \
    template ChristoffelValue lambda<R>(const OrthoBasisT<R>&, int, Complex, Method);                          \
    template std::vector<Complex> extremal_polynomial_values<R>(const ChristoffelValue&, const OrthoBasisT<R>&, \
                                                                const std::vector<Complex>&);
XLAB_INSTANTIATE(double)
XLAB_INSTANTIATE(long double)
XLAB_INSTANTIATE(DoubleDouble)
XLAB_INSTANTIATE(Float128)
#undef XLAB_INSTANTIATE

}  // namespace xlab
