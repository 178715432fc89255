#pragma once

// Composite Gauss-Legendre rules realizing the integral against a measure.
//
// Panels never straddle a jump of the weight, and are graded geometrically
// toward every jump and toward z0. Open segments are integrated in the
// variable theta with t = lo + (hi - lo)(1 - cos theta)/2, which turns the
// Chebyshev reference density into a bounded one.

#include <concepts>
#include <functional>
#include <optional>
#include <vector>

#include "xlab/measure.hpp"

namespace xlab {

struct GradingPolicy {
    bool enabled = true;
    double ratio = 0.5;
    double scale = 4.0;  // finest panel is min(cap, scale / max_degree^2)
    double cap = 1e-3;

    [[nodiscard]] double finest(int max_degree) const;
};

struct RuleOptions {
    int max_degree = 0;
    int nodes_per_degree = 8;
    GradingPolicy grading;
};

template <class R>
struct QuadratureRuleT {
    std::vector<Cx<R>> nodes;
    std::vector<R> weights;
    std::vector<double> params;        // curve parameter of each node
    std::vector<std::size_t> arc_ids;  // arc of each node
    int max_exact_degree = 0;
    int nodes_per_degree = 0;
    int precision_bits = 0;
    std::size_t panel_count = 0;
    double finest_panel = 0.0;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
    [[nodiscard]] R mass() const {
        R s(0.0);
        for (const R& w : weights) s = s + w;
        return s;
    }
};

using QuadratureRule = QuadratureRuleT<double>;

/// Working precision for a computation up to max_degree: the explicit bit
/// count if given, otherwise binary64 up to degree 150 and binary128 above.
Precision choose_precision(int max_degree, std::optional<int> bits = std::nullopt);

/// Throws InputError for max_degree < 0 or nodes_per_degree < 4, and
/// ResolutionError when grading would create panels shorter than 1e-15.
template <class R>
QuadratureRuleT<R> build_rule(const MeasureSpec& measure, const RuleOptions& options);

inline QuadratureRule build_rule(const MeasureSpec& measure, int max_degree, int nodes_per_degree = 8,
                                 GradingPolicy grading = {}) {
    return build_rule<double>(measure, RuleOptions{max_degree, nodes_per_degree, grading});
}

/// Sum of w_i f(node_i) in node order. Throws NumericError naming the first
/// node where f is not finite.
template <class R, class F>
    requires std::invocable<F&, Cx<R>>
Cx<R> integrate(const QuadratureRuleT<R>& rule, F&& f) {
    Cx<R> sum;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const Cx<R> v = f(rule.nodes[i]);
        if (!num::is_finite(v.re) || !num::is_finite(v.im))
            throw Error(ErrorKind::Numeric, "integrand is not finite at node " + std::to_string(i));
        sum += rule.weights[i] * v;
    }
    return sum;
}

Complex integrate(const QuadratureRule& rule, const std::function<Complex(Complex)>& f);

extern template QuadratureRuleT<double> build_rule<double>(const MeasureSpec&, const RuleOptions&);
extern template QuadratureRuleT<long double> build_rule<long double>(const MeasureSpec&, const RuleOptions&);
extern template QuadratureRuleT<DoubleDouble> build_rule<DoubleDouble>(const MeasureSpec&, const RuleOptions&);
extern template QuadratureRuleT<Float128> build_rule<Float128>(const MeasureSpec&, const RuleOptions&);

}  // namespace xlab
