#include "xlab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "xlab/gauss_legendre.hpp"

namespace xlab {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Distinguished parameter on an arc: an endpoint, a jump or z0.
template <class R>
struct Anchor {
    R value;
    double approx;
    bool focus;
};

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(a) + std::fabs(b)); }

template <class R>
void add_anchor(std::vector<Anchor<R>>& anchors, R value, bool focus) {
    const double x = num::to_double(value);
    for (auto& a : anchors) {
        if (close(a.approx, x)) {
            a.focus = a.focus || focus;
            return;
        }
    }
    anchors.push_back({value, x, focus});
}

// Panel breakpoints on [0, 1] for a piece of length len carrying m uniform
// panels, graded toward the ends flagged in grade_lo / grade_hi.
std::vector<double> breakpoints(double len, long m, bool grade_lo, bool grade_hi, const GradingPolicy& g,
                                double finest) {
    if (grade_lo && grade_hi) m = std::max(m, 2L);
    std::vector<double> f;
    for (long j = 0; j <= m; ++j) f.push_back(static_cast<double>(j) / static_cast<double>(m));
    const double h = len / static_cast<double>(m);
    if (h > finest) {
        const int levels = static_cast<int>(std::ceil(std::log(finest / h) / std::log(g.ratio)));
        for (int k = 1; k <= levels; ++k) {
            const double d = h * std::pow(g.ratio, k) / len;
            if (grade_lo) f.push_back(d);
            if (grade_hi) f.push_back(1.0 - d);
        }
    }
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    f.front() = 0.0;
    f.back() = 1.0;
    return f;
}

// Panels per unit of the integration variable for a polynomial of degree
// one, before scaling by nodes_per_degree * max_degree / 24.
double frequency(const MeasureSpec& m, const ArcParametrization& arc) {
    if (arc.is_segment()) return 1.0 / kPi;  // theta in [0, pi]
    if (const auto* lem = std::get_if<LemniscateShape>(&arc.shape())) {
        const int n = lem->component->poly().degree();
        return 1.5 / (kTwoPi * n);
    }
    if (m.support().kind() == SupportKind::Arcs) {
        double total = 0.0;
        for (const auto& a : m.arcs()) total += a.is_segment() ? kPi : a.hi() - a.lo();
        return 2.0 / total;
    }
    return 1.0 / kTwoPi;
}

}  // namespace

double GradingPolicy::finest(int max_degree) const {
    const double d = std::max(1, max_degree);
    return std::min(cap, scale / (d * d));
}

Precision choose_precision(int max_degree, std::optional<int> bits) {
    if (bits) return precision_from_bits(*bits);
    return max_degree > 150 ? Precision::Quad : Precision::Double;
}

template <class R>
QuadratureRuleT<R> build_rule(const MeasureSpec& measure, const RuleOptions& options) {
    if (options.max_degree < 0) throw Error(ErrorKind::Input, "max_degree must be non-negative");
    if (options.nodes_per_degree < 4) throw Error(ErrorKind::Input, "nodes_per_degree must be at least 4");
    const GradingPolicy& grading = options.grading;
    if (grading.enabled && !(grading.ratio > 0.0 && grading.ratio < 1.0))
        throw Error(ErrorKind::Input, "grading ratio must lie in (0, 1)");
    const double finest = grading.finest(options.max_degree);
    if (grading.enabled && finest < 1e-15)
        throw Error(ErrorKind::Resolution, "graded panels would be shorter than 1e-15 (finest " + std::to_string(finest) + ")");

    const auto& gl = gauss_legendre<R>();
    const double scale = static_cast<double>(options.nodes_per_degree) * std::max(1, options.max_degree) / kPanelOrder;
    QuadratureRuleT<R> rule;
    rule.max_exact_degree = options.max_degree;
    rule.nodes_per_degree = options.nodes_per_degree;
    rule.precision_bits = num::digits<R>();
    rule.finest_panel = HUGE_VAL;

    for (std::size_t ai = 0; ai < measure.arcs().size(); ++ai) {
        const auto& arc = measure.arcs()[ai];
        const R lo = arc.t_lo().template as<R>();
        const R hi = arc.t_hi().template as<R>();
        const bool segment = arc.is_segment();
        // Integration variable: t itself, or theta on segments.
        auto to_var = [&](R t) -> R {
            if (!segment) return t;
            R c = R(1.0) - R(2.0) * (t - lo) / (hi - lo);
            R s2 = R(1.0) - c * c;
            if (s2 < R(0.0)) s2 = R(0.0);
            return num::atan2(num::sqrt(s2), c);
        };
        const R var_lo = segment ? R(0.0) : lo;
        const R var_hi = segment ? num::pi<R>() : hi;

        std::vector<Anchor<R>> anchors;
        const bool z0_here = measure.z0_arc() == ai;
        const double z0t = measure.z0_param().approx();
        bool end_focus = false;
        if (z0_here && (close(z0t, arc.lo()) || close(z0t, arc.hi()))) end_focus = true;
        if (arc.closed() && measure.layout() == JumpLayout::Periodic &&
            measure.jump().A != measure.jump().B) {
            const double u = std::remainder(arc.lo() - measure.jump().jump_param.approx(), kPi);
            if (std::fabs(u) < 1e-12) end_focus = true;
        }
        add_anchor(anchors, var_lo, end_focus);
        add_anchor(anchors, var_hi, end_focus);
        if (measure.jump().A != measure.jump().B)
            for (const auto& j : measure.jump_points(ai)) add_anchor(anchors, to_var(j.template as<R>()), true);
        if (z0_here) add_anchor(anchors, to_var(measure.z0_param().template as<R>()), true);
        std::sort(anchors.begin(), anchors.end(), [](const auto& a, const auto& b) { return a.approx < b.approx; });

        const double rate = frequency(measure, arc) * scale;
        const R plo = arc.t_lo().template as<R>();
        const R half_len = (hi - plo) / R(2.0);
        const R seg_speed = segment ? abs(arc.template velocity<R>(lo)) : R(0.0);

        for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
            const Anchor<R>& A = anchors[k];
            const Anchor<R>& B = anchors[k + 1];
            const double len = B.approx - A.approx;
            const long m = std::max(1L, static_cast<long>(std::ceil(len * rate - 1e-9)));
            const auto fr = grading.enabled ? breakpoints(len, m, A.focus, B.focus, grading, finest)
                                            : breakpoints(len, m, false, false, grading, finest);
            const R span = B.value - A.value;
            std::vector<R> x;
            for (double f : fr) x.push_back(f == 0.0 ? A.value : f == 1.0 ? B.value : A.value + span * R(f));

            for (std::size_t p = 0; p + 1 < x.size(); ++p) {
                const R mid = (x[p] + x[p + 1]) / R(2.0);
                const R half = (x[p + 1] - x[p]) / R(2.0);
                rule.finest_panel = std::min(rule.finest_panel, 2.0 * num::to_double(half));
                ++rule.panel_count;
                // The jump factor is constant on a panel; read it at the midpoint.
                const double mid_t = segment ? arc.lo() + (arc.hi() - arc.lo()) * (1.0 - std::cos(num::to_double(mid))) / 2.0
                                             : num::to_double(mid);
                const R v(measure.jump_value(std::clamp(mid_t, arc.lo(), arc.hi())));
                for (int i = 0; i < kPanelOrder; ++i) {
                    const R u = mid + half * gl.nodes[static_cast<std::size_t>(i)];
                    R t;
                    R dens;
                    if (segment) {
                        t = plo + half_len * (R(1.0) - num::cos(u));
                        const R dt = half_len * num::sin(u);
                        dens = measure.reference() == Reference::Chebyshev ? half_len : seg_speed * dt;
                    } else {
                        t = u;
                        dens = abs(arc.template velocity<R>(t));
                    }
                    const R w = half * gl.weights[static_cast<std::size_t>(i)] * measure.w0().template eval<R>(t) * v * dens;
                    rule.nodes.push_back(arc.template point<R>(t));
                    rule.weights.push_back(w);
                    rule.params.push_back(num::to_double(t));
                    rule.arc_ids.push_back(ai);
                }
            }
        }
    }

    for (std::size_t i = 0; i < rule.weights.size(); ++i) {
        if (!num::is_finite(rule.weights[i]) || !(rule.weights[i] >= R(0.0)))
            throw Error(ErrorKind::Numeric, "quadrature weight " + std::to_string(i) + " is not a finite non-negative number");
    }
    const std::size_t needed = static_cast<std::size_t>(options.nodes_per_degree) * static_cast<std::size_t>(options.max_degree);
    if (rule.size() < needed)
        throw Error(ErrorKind::Numeric, "quadrature has " + std::to_string(rule.size()) + " nodes, fewer than the " +
                                            std::to_string(needed) + " required");
    return rule;
}

Complex integrate(const QuadratureRule& rule, const std::function<Complex(Complex)>& f) {
    return integrate(rule, [&](Cx<double> z) { return Cx<double>::from(f(z.to_std())); }).to_std();
}

template QuadratureRuleT<double> build_rule<double>(const MeasureSpec&, const RuleOptions&);
template QuadratureRuleT<long double> build_rule<long double>(const MeasureSpec&, const RuleOptions&);
template QuadratureRuleT<DoubleDouble> build_rule<DoubleDouble>(const MeasureSpec&, const RuleOptions&);
template QuadratureRuleT<Float128> build_rule<Float128>(const MeasureSpec&, const RuleOptions&);

}  // namespace xlab
