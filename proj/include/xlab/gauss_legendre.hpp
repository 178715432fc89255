#pragma once

#include <array>
#include <cmath>

#include "xlab/numeric.hpp"

namespace xlab {

inline constexpr int kPanelOrder = 24;

/// Gauss-Legendre nodes and weights on [-1, 1] in the working type.
template <class R>
struct GaussLegendre {
    std::array<R, kPanelOrder> nodes;
    std::array<R, kPanelOrder> weights;
};

/// Computes the rule once per type: Newton on the three-term recurrence
/// seeded by the usual cosine approximation.
template <class R>
const GaussLegendre<R>& gauss_legendre() {
    static const GaussLegendre<R> rule = [] {
        GaussLegendre<R> g{};
        constexpr int n = kPanelOrder;
        for (int i = 0; i < n; ++i) {
            R x(std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5)));
            R dp(0.0);
            for (int it = 0; it < 100; ++it) {
                R p0(1.0);
                R p1 = x;
                for (int k = 2; k <= n; ++k) {
                    R pk = (R(2.0 * k - 1.0) * x * p1 - R(k - 1.0) * p0) / R(static_cast<double>(k));
                    p0 = p1;
                    p1 = pk;
                }
                dp = R(static_cast<double>(n)) * (x * p1 - p0) / (x * x - R(1.0));
                const R dx = p1 / dp;
                x = x - dx;
                if (num::abs(dx) <= num::epsilon<R>() * R(0.5)) break;
            }
            // Recompute the derivative at the converged node.
            R p0(1.0);
            R p1 = x;
            for (int k = 2; k <= n; ++k) {
                R pk = (R(2.0 * k - 1.0) * x * p1 - R(k - 1.0) * p0) / R(static_cast<double>(k));
                p0 = p1;
                p1 = pk;
            }
            dp = R(static_cast<double>(n)) * (x * p1 - p0) / (x * x - R(1.0));
            g.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
            g.weights[static_cast<std::size_t>(n - 1 - i)] = R(2.0) / ((R(1.0) - x * x) * dp * dp);
        }
        return g;
    }();
    return rule;
}

}  // namespace xlab
