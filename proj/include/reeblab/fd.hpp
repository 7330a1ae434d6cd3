#pragma once

// Finite-difference weights on arbitrary nodes (Fornberg's recursion), plus
// the stencil layouts used throughout the library. Central stencils are the
// default; near an interval boundary the node set slides inward so the same
// weight generator covers one-sided cases.

#include <cmath>
#include <cstddef>
#include <vector>

#include "reeblab/errors.hpp"

namespace reeblab {

// Weights w such that f^(m)(z) ~= sum_j w[j] f(x[j]). Requires at least m+1
// distinct nodes. This is the classic one-pass recursion over node count and
// derivative order; only the final order-m row is returned.
inline std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size());
    if (m < 0) throw argument_error("fd_weights: negative derivative order");
    if (n < m + 1) throw argument_error("fd_weights: need at least m+1 nodes");

    // c[k][j]: weight of node j for derivative order k, grown node by node.
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    c[0][0] = 1.0;
    double c1 = 1.0;
    for (int i = 1; i < n; ++i) {
        double c2 = 1.0;
        const double xi = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double xj = x[j] - z;
            const double dx = x[i] - x[j];
            c2 *= dx;
            if (j == i - 1) {
                for (int k = std::min(i, m); k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - (x[i - 1] - z) * c[k][i - 1]) / c2;
                c[0][i] = -c1 * (x[i - 1] - z) * c[0][i - 1] / c2;
            }
            for (int k = std::min(i, m); k >= 1; --k)
                c[k][j] = (xi * c[k][j] - k * c[k - 1][j]) / dx;
            c[0][j] = xi * c[0][j] / dx;
        }
        c1 = c2;
    }
    return c[m];
}

// Node offsets {-r, ..., r} scaled by h.
inline std::vector<double> central_nodes(int radius, double h) {
    std::vector<double> x;
    x.reserve(2 * radius + 1);
    for (int j = -radius; j <= radius; ++j) x.push_back(j * h);
    return x;
}

// A concrete evaluation plan: absolute node positions and matching weights.
struct Stencil {
    std::vector<double> nodes;
    std::vector<double> weights;

    template <typename F>
    double apply(F&& f) const {
        double s = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) s += weights[j] * f(nodes[j]);
        return s;
    }
};

// Build a stencil of `count` nodes at spacing h for derivative order m at z,
// centered when possible and shifted to stay inside [lo, hi]. Throws if the
// interval cannot hold the stencil.
inline Stencil bounded_stencil(double z, int count, double h, int m, double lo, double hi) {
    if (count < m + 1) throw argument_error("bounded_stencil: too few nodes for order");
    const double span = (count - 1) * h;
    if (hi - lo < span)
        throw domain_error("bounded_stencil: interval too short for stencil span");
    double start = z - span / 2.0;
    if (start < lo) start = lo;
    if (start + span > hi) start = hi - span;
    Stencil st;
    st.nodes.resize(count);
    for (int j = 0; j < count; ++j) st.nodes[j] = start + j * h;
    st.weights = fd_weights(z, st.nodes, m);
    return st;
}

} // namespace reeblab
