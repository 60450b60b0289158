#pragma once

// Independent reference computations for the test suites. Everything here is
// deliberately brute force: exhaustive maxima, closed forms and direct
// enumeration, sharing no code paths with the library's fast algorithms.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "geolab/geodesic.hpp"
#include "geolab/grid.hpp"
#include "geolab/potential.hpp"
#include "geolab/samples.hpp"

namespace geolab::oracle {

/// max_i (p * x_i - v_i) for every p, by exhaustive search.
inline std::vector<double> brute_conjugate(std::span<const double> xs, std::span<const double> vs,
                                           std::span<const double> ps) {
    std::vector<double> out;
    out.reserve(ps.size());
    for (double p : ps) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < xs.size(); ++i) best = std::max(best, p * xs[i] - vs[i]);
        out.push_back(best);
    }
    return out;
}

/// Supremum of affine minorants b x + c of f with b sampled uniformly on
/// [0, 1] (`slopes` samples), evaluated on the x-grid.
inline std::vector<double> affine_minorant_sup(std::span<const double> xs, std::span<const double> f, int slopes) {
    std::vector<double> out(xs.size(), -std::numeric_limits<double>::infinity());
    for (int j = 0; j < slopes; ++j) {
        const double b = static_cast<double>(j) / (slopes - 1);
        double c = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < xs.size(); ++i) c = std::min(c, f[i] - b * xs[i]);
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::max(out[i], b * xs[i] + c);
    }
    return out;
}

/// Piecewise-linear interpolant of admissible samples extended by slope 0 on
/// the left and slope 1 on the right (the largest admissible extension).
inline double extended(const SymmetricPotential& psi, double x) {
    const GridSpec& g = psi.grid();
    if (x <= -g.radius()) return psi[0];
    if (x >= g.radius()) return psi[g.nx() - 1] + (x - g.radius());
    const double s = (x + g.radius()) / g.h();
    const int i = std::min(static_cast<int>(std::floor(s)), g.nx() - 2);
    const double w = s - i;
    return (1.0 - w) * psi[i] + w * psi[i + 1];
}

/**
 * Lower convex hull of the two boundary planes evaluated at (t, x), as the
 * infimal convolution min over (1 - t) x0 + t x1 = x of
 * (1 - t) psi0(x0) + t psi1(x1). The objective is convex and piecewise
 * linear in x0 with breakpoints where x0 or x1 hits a grid node, so
 * enumerating those candidates gives the exact minimum.
 */
inline double slab_hull_point(const SymmetricPotential& psi0, const SymmetricPotential& psi1, double t, double x) {
    if (t <= 0.0) return extended(psi0, x);
    if (t >= 1.0) return extended(psi1, x);
    const GridSpec& g = psi0.grid();
    double best = std::numeric_limits<double>::infinity();
    auto eval = [&](double x0) {
        const double x1 = (x - (1.0 - t) * x0) / t;
        best = std::min(best, (1.0 - t) * extended(psi0, x0) + t * extended(psi1, x1));
    };
    for (int i = 0; i < g.nx(); ++i) {
        eval(g.x(i));
        eval((x - t * g.x(i)) / (1.0 - t));
    }
    return best;
}

inline Matrix slab_hull(const SymmetricPotential& psi0, const SymmetricPotential& psi1) {
    const GridSpec& g = psi0.grid();
    Matrix m(g.nt(), g.nx());
    for (int k = 0; k < g.nt(); ++k) {
        for (int i = 0; i < g.nx(); ++i) m(k, i) = slab_hull_point(psi0, psi1, g.t(k), g.x(i));
    }
    return m;
}

/// j! (k - j)! / (k + 1)!, the Beta integral B(j + 1, k - j + 1).
inline double beta_norm(int j, int k) {
    return std::exp(std::lgamma(j + 1.0) + std::lgamma(k - j + 1.0) - std::lgamma(k + 2.0));
}

/// Random admissible convex piecewise-linear potential whose kinks sit on
/// grid nodes; `kinks` receives the (node, slope jump) pairs that generated it.
struct PiecewiseLinear {
    std::vector<double> values;
    std::vector<std::pair<int, double>> kinks;
};

inline PiecewiseLinear random_piecewise_linear(const GridSpec& g, samples::Rng& rng, int pieces) {
    PiecewiseLinear out;
    std::vector<int> nodes;
    for (int n = 0; n < pieces; ++n) nodes.push_back(1 + static_cast<int>(rng.uniform() * (g.nx() - 2)));
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    const std::vector<double> w = rng.simplex(static_cast<int>(nodes.size()));
    for (std::size_t n = 0; n < nodes.size(); ++n) out.kinks.emplace_back(nodes[n], w[n]);
    const double offset = rng.uniform(-1.0, 1.0);
    out.values.assign(static_cast<std::size_t>(g.nx()), offset);
    for (int i = 0; i < g.nx(); ++i) {
        for (const auto& [node, jump] : out.kinks) out.values[i] += jump * std::max(0.0, g.x(i) - g.x(node));
    }
    return out;
}

/// Random smooth strictly convex admissible potential: a softplus mixture plus an offset.
inline SymmetricPotential random_smooth_potential(const GridSpec& g, samples::Rng& rng) {
    const samples::SoftplusMixture m = samples::random_mixture(rng);
    const double c = rng.uniform(-1.0, 1.0);
    return SymmetricPotential::sample(g, [&](double x) { return m(x) + c; });
}

/// Second difference of a grid function at an interior node, divided by h^2.
inline double second_difference(std::span<const double> v, int i, double h) {
    return (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
}

} // namespace geolab::oracle
