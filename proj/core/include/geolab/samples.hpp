#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "geolab/envelope.hpp"
#include "geolab/potential.hpp"

/// Model potentials and seeded generators used by the property suites,
/// the CLI and the benchmarks.
namespace geolab::samples {

/// std::mt19937_64 (sequence fixed by the C++ standard) with the 53-bit
/// conversion (bits >> 11) * 2^-53 for uniforms, so suites replay exactly
/// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Weights of a flat Dirichlet draw (normalised exponentials).
    std::vector<double> simplex(int n);

private:
    std::mt19937_64 engine_;
};

/// max(0, x - a).
double kink(double x, double a) noexcept;

/// sum_k w_k s_k log(1 + e^{(x - c_k) / s_k}) with sum w_k = 1: smooth,
/// strictly convex, slopes in (0, 1).
struct SoftplusMixture {
    std::vector<double> weight;
    std::vector<double> center;
    std::vector<double> scale;

    double operator()(double x) const noexcept;
    double second_derivative(double x) const noexcept;
    /// sum_k w_k / (4 s_k), an upper bound for the second derivative.
    double hessian_bound() const noexcept;
};

SoftplusMixture random_mixture(Rng& rng, int components = 3, double center_range = 4.0, double min_scale = 0.4,
                               double max_scale = 2.0);

/// C^{1,1} potential with psi'' = 1 / (2 L) on [c - L, c + L] and 0 elsewhere;
/// equal to max(0, x - c) outside that interval.
struct QuadraticCap {
    double center = 0.0;
    double half_width = 1.0;

    double operator()(double x) const noexcept;
    double hessian() const noexcept { return 1.0 / (2.0 * half_width); }
};

SymmetricPotential fubini_study_potential(const GridSpec& grid);

/// Smooth, generally non-convex obstacles with sampled Hessian at most
/// `hessian_cap`: a softplus mixture plus a sine ripple and an offset.
ObstacleFamily random_smooth_family(const GridSpec& grid, Rng& rng, int members, double hessian_cap);

/// {max(0, x), 1 + max(0, x - 2)}: its minimum has a non-convex notch on [1, 2].
ObstacleFamily notch_family(const GridSpec& grid);

} // namespace geolab::samples
