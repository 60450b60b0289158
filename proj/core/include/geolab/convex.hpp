#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geolab/grid.hpp"
#include "geolab/potential.hpp"

namespace geolab {

/**
 * Discrete convex conjugate by the monotone-slope merge.
 *
 * Returns out[j] = max_k (queries[j] * abscissae[k] - values[k]). Both
 * abscissae and queries must be strictly increasing. The lower convex hull of
 * the points is built first (linear time), so the input need not be convex;
 * the maximiser is then tracked with a single forward pointer. Ties go to the
 * smaller abscissa. Cost O(n + m).
 */
std::vector<double> conjugate(std::span<const double> abscissae, std::span<const double> values,
                              std::span<const double> queries);

/// Indices of the lower convex hull of (abscissae[k], values[k]), left to right.
std::vector<int> lower_hull_indices(std::span<const double> abscissae, std::span<const double> values);

/// True if every second difference (in index units) is >= -slack; uniform spacing assumed.
bool is_discretely_convex(std::span<const double> values, double step, double tol_convex);

/// psi*(p_j) = max_i (p_j x_i - psi_i). Throws DomainError for non-convex input.
std::vector<double> legendre(const Axis& x, std::span<const double> values, const Axis& p,
                             double tol_convex = Tolerances{}.convex);
SlopeProfile legendre(const SymmetricPotential& psi, const Tolerances& tol = {});

/// psi(x_i) = max_j (p_j x_i - g_j). Throws DomainError for non-convex input.
std::vector<double> legendre_inverse(const Axis& p, std::span<const double> g, const Axis& x,
                                     double tol_convex = Tolerances{}.convex);
SymmetricPotential legendre_inverse(const SlopeProfile& g, const Tolerances& tol = {});

/**
 * Largest convex function below f on the grid whose slopes lie in
 * [slope_lo, slope_hi]; equivalently the supremum of affine minorants with
 * admissible slope.
 *
 * Computed on the primal side: lower hull of the samples, replaced by the
 * supporting line of slope slope_lo to the left of its contact vertex and of
 * slope slope_hi to the right of its. All arithmetic is in index offsets, so
 * shifting f by whole cells shifts the result bit for bit.
 */
std::vector<double> convex_envelope_1d(const Axis& x, std::span<const double> f, double slope_lo = 0.0,
                                       double slope_hi = 1.0);
SymmetricPotential convex_envelope_1d(const GridSpec& grid, std::span<const double> f);

struct HullPoint {
    double t;
    double x;
    double value;
};

/// Boundary data on the two planes t = 0 and t = 1 of the slab.
struct HullPointCloud {
    std::vector<HullPoint> points;

    static HullPointCloud from_planes(const SymmetricPotential& psi0, const SymmetricPotential& psi1);
};

/**
 * Lower convex hull of the cloud over the slab, restricted to x-slopes in
 * [0, 1], evaluated on the (t, x) grid.
 *
 * For a fixed x-slope b the best affine minorant interpolates -psi_0*(b) and
 * -psi_1*(b) linearly in t, so the hull is the conjugate in x of
 * (1 - t) psi_0* + t psi_1*. Both plane conjugates are piecewise linear with
 * breakpoints at the plane hull slopes; evaluating on that breakpoint set
 * (plus 0 and 1) makes the result exact rather than resolution-limited.
 */
Matrix lower_hull_slab(const HullPointCloud& cloud, const GridSpec& grid);

enum class SweepUpdate {
    /// Jacobi update u <- min(obstacle, min_d average of the two d-neighbours).
    pointwise,
    /// Each stencil line is replaced by min(u, lower hull of u along the line);
    /// same fixed point as pointwise, reached in far fewer sweeps.
    line_envelope,
};

struct SweepOptions {
    double tol_fp = 1e-10;
    long max_iter = 1'000'000;
    /// Directions (a, b) with gcd 1, 0 <= a <= width, |b| <= width * aspect.
    int stencil_width = 2;
    int aspect = 4;
    SweepUpdate update = SweepUpdate::line_envelope;
};

/// Lattice directions (row step, column step) used by a stencil.
std::vector<std::pair<int, int>> stencil_directions(int width, int aspect);

struct SweepProblem {
    /// Starting iterate; must lie above the solution.
    Matrix initial;
    /// Upper obstacle; +inf where absent. Same shape as initial.
    Matrix obstacle;
    /// Nonzero entries are held at their initial value.
    std::vector<std::uint8_t> pinned;
};

struct SweepResult {
    Matrix values;
    long iterations = 0;
    double last_update = 0.0;
};

/// Monotone fixed-point iteration for the largest function below the obstacle
/// that is convex along every stencil line. Throws ConvergenceError when the
/// update is still >= tol_fp after max_iter sweeps.
SweepResult oberman_sweep(const SweepProblem& problem, const SweepOptions& options = {});

} // namespace geolab
