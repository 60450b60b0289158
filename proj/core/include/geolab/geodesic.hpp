#pragma once

#include <span>
#include <string>
#include <string_view>

#include "geolab/convex.hpp"
#include "geolab/grid.hpp"
#include "geolab/potential.hpp"

namespace geolab {

enum class GeodesicMethod { legendre, hull, sweep };

std::string_view to_string(GeodesicMethod m) noexcept;
GeodesicMethod parse_method(std::string_view name);

/// Weak geodesic sampled on the (t, x) grid; row k is the slice at t_k.
struct GeodesicSlab {
    GridSpec grid;
    Matrix values;
    SymmetricPotential psi0;
    SymmetricPotential psi1;
    GeodesicMethod method;
    /// Sweeps used by the sweep route; 0 otherwise.
    long iterations = 0;

    std::span<const double> slice(int k) const { return values.row(k); }
    SymmetricPotential slice_potential(int k) const;
};

/// Dual route: psi_t* = (1 - t) psi_0* + t psi_1* on the uniform slope grid, then inverted.
GeodesicSlab geodesic_legendre(const SymmetricPotential& psi0, const SymmetricPotential& psi1,
                               const Tolerances& tol = {});

/// Perron route: lower hull of the two boundary planes.
GeodesicSlab geodesic_hull(const SymmetricPotential& psi0, const SymmetricPotential& psi1,
                           const Tolerances& tol = {});

/// Monotone iteration from the ceiling (1 - t) psi_0 + t psi_1 with all four
/// sides of the slab pinned. Throws ConvergenceError past max_iter.
GeodesicSlab geodesic_sweep(const SymmetricPotential& psi0, const SymmetricPotential& psi1,
                            const SweepOptions& options = {}, const Tolerances& tol = {});

GeodesicSlab compute_geodesic(GeodesicMethod method, const SymmetricPotential& psi0,
                              const SymmetricPotential& psi1, const SweepOptions& sweep = {},
                              const Tolerances& tol = {});

/// Discrete Monge-Ampere determinant of the (t, x) second-difference Hessian.
struct ResidualReport {
    /// sup over interior nodes of max(|det|, -lambda_min).
    double sup = 0.0;
    /// sum of |det| * dt * h over interior nodes.
    double l1 = 0.0;
    double sup_abs_det = 0.0;
    /// Most negative Hessian eigenvalue (0 if none); a convexity defect.
    double min_eigenvalue = 0.0;
    int worst_slice = -1;
    int worst_node = -1;
};

ResidualReport hcma_residual(const Matrix& values, const GridSpec& grid);
inline ResidualReport hcma_residual(const GeodesicSlab& slab) { return hcma_residual(slab.values, slab.grid); }

struct CandidateReport {
    bool candidate = false;
    bool jointly_convex = false;
    bool slopes_ok = false;
    bool boundary_ok = false;
    /// Largest violation of each condition (0 when satisfied).
    double convexity_defect = 0.0;
    double slope_excess = 0.0;
    double boundary_excess = 0.0;
};

/// Membership in the discrete candidate family: jointly discretely convex
/// along the axis and diagonal directions, x-slopes in [0, 1], and below the
/// boundary data on both planes.
CandidateReport is_subgeodesic_candidate(const Matrix& v, const SymmetricPotential& psi0,
                                         const SymmetricPotential& psi1, const Tolerances& tol = {});

/// max over nodes of v - slab (negative when v lies strictly below).
double perron_excess(const Matrix& v, const GeodesicSlab& slab);

} // namespace geolab
