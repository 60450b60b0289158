#pragma once

#include <span>
#include <vector>

#include "geolab/envelope.hpp"
#include "geolab/geodesic.hpp"

namespace geolab {

/// max over interior i of |v[i+1] - 2 v[i] + v[i-1]| / h^2.
double hessian_sup(std::span<const double> values, double h);
double hessian_sup_slice(const GeodesicSlab& slab, int k);

/// True when the slice carries a slope jump (curvature unbounded as h -> 0).
bool slice_has_kink(const GeodesicSlab& slab, int k);

/// Compares the largest slice Hessian against the endpoint Hessian bound.
struct HessianTransferVerdict {
    double endpoint_bound = 0.0;
    double slab_max = 0.0;
    /// tol_factor * h * endpoint_bound.
    double tolerance = 0.0;
    /// endpoint_bound + tolerance - slab_max; negative on failure.
    double margin = 0.0;
    int worst_slice = -1;
    bool passed = false;
};

HessianTransferVerdict endpoint_hessian_check(const GeodesicSlab& slab, double tol_factor = 10.0);

/// sup_i |psi0[i] - psi1[i]|.
double c0_gap(const SymmetricPotential& psi0, const SymmetricPotential& psi1);

/// max over nodes and consecutive slices of |U(t_{k+1}, x) - U(t_k, x)| / dt. Needs nt >= 3.
double lipschitz_t(const GeodesicSlab& slab);

/// Largest |slope| over all slices.
double lipschitz_x(const GeodesicSlab& slab);

struct EnergyProfile {
    /// Interior slice indices 1..nt-2 and their times.
    std::vector<int> slices;
    std::vector<double> t;
    std::vector<double> energy;
    double mean = 0.0;
    /// Standard deviation over interior slices divided by |mean| (0 when mean is 0).
    double relative_std = 0.0;
};

/// E(t_k) = sum_i v_k[i]^2 m_k[i], v_k the central t-difference, m_k the slice MA masses.
EnergyProfile energy_profile(const GeodesicSlab& slab);

/// Dual expression of the geodesic speed: trapezoid rule for
/// int_0^1 (psi1*(p) - psi0*(p))^2 dp on the slope grid.
double dual_energy(const SymmetricPotential& psi0, const SymmetricPotential& psi1);

struct C2Break {
    int slice = 0;
    double t = 0.0;
    double x = 0.0;
    /// Jump of the second-difference profile across the break.
    double jump = 0.0;
};

/**
 * Jumps of a second-difference profile at a single resolution.
 *
 * At node i the jump is |D2[i+2] - D2[i-2]|: a step landing between nodes
 * smears over the two second differences next to it, and the wider span
 * sees it in full. Flagged nodes no more than four cells apart form one
 * break, located at the centre of the cluster.
 */
std::vector<C2Break> profile_breaks(const Axis& x, std::span<const double> values, double threshold);

/// Keeps the fine breaks that have a coarse break within two coarse cells.
std::vector<C2Break> persistent_breaks(const std::vector<C2Break>& fine, const std::vector<C2Break>& coarse,
                                       double coarse_h);

/// Breaks in every slice that survive `levels` rounds of 2x coarsening: the
/// slab is recomputed by its own method from every-other-node endpoint samples.
std::vector<C2Break> c2_break_detect(const GeodesicSlab& slab, double threshold, int levels = 1,
                                     const SweepOptions& sweep = {});

/// Same rule for an obstacle envelope.
std::vector<C2Break> envelope_break_detect(const ObstacleFamily& family, double threshold, int levels = 1);

struct DiagnosticsOptions {
    double hessian_tol_factor = 10.0;
    double lipschitz_tol = 1e-6;
    double jump_threshold = 0.5;
    int refinement_levels = 1;
    /// Energy constancy is only judged for smooth endpoints.
    bool judge_energy = true;
    SweepOptions sweep;
};

struct DiagnosticsReport {
    std::vector<double> hessian_sup;
    std::vector<int> kink_slices;
    HessianTransferVerdict hessian;
    double lipschitz_t = 0.0;
    double c0_gap = 0.0;
    double lipschitz_x = 0.0;
    EnergyProfile energy;
    double dual_energy = 0.0;
    std::vector<C2Break> c2_breaks;
    ResidualReport residual;

    bool verdict_hessian = false;
    bool verdict_lipschitz_t = false;
    bool verdict_slope = false;
    bool verdict_energy = false;
};

DiagnosticsReport diagnose(const GeodesicSlab& slab, const DiagnosticsOptions& options = {});

} // namespace geolab
