#include "geolab/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geolab/errors.hpp"
#include "geolab/parallel.hpp"

namespace geolab {

std::string_view to_string(GeodesicMethod m) noexcept {
    switch (m) {
    case GeodesicMethod::legendre: return "legendre";
    case GeodesicMethod::hull: return "hull";
    case GeodesicMethod::sweep: return "sweep";
    }
    return "unknown";
}

GeodesicMethod parse_method(std::string_view name) {
    if (name == "legendre") return GeodesicMethod::legendre;
    if (name == "hull") return GeodesicMethod::hull;
    if (name == "sweep") return GeodesicMethod::sweep;
    throw DomainError("unknown geodesic method '" + std::string(name) + "'");
}

SymmetricPotential GeodesicSlab::slice_potential(int k) const {
    const auto row = values.row(k);
    return {grid, std::vector<double>(row.begin(), row.end())};
}

namespace {

void check_endpoints(const SymmetricPotential& psi0, const SymmetricPotential& psi1, const Tolerances& tol) {
    if (!(psi0.grid() == psi1.grid())) throw StructuralError("geodesic endpoints live on different grids");
    require_admissible(psi0, tol, "endpoint psi0");
    require_admissible(psi1, tol, "endpoint psi1");
}

} // namespace

GeodesicSlab geodesic_legendre(const SymmetricPotential& psi0, const SymmetricPotential& psi1, const Tolerances& tol) {
    check_endpoints(psi0, psi1, tol);
    const GridSpec& g = psi0.grid();
    const SlopeProfile d0 = legendre(psi0, tol);
    const SlopeProfile d1 = legendre(psi1, tol);
    const std::vector<double> ps = g.p_axis().points();
    const std::vector<double> xs = g.x_axis().points();

    Matrix values(g.nt(), g.nx());
    parallel_for(g.nt(), [&](int k) {
        const double t = g.t(k);
        std::vector<double> dual(static_cast<std::size_t>(g.np()));
        for (int j = 0; j < g.np(); ++j) dual[j] = d0[j] + t * (d1[j] - d0[j]);
        const std::vector<double> row = conjugate(ps, dual, xs);
        std::copy(row.begin(), row.end(), values.row(k).begin());
    });
    return {g, std::move(values), psi0, psi1, GeodesicMethod::legendre};
}

GeodesicSlab geodesic_hull(const SymmetricPotential& psi0, const SymmetricPotential& psi1, const Tolerances& tol) {
    check_endpoints(psi0, psi1, tol);
    Matrix values = lower_hull_slab(HullPointCloud::from_planes(psi0, psi1), psi0.grid());
    return {psi0.grid(), std::move(values), psi0, psi1, GeodesicMethod::hull};
}

GeodesicSlab geodesic_sweep(const SymmetricPotential& psi0, const SymmetricPotential& psi1,
                            const SweepOptions& options, const Tolerances& tol) {
    check_endpoints(psi0, psi1, tol);
    const GridSpec& g = psi0.grid();
    const int nt = g.nt();
    const int nx = g.nx();

    SweepProblem problem{Matrix(nt, nx), Matrix(nt, nx, std::numeric_limits<double>::infinity()),
                         std::vector<std::uint8_t>(static_cast<std::size_t>(nt) * nx, 0)};
    for (int k = 0; k < nt; ++k) {
        const double t = g.t(k);
        for (int i = 0; i < nx; ++i) problem.initial(k, i) = psi0[i] + t * (psi1[i] - psi0[i]);
        problem.pinned[static_cast<std::size_t>(k) * nx] = 1;
        problem.pinned[static_cast<std::size_t>(k) * nx + nx - 1] = 1;
    }
    for (int i = 0; i < nx; ++i) {
        problem.initial(0, i) = psi0[i];
        problem.initial(nt - 1, i) = psi1[i];
        problem.pinned[i] = 1;
        problem.pinned[static_cast<std::size_t>(nt - 1) * nx + i] = 1;
    }

    SweepResult res = oberman_sweep(problem, options);
    GeodesicSlab slab{g, std::move(res.values), psi0, psi1, GeodesicMethod::sweep};
    slab.iterations = res.iterations;
    return slab;
}

GeodesicSlab compute_geodesic(GeodesicMethod method, const SymmetricPotential& psi0, const SymmetricPotential& psi1,
                              const SweepOptions& sweep, const Tolerances& tol) {
    switch (method) {
    case GeodesicMethod::legendre: return geodesic_legendre(psi0, psi1, tol);
    case GeodesicMethod::hull: return geodesic_hull(psi0, psi1, tol);
    case GeodesicMethod::sweep: return geodesic_sweep(psi0, psi1, sweep, tol);
    }
    throw DomainError("unknown geodesic method");
}

ResidualReport hcma_residual(const Matrix& u, const GridSpec& grid) {
    if (u.rows() != grid.nt() || u.cols() != grid.nx()) throw StructuralError("hcma_residual: shape mismatch");
    const double h = grid.h();
    const double dt = grid.dt();
    ResidualReport rep;
    for (int k = 1; k + 1 < u.rows(); ++k) {
        for (int i = 1; i + 1 < u.cols(); ++i) {
            const double utt = (u(k + 1, i) - 2.0 * u(k, i) + u(k - 1, i)) / (dt * dt);
            const double uxx = (u(k, i + 1) - 2.0 * u(k, i) + u(k, i - 1)) / (h * h);
            const double utx = (u(k + 1, i + 1) - u(k + 1, i - 1) - u(k - 1, i + 1) + u(k - 1, i - 1)) / (4.0 * dt * h);
            const double det = utt * uxx - utx * utx;
            const double half_trace = 0.5 * (utt + uxx);
            const double disc = std::sqrt(std::max(0.0, half_trace * half_trace - det));
            const double lambda_min = half_trace - disc;
            const double r = std::max(std::abs(det), -lambda_min);
            rep.l1 += std::abs(det) * dt * h;
            rep.sup_abs_det = std::max(rep.sup_abs_det, std::abs(det));
            rep.min_eigenvalue = std::min(rep.min_eigenvalue, lambda_min);
            if (r > rep.sup) {
                rep.sup = r;
                rep.worst_slice = k;
                rep.worst_node = i;
            }
        }
    }
    return rep;
}

CandidateReport is_subgeodesic_candidate(const Matrix& v, const SymmetricPotential& psi0,
                                         const SymmetricPotential& psi1, const Tolerances& tol) {
    const GridSpec& g = psi0.grid();
    if (!(psi1.grid() == g)) throw StructuralError("candidate check: endpoints live on different grids");
    if (v.cols() != g.nx() || v.rows() < 2) throw StructuralError("candidate check: shape mismatch");
    const int nt = v.rows();
    const int nx = v.cols();
    const double h = g.h();

    CandidateReport rep;
    // Second differences in the (t, x) index lattice along axes and both diagonals.
    const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    for (int k = 0; k < nt; ++k) {
        for (int i = 0; i < nx; ++i) {
            for (const auto& d : dirs) {
                const int k0 = k - d[0], i0 = i - d[1], k1 = k + d[0], i1 = i + d[1];
                if (k0 < 0 || k1 >= nt || i0 < 0 || i1 >= nx || i0 >= nx || i1 < 0) continue;
                const double a = v(k0, i0), b = v(k, i), c = v(k1, i1);
                const double d2 = a - 2.0 * b + c;
                const double slack = convexity_slack(a, b, c, h, tol.convex);
                if (d2 < -slack) rep.convexity_defect = std::max(rep.convexity_defect, -d2);
            }
        }
        for (int i = 0; i + 1 < nx; ++i) {
            const double s = (v(k, i + 1) - v(k, i)) / h;
            rep.slope_excess = std::max({rep.slope_excess, -s - tol.slope, s - 1.0 - tol.slope});
        }
    }
    const double bound_tol = 1e-12;
    for (int i = 0; i < nx; ++i) {
        rep.boundary_excess = std::max({rep.boundary_excess, v(0, i) - psi0[i] - bound_tol * (1.0 + std::abs(psi0[i])),
                                        v(nt - 1, i) - psi1[i] - bound_tol * (1.0 + std::abs(psi1[i]))});
    }
    rep.jointly_convex = rep.convexity_defect == 0.0;
    rep.slopes_ok = rep.slope_excess <= 0.0;
    rep.boundary_ok = rep.boundary_excess <= 0.0;
    rep.slope_excess = std::max(rep.slope_excess, 0.0);
    rep.boundary_excess = std::max(rep.boundary_excess, 0.0);
    rep.candidate = rep.jointly_convex && rep.slopes_ok && rep.boundary_ok;
    return rep;
}

double perron_excess(const Matrix& v, const GeodesicSlab& slab) {
    if (v.rows() != slab.values.rows() || v.cols() != slab.values.cols()) {
        throw StructuralError("perron_excess: shape mismatch");
    }
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < v.data().size(); ++n) m = std::max(m, v.data()[n] - slab.values.data()[n]);
    return m;
}

} // namespace geolab
