#include "geolab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geolab/convex.hpp"
#include "geolab/errors.hpp"

namespace geolab {

double hessian_sup(std::span<const double> v, double h) {
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) m = std::max(m, std::abs(v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h));
    return m;
}

double hessian_sup_slice(const GeodesicSlab& slab, int k) {
    if (k < 0 || k >= slab.grid.nt()) throw StructuralError("slice index out of range");
    return hessian_sup(slab.slice(k), slab.grid.h());
}

bool slice_has_kink(const GeodesicSlab& slab, int k) {
    const int probes[] = {1, 2};
    return envelope_midpoint_modulus(slab.slice_potential(k), probes).unbounded;
}

HessianTransferVerdict endpoint_hessian_check(const GeodesicSlab& slab, double tol_factor) {
    const double h = slab.grid.h();
    HessianTransferVerdict v;
    v.endpoint_bound = std::max(hessian_sup(slab.psi0.values(), h), hessian_sup(slab.psi1.values(), h));
    for (int k = 0; k < slab.grid.nt(); ++k) {
        const double s = hessian_sup_slice(slab, k);
        if (s > v.slab_max) {
            v.slab_max = s;
            v.worst_slice = k;
        }
    }
    v.tolerance = tol_factor * h * v.endpoint_bound;
    v.margin = v.endpoint_bound + v.tolerance - v.slab_max;
    v.passed = v.margin >= 0.0;
    return v;
}

double c0_gap(const SymmetricPotential& psi0, const SymmetricPotential& psi1) {
    return max_abs_diff(psi0.values(), psi1.values());
}

double lipschitz_t(const GeodesicSlab& slab) {
    if (slab.grid.nt() < 3) throw DomainError("lipschitz_t needs nt >= 3");
    const double dt = slab.grid.dt();
    double m = 0.0;
    for (int k = 0; k + 1 < slab.grid.nt(); ++k) {
        const auto a = slab.slice(k);
        const auto b = slab.slice(k + 1);
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(b[i] - a[i]) / dt);
    }
    return m;
}

double lipschitz_x(const GeodesicSlab& slab) {
    const double h = slab.grid.h();
    double m = 0.0;
    for (int k = 0; k < slab.grid.nt(); ++k) {
        const auto s = slab.slice(k);
        for (std::size_t i = 0; i + 1 < s.size(); ++i) m = std::max(m, std::abs(s[i + 1] - s[i]) / h);
    }
    return m;
}

EnergyProfile energy_profile(const GeodesicSlab& slab) {
    const GridSpec& g = slab.grid;
    EnergyProfile prof;
    std::vector<double> v(static_cast<std::size_t>(g.nx()));
    for (int k = 1; k + 1 < g.nt(); ++k) {
        const auto prev = slab.slice(k - 1);
        const auto next = slab.slice(k + 1);
        for (int i = 0; i < g.nx(); ++i) v[i] = (next[i] - prev[i]) / (2.0 * g.dt());
        const MADensity mass = ma_density(slab.slice_potential(k));
        prof.slices.push_back(k);
        prof.t.push_back(g.t(k));
        prof.energy.push_back(mabuchi_inner(mass, v, v));
    }
    if (prof.energy.empty()) return prof;

    double sum = 0.0;
    for (double e : prof.energy) sum += e;
    prof.mean = sum / prof.energy.size();
    double var = 0.0;
    for (double e : prof.energy) var += (e - prof.mean) * (e - prof.mean);
    var /= prof.energy.size();
    prof.relative_std = prof.mean != 0.0 ? std::sqrt(var) / std::abs(prof.mean) : 0.0;
    return prof;
}

double dual_energy(const SymmetricPotential& psi0, const SymmetricPotential& psi1) {
    const SlopeProfile d0 = legendre(psi0);
    const SlopeProfile d1 = legendre(psi1);
    const double dp = psi0.grid().dp();
    double s = 0.0;
    for (int j = 0; j < d0.size(); ++j) {
        const double w = (j == 0 || j + 1 == d0.size()) ? 0.5 : 1.0;
        const double diff = d1[j] - d0[j];
        s += w * diff * diff;
    }
    return s * dp;
}

std::vector<C2Break> profile_breaks(const Axis& x, std::span<const double> v, double threshold) {
    const int n = static_cast<int>(v.size());
    std::vector<C2Break> out;
    if (n < 7) return out;
    const double h2 = x.step * x.step;
    std::vector<double> d2(static_cast<std::size_t>(n), 0.0);
    for (int i = 1; i + 1 < n; ++i) d2[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;

    int first = -1, last = -1;
    double jump = 0.0;
    auto flush = [&] {
        if (first < 0) return;
        out.push_back({0, 0.0, 0.5 * (x.at(first) + x.at(last)), jump});
        first = last = -1;
        jump = 0.0;
    };
    for (int i = 3; i + 3 < n; ++i) {
        const double j = std::abs(d2[i + 2] - d2[i - 2]);
        if (j < threshold) continue;
        if (first >= 0 && i - last > 4) flush();
        if (first < 0) first = i;
        last = i;
        jump = std::max(jump, j);
    }
    flush();
    return out;
}

std::vector<C2Break> persistent_breaks(const std::vector<C2Break>& fine, const std::vector<C2Break>& coarse,
                                       double coarse_h) {
    std::vector<C2Break> out;
    for (const C2Break& b : fine) {
        const bool seen = std::any_of(coarse.begin(), coarse.end(), [&](const C2Break& c) {
            return c.slice == b.slice && std::abs(c.x - b.x) <= 2.0 * coarse_h;
        });
        if (seen) out.push_back(b);
    }
    return out;
}

namespace {

SymmetricPotential subsample(const SymmetricPotential& psi) {
    const GridSpec coarse = psi.grid().coarsened();
    std::vector<double> v(static_cast<std::size_t>(coarse.nx()));
    for (int i = 0; i < coarse.nx(); ++i) v[i] = psi[2 * i];
    return {coarse, std::move(v)};
}

std::vector<C2Break> slab_breaks(const GeodesicSlab& slab, double threshold) {
    std::vector<C2Break> out;
    for (int k = 0; k < slab.grid.nt(); ++k) {
        for (C2Break b : profile_breaks(slab.grid.x_axis(), slab.slice(k), threshold)) {
            b.slice = k;
            b.t = slab.grid.t(k);
            out.push_back(b);
        }
    }
    return out;
}

} // namespace

std::vector<C2Break> c2_break_detect(const GeodesicSlab& slab, double threshold, int levels, const SweepOptions& sweep) {
    std::vector<C2Break> found = slab_breaks(slab, threshold);
    SymmetricPotential psi0 = slab.psi0;
    SymmetricPotential psi1 = slab.psi1;
    for (int level = 0; level < levels && !found.empty(); ++level) {
        psi0 = subsample(psi0);
        psi1 = subsample(psi1);
        const GeodesicSlab coarse = compute_geodesic(slab.method, psi0, psi1, sweep);
        found = persistent_breaks(found, slab_breaks(coarse, threshold), coarse.grid.h());
    }
    return found;
}

std::vector<C2Break> envelope_break_detect(const ObstacleFamily& family, double threshold, int levels) {
    const EnvelopeResult fine = psh_envelope(family);
    std::vector<C2Break> found = profile_breaks(family.grid().x_axis(), fine.envelope.values(), threshold);
    std::vector<std::vector<double>> members;
    for (const Obstacle& o : family.members()) members.push_back(o.values);
    GridSpec grid = family.grid();
    for (int level = 0; level < levels && !found.empty(); ++level) {
        grid = grid.coarsened();
        for (auto& m : members) {
            std::vector<double> c(static_cast<std::size_t>(grid.nx()));
            for (int i = 0; i < grid.nx(); ++i) c[i] = m[2 * i];
            m = std::move(c);
        }
        const EnvelopeResult coarse = psh_envelope(ObstacleFamily::with_sampled_bounds(grid, members));
        found = persistent_breaks(found, profile_breaks(grid.x_axis(), coarse.envelope.values(), threshold), grid.h());
    }
    return found;
}

DiagnosticsReport diagnose(const GeodesicSlab& slab, const DiagnosticsOptions& opt) {
    DiagnosticsReport rep;
    const GridSpec& g = slab.grid;
    for (int k = 0; k < g.nt(); ++k) {
        rep.hessian_sup.push_back(hessian_sup_slice(slab, k));
        if (slice_has_kink(slab, k)) rep.kink_slices.push_back(k);
    }
    rep.hessian = endpoint_hessian_check(slab, opt.hessian_tol_factor);
    rep.c0_gap = c0_gap(slab.psi0, slab.psi1);
    rep.lipschitz_t = g.nt() >= 3 ? lipschitz_t(slab) : 0.0;
    rep.lipschitz_x = lipschitz_x(slab);
    rep.energy = energy_profile(slab);
    rep.dual_energy = dual_energy(slab.psi0, slab.psi1);
    rep.residual = hcma_residual(slab);
    rep.c2_breaks = c2_break_detect(slab, opt.jump_threshold, opt.refinement_levels, opt.sweep);

    rep.verdict_hessian = rep.kink_slices.empty() && rep.hessian.passed;
    rep.verdict_lipschitz_t = rep.lipschitz_t <= rep.c0_gap + opt.lipschitz_tol;
    rep.verdict_slope = rep.lipschitz_x <= 1.0 + Tolerances{}.slope;
    rep.verdict_energy = !opt.judge_energy || rep.energy.relative_std <= 10.0 * (g.h() + g.dt());
    return rep;
}

} // namespace geolab
