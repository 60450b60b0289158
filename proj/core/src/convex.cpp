#include "geolab/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geolab/errors.hpp"
#include "geolab/parallel.hpp"

namespace geolab {

namespace {

void require_increasing(std::span<const double> a, const char* what) {
    for (std::size_t k = 1; k < a.size(); ++k) {
        if (!(a[k] > a[k - 1])) throw DomainError(std::string(what) + " must be strictly increasing");
    }
}

void require_finite(std::span<const double> a, const char* what) {
    for (double v : a) {
        if (!std::isfinite(v)) throw DataError(std::string(what) + " contains a non-finite sample");
    }
}

// Lower hull over index positions 0..n-1 of a uniformly spaced sequence.
// Orientation tests use integer offsets only.
std::vector<int> lower_hull_uniform(std::span<const double> f) {
    std::vector<int> hull;
    hull.reserve(f.size());
    for (int k = 0; k < static_cast<int>(f.size()); ++k) {
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2];
            const int b = hull.back();
            const double cross = static_cast<double>(b - a) * (f[k] - f[a]) - (f[b] - f[a]) * static_cast<double>(k - a);
            if (cross > 0.0) break;
            hull.pop_back();
        }
        hull.push_back(k);
    }
    return hull;
}

// One pass for finiteness and discrete convexity of uniformly spaced samples.
void require_convex_samples(std::span<const double> v, double step, double tol_convex, const char* what) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(v[i])) throw DataError(std::string(what) + " input contains a non-finite sample");
        if (i >= 2) {
            const double a = v[i - 2], b = v[i - 1], c = v[i];
            if (a - 2.0 * b + c < -convexity_slack(a, b, c, step, tol_convex)) {
                throw DomainError(std::string(what) +
                                  ": input is not discretely convex (its conjugate would silently convexify it)");
            }
        }
    }
}

// sup_i (q_j a_i - v_i) for uniformly spaced abscissae a and queries q; the
// abscissae are evaluated on the fly instead of being materialised.
std::vector<double> conjugate_uniform(const Axis& a, std::span<const double> v, const Axis& q) {
    if (a.count < 1 || q.count < 0) throw DomainError("conjugate of an empty sequence");
    if (!(a.step > 0.0) || (q.count > 1 && !(q.step > 0.0))) throw DomainError("conjugate axes must be increasing");
    const std::vector<int> hull = lower_hull_uniform(v);
    std::vector<double> out(static_cast<std::size_t>(q.count));
    std::size_t k = 0;
    const std::size_t last = hull.size() - 1;
    for (int j = 0; j < q.count; ++j) {
        const double qj = q.at(j);
        double cur = qj * a.at(hull[k]) - v[hull[k]];
        while (k < last) {
            const double nxt = qj * a.at(hull[k + 1]) - v[hull[k + 1]];
            if (!(nxt > cur)) break;
            cur = nxt;
            ++k;
        }
        out[j] = cur;
    }
    return out;
}

} // namespace

std::vector<int> lower_hull_indices(std::span<const double> a, std::span<const double> v) {
    if (a.size() != v.size()) throw StructuralError("lower_hull_indices: length mismatch");
    std::vector<int> hull;
    hull.reserve(a.size());
    for (int k = 0; k < static_cast<int>(a.size()); ++k) {
        while (hull.size() >= 2) {
            const int i = hull[hull.size() - 2];
            const int j = hull.back();
            const double cross = (a[j] - a[i]) * (v[k] - v[i]) - (v[j] - v[i]) * (a[k] - a[i]);
            if (cross > 0.0) break;
            hull.pop_back();
        }
        hull.push_back(k);
    }
    return hull;
}

std::vector<double> conjugate(std::span<const double> abscissae, std::span<const double> values,
                              std::span<const double> queries) {
    if (abscissae.size() != values.size()) throw StructuralError("conjugate: length mismatch");
    if (abscissae.empty()) throw DomainError("conjugate of an empty sequence");
    require_increasing(abscissae, "conjugate abscissae");
    require_increasing(queries, "conjugate queries");

    const std::vector<int> hull = lower_hull_indices(abscissae, values);
    std::vector<double> out(queries.size());
    std::size_t k = 0;
    for (std::size_t j = 0; j < queries.size(); ++j) {
        const double q = queries[j];
        while (k + 1 < hull.size()) {
            const int cur = hull[k];
            const int nxt = hull[k + 1];
            if (q * abscissae[nxt] - values[nxt] > q * abscissae[cur] - values[cur]) {
                ++k;
            } else {
                break;
            }
        }
        out[j] = q * abscissae[hull[k]] - values[hull[k]];
    }
    return out;
}

bool is_discretely_convex(std::span<const double> v, double step, double tol_convex) {
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double d2 = v[i + 1] - 2.0 * v[i] + v[i - 1];
        if (d2 < -convexity_slack(v[i - 1], v[i], v[i + 1], step, tol_convex)) return false;
    }
    return true;
}

std::vector<double> legendre(const Axis& x, std::span<const double> values, const Axis& p, double tol_convex) {
    if (static_cast<int>(values.size()) != x.count) throw StructuralError("legendre: length mismatch");
    require_convex_samples(values, x.step, tol_convex, "legendre");
    return conjugate_uniform(x, values, p);
}

SlopeProfile legendre(const SymmetricPotential& psi, const Tolerances& tol) {
    const GridSpec& g = psi.grid();
    return {g, legendre(g.x_axis(), psi.values(), g.p_axis(), tol.convex)};
}

std::vector<double> legendre_inverse(const Axis& p, std::span<const double> g, const Axis& x, double tol_convex) {
    if (static_cast<int>(g.size()) != p.count) throw StructuralError("legendre_inverse: length mismatch");
    require_convex_samples(g, p.step, tol_convex, "legendre_inverse");
    return conjugate_uniform(p, g, x);
}

SymmetricPotential legendre_inverse(const SlopeProfile& g, const Tolerances& tol) {
    const GridSpec& grid = g.grid();
    return {grid, legendre_inverse(grid.p_axis(), g.values(), grid.x_axis(), tol.convex)};
}

std::vector<double> convex_envelope_1d(const Axis& x, std::span<const double> f, double slope_lo, double slope_hi) {
    if (static_cast<int>(f.size()) != x.count) throw StructuralError("convex_envelope_1d: length mismatch");
    if (f.empty()) throw StructuralError("convex_envelope_1d: empty input");
    if (!(slope_lo <= slope_hi)) throw DomainError("convex_envelope_1d: empty slope interval");
    require_finite(f, "obstacle");

    const std::vector<int> hull = lower_hull_uniform(f);
    const double step = x.step;
    // Right-edge slope of hull vertex m compared against s without division.
    auto edge_below = [&](std::size_t m, double s) {
        const int a = hull[m];
        const int b = hull[m + 1];
        return f[b] - f[a] < s * (static_cast<double>(b - a) * step);
    };

    std::size_t lo = 0;
    while (lo + 1 < hull.size() && edge_below(lo, slope_lo)) ++lo;
    std::size_t hi = lo;
    while (hi + 1 < hull.size() && edge_below(hi, slope_hi)) ++hi;

    const int n = static_cast<int>(f.size());
    std::vector<double> out(f.size());
    const int left = hull[lo];
    const int right = hull[hi];
    for (int i = 0; i <= left; ++i) out[i] = f[left] + slope_lo * (static_cast<double>(i - left) * step);
    for (std::size_t m = lo; m < hi; ++m) {
        const int a = hull[m];
        const int b = hull[m + 1];
        const double rise = (f[b] - f[a]) / static_cast<double>(b - a);
        out[a] = f[a];
        for (int i = a + 1; i < b; ++i) out[i] = f[a] + static_cast<double>(i - a) * rise;
    }
    for (int i = right; i < n; ++i) out[i] = f[right] + slope_hi * (static_cast<double>(i - right) * step);
    return out;
}

SymmetricPotential convex_envelope_1d(const GridSpec& grid, std::span<const double> f) {
    return {grid, convex_envelope_1d(grid.x_axis(), f, 0.0, 1.0)};
}

HullPointCloud HullPointCloud::from_planes(const SymmetricPotential& psi0, const SymmetricPotential& psi1) {
    HullPointCloud cloud;
    cloud.points.reserve(static_cast<std::size_t>(psi0.size() + psi1.size()));
    for (int i = 0; i < psi0.size(); ++i) cloud.points.push_back({0.0, psi0.grid().x(i), psi0[i]});
    for (int i = 0; i < psi1.size(); ++i) cloud.points.push_back({1.0, psi1.grid().x(i), psi1[i]});
    return cloud;
}

namespace {

struct Plane {
    std::vector<double> x;
    std::vector<double> v;
};

Plane collect_plane(const HullPointCloud& cloud, double t, double radius) {
    std::vector<std::pair<double, double>> pts;
    for (const HullPoint& p : cloud.points) {
        if (p.t != t) continue;
        if (!std::isfinite(p.x) || !std::isfinite(p.value)) throw DataError("hull point cloud has non-finite entries");
        if (std::abs(p.x) > radius * (1.0 + 1e-12)) throw DomainError("hull point outside [-R, R]");
        pts.emplace_back(p.x, p.value);
    }
    if (pts.empty()) {
        throw DomainError("boundary plane t = " + std::to_string(static_cast<int>(t)) + " of the slab is empty");
    }
    std::sort(pts.begin(), pts.end());
    Plane plane;
    for (const auto& [x, v] : pts) {
        if (!plane.x.empty() && plane.x.back() == x) {
            plane.v.back() = std::min(plane.v.back(), v);
        } else {
            plane.x.push_back(x);
            plane.v.push_back(v);
        }
    }
    return plane;
}

// Hull slopes closer than this are one breakpoint: a rounding-sized gap in
// the slope set would turn the dual difference quotient into noise.
constexpr double slope_merge_tol = 1e-12;

void append_interior_slopes(const Plane& plane, std::vector<double>& slopes) {
    const std::vector<int> hull = lower_hull_indices(plane.x, plane.v);
    for (std::size_t m = 0; m + 1 < hull.size(); ++m) {
        const int a = hull[m];
        const int b = hull[m + 1];
        const double s = (plane.v[b] - plane.v[a]) / (plane.x[b] - plane.x[a]);
        if (s > slope_merge_tol && s < 1.0 - slope_merge_tol) slopes.push_back(s);
    }
}

} // namespace

Matrix lower_hull_slab(const HullPointCloud& cloud, const GridSpec& grid) {
    for (const HullPoint& p : cloud.points) {
        if (p.t != 0.0 && p.t != 1.0) throw DomainError("hull points must lie on the planes t = 0 or t = 1");
    }
    const Plane plane0 = collect_plane(cloud, 0.0, grid.radius());
    const Plane plane1 = collect_plane(cloud, 1.0, grid.radius());

    std::vector<double> slopes{0.0, 1.0};
    append_interior_slopes(plane0, slopes);
    append_interior_slopes(plane1, slopes);
    std::sort(slopes.begin(), slopes.end());
    slopes.erase(std::unique(slopes.begin(), slopes.end(),
                             [](double a, double b) { return b - a <= slope_merge_tol; }),
                 slopes.end());

    const std::vector<double> g0 = conjugate(plane0.x, plane0.v, slopes);
    const std::vector<double> g1 = conjugate(plane1.x, plane1.v, slopes);
    const std::vector<double> xs = grid.x_axis().points();

    Matrix out(grid.nt(), grid.nx());
    parallel_for(grid.nt(), [&](int k) {
        const double t = grid.t(k);
        std::vector<double> gt(slopes.size());
        for (std::size_t j = 0; j < slopes.size(); ++j) gt[j] = g0[j] + t * (g1[j] - g0[j]);
        const std::vector<double> row = conjugate(slopes, gt, xs);
        std::copy(row.begin(), row.end(), out.row(k).begin());
    });
    return out;
}

} // namespace geolab
