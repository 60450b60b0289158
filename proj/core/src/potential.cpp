#include "geolab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "geolab/errors.hpp"

namespace geolab {

double fubini_study(double x) noexcept {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double fubini_study_density(double x) noexcept {
    const double e = std::exp(-std::abs(x));
    return e / ((1.0 + e) * (1.0 + e));
}

SymmetricPotential::SymmetricPotential(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.nx()) {
        throw StructuralError("potential has " + std::to_string(values_.size()) + " samples, grid expects " +
                              std::to_string(grid_.nx()));
    }
}

SymmetricPotential SymmetricPotential::sample(const GridSpec& grid, const std::function<double(double)>& fn) {
    std::vector<double> v(static_cast<std::size_t>(grid.nx()));
    for (int i = 0; i < grid.nx(); ++i) v[i] = fn(grid.x(i));
    return {grid, std::move(v)};
}

double SymmetricPotential::interpolate(double x) const noexcept {
    const double r = grid_.radius();
    if (x <= -r) return values_.front();
    if (x >= r) return values_.back() + (x - r);
    const double s = (x + r) / grid_.h();
    const int i = std::min(static_cast<int>(s), grid_.nx() - 2);
    const double w = s - i;
    return (1.0 - w) * values_[i] + w * values_[i + 1];
}

SlopeProfile::SlopeProfile(GridSpec grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.np()) {
        throw StructuralError("slope profile has " + std::to_string(values_.size()) + " samples, grid expects " +
                              std::to_string(grid_.np()));
    }
}

double MADensity::total() const noexcept {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

std::vector<double> MADensity::density() const {
    std::vector<double> d(weights);
    const double h = grid.h();
    for (double& v : d) v /= h;
    return d;
}

double convexity_slack(double a, double b, double c, double h, double tol_convex) noexcept {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return tol_convex * h * h + 8.0 * eps * (std::abs(a) + 2.0 * std::abs(b) + std::abs(c));
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os.precision(6);
    os << "convexity " << (convex_ok ? "ok" : "FAIL") << " (max defect " << max_convexity_defect;
    if (worst_convexity_node >= 0) os << " at node " << worst_convexity_node;
    os << "), slopes " << (slope_ok ? "ok" : "FAIL") << " (range [" << min_slope << ", " << max_slope << "])"
       << ", anchor " << (anchor_ok ? "ok" : "FAIL") << " (bound " << anchor_bound << ")";
    return os.str();
}

ValidationReport validate_potential(const SymmetricPotential& psi, const Tolerances& tol) {
    const auto v = psi.values();
    const GridSpec& g = psi.grid();
    const double h = g.h();
    for (int i = 0; i < psi.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw DataError("potential sample " + std::to_string(i) + " is not finite");
        }
    }

    ValidationReport rep;
    rep.convex_ok = true;
    for (int i = 1; i + 1 < psi.size(); ++i) {
        const double d2 = v[i + 1] - 2.0 * v[i] + v[i - 1];
        const double defect = -d2 / (h * h);
        if (defect > rep.max_convexity_defect) {
            rep.max_convexity_defect = defect;
            rep.worst_convexity_node = i;
        }
        if (d2 < -convexity_slack(v[i - 1], v[i], v[i + 1], h, tol.convex)) rep.convex_ok = false;
    }

    rep.min_slope = std::numeric_limits<double>::infinity();
    rep.max_slope = -std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < psi.size(); ++i) {
        const double s = (v[i + 1] - v[i]) / h;
        rep.min_slope = std::min(rep.min_slope, s);
        rep.max_slope = std::max(rep.max_slope, s);
    }
    rep.slope_ok = rep.min_slope >= -tol.slope && rep.max_slope <= 1.0 + tol.slope;

    for (int i = 0; i < psi.size(); ++i) {
        rep.anchor_bound = std::max(rep.anchor_bound, std::abs(v[i] - std::max(0.0, g.x(i))));
    }
    rep.anchor_ok = rep.anchor_bound <= tol.anchor;
    return rep;
}

void require_admissible(const SymmetricPotential& psi, const Tolerances& tol, const std::string& what) {
    const ValidationReport rep = validate_potential(psi, tol);
    if (!rep.passed()) throw ValidationError(what + " is not admissible: " + rep.summary());
}

MADensity ma_density(const SymmetricPotential& psi, const Tolerances& tol) {
    require_admissible(psi, tol);
    const auto v = psi.values();
    const double h = psi.grid().h();
    MADensity out{psi.grid(), std::vector<double>(v.size(), 0.0)};
    for (int i = 1; i + 1 < psi.size(); ++i) {
        out.weights[i] = (v[i + 1] - v[i]) / h - (v[i] - v[i - 1]) / h;
    }
    return out;
}

double mabuchi_inner(const MADensity& mass, std::span<const double> v, std::span<const double> w) {
    if (v.size() != mass.weights.size() || w.size() != mass.weights.size()) {
        throw StructuralError("mabuchi_inner: tangent vectors must be sampled on the potential's grid");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * w[i] * mass.weights[i];
    return s;
}

double mabuchi_inner(const SymmetricPotential& psi, std::span<const double> v, std::span<const double> w) {
    return mabuchi_inner(ma_density(psi), v, w);
}

SymmetricPotential from_weight(const GridSpec& grid, std::span<const double> phi) {
    if (static_cast<int>(phi.size()) != grid.nx()) throw StructuralError("from_weight: length mismatch");
    std::vector<double> v(phi.size());
    for (int i = 0; i < grid.nx(); ++i) v[i] = phi[i] + fubini_study(grid.x(i));
    return {grid, std::move(v)};
}

std::vector<double> to_weight(const SymmetricPotential& psi) {
    std::vector<double> phi(psi.values().begin(), psi.values().end());
    for (int i = 0; i < psi.size(); ++i) phi[i] -= fubini_study(psi.grid().x(i));
    return phi;
}

} // namespace geolab
