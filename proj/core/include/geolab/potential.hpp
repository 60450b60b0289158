#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "geolab/grid.hpp"

namespace geolab {

/// Admissibility tolerances. Convexity is measured in units of the second
/// derivative: psi[i+1] - 2 psi[i] + psi[i-1] >= -convex * h^2, plus a
/// rounding allowance proportional to the magnitudes involved.
struct Tolerances {
    double convex = 1e-9;
    double slope = 1e-9;
    double mass = 1e-6;
    /// Largest accepted sup |psi(x) - max(0, x)|.
    double anchor = 1e3;
};

/// Fubini-Study potential log(1 + e^x), evaluated without overflow.
double fubini_study(double x) noexcept;
/// Its second derivative e^x / (1 + e^x)^2.
double fubini_study_density(double x) noexcept;

/**
 * Samples of a convex potential psi on the x grid.
 *
 * A rotation-invariant metric weight on O(1) over P^1 corresponds to
 * psi(x) = log(1 + e^x) + phi(x) in the log-coordinate x = log|z|^2, and
 * positivity of the curvature form corresponds to psi convex with slopes in
 * [0, 1]. The class only enforces the shape; use validate_potential() for
 * admissibility.
 */
class SymmetricPotential {
public:
    SymmetricPotential(GridSpec grid, std::vector<double> values);

    static SymmetricPotential sample(const GridSpec& grid, const std::function<double(double)>& fn);

    const GridSpec& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](int i) const noexcept { return values_[i]; }
    int size() const noexcept { return static_cast<int>(values_.size()); }

    /// Value at arbitrary x by piecewise-linear interpolation, with the
    /// linear tails psi(-R) (slope 0) and psi(R) + (x - R) (slope 1) outside.
    double interpolate(double x) const noexcept;

private:
    GridSpec grid_;
    std::vector<double> values_;
};

/// Samples of the conjugate psi*(p) on the slope grid of `grid`.
class SlopeProfile {
public:
    SlopeProfile(GridSpec grid, std::vector<double> values);

    const GridSpec& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](int j) const noexcept { return values_[j]; }
    int size() const noexcept { return static_cast<int>(values_.size()); }

private:
    GridSpec grid_;
    std::vector<double> values_;
};

/// Cell masses of the curvature measure pushed to the x line.
struct MADensity {
    GridSpec grid;
    /// weights[i] = slope[i + 1/2] - slope[i - 1/2]; the two boundary nodes carry 0.
    std::vector<double> weights;

    double total() const noexcept;
    /// weights / h: the density per dx.
    std::vector<double> density() const;
};

struct ValidationReport {
    /// max over interior i of -(psi[i+1] - 2 psi[i] + psi[i-1]) / h^2, floored at 0.
    double max_convexity_defect = 0.0;
    int worst_convexity_node = -1;
    double min_slope = 0.0;
    double max_slope = 0.0;
    /// sup_i |psi[i] - max(0, x_i)|.
    double anchor_bound = 0.0;

    bool convex_ok = false;
    bool slope_ok = false;
    bool anchor_ok = false;

    bool passed() const noexcept { return convex_ok && slope_ok && anchor_ok; }
    std::string summary() const;
};

/// Throws DataError on non-finite samples; everything else is reported.
ValidationReport validate_potential(const SymmetricPotential& psi, const Tolerances& tol = {});

/// Throws ValidationError with the report summary unless psi passes.
void require_admissible(const SymmetricPotential& psi, const Tolerances& tol = {}, const std::string& what = "potential");

/// Second-difference rounding allowance used by the convexity checks.
double convexity_slack(double a, double b, double c, double h, double tol_convex) noexcept;

MADensity ma_density(const SymmetricPotential& psi, const Tolerances& tol = {});

/// sum_i v[i] w[i] m[i] with m = ma_density(psi).
double mabuchi_inner(const SymmetricPotential& psi, std::span<const double> v, std::span<const double> w);
double mabuchi_inner(const MADensity& mass, std::span<const double> v, std::span<const double> w);

/// psi = phi + log(1 + e^x).
SymmetricPotential from_weight(const GridSpec& grid, std::span<const double> phi);
/// phi = psi - log(1 + e^x).
std::vector<double> to_weight(const SymmetricPotential& psi);

} // namespace geolab
