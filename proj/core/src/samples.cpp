#include "geolab/samples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace geolab::samples {

std::vector<double> Rng::simplex(int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& v : w) {
        v = -std::log(1.0 - uniform());
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

double kink(double x, double a) noexcept { return std::max(0.0, x - a); }

double SoftplusMixture::operator()(double x) const noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < weight.size(); ++k) s += weight[k] * scale[k] * fubini_study((x - center[k]) / scale[k]);
    return s;
}

double SoftplusMixture::second_derivative(double x) const noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < weight.size(); ++k) {
        s += weight[k] / scale[k] * fubini_study_density((x - center[k]) / scale[k]);
    }
    return s;
}

double SoftplusMixture::hessian_bound() const noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < weight.size(); ++k) s += weight[k] / (4.0 * scale[k]);
    return s;
}

SoftplusMixture random_mixture(Rng& rng, int components, double center_range, double min_scale, double max_scale) {
    SoftplusMixture m;
    m.weight = rng.simplex(components);
    for (int k = 0; k < components; ++k) {
        m.center.push_back(rng.uniform(-center_range, center_range));
        m.scale.push_back(rng.uniform(min_scale, max_scale));
    }
    return m;
}

double QuadraticCap::operator()(double x) const noexcept {
    const double l = half_width;
    if (x <= center - l) return 0.0;
    if (x >= center + l) return x - center;
    const double u = x - center + l;
    return u * u / (4.0 * l);
}

SymmetricPotential fubini_study_potential(const GridSpec& grid) {
    return SymmetricPotential::sample(grid, [](double x) { return fubini_study(x); });
}

ObstacleFamily random_smooth_family(const GridSpec& grid, Rng& rng, int members, double hessian_cap) {
    std::vector<std::vector<double>> fs;
    for (int a = 0; a < members; ++a) {
        // Half of the curvature budget goes to the convex part, half to the ripple.
        SoftplusMixture base = random_mixture(rng, 2, 5.0, 0.5, 2.0);
        const double base_h = base.hessian_bound();
        const double base_gain = std::min(1.0, 0.5 * hessian_cap / base_h);
        const double omega = rng.uniform(0.5, 2.0);
        const double amp = 0.5 * hessian_cap * rng.uniform(0.2, 1.0) / (omega * omega);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double offset = rng.uniform(-0.5, 0.5);
        std::vector<double> f(static_cast<std::size_t>(grid.nx()));
        for (int i = 0; i < grid.nx(); ++i) {
            const double x = grid.x(i);
            f[i] = base_gain * base(x) + amp * std::sin(omega * x + phase) + offset;
        }
        fs.push_back(std::move(f));
    }
    return ObstacleFamily::with_sampled_bounds(grid, std::move(fs));
}

ObstacleFamily notch_family(const GridSpec& grid) {
    std::vector<double> a(static_cast<std::size_t>(grid.nx()));
    std::vector<double> b(a.size());
    for (int i = 0; i < grid.nx(); ++i) {
        const double x = grid.x(i);
        a[i] = kink(x, 0.0);
        b[i] = 1.0 + kink(x, 2.0);
    }
    return ObstacleFamily::with_sampled_bounds(grid, {std::move(a), std::move(b)});
}

} // namespace geolab::samples
