#include "geolab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geolab/errors.hpp"

namespace geolab {

std::vector<double> Axis::points() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[i] = at(i);
    return out;
}

GridSpec GridSpec::make(double radius, int nx, int nt, int np) {
    if (!std::isfinite(radius) || radius < min_radius) {
        throw StructuralError("grid radius must be finite and >= " + std::to_string(min_radius) + ", got " +
                              std::to_string(radius));
    }
    if (nx < 3) throw StructuralError("nx must be >= 3, got " + std::to_string(nx));
    if (nt < 2) throw StructuralError("nt must be >= 2, got " + std::to_string(nt));
    if (np == 0) np = default_np(nx);
    if (np < 2) throw StructuralError("np must be >= 2, got " + std::to_string(np));
    return GridSpec(radius, nx, np, nt);
}

GridSpec GridSpec::refined() const {
    return make(radius_, 2 * nx_ - 1, nt_, 2 * np_ - 1);
}

GridSpec GridSpec::coarsened() const {
    if (nx_ % 2 == 0 || nx_ < 5) throw StructuralError("coarsening needs odd nx >= 5");
    const int np = np_ % 2 == 1 ? (np_ + 1) / 2 : np_;
    return make(radius_, (nx_ + 1) / 2, nt_, std::max(np, 2));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw StructuralError("max_abs_diff: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw StructuralError("max_abs_diff: shape mismatch");
    return max_abs_diff(a.data(), b.data());
}

} // namespace geolab
