#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace geolab {

/// Uniformly spaced 1D sample locations: origin + i * step, i = 0..count-1.
struct Axis {
    double origin = 0.0;
    double step = 1.0;
    int count = 0;

    double at(int i) const noexcept { return origin + i * step; }
    double back() const noexcept { return at(count - 1); }
    std::vector<double> points() const;
};

/**
 * Discretisation of the reduced model.
 *
 * x samples the log-coordinate line on [-R, R] with nx points, p samples the
 * moment interval [0, 1] with np points and t samples the time interval
 * [0, 1] with nt points. Instances are only built through make(), which
 * enforces R >= 5, nx >= 3, np >= 2, nt >= 2.
 */
class GridSpec {
public:
    static constexpr double min_radius = 5.0;
    static constexpr double default_radius = 15.0;

    /// np == 0 selects the default slope resolution 4 * (nx - 1) + 1.
    static GridSpec make(double radius, int nx, int nt = 33, int np = 0);

    static int default_np(int nx) noexcept { return 4 * (nx - 1) + 1; }

    double radius() const noexcept { return radius_; }
    int nx() const noexcept { return nx_; }
    int np() const noexcept { return np_; }
    int nt() const noexcept { return nt_; }

    double h() const noexcept { return 2.0 * radius_ / (nx_ - 1); }
    double dp() const noexcept { return 1.0 / (np_ - 1); }
    double dt() const noexcept { return 1.0 / (nt_ - 1); }

    double x(int i) const noexcept { return -radius_ + i * h(); }
    double p(int j) const noexcept { return j * dp(); }
    double t(int k) const noexcept { return k * dt(); }

    Axis x_axis() const noexcept { return {-radius_, h(), nx_}; }
    Axis p_axis() const noexcept { return {0.0, dp(), np_}; }
    Axis t_axis() const noexcept { return {0.0, dt(), nt_}; }

    /// Same radius, nx' = 2 nx - 1 (every old node kept), np rescaled the same way.
    GridSpec refined() const;
    /// Every other x node; requires odd nx.
    GridSpec coarsened() const;
    GridSpec with_nt(int nt) const { return make(radius_, nx_, nt, np_); }
    GridSpec with_np(int np) const { return make(radius_, nx_, nt_, np); }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    GridSpec(double radius, int nx, int np, int nt) : radius_(radius), nx_(nx), np_(np), nt_(nt) {}

    double radius_;
    int nx_;
    int np_;
    int nt_;
};

/// Dense row-major matrix; rows index time slices, columns index x nodes.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    double& operator()(int r, int c) noexcept { return data_[index(r, c)]; }
    double operator()(int r, int c) const noexcept { return data_[index(r, c)]; }

    std::span<double> row(int r) noexcept { return {data_.data() + index(r, 0), static_cast<std::size_t>(cols_)}; }
    std::span<const double> row(int r) const noexcept {
        return {data_.data() + index(r, 0), static_cast<std::size_t>(cols_)};
    }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t index(int r, int c) const noexcept { return static_cast<std::size_t>(r) * cols_ + c; }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// sup_i |a_i - b_i|; lengths must agree.
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double max_abs_diff(const Matrix& a, const Matrix& b);

} // namespace geolab
