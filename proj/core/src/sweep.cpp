#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "geolab/convex.hpp"
#include "geolab/errors.hpp"
#include "geolab/parallel.hpp"

namespace geolab {

std::vector<std::pair<int, int>> stencil_directions(int width, int aspect) {
    if (width < 1 || aspect < 1) throw DomainError("stencil width and aspect must be >= 1");
    std::vector<std::pair<int, int>> dirs{{0, 1}};
    const int reach = width * aspect;
    for (int a = 1; a <= width; ++a) {
        for (int b = -reach; b <= reach; ++b) {
            if (std::gcd(a, std::abs(b)) == 1) dirs.emplace_back(a, b);
        }
    }
    return dirs;
}

namespace {

using Line = std::vector<int>; // flat node indices in walking order

std::vector<Line> lines_for(int rows, int cols, std::pair<int, int> d) {
    const auto [dr, dc] = d;
    auto inside = [&](int r, int c) { return r >= 0 && r < rows && c >= 0 && c < cols; };
    std::vector<Line> lines;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (inside(r - dr, c - dc)) continue;
            Line line;
            for (int rr = r, cc = c; inside(rr, cc); rr += dr, cc += dc) line.push_back(rr * cols + cc);
            if (line.size() >= 3) lines.push_back(std::move(line));
        }
    }
    return lines;
}

// Replaces u on nodes first..last of the line by its lower hull there; the
// two end nodes are untouched. Returns the largest decrease.
double hull_segment(std::span<double> u, const Line& line, std::size_t first, std::size_t last,
                    std::vector<std::size_t>& hull) {
    hull.clear();
    for (std::size_t k = first; k <= last; ++k) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull.back();
            const double fa = u[line[a]];
            const double cross = static_cast<double>(b - a) * (u[line[k]] - fa) -
                                 (u[line[b]] - fa) * static_cast<double>(k - a);
            if (cross > 0.0) break;
            hull.pop_back();
        }
        hull.push_back(k);
    }
    double change = 0.0;
    for (std::size_t m = 0; m + 1 < hull.size(); ++m) {
        const std::size_t a = hull[m];
        const std::size_t b = hull[m + 1];
        const double fa = u[line[a]];
        const double rise = (u[line[b]] - fa) / static_cast<double>(b - a);
        for (std::size_t k = a + 1; k < b; ++k) {
            const double v = fa + static_cast<double>(k - a) * rise;
            double& cur = u[line[k]];
            if (v < cur) {
                change = std::max(change, cur - v);
                cur = v;
            }
        }
    }
    return change;
}

double line_envelope_pass(Matrix& u, const std::vector<std::vector<Line>>& families,
                          const std::vector<std::uint8_t>& pinned) {
    double change = 0.0;
    std::span<double> data = u.data();
    for (const auto& family : families) {
        std::vector<double> per_line(family.size(), 0.0);
        parallel_for(static_cast<int>(family.size()), [&](int li) {
            const Line& line = family[li];
            std::vector<std::size_t> hull;
            std::size_t start = 0;
            double c = 0.0;
            for (std::size_t k = 1; k < line.size(); ++k) {
                if (pinned[line[k]] || k + 1 == line.size()) {
                    if (k - start >= 2) c = std::max(c, hull_segment(data, line, start, k, hull));
                    start = k;
                }
            }
            per_line[li] = c;
        });
        for (double c : per_line) change = std::max(change, c);
    }
    return change;
}

double pointwise_pass(Matrix& u, const Matrix& obstacle, const std::vector<std::pair<int, int>>& dirs,
                      const std::vector<std::uint8_t>& pinned) {
    const Matrix old = u;
    const int rows = u.rows();
    const int cols = u.cols();
    std::vector<double> per_row(static_cast<std::size_t>(rows), 0.0);
    parallel_for(rows, [&](int r) {
        double c = 0.0;
        for (int col = 0; col < cols; ++col) {
            if (pinned[static_cast<std::size_t>(r) * cols + col]) continue;
            double v = obstacle(r, col);
            for (const auto& [dr, dc] : dirs) {
                const int r0 = r - dr, c0 = col - dc, r1 = r + dr, c1 = col + dc;
                if (r0 < 0 || r0 >= rows || r1 < 0 || r1 >= rows) continue;
                if (c0 < 0 || c0 >= cols || c1 < 0 || c1 >= cols) continue;
                v = std::min(v, 0.5 * (old(r0, c0) + old(r1, c1)));
            }
            c = std::max(c, std::abs(v - old(r, col)));
            u(r, col) = v;
        }
        per_row[r] = c;
    });
    return *std::max_element(per_row.begin(), per_row.end());
}

} // namespace

SweepResult oberman_sweep(const SweepProblem& problem, const SweepOptions& options) {
    const Matrix& init = problem.initial;
    const int rows = init.rows();
    const int cols = init.cols();
    if (problem.obstacle.rows() != rows || problem.obstacle.cols() != cols) {
        throw StructuralError("oberman_sweep: obstacle shape differs from the initial iterate");
    }
    if (problem.pinned.size() != init.data().size()) {
        throw StructuralError("oberman_sweep: pinned mask shape differs from the initial iterate");
    }
    if (options.max_iter < 1) throw DomainError("oberman_sweep: max_iter must be >= 1");

    SweepResult res;
    res.values = init;
    for (std::size_t n = 0; n < init.data().size(); ++n) {
        if (!problem.pinned[n]) res.values.data()[n] = std::min(init.data()[n], problem.obstacle.data()[n]);
    }

    const auto dirs = stencil_directions(options.stencil_width, options.aspect);
    std::vector<std::vector<Line>> families;
    if (options.update == SweepUpdate::line_envelope) {
        for (const auto& d : dirs) families.push_back(lines_for(rows, cols, d));
    }

    for (long it = 1; it <= options.max_iter; ++it) {
        res.last_update = options.update == SweepUpdate::line_envelope
                              ? line_envelope_pass(res.values, families, problem.pinned)
                              : pointwise_pass(res.values, problem.obstacle, dirs, problem.pinned);
        res.iterations = it;
        if (res.last_update < options.tol_fp) return res;
    }
    std::ostringstream os;
    os << "oberman_sweep did not converge: update " << res.last_update << " >= tol " << options.tol_fp << " after "
       << res.iterations << " sweeps";
    throw ConvergenceError(os.str(), res.iterations, res.last_update);
}

} // namespace geolab
