#include "geolab/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "geolab/errors.hpp"
#include "geolab/parallel.hpp"

namespace geolab {

namespace {

// Extended quadrature nodes with log of (trapezoid weight * base measure) and
// the extrapolated potential.
struct Quadrature {
    std::vector<double> x;
    std::vector<double> log_weight;
    std::vector<double> psi;
    int first_grid_node = 0;
};

double log_fs_density(double x) {
    // log(e^x / (1 + e^x)^2) = -|x| - 2 log(1 + e^{-|x|})
    const double a = std::abs(x);
    return -a - 2.0 * std::log1p(std::exp(-a));
}

Quadrature make_quadrature(const SymmetricPotential& psi, const BergmanOptions& opt) {
    const GridSpec& g = psi.grid();
    const double h = g.h();
    const int ext = static_cast<int>(std::ceil(opt.tail / h));
    const int n = g.nx() + 2 * ext;
    Quadrature q;
    q.first_grid_node = ext;
    q.x.resize(n);
    q.log_weight.resize(n);
    q.psi.resize(n);
    for (int m = 0; m < n; ++m) {
        const int i = m - ext;
        const double x = g.x(0) + i * h;
        q.x[m] = x;
        if (i < 0) {
            q.psi[m] = psi[0];
        } else if (i >= g.nx()) {
            q.psi[m] = psi[g.nx() - 1] + (i - (g.nx() - 1)) * h;
        } else {
            q.psi[m] = psi[i];
        }
        const double w = (m == 0 || m == n - 1) ? 0.5 * h : h;
        q.log_weight[m] = std::log(w) + log_fs_density(x);
    }
    return q;
}

void check_inputs(const SymmetricPotential& psi, int k) {
    if (k < 1) throw DomainError("tensor power k must be >= 1");
    require_admissible(psi);
}

// log sum_m exp(terms[m]) with a max shift.
double log_sum_exp(std::span<const double> terms) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double t : terms) mx = std::max(mx, t);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    return mx + std::log(s);
}

std::vector<double> log_gram(const Quadrature& q, int k) {
    std::vector<double> out(static_cast<std::size_t>(k + 1));
    parallel_for(k + 1, [&](int j) {
        std::vector<double> terms(q.x.size());
        for (std::size_t m = 0; m < q.x.size(); ++m) terms[m] = j * q.x[m] - k * q.psi[m] + q.log_weight[m];
        out[j] = log_sum_exp(terms);
    });
    return out;
}

} // namespace

std::vector<double> log_gram_norms(const SymmetricPotential& psi, int k, const BergmanOptions& opt) {
    check_inputs(psi, k);
    return log_gram(make_quadrature(psi, opt), k);
}

std::vector<double> gram_norms(const SymmetricPotential& psi, int k, const BergmanOptions& opt) {
    std::vector<double> n = log_gram_norms(psi, k, opt);
    for (double& v : n) v = std::exp(v);
    return n;
}

BergmanProfile bergman_density(const SymmetricPotential& psi, int k, const BergmanOptions& opt) {
    check_inputs(psi, k);
    const Quadrature q = make_quadrature(psi, opt);
    const std::vector<double> lg = log_gram(q, k);

    // log b_k at every quadrature node.
    const int n = static_cast<int>(q.x.size());
    std::vector<double> log_b(static_cast<std::size_t>(n));
    parallel_for(n, [&](int m) {
        std::vector<double> terms(static_cast<std::size_t>(k + 1));
        for (int j = 0; j <= k; ++j) terms[j] = j * q.x[m] - k * q.psi[m] - lg[j];
        const double a = std::abs(q.x[m]);
        log_b[m] = log_sum_exp(terms) + (-a - 2.0 * std::log1p(std::exp(-a)));
    });

    BergmanProfile prof;
    prof.k = k;
    prof.gram_norms.resize(lg.size());
    for (std::size_t j = 0; j < lg.size(); ++j) prof.gram_norms[j] = std::exp(lg[j]);
    const int nx = psi.grid().nx();
    prof.density.resize(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) prof.density[i] = std::exp(log_b[q.first_grid_node + i]);
    double trace = 0.0;
    const double h = psi.grid().h();
    for (int m = 0; m < n; ++m) {
        const double w = (m == 0 || m == n - 1) ? 0.5 * h : h;
        trace += w * std::exp(log_b[m]);
    }
    prof.trace = trace;
    return prof;
}

double ConvergenceTable::max_error(int k) const {
    double m = 0.0;
    for (const auto& r : rows) {
        if (r.k == k) m = std::max(m, r.rel_error);
    }
    return m;
}

std::string ConvergenceTable::to_delimited(char sep) const {
    std::ostringstream os;
    os.precision(17);
    os << "k" << sep << "x" << sep << "bk_over_k" << sep << "ma_density" << sep << "rel_error\n";
    for (const auto& r : rows) {
        os << r.k << sep << r.x << sep << r.scaled_density << sep << r.ma_density << sep << r.rel_error << '\n';
    }
    return os.str();
}

ConvergenceTable convergence_study(const SymmetricPotential& psi, std::span<const int> ks, std::span<const double> probes,
                                   std::span<const double> excluded_x, int exclusion_cells, const BergmanOptions& opt) {
    const GridSpec& g = psi.grid();
    const double h = g.h();
    const MADensity mass = ma_density(psi);

    ConvergenceTable table;
    std::vector<int> nodes;
    for (double x : probes) {
        const int i = static_cast<int>(std::lround((x + g.radius()) / h));
        std::ostringstream note;
        if (i < 1 || i + 1 >= g.nx()) {
            note << "probe x=" << x << " is outside the interior of the grid; skipped";
            table.notes.push_back(note.str());
            table.skipped_probes.push_back(x);
            continue;
        }
        const bool near_break = std::any_of(excluded_x.begin(), excluded_x.end(), [&](double b) {
            return std::abs(b - g.x(i)) <= exclusion_cells * h;
        });
        if (near_break) {
            note << "probe x=" << x << " lies within " << exclusion_cells << " cells of a Hessian break; skipped";
            table.notes.push_back(note.str());
            table.skipped_probes.push_back(x);
            continue;
        }
        nodes.push_back(i);
        table.probes.push_back(g.x(i));
    }

    for (int k : ks) {
        const BergmanProfile prof = bergman_density(psi, k, opt);
        for (int i : nodes) {
            ConvergenceRow row;
            row.k = k;
            row.x = g.x(i);
            row.scaled_density = prof.density[i] / k;
            row.ma_density = mass.weights[i] / h;
            row.rel_error = std::abs(row.scaled_density - row.ma_density) / std::abs(row.ma_density);
            table.rows.push_back(row);
        }
    }

    // Fit log(err) = c - order * log(k) over the k values.
    if (ks.size() >= 2 && !nodes.empty()) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int k : ks) {
            const double lx = std::log(static_cast<double>(k));
            const double ly = std::log(std::max(table.max_error(k), std::numeric_limits<double>::min()));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double n = static_cast<double>(ks.size());
        const double denom = n * sxx - sx * sx;
        if (denom != 0.0) table.fitted_order = -(n * sxy - sx * sy) / denom;
    }
    return table;
}

} // namespace geolab
