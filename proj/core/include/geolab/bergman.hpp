#pragma once

#include <span>
#include <string>
#include <vector>

#include "geolab/potential.hpp"

namespace geolab {

/// Quadrature for sections of O(k): trapezoid rule on the x grid, extended
/// by `tail` on both sides with the linear tails of the potential.
struct BergmanOptions {
    double tail = 25.0;
};

/// log N_{j,k}, N_{j,k} = int e^{j x - k psi(x)} e^x / (1 + e^x)^2 dx, j = 0..k.
std::vector<double> log_gram_norms(const SymmetricPotential& psi, int k, const BergmanOptions& opt = {});
std::vector<double> gram_norms(const SymmetricPotential& psi, int k, const BergmanOptions& opt = {});

struct BergmanProfile {
    int k = 0;
    std::vector<double> gram_norms;
    /// b_k(x_i) on the potential's grid, density relative to dx.
    std::vector<double> density;
    /// int b_k dx over the extended quadrature grid; equals k + 1.
    double trace = 0.0;
};

BergmanProfile bergman_density(const SymmetricPotential& psi, int k, const BergmanOptions& opt = {});

struct ConvergenceRow {
    int k = 0;
    double x = 0.0;
    double scaled_density = 0.0; // b_k / k
    double ma_density = 0.0;     // MA mass / h
    double rel_error = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::vector<double> probes;
    std::vector<double> skipped_probes;
    std::vector<std::string> notes;
    /// Least-squares slope of -log(max-probe error) against log k.
    double fitted_order = 0.0;

    /// Largest relative error across probes for a given k.
    double max_error(int k) const;
    std::string to_delimited(char sep = ',') const;
};

/// Probes closer than `exclusion_cells` cells to any excluded x (detected
/// Hessian breaks) are skipped with a note.
ConvergenceTable convergence_study(const SymmetricPotential& psi, std::span<const int> ks, std::span<const double> probes,
                                   std::span<const double> excluded_x = {}, int exclusion_cells = 3,
                                   const BergmanOptions& opt = {});

} // namespace geolab
