#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geolab/grid.hpp"
#include "geolab/potential.hpp"

namespace geolab {

struct Obstacle {
    std::vector<double> values;
    /// Declared bounds; must dominate the sampled difference quotients.
    double lipschitz = 0.0;
    double hessian = 0.0;
};

/// Sampled sup |f[i+1] - f[i]| / h.
double sampled_lipschitz(std::span<const double> f, double h);
/// Sampled sup |f[i+1] - 2 f[i] + f[i-1]| / h^2.
double sampled_hessian(std::span<const double> f, double h);

/// Finite family {f_a}; the obstacle is their pointwise minimum.
class ObstacleFamily {
public:
    ObstacleFamily(GridSpec grid, std::vector<Obstacle> members);

    /// Builds a family whose metadata is the sampled quotient bounds.
    static ObstacleFamily with_sampled_bounds(const GridSpec& grid, std::vector<std::vector<double>> members);

    const GridSpec& grid() const noexcept { return grid_; }
    const std::vector<Obstacle>& members() const noexcept { return members_; }

    std::vector<double> pointwise_min() const;
    double max_lipschitz() const noexcept;
    double max_hessian() const noexcept;

private:
    GridSpec grid_;
    std::vector<Obstacle> members_;
};

struct ContactSet {
    /// 1 where the envelope touches the obstacle.
    std::vector<std::uint8_t> contact;

    int count() const noexcept;
    bool all() const noexcept { return count() == static_cast<int>(contact.size()); }
};

ContactSet contact_set(std::span<const double> envelope, std::span<const double> obstacle, double tol_contact);

struct EnvelopeResult {
    SymmetricPotential envelope;
    ContactSet contact;
    std::vector<double> obstacle;
};

/// Largest admissible potential below min_a f_a, with its contact set.
EnvelopeResult psh_envelope(const ObstacleFamily& family, double tol_contact = 1e-8);

struct VanishingReport {
    /// Largest MA cell mass over non-contact nodes not adjacent to the contact set.
    double max_noncontact_mass = 0.0;
    int checked_nodes = 0;
    double threshold = 0.0;
    /// Non-contact nodes that neighbour a contact node.
    std::vector<int> free_boundary_nodes;
    std::vector<double> free_boundary_x;
    bool passed = false;
};

/// Pass iff every checked mass is <= mass_constant * h.
VanishingReport ma_vanishing_check(const SymmetricPotential& envelope, const ContactSet& contact,
                                   double mass_constant = 1e-3);

struct ModulusReport {
    /// max over probes of the per-probe moduli.
    double modulus = 0.0;
    std::vector<int> probes;
    std::vector<double> per_probe;
    std::vector<int> skipped;
    /// Smallest-probe modulus grows like 1/delta: a slope jump rather than bounded curvature.
    bool unbounded = false;
    std::string note;
};

/**
 * One-sided C^{1,1} modulus: max over interior x and probe offsets delta of
 * (E(x + delta) + E(x - delta) - 2 E(x)) / delta^2. Probes are positive
 * multiples of h; a probe that does not fit in the grid is skipped.
 */
ModulusReport envelope_midpoint_modulus(const SymmetricPotential& e, std::span<const int> probe_cells);

} // namespace geolab
