#include "geolab/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "geolab/convex.hpp"
#include "geolab/errors.hpp"

namespace geolab {

double sampled_lipschitz(std::span<const double> f, double h) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) m = std::max(m, std::abs(f[i + 1] - f[i]) / h);
    return m;
}

double sampled_hessian(std::span<const double> f, double h) {
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) m = std::max(m, std::abs(f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h));
    return m;
}

ObstacleFamily::ObstacleFamily(GridSpec grid, std::vector<Obstacle> members)
    : grid_(grid), members_(std::move(members)) {
    if (members_.empty()) throw DomainError("obstacle family is empty");
    const double h = grid_.h();
    for (std::size_t a = 0; a < members_.size(); ++a) {
        const Obstacle& m = members_[a];
        if (static_cast<int>(m.values.size()) != grid_.nx()) {
            throw StructuralError("obstacle " + std::to_string(a) + " has " + std::to_string(m.values.size()) +
                                  " samples, grid expects " + std::to_string(grid_.nx()));
        }
        for (double v : m.values) {
            if (!std::isfinite(v)) throw DataError("obstacle " + std::to_string(a) + " has a non-finite sample");
        }
        const double lip = sampled_lipschitz(m.values, h);
        const double hess = sampled_hessian(m.values, h);
        const double slack = 1e-9;
        if (lip > m.lipschitz * (1.0 + slack) + slack || hess > m.hessian * (1.0 + slack) + slack) {
            std::ostringstream os;
            os << "obstacle " << a << " metadata does not dominate its samples (lip " << lip << " vs " << m.lipschitz
               << ", hess " << hess << " vs " << m.hessian << ")";
            throw ValidationError(os.str());
        }
    }
}

ObstacleFamily ObstacleFamily::with_sampled_bounds(const GridSpec& grid, std::vector<std::vector<double>> members) {
    std::vector<Obstacle> obs;
    obs.reserve(members.size());
    for (auto& f : members) {
        if (static_cast<int>(f.size()) != grid.nx()) throw StructuralError("obstacle length does not match the grid");
        const double lip = sampled_lipschitz(f, grid.h());
        const double hess = sampled_hessian(f, grid.h());
        obs.push_back({std::move(f), lip, hess});
    }
    return {grid, std::move(obs)};
}

std::vector<double> ObstacleFamily::pointwise_min() const {
    std::vector<double> m = members_.front().values;
    for (std::size_t a = 1; a < members_.size(); ++a) {
        const auto& v = members_[a].values;
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], v[i]);
    }
    return m;
}

double ObstacleFamily::max_lipschitz() const noexcept {
    double m = 0.0;
    for (const auto& o : members_) m = std::max(m, o.lipschitz);
    return m;
}

double ObstacleFamily::max_hessian() const noexcept {
    double m = 0.0;
    for (const auto& o : members_) m = std::max(m, o.hessian);
    return m;
}

int ContactSet::count() const noexcept {
    int n = 0;
    for (auto c : contact) n += c ? 1 : 0;
    return n;
}

ContactSet contact_set(std::span<const double> envelope, std::span<const double> obstacle, double tol_contact) {
    if (envelope.size() != obstacle.size()) throw StructuralError("contact_set: length mismatch");
    ContactSet cs{std::vector<std::uint8_t>(envelope.size(), 0)};
    for (std::size_t i = 0; i < envelope.size(); ++i) cs.contact[i] = envelope[i] >= obstacle[i] - tol_contact ? 1 : 0;
    return cs;
}

EnvelopeResult psh_envelope(const ObstacleFamily& family, double tol_contact) {
    std::vector<double> f = family.pointwise_min();
    SymmetricPotential e = convex_envelope_1d(family.grid(), f);
    ContactSet cs = contact_set(e.values(), f, tol_contact);
    return {std::move(e), std::move(cs), std::move(f)};
}

VanishingReport ma_vanishing_check(const SymmetricPotential& e, const ContactSet& contact, double mass_constant) {
    if (static_cast<int>(contact.contact.size()) != e.size()) throw StructuralError("ma_vanishing_check: shape mismatch");
    const MADensity mass = ma_density(e);
    const auto& c = contact.contact;
    const int n = e.size();

    VanishingReport rep;
    rep.threshold = mass_constant * e.grid().h();
    for (int i = 0; i < n; ++i) {
        if (c[i]) continue;
        const bool left_contact = i > 0 && c[i - 1];
        const bool right_contact = i + 1 < n && c[i + 1];
        if (left_contact || right_contact) {
            rep.free_boundary_nodes.push_back(i);
            rep.free_boundary_x.push_back(e.grid().x(i));
            continue;
        }
        ++rep.checked_nodes;
        rep.max_noncontact_mass = std::max(rep.max_noncontact_mass, std::abs(mass.weights[i]));
    }
    rep.passed = rep.max_noncontact_mass <= rep.threshold;
    return rep;
}

ModulusReport envelope_midpoint_modulus(const SymmetricPotential& e, std::span<const int> probe_cells) {
    const auto v = e.values();
    const int n = e.size();
    const double h = e.grid().h();

    ModulusReport rep;
    std::ostringstream note;
    for (int m : probe_cells) {
        if (m < 1 || 2 * m >= n) {
            rep.skipped.push_back(m);
            note << "probe " << m << " cells does not fit the grid; skipped. ";
            continue;
        }
        const double delta = m * h;
        double best = -std::numeric_limits<double>::infinity();
        for (int i = m; i + m < n; ++i) best = std::max(best, (v[i + m] + v[i - m] - 2.0 * v[i]) / (delta * delta));
        rep.probes.push_back(m);
        rep.per_probe.push_back(best);
        rep.modulus = std::max(rep.modulus, best);
    }

    // A slope jump J at a node gives J / delta at probe delta; bounded curvature
    // gives a probe-independent value.
    const auto fine = std::find(rep.probes.begin(), rep.probes.end(), 1);
    const auto coarse = std::find(rep.probes.begin(), rep.probes.end(), 2);
    if (fine != rep.probes.end() && coarse != rep.probes.end()) {
        const double m1 = rep.per_probe[fine - rep.probes.begin()];
        const double m2 = rep.per_probe[coarse - rep.probes.begin()];
        if (m1 * h > 0.05 && m1 > 1.25 * m2) {
            rep.unbounded = true;
            note << "modulus scales like 1/delta (slope jump about " << m1 * h << "); curvature is unbounded.";
        }
    }
    rep.note = note.str();
    return rep;
}

} // namespace geolab
