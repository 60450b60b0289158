#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geolab/diagnostics.hpp"
#include "geolab/envelope.hpp"
#include "geolab/geodesic.hpp"
#include "geolab/potential.hpp"

namespace geolab::io {

/// 17 significant digits: re-parsing yields the identical double.
std::string format_double(double v);

/// Parses a full-string double; throws DataError otherwise.
double parse_double(std::string_view text, const std::string& where);

/// Two-column `x value` samples, one per line. '#' starts a comment.
std::string potential_to_text(const SymmetricPotential& psi);

/// Reads samples and infers the grid (R = -x_0, nx = line count). Spacing
/// must be uniform to 1e-9 relative and the x range symmetric.
SymmetricPotential potential_from_text(std::string_view text, int nt, int np = 0, const std::string& source = "potential");

void write_potential(const std::filesystem::path& path, const SymmetricPotential& psi);
SymmetricPotential read_potential(const std::filesystem::path& path, int nt, int np = 0);

/// Three-column `t x value`, slices in order of t.
std::string slab_to_text(const Matrix& values, const GridSpec& grid);
Matrix slab_values_from_text(std::string_view text, const GridSpec& grid);

/**
 * Obstacle family file:
 *
 *     members=<m>
 *     lip=<L> hess=<H>
 *     x value
 *     ...
 *     lip=<L> hess=<H>
 *     ...
 *
 * Each metadata line opens a block of two-column samples on a shared grid.
 */
std::string obstacle_family_to_text(const ObstacleFamily& family);
ObstacleFamily obstacle_family_from_text(std::string_view text, int nt, int np = 0, const std::string& source = "obstacles");

/// Ordered `key=value` document.
class KeyValueDoc {
public:
    void set(std::string key, std::string value);
    void set(std::string key, double value) { set(std::move(key), format_double(value)); }
    void set(std::string key, bool value) { set(std::move(key), std::string(value ? "pass" : "fail")); }
    void set(std::string key, int value) { set(std::move(key), std::to_string(value)); }
    void set(std::string key, long value) { set(std::move(key), std::to_string(value)); }
    void set(std::string key, const char* value) { set(std::move(key), std::string(value)); }

    const std::string* find(std::string_view key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

    std::string to_text() const;
    static KeyValueDoc from_text(std::string_view text);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Stable keys: hessian_sup.t<k>, lipschitz_t, c0_gap, energy.t<k>,
/// verdict.theorem11, residual.sup, and the supporting entries.
KeyValueDoc diagnostics_to_doc(const DiagnosticsReport& report, const GeodesicSlab& slab);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

} // namespace geolab::io
