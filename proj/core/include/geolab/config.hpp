#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geolab/convex.hpp"
#include "geolab/geodesic.hpp"
#include "geolab/grid.hpp"
#include "geolab/potential.hpp"

namespace geolab {

enum class ProblemKind { geodesic, envelope, diagnose, bergman, bench };

std::string_view to_string(ProblemKind k) noexcept;
ProblemKind parse_kind(std::string_view name);

std::string_view to_string(SweepUpdate u) noexcept;
SweepUpdate parse_sweep_update(std::string_view name);

/// Everything a run needs. Every field has a default.
struct RunConfig {
    ProblemKind kind = ProblemKind::geodesic;

    double radius = GridSpec::default_radius;
    int nx = 1025;
    int nt = 33;
    /// 0 selects GridSpec::default_np(nx).
    int np = 0;

    GeodesicMethod method = GeodesicMethod::legendre;
    Tolerances tol;
    double tol_contact = 1e-8;
    SweepOptions sweep;
    double hessian_tol_factor = 10.0;
    double jump_threshold = 0.5;
    int refinement_levels = 1;

    std::string psi0;
    std::string psi1;
    std::string obstacles;
    std::string out = ".";

    std::vector<int> k{25, 50, 100, 200};
    std::vector<double> probes{-2.0, -1.0, 0.0, 1.0, 2.0};
    std::uint64_t seed = 1;

    /// Empty means the per-operation default sizes.
    std::vector<int> bench_sizes;
    /// Subset of {legendre, hull, sweep}; empty means all.
    std::vector<std::string> bench_ops;

    /// Keys given explicitly by the file or flags.
    std::set<std::string> explicit_keys;

    bool is_explicit(const std::string& key) const { return explicit_keys.count(key) != 0; }

    GridSpec grid() const { return GridSpec::make(radius, nx, nt, np); }

    /// Every key, one `key=value` per line; parse_config reproduces the config.
    std::string to_text() const;
};

/// Same settings (the explicit-key bookkeeping is ignored).
bool same_settings(const RunConfig& a, const RunConfig& b);

/// Names accepted by parse_config.
const std::vector<std::string>& config_keys();

/**
 * Builds a config from `key=value` text (several pairs per line allowed,
 * '#' comments) and then applies the flag overrides, which win.
 *
 * Unknown keys, malformed values, grid limits and missing input paths for
 * the selected kind raise ConfigError carrying the offending line (flag
 * overrides report line 0 and name the flag).
 */
RunConfig parse_config(std::string_view text, const std::vector<std::pair<std::string, std::string>>& overrides = {});

} // namespace geolab
