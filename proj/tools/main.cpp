#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geolab/config.hpp"
#include "geolab/errors.hpp"
#include "geolab/io.hpp"
#include "geolab/run.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<std::string> nx, nt, np, radius, method, psi0, psi1, obstacles, k, out, seed;
};

void add_flags(CLI::App& sub, Flags& f) {
    sub.add_option("--config", f.config, "key=value configuration file");
    sub.add_option("--nx", f.nx, "spatial grid points");
    sub.add_option("--nt", f.nt, "time slices");
    sub.add_option("--np", f.np, "slope grid points (0 = 4(nx-1)+1)");
    sub.add_option("--radius", f.radius, "half-width R of the x-domain");
    sub.add_option("--method", f.method, "legendre|hull|sweep");
    sub.add_option("--psi0", f.psi0, "endpoint potential at t = 0");
    sub.add_option("--psi1", f.psi1, "endpoint potential at t = 1");
    sub.add_option("--obstacles", f.obstacles, "obstacle family file");
    sub.add_option("--k", f.k, "comma-separated tensor powers");
    sub.add_option("--out", f.out, "output directory");
    sub.add_option("--seed", f.seed, "random seed");
}

std::vector<std::pair<std::string, std::string>> overrides(const std::string& kind, const Flags& f) {
    std::vector<std::pair<std::string, std::string>> out{{"kind", kind}};
    const std::pair<const char*, const std::optional<std::string>*> table[] = {
        {"nx", &f.nx},     {"nt", &f.nt},   {"np", &f.np},         {"radius", &f.radius},
        {"method", &f.method}, {"psi0", &f.psi0}, {"psi1", &f.psi1}, {"obstacles", &f.obstacles},
        {"k", &f.k},       {"out", &f.out}, {"seed", &f.seed},
    };
    for (const auto& [key, value] : table) {
        if (*value) out.emplace_back(key, **value);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geolab: weak geodesics, psh envelopes and Bergman densities for S^1-invariant potentials on P^1"};
    app.require_subcommand(1);

    Flags flags;
    const std::pair<const char*, const char*> kinds[] = {
        {"geodesic", "weak geodesic between two potential files, with its diagnostics report"},
        {"envelope", "psh envelope of an obstacle family, contact set and free-boundary checks"},
        {"diagnose", "geodesic plus per-slice profiles and C^2 break detection"},
        {"bergman", "Bergman densities b_k and their convergence to the Monge-Ampere density"},
        {"bench", "timings of the legendre, hull and sweep kernels"},
    };
    for (const auto& [kind, description] : kinds) add_flags(*app.add_subcommand(kind, description), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : geolab::exit_validation;
    }

    const std::string kind = app.get_subcommands().front()->get_name();
    try {
        const std::string text = flags.config.empty() ? std::string() : geolab::io::read_text(flags.config);
        const geolab::RunConfig config = geolab::parse_config(text, overrides(kind, flags));
        return geolab::run(config, std::cerr);
    } catch (const geolab::ConfigError& e) {
        std::cerr << (flags.config.empty() ? std::string("config") : flags.config) << ": " << e.what() << "\n";
        return geolab::exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return geolab::exit_validation;
    }
}
