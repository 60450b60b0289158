#include "geolab/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <memory>

#include "geolab/bergman.hpp"
#include "geolab/diagnostics.hpp"
#include "geolab/envelope.hpp"
#include "geolab/errors.hpp"
#include "geolab/io.hpp"

namespace geolab {

namespace fs = std::filesystem;

std::vector<BenchRow> BenchTable::for_op(const std::string& op) const {
    std::vector<BenchRow> out;
    for (const BenchRow& r : rows) {
        if (r.op == op) out.push_back(r);
    }
    return out;
}

std::string BenchTable::to_delimited(char sep) const {
    std::string out = std::string("op") + sep + "nx" + sep + "median_seconds\n";
    for (const BenchRow& r : rows) {
        out += r.op + sep + std::to_string(r.size) + sep + io::format_double(r.median_seconds) + "\n";
    }
    return out;
}

std::vector<int> default_bench_sizes(const std::string& op) {
    if (op == "legendre") return {1 << 16, 1 << 17, 1 << 18, 1 << 19, 1 << 20};
    return {1 << 10, 1 << 11, 1 << 12};
}

namespace {

// Per-call wall time of `call`, repeated until the sample covers min_sample.
template <class F>
double time_sample(F&& call, double min_sample) {
    using clock = std::chrono::steady_clock;
    long calls = 0;
    const auto start = clock::now();
    double elapsed = 0.0;
    do {
        call();
        ++calls;
        elapsed = std::chrono::duration<double>(clock::now() - start).count();
    } while (elapsed < min_sample);
    return elapsed / static_cast<double>(calls);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

std::pair<SymmetricPotential, SymmetricPotential> bench_endpoints(int nx, int nt, int np) {
    const GridSpec g = GridSpec::make(GridSpec::default_radius, nx, nt, np);
    return {SymmetricPotential::sample(g, fubini_study),
            SymmetricPotential::sample(g, [](double x) { return fubini_study(x - 1.0); })};
}

} // namespace

BenchTable bench(const std::vector<int>& sizes, const std::vector<std::string>& ops, int repeats,
                 double min_sample_seconds) {
    if (repeats < 1) throw ConfigError("bench needs at least one repeat");
    const std::vector<std::string> selected =
        ops.empty() ? std::vector<std::string>{"legendre", "hull", "sweep"} : ops;
    BenchTable table;
    for (const std::string& op : selected) {
        const std::vector<int> ns = sizes.empty() ? default_bench_sizes(op) : sizes;
        std::vector<std::function<void()>> calls;
        for (int nx : ns) {
            if (op == "legendre") {
                auto psi = std::make_shared<SymmetricPotential>(bench_endpoints(nx, 2, nx).first);
                calls.emplace_back([psi] { (void)legendre(*psi); });
            } else if (op == "hull" || op == "sweep") {
                auto ends = std::make_shared<std::pair<SymmetricPotential, SymmetricPotential>>(bench_endpoints(nx, 33, 0));
                if (op == "hull") {
                    calls.emplace_back([ends] { (void)geodesic_hull(ends->first, ends->second); });
                } else {
                    calls.emplace_back([ends] { (void)geodesic_sweep(ends->first, ends->second); });
                }
            } else {
                throw ConfigError("unknown bench op '" + op + "'");
            }
        }
        // Rounds run every size back to back, so a change in machine speed
        // between rounds cancels in the ratios of neighbouring sizes.
        for (const auto& call : calls) call();
        std::vector<std::vector<double>> samples(calls.size());
        for (int r = 0; r < repeats; ++r) {
            for (std::size_t n = 0; n < calls.size(); ++n) samples[n].push_back(time_sample(calls[n], min_sample_seconds));
        }
        for (std::size_t n = 0; n < calls.size(); ++n) table.rows.push_back({op, ns[n], median(samples[n])});

        if (op != "legendre") continue;
        for (std::size_t n = 1; n < ns.size(); ++n) {
            // Normalise to one doubling of nx.
            const double growth = std::log2(static_cast<double>(ns[n]) / ns[n - 1]);
            if (growth <= 0.0) continue;
            std::vector<double> ratios;
            for (int r = 0; r < repeats; ++r) ratios.push_back(std::pow(samples[n][r] / samples[n - 1][r], 1.0 / growth));
            table.legendre_max_ratio = std::max(table.legendre_max_ratio, median(ratios));
        }
    }
    table.legendre_scaling_ok = table.legendre_max_ratio <= 2.5;
    return table;
}

namespace {

void check_grid_matches(const RunConfig& c, const GridSpec& g, const std::string& source) {
    if (c.is_explicit("nx") && c.nx != g.nx()) {
        throw StructuralError(source + " has " + std::to_string(g.nx()) + " samples but nx=" + std::to_string(c.nx));
    }
    if (c.is_explicit("radius") && std::abs(c.radius - g.radius()) > 1e-9 * c.radius) {
        throw StructuralError(source + " spans radius " + io::format_double(g.radius()) + " but radius=" +
                              io::format_double(c.radius));
    }
}

SymmetricPotential load_potential(const RunConfig& c, const std::string& path) {
    SymmetricPotential psi = io::read_potential(path, c.nt, c.np);
    check_grid_matches(c, psi.grid(), path);
    return psi;
}

std::string series(const std::vector<double>& a, const std::vector<double>& b) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) out += io::format_double(a[i]) + ' ' + io::format_double(b[i]) + '\n';
    return out;
}

DiagnosticsOptions diagnostics_options(const RunConfig& c) {
    DiagnosticsOptions opt;
    opt.hessian_tol_factor = c.hessian_tol_factor;
    opt.jump_threshold = c.jump_threshold;
    opt.refinement_levels = c.refinement_levels;
    opt.sweep = c.sweep;
    return opt;
}

void run_geodesic(const RunConfig& c, const fs::path& out, std::ostream& log, bool full) {
    const SymmetricPotential psi0 = load_potential(c, c.psi0);
    const SymmetricPotential psi1 = load_potential(c, c.psi1);
    if (!(psi0.grid() == psi1.grid())) throw StructuralError("psi0 and psi1 live on different grids");
    const GeodesicSlab slab = compute_geodesic(c.method, psi0, psi1, c.sweep, c.tol);
    const GridSpec& g = slab.grid;
    log << "geodesic: method=" << to_string(c.method) << " nx=" << g.nx() << " nt=" << g.nt() << " np=" << g.np();
    if (c.method == GeodesicMethod::sweep) log << " sweeps=" << slab.iterations;
    log << "\n";
    io::write_text(out / "slab.txt", io::slab_to_text(slab.values, g));

    const DiagnosticsReport rep = diagnose(slab, diagnostics_options(c));
    io::KeyValueDoc doc = io::diagnostics_to_doc(rep, slab);
    if (c.method == GeodesicMethod::sweep) doc.set("sweep.iterations", slab.iterations);
    io::write_text(out / "report.txt", doc.to_text());

    const std::vector<double> ts = g.t_axis().points();
    io::write_text(out / "hessian_sup.dat", series(ts, rep.hessian_sup));
    if (!rep.energy.slices.empty()) io::write_text(out / "energy.dat", series(rep.energy.t, rep.energy.energy));

    if (full) {
        const std::vector<double> xs = g.x_axis().points();
        for (int k : {0, g.nt() / 2, g.nt() - 1}) {
            const auto row = slab.slice(k);
            io::write_text(out / ("slice_t" + std::to_string(k) + ".dat"),
                           series(xs, std::vector<double>(row.begin(), row.end())));
        }
        const auto mid = slab.slice(g.nt() / 2);
        std::vector<double> xi, d2;
        for (int i = 1; i + 1 < g.nx(); ++i) {
            xi.push_back(g.x(i));
            d2.push_back((mid[i + 1] - 2.0 * mid[i] + mid[i - 1]) / (g.h() * g.h()));
        }
        io::write_text(out / "second_difference_mid.dat", series(xi, d2));
        std::string breaks = "slice,t,x,jump\n";
        for (const C2Break& b : rep.c2_breaks) {
            breaks += std::to_string(b.slice) + "," + io::format_double(b.t) + "," + io::format_double(b.x) + "," +
                      io::format_double(b.jump) + "\n";
        }
        io::write_text(out / "c2_breaks.csv", breaks);
    }
    log << "verdict.theorem11=" << (rep.verdict_hessian ? "pass" : "fail") << " lipschitz_t=" << rep.lipschitz_t
        << " c0_gap=" << rep.c0_gap << " residual.sup=" << rep.residual.sup << "\n";
}

void run_envelope(const RunConfig& c, const fs::path& out, std::ostream& log) {
    const ObstacleFamily family = io::obstacle_family_from_text(io::read_text(c.obstacles), c.nt, c.np, c.obstacles);
    check_grid_matches(c, family.grid(), c.obstacles);
    const EnvelopeResult res = psh_envelope(family, c.tol_contact);
    const GridSpec& g = family.grid();
    io::write_text(out / "envelope.txt", io::potential_to_text(res.envelope));
    io::write_text(out / "obstacle_min.txt", io::potential_to_text(SymmetricPotential(g, res.obstacle)));
    std::string contact;
    for (int i = 0; i < g.nx(); ++i) contact += io::format_double(g.x(i)) + ' ' + std::to_string(res.contact.contact[i]) + '\n';
    io::write_text(out / "contact.dat", contact);

    const VanishingReport van = ma_vanishing_check(res.envelope, res.contact);
    const std::vector<int> probe_cells{1, 2, 4, 8};
    const ModulusReport mod = envelope_midpoint_modulus(res.envelope, probe_cells);
    const std::vector<C2Break> breaks = envelope_break_detect(family, c.jump_threshold, c.refinement_levels);

    io::KeyValueDoc doc;
    doc.set("grid.radius", g.radius());
    doc.set("grid.nx", g.nx());
    doc.set("members", static_cast<int>(family.members().size()));
    doc.set("obstacle.max_hessian", family.max_hessian());
    doc.set("contact.count", res.contact.count());
    doc.set("contact.all", res.contact.all());
    doc.set("vanishing.max_noncontact_mass", van.max_noncontact_mass);
    doc.set("vanishing.threshold", van.threshold);
    doc.set("vanishing.checked_nodes", van.checked_nodes);
    for (std::size_t n = 0; n < van.free_boundary_x.size(); ++n) {
        doc.set("free_boundary." + std::to_string(n), van.free_boundary_x[n]);
    }
    doc.set("modulus", mod.modulus);
    doc.set("modulus.unbounded", std::string(mod.unbounded ? "yes" : "no"));
    if (!mod.note.empty()) doc.set("modulus.note", mod.note);
    doc.set("c2_breaks", static_cast<int>(breaks.size()));
    for (std::size_t n = 0; n < breaks.size(); ++n) {
        doc.set("c2_break." + std::to_string(n), io::format_double(breaks[n].x) + " " + io::format_double(breaks[n].jump));
    }
    doc.set("verdict.vanishing", van.passed);
    doc.set("verdict.modulus", !mod.unbounded && mod.modulus <= family.max_hessian() * (1.0 + 1e-9) + 10.0 * c.tol.convex);
    io::write_text(out / "report.txt", doc.to_text());
    log << "envelope: contact " << res.contact.count() << "/" << g.nx() << " modulus=" << mod.modulus
        << " max non-contact mass=" << van.max_noncontact_mass << "\n";
}

void run_bergman(const RunConfig& c, const fs::path& out, std::ostream& log) {
    const SymmetricPotential psi = load_potential(c, c.psi0);
    require_admissible(psi, c.tol, c.psi0);
    const GridSpec& g = psi.grid();
    std::vector<double> excluded;
    for (const C2Break& b : profile_breaks(g.x_axis(), psi.values(), c.jump_threshold)) excluded.push_back(b.x);
    const ConvergenceTable table = convergence_study(psi, c.k, c.probes, excluded);
    io::write_text(out / "convergence.csv", table.to_delimited(','));

    io::KeyValueDoc doc;
    const std::vector<double> xs = g.x_axis().points();
    for (int k : c.k) {
        const BergmanProfile prof = bergman_density(psi, k);
        std::vector<double> scaled(prof.density.size());
        for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = prof.density[i] / k;
        io::write_text(out / ("density_k" + std::to_string(k) + ".dat"), series(xs, scaled));
        doc.set("trace.k" + std::to_string(k), prof.trace);
        doc.set("max_error.k" + std::to_string(k), table.max_error(k));
    }
    doc.set("fitted_order", table.fitted_order);
    doc.set("skipped_probes", static_cast<int>(table.skipped_probes.size()));
    for (std::size_t n = 0; n < table.notes.size(); ++n) doc.set("note." + std::to_string(n), table.notes[n]);
    io::write_text(out / "report.txt", doc.to_text());
    log << "bergman: " << c.k.size() << " tensor powers, fitted order " << table.fitted_order << "\n";
}

void run_bench(const RunConfig& c, const fs::path& out, std::ostream& log) {
    const BenchTable table = bench(c.bench_sizes, c.bench_ops);
    io::write_text(out / "bench.csv", table.to_delimited(','));
    io::KeyValueDoc doc;
    for (const BenchRow& r : table.rows) doc.set(r.op + ".nx" + std::to_string(r.size), r.median_seconds);
    doc.set("legendre.max_ratio_per_doubling", table.legendre_max_ratio);
    doc.set("verdict.legendre_scaling", table.legendre_scaling_ok);
    io::write_text(out / "report.txt", doc.to_text());
    for (const BenchRow& r : table.rows) log << r.op << " nx=" << r.size << " median=" << r.median_seconds << "s\n";
}

} // namespace

int run(const RunConfig& config, std::ostream& log) {
    try {
        const fs::path out(config.out);
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec) throw StructuralError("cannot create output directory '" + config.out + "': " + ec.message());
        io::write_text(out / "config.txt", config.to_text());
        switch (config.kind) {
        case ProblemKind::geodesic: run_geodesic(config, out, log, false); break;
        case ProblemKind::diagnose: run_geodesic(config, out, log, true); break;
        case ProblemKind::envelope: run_envelope(config, out, log); break;
        case ProblemKind::bergman: run_bergman(config, out, log); break;
        case ProblemKind::bench: run_bench(config, out, log); break;
        }
        return exit_ok;
    } catch (const ConvergenceError& e) {
        log << "error: " << e.what() << " (after " << e.iterations() << " sweeps, last update " << e.last_update()
            << ")\n";
        return exit_convergence;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return exit_validation;
    }
}

} // namespace geolab
