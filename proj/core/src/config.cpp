#include "geolab/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "geolab/errors.hpp"
#include "geolab/io.hpp"

namespace geolab {

std::string_view to_string(ProblemKind k) noexcept {
    switch (k) {
    case ProblemKind::geodesic: return "geodesic";
    case ProblemKind::envelope: return "envelope";
    case ProblemKind::diagnose: return "diagnose";
    case ProblemKind::bergman: return "bergman";
    case ProblemKind::bench: return "bench";
    }
    return "geodesic";
}

ProblemKind parse_kind(std::string_view name) {
    for (ProblemKind k : {ProblemKind::geodesic, ProblemKind::envelope, ProblemKind::diagnose, ProblemKind::bergman,
                          ProblemKind::bench}) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown kind '" + std::string(name) + "' (geodesic|envelope|diagnose|bergman|bench)");
}

std::string_view to_string(SweepUpdate u) noexcept {
    return u == SweepUpdate::pointwise ? "pointwise" : "line_envelope";
}

SweepUpdate parse_sweep_update(std::string_view name) {
    if (name == "pointwise") return SweepUpdate::pointwise;
    if (name == "line_envelope") return SweepUpdate::line_envelope;
    throw ConfigError("unknown sweep update '" + std::string(name) + "' (pointwise|line_envelope)");
}

namespace {

long parse_integer(std::string_view v, const std::string& key) {
    long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError("'" + key + "' expects an integer, got '" + std::string(v) + "'");
    }
    return out;
}

int parse_int(std::string_view v, const std::string& key) {
    const long x = parse_integer(v, key);
    if (x < -2147483647L || x > 2147483647L) throw ConfigError("'" + key + "' is out of range");
    return static_cast<int>(x);
}

double parse_real(std::string_view v, const std::string& key) {
    std::string s(v);
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x)) {
        throw ConfigError("'" + key + "' expects a finite number, got '" + s + "'");
    }
    return x;
}

template <class T, class F>
std::vector<T> parse_list(std::string_view v, F&& item) {
    std::vector<T> out;
    std::size_t pos = 0;
    while (pos <= v.size()) {
        const auto comma = v.find(',', pos);
        const auto piece = v.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (!piece.empty()) out.push_back(item(piece));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& fmt) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += fmt(v[i]);
    }
    return out;
}

using Setter = std::function<void(RunConfig&, std::string_view, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"kind", [](RunConfig& c, std::string_view v, const std::string&) { c.kind = parse_kind(v); }},
        {"radius", [](RunConfig& c, std::string_view v, const std::string& k) { c.radius = parse_real(v, k); }},
        {"nx", [](RunConfig& c, std::string_view v, const std::string& k) { c.nx = parse_int(v, k); }},
        {"nt", [](RunConfig& c, std::string_view v, const std::string& k) { c.nt = parse_int(v, k); }},
        {"np", [](RunConfig& c, std::string_view v, const std::string& k) { c.np = parse_int(v, k); }},
        {"method",
         [](RunConfig& c, std::string_view v, const std::string&) {
             try {
                 c.method = parse_method(v);
             } catch (const Error& e) {
                 throw ConfigError(e.what());
             }
         }},
        {"tol_convex", [](RunConfig& c, std::string_view v, const std::string& k) { c.tol.convex = parse_real(v, k); }},
        {"tol_slope", [](RunConfig& c, std::string_view v, const std::string& k) { c.tol.slope = parse_real(v, k); }},
        {"tol_mass", [](RunConfig& c, std::string_view v, const std::string& k) { c.tol.mass = parse_real(v, k); }},
        {"tol_anchor", [](RunConfig& c, std::string_view v, const std::string& k) { c.tol.anchor = parse_real(v, k); }},
        {"tol_contact", [](RunConfig& c, std::string_view v, const std::string& k) { c.tol_contact = parse_real(v, k); }},
        {"tol_fp", [](RunConfig& c, std::string_view v, const std::string& k) { c.sweep.tol_fp = parse_real(v, k); }},
        {"max_iter", [](RunConfig& c, std::string_view v, const std::string& k) { c.sweep.max_iter = parse_integer(v, k); }},
        {"stencil_width",
         [](RunConfig& c, std::string_view v, const std::string& k) { c.sweep.stencil_width = parse_int(v, k); }},
        {"stencil_aspect", [](RunConfig& c, std::string_view v, const std::string& k) { c.sweep.aspect = parse_int(v, k); }},
        {"sweep_update",
         [](RunConfig& c, std::string_view v, const std::string&) { c.sweep.update = parse_sweep_update(v); }},
        {"hessian_tol_factor",
         [](RunConfig& c, std::string_view v, const std::string& k) { c.hessian_tol_factor = parse_real(v, k); }},
        {"jump_threshold",
         [](RunConfig& c, std::string_view v, const std::string& k) { c.jump_threshold = parse_real(v, k); }},
        {"refinement_levels",
         [](RunConfig& c, std::string_view v, const std::string& k) { c.refinement_levels = parse_int(v, k); }},
        {"psi0", [](RunConfig& c, std::string_view v, const std::string&) { c.psi0 = std::string(v); }},
        {"psi1", [](RunConfig& c, std::string_view v, const std::string&) { c.psi1 = std::string(v); }},
        {"obstacles", [](RunConfig& c, std::string_view v, const std::string&) { c.obstacles = std::string(v); }},
        {"out", [](RunConfig& c, std::string_view v, const std::string&) { c.out = std::string(v); }},
        {"k",
         [](RunConfig& c, std::string_view v, const std::string& k) {
             c.k = parse_list<int>(v, [&](std::string_view s) { return parse_int(s, k); });
         }},
        {"probes",
         [](RunConfig& c, std::string_view v, const std::string& k) {
             c.probes = parse_list<double>(v, [&](std::string_view s) { return parse_real(s, k); });
         }},
        {"seed",
         [](RunConfig& c, std::string_view v, const std::string& k) {
             const long s = parse_integer(v, k);
             if (s < 0) throw ConfigError("'seed' must be non-negative");
             c.seed = static_cast<std::uint64_t>(s);
         }},
        {"bench_sizes",
         [](RunConfig& c, std::string_view v, const std::string& k) {
             c.bench_sizes = parse_list<int>(v, [&](std::string_view s) { return parse_int(s, k); });
         }},
        {"bench_ops",
         [](RunConfig& c, std::string_view v, const std::string&) {
             c.bench_ops = parse_list<std::string>(v, [](std::string_view s) { return std::string(s); });
         }},
    };
    return table;
}

void apply(RunConfig& c, const std::string& key, std::string_view value, int line, const std::string& origin) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(origin + "unknown key '" + key + "'", line);
    try {
        it->second(c, value, key);
    } catch (const ConfigError& e) {
        throw ConfigError(origin + e.what(), line);
    }
    c.explicit_keys.insert(key);
}

void validate(const RunConfig& c, const std::map<std::string, int>& line_of) {
    auto line = [&](const std::string& key) {
        const auto it = line_of.find(key);
        return it == line_of.end() ? 0 : it->second;
    };
    try {
        (void)c.grid();
    } catch (const Error& e) {
        int l = 0;
        for (const char* key : {"nx", "nt", "np", "radius"}) l = std::max(l, line(key));
        throw ConfigError(e.what(), l);
    }
    if (c.sweep.tol_fp <= 0.0) throw ConfigError("tol_fp must be positive", line("tol_fp"));
    if (c.sweep.max_iter < 1) throw ConfigError("max_iter must be at least 1", line("max_iter"));
    if (c.sweep.stencil_width < 1) throw ConfigError("stencil_width must be at least 1", line("stencil_width"));
    if (c.sweep.aspect < 1) throw ConfigError("stencil_aspect must be at least 1", line("stencil_aspect"));
    if (c.refinement_levels < 0) throw ConfigError("refinement_levels must be non-negative", line("refinement_levels"));
    for (int k : c.k) {
        if (k < 1) throw ConfigError("k values must be positive", line("k"));
    }
    for (std::size_t i = 1; i < c.bench_sizes.size(); ++i) {
        if (c.bench_sizes[i] <= c.bench_sizes[i - 1]) throw ConfigError("bench_sizes must be ascending", line("bench_sizes"));
    }
    for (int s : c.bench_sizes) {
        if (s < 3) throw ConfigError("bench sizes must be at least 3", line("bench_sizes"));
    }
    for (const std::string& op : c.bench_ops) {
        if (op != "legendre" && op != "hull" && op != "sweep") {
            throw ConfigError("unknown bench op '" + op + "' (legendre|hull|sweep)", line("bench_ops"));
        }
    }
    auto require = [&](const std::string& value, const char* key) {
        if (value.empty()) {
            throw ConfigError("kind=" + std::string(to_string(c.kind)) + " requires '" + key + "'", line("kind"));
        }
    };
    switch (c.kind) {
    case ProblemKind::geodesic:
    case ProblemKind::diagnose:
        require(c.psi0, "psi0");
        require(c.psi1, "psi1");
        break;
    case ProblemKind::envelope: require(c.obstacles, "obstacles"); break;
    case ProblemKind::bergman: require(c.psi0, "psi0"); break;
    case ProblemKind::bench: break;
    }
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& [k, _] : setters()) out.push_back(k);
        return out;
    }();
    return keys;
}

std::string RunConfig::to_text() const {
    using io::format_double;
    std::string s;
    auto put = [&](const char* key, const std::string& value) { s += std::string(key) + "=" + value + "\n"; };
    put("kind", std::string(to_string(kind)));
    put("radius", format_double(radius));
    put("nx", std::to_string(nx));
    put("nt", std::to_string(nt));
    put("np", std::to_string(np));
    put("method", std::string(to_string(method)));
    put("tol_convex", format_double(tol.convex));
    put("tol_slope", format_double(tol.slope));
    put("tol_mass", format_double(tol.mass));
    put("tol_anchor", format_double(tol.anchor));
    put("tol_contact", format_double(tol_contact));
    put("tol_fp", format_double(sweep.tol_fp));
    put("max_iter", std::to_string(sweep.max_iter));
    put("stencil_width", std::to_string(sweep.stencil_width));
    put("stencil_aspect", std::to_string(sweep.aspect));
    put("sweep_update", std::string(to_string(sweep.update)));
    put("hessian_tol_factor", format_double(hessian_tol_factor));
    put("jump_threshold", format_double(jump_threshold));
    put("refinement_levels", std::to_string(refinement_levels));
    if (!psi0.empty()) put("psi0", psi0);
    if (!psi1.empty()) put("psi1", psi1);
    if (!obstacles.empty()) put("obstacles", obstacles);
    put("out", out);
    put("k", join(k, [](int v) { return std::to_string(v); }));
    put("probes", join(probes, [](double v) { return format_double(v); }));
    put("seed", std::to_string(seed));
    if (!bench_sizes.empty()) put("bench_sizes", join(bench_sizes, [](int v) { return std::to_string(v); }));
    if (!bench_ops.empty()) put("bench_ops", join(bench_ops, [](const std::string& v) { return v; }));
    return s;
}

bool same_settings(const RunConfig& a, const RunConfig& b) { return a.to_text() == b.to_text(); }

RunConfig parse_config(std::string_view text, const std::vector<std::pair<std::string, std::string>>& overrides) {
    RunConfig c;
    std::map<std::string, int> line_of;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) {
                const std::string_view token = line.substr(i, j - i);
                const auto eq = token.find('=');
                if (eq == std::string_view::npos || eq == 0) {
                    throw ConfigError("expected key=value, got '" + std::string(token) + "'", line_no);
                }
                const std::string key(token.substr(0, eq));
                apply(c, key, token.substr(eq + 1), line_no, "");
                line_of[key] = line_no;
            }
            i = j;
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    for (const auto& [key, value] : overrides) {
        apply(c, key, value, 0, "flag --" + key + ": ");
        line_of.erase(key);
    }
    validate(c, line_of);
    return c;
}

} // namespace geolab
