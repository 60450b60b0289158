#include "geolab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "geolab/errors.hpp"

namespace geolab::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view text, const std::string& where) {
    std::string s(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw DataError(where + ": cannot parse number '" + s + "'");
    return v;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string_view strip_comment(std::string_view s) {
    const auto c = s.find('#');
    return trim(c == std::string_view::npos ? s : s.substr(0, c));
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        f(line_no, line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
}

struct Samples {
    std::vector<double> x;
    std::vector<double> v;
};

GridSpec grid_from_samples(const Samples& s, int nt, int np, const std::string& source) {
    const int n = static_cast<int>(s.x.size());
    if (n < 3) throw StructuralError(source + ": need at least 3 samples, found " + std::to_string(n));
    const double radius = -s.x.front();
    if (!(radius > 0.0) || std::abs(s.x.back() - radius) > 1e-9 * radius) {
        throw StructuralError(source + ": x range must be symmetric [-R, R]");
    }
    const double h = 2.0 * radius / (n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        const double d = s.x[i + 1] - s.x[i];
        if (!(d > 0.0)) throw StructuralError(source + ": x column must be increasing");
        if (std::abs(d - h) > 1e-9 * h) {
            throw StructuralError(source + ": non-uniform spacing at sample " + std::to_string(i + 1));
        }
    }
    return GridSpec::make(radius, n, nt, np);
}

void parse_sample_line(std::string_view line, int line_no, const std::string& source, Samples& out) {
    const auto cols = split_ws(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (cols.size() != 2) throw StructuralError(where + ": expected two columns 'x value'");
    out.x.push_back(parse_double(cols[0], where));
    out.v.push_back(parse_double(cols[1], where));
    if (!std::isfinite(out.x.back()) || !std::isfinite(out.v.back())) throw DataError(where + ": non-finite sample");
}

} // namespace

std::string potential_to_text(const SymmetricPotential& psi) {
    std::string out;
    out.reserve(static_cast<std::size_t>(psi.size()) * 44);
    for (int i = 0; i < psi.size(); ++i) {
        out += format_double(psi.grid().x(i));
        out += ' ';
        out += format_double(psi[i]);
        out += '\n';
    }
    return out;
}

SymmetricPotential potential_from_text(std::string_view text, int nt, int np, const std::string& source) {
    Samples s;
    for_each_line(text, [&](int line_no, std::string_view raw) {
        const auto line = strip_comment(raw);
        if (!line.empty()) parse_sample_line(line, line_no, source, s);
    });
    const GridSpec grid = grid_from_samples(s, nt, np, source);
    return {grid, std::move(s.v)};
}

void write_potential(const std::filesystem::path& path, const SymmetricPotential& psi) {
    write_text(path, potential_to_text(psi));
}

SymmetricPotential read_potential(const std::filesystem::path& path, int nt, int np) {
    return potential_from_text(read_text(path), nt, np, path.string());
}

std::string slab_to_text(const Matrix& values, const GridSpec& grid) {
    std::string out;
    for (int k = 0; k < values.rows(); ++k) {
        const std::string t = format_double(grid.t(k));
        for (int i = 0; i < values.cols(); ++i) {
            out += t;
            out += ' ';
            out += format_double(grid.x(i));
            out += ' ';
            out += format_double(values(k, i));
            out += '\n';
        }
    }
    return out;
}

Matrix slab_values_from_text(std::string_view text, const GridSpec& grid) {
    Matrix m(grid.nt(), grid.nx());
    std::size_t n = 0;
    for_each_line(text, [&](int line_no, std::string_view raw) {
        const auto line = strip_comment(raw);
        if (line.empty()) return;
        const auto cols = split_ws(line);
        const std::string where = "slab:" + std::to_string(line_no);
        if (cols.size() != 3) throw StructuralError(where + ": expected three columns 't x value'");
        if (n >= m.data().size()) throw StructuralError(where + ": more samples than the grid holds");
        m.data()[n++] = parse_double(cols[2], where);
    });
    if (n != m.data().size()) throw StructuralError("slab: sample count does not match the grid");
    return m;
}

std::string obstacle_family_to_text(const ObstacleFamily& family) {
    std::string out = "members=" + std::to_string(family.members().size()) + "\n";
    const GridSpec& g = family.grid();
    for (const Obstacle& o : family.members()) {
        out += "lip=" + format_double(o.lipschitz) + " hess=" + format_double(o.hessian) + "\n";
        for (int i = 0; i < g.nx(); ++i) out += format_double(g.x(i)) + ' ' + format_double(o.values[i]) + '\n';
    }
    return out;
}

ObstacleFamily obstacle_family_from_text(std::string_view text, int nt, int np, const std::string& source) {
    int declared = -1;
    std::vector<Samples> blocks;
    std::vector<std::pair<double, double>> meta;
    for_each_line(text, [&](int line_no, std::string_view raw) {
        const auto line = strip_comment(raw);
        if (line.empty()) return;
        const std::string where = source + ":" + std::to_string(line_no);
        if (line.starts_with("members=")) {
            if (declared >= 0) throw StructuralError(where + ": duplicate members line");
            const double m = parse_double(line.substr(8), where);
            if (m < 1 || m != std::floor(m)) throw StructuralError(where + ": members must be a positive integer");
            declared = static_cast<int>(m);
            return;
        }
        if (declared < 0) throw StructuralError(where + ": file must start with 'members=<m>'");
        if (line.starts_with("lip=")) {
            const auto cols = split_ws(line);
            if (cols.size() != 2 || !cols[1].starts_with("hess=")) {
                throw StructuralError(where + ": metadata line must read 'lip=<L> hess=<H>'");
            }
            meta.emplace_back(parse_double(cols[0].substr(4), where), parse_double(cols[1].substr(5), where));
            blocks.emplace_back();
            return;
        }
        if (blocks.empty()) throw StructuralError(where + ": samples before the first 'lip=... hess=...' line");
        parse_sample_line(line, line_no, source, blocks.back());
    });
    if (declared < 0) throw StructuralError(source + ": missing 'members=<m>' header");
    if (static_cast<int>(blocks.size()) != declared) {
        throw StructuralError(source + ": header declares " + std::to_string(declared) + " members, found " +
                              std::to_string(blocks.size()));
    }
    const GridSpec grid = grid_from_samples(blocks.front(), nt, np, source);
    std::vector<Obstacle> members;
    for (std::size_t a = 0; a < blocks.size(); ++a) {
        if (blocks[a].x.size() != blocks.front().x.size()) {
            throw StructuralError(source + ": member " + std::to_string(a) + " has a different sample count");
        }
        for (std::size_t i = 0; i < blocks[a].x.size(); ++i) {
            if (std::abs(blocks[a].x[i] - blocks.front().x[i]) > 1e-9 * grid.h()) {
                throw StructuralError(source + ": member " + std::to_string(a) + " uses a different x grid");
            }
        }
        members.push_back({std::move(blocks[a].v), meta[a].first, meta[a].second});
    }
    return {grid, std::move(members)};
}

void KeyValueDoc::set(std::string key, std::string value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

const std::string* KeyValueDoc::find(std::string_view key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return &v;
    }
    return nullptr;
}

std::string KeyValueDoc::to_text() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
    return out;
}

KeyValueDoc KeyValueDoc::from_text(std::string_view text) {
    KeyValueDoc doc;
    for_each_line(text, [&](int line_no, std::string_view raw) {
        const auto line = strip_comment(raw);
        if (line.empty()) return;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw StructuralError("report:" + std::to_string(line_no) + ": expected key=value");
        }
        doc.set(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
    });
    return doc;
}

KeyValueDoc diagnostics_to_doc(const DiagnosticsReport& r, const GeodesicSlab& slab) {
    KeyValueDoc d;
    const GridSpec& g = slab.grid;
    d.set("method", std::string(to_string(slab.method)));
    d.set("grid.radius", g.radius());
    d.set("grid.nx", g.nx());
    d.set("grid.nt", g.nt());
    d.set("grid.np", g.np());
    for (std::size_t k = 0; k < r.hessian_sup.size(); ++k) d.set("hessian_sup.t" + std::to_string(k), r.hessian_sup[k]);
    d.set("endpoint_hessian_bound", r.hessian.endpoint_bound);
    d.set("hessian.slab_max", r.hessian.slab_max);
    d.set("hessian.tolerance", r.hessian.tolerance);
    d.set("hessian.margin", r.hessian.margin);
    d.set("hessian.kink_slices", static_cast<int>(r.kink_slices.size()));
    d.set("lipschitz_t", r.lipschitz_t);
    d.set("c0_gap", r.c0_gap);
    d.set("lipschitz_x", r.lipschitz_x);
    for (std::size_t n = 0; n < r.energy.slices.size(); ++n) {
        d.set("energy.t" + std::to_string(r.energy.slices[n]), r.energy.energy[n]);
    }
    d.set("energy.mean", r.energy.mean);
    d.set("energy.relative_std", r.energy.relative_std);
    d.set("energy.dual", r.dual_energy);
    d.set("residual.sup", r.residual.sup);
    d.set("residual.l1", r.residual.l1);
    d.set("residual.min_eigenvalue", r.residual.min_eigenvalue);
    d.set("c2_breaks", static_cast<int>(r.c2_breaks.size()));
    for (std::size_t n = 0; n < r.c2_breaks.size(); ++n) {
        const C2Break& b = r.c2_breaks[n];
        d.set("c2_break." + std::to_string(n),
              format_double(b.t) + " " + format_double(b.x) + " " + format_double(b.jump));
    }
    d.set("verdict.theorem11", r.verdict_hessian);
    d.set("verdict.lipschitz_t", r.verdict_lipschitz_t);
    d.set("verdict.slope", r.verdict_slope);
    d.set("verdict.energy", r.verdict_energy);
    return d;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw StructuralError("cannot open '" + path.string() + "' for writing");
    os << text;
    if (!os) throw StructuralError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw StructuralError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace geolab::io
