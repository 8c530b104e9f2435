#include "cli.hpp"

#include "spun/angles.hpp"
#include "spun/equations.hpp"
#include "spun/error.hpp"
#include "spun/probe.hpp"
#include "spun/surfaces.hpp"
#include "spun/tri.hpp"
#include "spun/tropical.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace spun::cli {

using json = nlohmann::json;

namespace {

const char* const kPrevarietyNote =
    "This is the tropical pre-variety: the intersection of the spherical duals of the parameter and "
    "gluing polynomials. The logarithmic limit set of the deformation variety is contained in it and "
    "may be strictly smaller.";

// ---------------------------------------------------------------------------
// Output helpers

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += parts[i];
    }
    return s;
}

template <class T>
std::vector<std::string> strings(const std::vector<T>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) {
        if constexpr (std::is_arithmetic_v<T>)
            out.push_back(std::to_string(x));
        else
            out.push_back(to_string(x));
    }
    return out;
}

// Right-aligned columns separated by two spaces.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], r[i].size());
        }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) line += "  ";
            line += std::string(width[i] - r[i].size(), ' ') + r[i];
        }
        out << line << "\n";
    }
}

void print_csv(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    for (const auto& r : rows) out << join(r, ",") << "\n";
}

void print_rows(std::ostream& out, Format f, const std::vector<std::vector<std::string>>& rows) {
    if (f == Format::Csv)
        print_csv(out, rows);
    else
        print_table(out, rows);
}

std::string fixed12(double x) {
    if (x == 0) x = 0;  // no "-0"
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

json long_array(const IntRow& v) { return json(v); }

std::string sign_string(const ExponentVector& r) { return r.sign_exp ? "-1" : "1"; }

std::vector<std::string> quad_headers(int n) {
    std::vector<std::string> h;
    for (int t = 0; t < n; ++t)
        for (const char* s : {"q_", "q'_", "q''_"}) h.push_back(s + std::to_string(t));
    return h;
}

// ---------------------------------------------------------------------------
// Shared pipeline state

struct Context {
    Triangulation tri;
    GluingSystem gluing;
    bool has_peripherals = false;
};

std::filesystem::path sibling_nz(const std::filesystem::path& input) {
    auto p = input;
    p.replace_filename(input.stem().string() + "_nz.json");
    return p;
}

Context load_context(const RunConfig& c) {
    Context ctx;
    ctx.tri = load_triangulation(c.input);
    ctx.gluing = edge_rows(ctx.tri);
    std::optional<std::filesystem::path> nz = c.nz;
    if (!nz) {
        const auto s = sibling_nz(c.input);
        if (std::filesystem::exists(s)) nz = s;
    }
    if (nz) {
        const auto doc = load_nz_document(*nz);
        if (doc.n != ctx.tri.size())
            throw Error(ErrorKind::DimensionMismatch, "NZ document describes " + std::to_string(doc.n) +
                                                          " tetrahedra, triangulation has " +
                                                          std::to_string(ctx.tri.size()));
        attach_peripherals(ctx.gluing, doc);
        ctx.has_peripherals = !ctx.gluing.peripheral_rows.empty();
    }
    return ctx;
}

// Vertex solutions with display ids.  A reference numbering carried by the
// triangulation fixes ids 1..k; other vertices follow in lexicographic order.
struct NumberedVertices {
    PFComplex pf;
    std::vector<int> id_of;           // per pf vertex
    std::vector<std::size_t> by_id;   // pf vertex indices sorted by id
};

NumberedVertices numbered_vertices(const Context& ctx, unsigned threads) {
    NumberedVertices nv;
    nv.pf = enumerate_pf(qmatching_direct(ctx.tri), ctx.tri.size(), threads);
    const auto& ref = ctx.tri.vertex_numbering;
    nv.id_of.assign(nv.pf.vertices.size(), 0);
    int next = static_cast<int>(ref.size()) + 1;
    for (std::size_t v = 0; v < nv.pf.vertices.size(); ++v) {
        const auto prim = primitive(nv.pf.vertices[v]);
        for (std::size_t r = 0; r < ref.size(); ++r) {
            if (primitive(to_integer(ref[r])) == prim) {
                nv.id_of[v] = static_cast<int>(r) + 1;
                break;
            }
        }
        if (nv.id_of[v] == 0) nv.id_of[v] = next++;
    }
    nv.by_id.resize(nv.pf.vertices.size());
    std::iota(nv.by_id.begin(), nv.by_id.end(), std::size_t{0});
    std::sort(nv.by_id.begin(), nv.by_id.end(),
              [&](std::size_t a, std::size_t b) { return nv.id_of[a] < nv.id_of[b]; });
    return nv;
}

std::optional<CuspFunctionals> functionals(const Context& ctx) {
    if (!ctx.has_peripherals) return std::nullopt;
    return cusp_functionals(ctx.gluing.peripheral_rows);
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_validate(const RunConfig& c, std::ostream& out) {
    const auto t = load_triangulation(c.input);
    const auto edges = trace_edge_classes(t);
    const auto cusps = trace_cusp_classes(t);
    require_torus_cusps(t);
    const auto syms = symmetries(t);

    std::vector<int> degrees, euler;
    for (const auto& e : edges) degrees.push_back(e.degree());
    for (const auto& k : cusps) euler.push_back(k.link_euler);

    if (c.format == Format::Json) {
        json j;
        j["name"] = t.name;
        j["tetrahedra"] = t.size();
        j["edges"] = edges.size();
        j["edge_degrees"] = degrees;
        j["cusps"] = cusps.size();
        j["cusp_euler_characteristics"] = euler;
        j["symmetries"] = syms.size();
        j["cusp_stabilizer"] = cusp_stabilizer(t, syms).size();
        j["status"] = "valid";
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    std::vector<std::vector<std::string>> rows = {
        {"name", t.name.empty() ? "-" : t.name},
        {"tetrahedra", std::to_string(t.size())},
        {"edges", std::to_string(edges.size())},
        {"edge_degrees", join(strings(degrees), " ")},
        {"cusps", std::to_string(cusps.size())},
        {"cusp_euler_characteristics", join(strings(euler), " ")},
        {"symmetries", std::to_string(syms.size())},
        {"cusp_stabilizer", std::to_string(cusp_stabilizer(t, syms).size())},
        {"status", "valid"},
    };
    if (c.format == Format::Csv) {
        out << "field,value\n";
        print_csv(out, rows);
    } else {
        for (auto& r : rows) r[0] += ":";
        for (const auto& r : rows) out << std::left << std::setw(28) << r[0] << r[1] << "\n";
    }
    return kExitOk;
}

std::string compare_rows(const IntRow& a, const IntRow& b) {
    if (a == b) return "equal";
    IntRow neg(b.size());
    std::transform(b.begin(), b.end(), neg.begin(), [](long x) { return -x; });
    return a == neg ? "negated" : "different";
}

int cmd_equations(const RunConfig& c, std::ostream& out) {
    const auto ctx = load_context(c);
    const auto from_a = qmatching_from_A(ctx.gluing);
    const auto direct = qmatching_direct(ctx.tri);
    std::vector<std::string> cmp;
    bool consistent = from_a.size() == direct.size();
    for (std::size_t i = 0; i < std::min(from_a.size(), direct.size()); ++i) {
        cmp.push_back(compare_rows(from_a[i], direct[i]));
        if (cmp.back() == "different") consistent = false;
    }
    const int n = ctx.tri.size();

    if (c.format == Format::Json) {
        json j;
        json edges = json::array();
        for (std::size_t i = 0; i < ctx.gluing.edge_rows.size(); ++i) {
            const auto& r = ctx.gluing.edge_rows[i];
            edges.push_back({{"edge", i}, {"exponents", long_array(r.entries)}, {"sign", r.sign_exp ? -1 : 1}});
        }
        j["edge_rows"] = edges;
        json per = json::array();
        for (const auto& p : ctx.gluing.peripheral_rows)
            per.push_back({{"name", p.name}, {"cusp", p.cusp}, {"exponents", long_array(p.row.entries)},
                           {"sign", p.row.sign_exp ? -1 : 1}});
        j["peripheral_rows"] = per;
        j["qmatching_from_gluing"] = from_a;
        j["qmatching_direct"] = direct;
        j["row_comparison"] = cmp;
        j["consistent"] = consistent;
        out << j.dump(2) << "\n";
        return consistent ? kExitOk : kExitComputation;
    }

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head = {"source", "row"};
    for (int t = 0; t < n; ++t)
        for (const char* s : {"z_", "z'_", "z''_"}) head.push_back(s + std::to_string(t));
    head.push_back("sign");
    rows.push_back(head);
    for (std::size_t i = 0; i < ctx.gluing.edge_rows.size(); ++i) {
        const auto& r = ctx.gluing.edge_rows[i];
        std::vector<std::string> row = {"gluing", "e" + std::to_string(i)};
        for (long x : r.entries) row.push_back(std::to_string(x));
        row.push_back(sign_string(r));
        rows.push_back(row);
    }
    for (const auto& p : ctx.gluing.peripheral_rows) {
        std::vector<std::string> row = {"peripheral", p.name};
        for (long x : p.row.entries) row.push_back(std::to_string(x));
        row.push_back(sign_string(p.row));
        rows.push_back(row);
    }
    auto matrix_rows = [&](const char* name, const IntMatrix& m) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::vector<std::string> row = {name, "e" + std::to_string(i)};
            for (long x : m[i]) row.push_back(std::to_string(x));
            row.push_back(i < cmp.size() ? cmp[i] : "-");
            rows.push_back(row);
        }
    };
    matrix_rows("qmatch_from_gluing", from_a);
    matrix_rows("qmatch_direct", direct);
    print_rows(out, c.format, rows);
    if (c.format == Format::Table) out << "consistent: " << (consistent ? "yes" : "no") << "\n";
    return consistent ? kExitOk : kExitComputation;
}

int cmd_vertices(const RunConfig& c, std::ostream& out) {
    const auto ctx = load_context(c);
    const auto nv = numbered_vertices(ctx, c.threads);
    const auto fns = functionals(ctx);
    std::vector<NormalQCoordinate> rows;
    std::vector<int> ids;
    for (auto v : nv.by_id) {
        rows.push_back(to_rational(nv.pf.vertices[v]));
        ids.push_back(nv.id_of[v]);
    }
    const CuspFunctionals* f = fns ? &*fns : nullptr;
    if (c.format == Format::Csv) {
        out << vertex_table_csv(rows, ids, f);
        return kExitOk;
    }
    if (c.format == Format::Json) {
        out << vertex_table_json(rows, ids, f);
        return kExitOk;
    }
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> head = {"id"};
    for (const auto& h : quad_headers(ctx.tri.size())) head.push_back(h);
    if (f)
        for (std::size_t k = 0; k < f->meridians.size(); ++k) {
            head.push_back("nu(L_" + std::to_string(k) + ")");
            head.push_back("-nu(M_" + std::to_string(k) + ")");
        }
    table.push_back(head);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<std::string> line = {std::to_string(ids[r])};
        for (const auto& x : rows[r]) line.push_back(to_string(x));
        if (f)
            for (const auto& x : boundary_coordinate(rows[r], *f).flat()) line.push_back(to_string(x));
        table.push_back(line);
    }
    print_table(out, table);
    return kExitOk;
}

// a [M] + b [L] as the slope a/b, sign fixed so that b > 0 (or a > 0 when b = 0).
std::string slope_string(Rational a, Rational b) {
    if (a == 0 && b == 0) return "-";
    if (b < 0 || (b == 0 && a < 0)) {
        a = -a;
        b = -b;
    }
    if (b == 0) return "1/0";
    return to_string(Rational(a / b));
}

int cmd_slopes(const RunConfig& c, std::ostream& out) {
    const auto ctx = load_context(c);
    const auto fns = functionals(ctx);
    if (!fns) throw Error(ErrorKind::MalformedDocument, "slopes need peripheral curves; pass --nz");
    const auto nv = numbered_vertices(ctx, c.threads);
    const std::size_t cusps = fns->meridians.size();

    if (c.format == Format::Json) {
        json j;
        json fj = json::array();
        for (std::size_t k = 0; k < cusps; ++k) {
            fj.push_back({{"cusp", k},
                          {"meridian", {{"name", fns->meridians[k].name}, {"coefficients", fns->meridians[k].coeffs}}},
                          {"longitude", {{"name", fns->longitudes[k].name}, {"coefficients", fns->longitudes[k].coeffs}}}});
        }
        j["functionals"] = fj;
        json vs = json::array();
        for (auto v : nv.by_id) {
            const auto b = boundary_coordinate(to_rational(nv.pf.vertices[v]), *fns);
            json per = json::array();
            for (std::size_t k = 0; k < cusps; ++k)
                per.push_back({{"cusp", k},
                               {"boundary", {to_string(b.per_cusp[k].first), to_string(b.per_cusp[k].second)}},
                               {"slope", slope_string(b.per_cusp[k].first, b.per_cusp[k].second)}});
            vs.push_back({{"id", nv.id_of[v]}, {"cusps", per}});
        }
        j["vertices"] = vs;
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head = {"id"};
    for (std::size_t k = 0; k < cusps; ++k) {
        head.push_back("nu(L_" + std::to_string(k) + ")");
        head.push_back("-nu(M_" + std::to_string(k) + ")");
        head.push_back("slope_" + std::to_string(k));
    }
    rows.push_back(head);
    for (auto v : nv.by_id) {
        const auto b = boundary_coordinate(to_rational(nv.pf.vertices[v]), *fns);
        std::vector<std::string> line = {std::to_string(nv.id_of[v])};
        for (std::size_t k = 0; k < cusps; ++k) {
            line.push_back(to_string(b.per_cusp[k].first));
            line.push_back(to_string(b.per_cusp[k].second));
            line.push_back(slope_string(b.per_cusp[k].first, b.per_cusp[k].second));
        }
        rows.push_back(line);
    }
    print_rows(out, c.format, rows);
    return kExitOk;
}

int cmd_orbits(const RunConfig& c, std::ostream& out) {
    const auto ctx = load_context(c);
    const auto nv = numbered_vertices(ctx, c.threads);
    std::vector<Symmetry> group;
    if (c.group == "trivial")
        group = {identity_symmetry(ctx.tri.size())};
    else if (c.group == "full")
        group = symmetries(ctx.tri);
    else if (c.group == "kf")
        group = cusp_stabilizer(ctx.tri, symmetries(ctx.tri));
    else
        throw Error(ErrorKind::MalformedDocument, "unknown group '" + c.group + "' (expected kf, full or trivial)");
    std::vector<std::vector<int>> perms;
    for (const auto& s : group) perms.push_back(induced_quad_permutation(s));

    std::vector<std::vector<int>> result;
    for (const auto& orbit : orbits(nv.pf, perms)) {
        std::vector<int> ids;
        for (auto v : orbit) ids.push_back(nv.id_of[v]);
        std::sort(ids.begin(), ids.end());
        result.push_back(ids);
    }
    std::sort(result.begin(), result.end());

    if (c.format == Format::Json) {
        json j;
        j["group"] = c.group;
        j["group_order"] = group.size();
        j["orbits"] = result;
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    if (c.format == Format::Csv) {
        out << "orbit,vertex_ids\n";
        for (std::size_t i = 0; i < result.size(); ++i) out << i << "," << join(strings(result[i]), " ") << "\n";
        return kExitOk;
    }
    out << "group " << c.group << " of order " << group.size() << ", " << result.size() << " orbits\n";
    for (std::size_t i = 0; i < result.size(); ++i) out << "orbit " << i << ": " << join(strings(result[i]), " ") << "\n";
    return kExitOk;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
    if (c.surfaces.empty()) throw Error(ErrorKind::MalformedDocument, "certify needs --surfaces");
    const auto ctx = load_context(c);
    const auto nv = numbered_vertices(ctx, c.threads);
    std::map<int, std::size_t> index;
    for (std::size_t v = 0; v < nv.id_of.size(); ++v) index[nv.id_of[v]] = v;
    std::vector<NormalQCoordinate> surfaces;
    for (int id : c.surfaces) {
        auto it = index.find(id);
        if (it == index.end()) throw Error(ErrorKind::MalformedDocument, "no vertex surface with id " + std::to_string(id));
        surfaces.push_back(to_rational(nv.pf.vertices[it->second]));
    }
    const auto polytope = angle_polytope(ctx.tri, ctx.gluing.edge_rows);
    const auto report = certify_essential(surfaces, c.surfaces, polytope, c.strict);

    std::vector<int> dual;
    if (report.feasible) {
        for (auto v : nv.by_id)
            if (dot(report.alpha.angles, to_rational(nv.pf.vertices[v])) == 0) dual.push_back(nv.id_of[v]);
    }
    const int status = report.feasible ? kExitOk : kExitComputation;

    if (c.format == Format::Json) {
        json j = json::parse(to_json(report));
        if (report.feasible) j["dual_vertices"] = dual;
        out << j.dump(2) << "\n";
        return status;
    }
    std::vector<std::vector<std::string>> rows = {
        {"surfaces", join(strings(c.surfaces), " ")},
        {"feasible", report.feasible ? "yes" : "no"},
    };
    if (report.feasible) {
        std::vector<std::string> blocks;
        const auto& a = report.alpha.angles;
        for (std::size_t t = 0; t < a.size(); t += 3)
            blocks.push_back(to_string(a[t]) + " " + to_string(a[t + 1]) + " " + to_string(a[t + 2]));
        rows.push_back({"alpha", join(blocks, " | ")});
        rows.push_back({"dual_vertices", join(strings(dual), " ")});
    } else {
        rows.push_back({"farkas_equalities", join(strings(report.certificate.equality_multipliers), " ")});
        rows.push_back({"farkas_inequalities", join(strings(report.certificate.inequality_multipliers), " ")});
    }
    rows.push_back({"pairwise_compatible", report.pairwise_compatible ? "yes" : "no"});
    rows.push_back({"two_sidedness", "unchecked"});
    if (c.format == Format::Csv) {
        out << "field,value\n";
        print_csv(out, rows);
    } else {
        for (const auto& r : rows) out << std::left << std::setw(22) << (r[0] + ":") << r[1] << "\n";
    }
    return status;
}

int cmd_prevariety(const RunConfig& c, std::ostream& out) {
    const auto ctx = load_context(c);
    const auto pv = prevariety(ctx.tri);
    if (c.format == Format::Json) {
        json j = json::parse(fan_json(pv));
        j["note"] = kPrevarietyNote;
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    if (c.format == Format::Csv) {
        out << ray_csv(pv);
        return kExitOk;
    }
    std::map<int, int> by_dim;
    for (const auto& cone : pv.cones) ++by_dim[cone.dimension];
    out << "maximal cones: " << pv.cones.size();
    for (const auto& [d, k] : by_dim) out << ", " << k << " of projective dimension " << d;
    out << "\nrays: " << pv.rays.size() << "\n";
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < pv.rays.size(); ++i) {
        std::vector<std::string> line = {"ray " + std::to_string(i)};
        for (const auto& x : pv.rays[i]) line.push_back(to_string(x));
        rows.push_back(line);
    }
    print_table(out, rows);
    std::map<IntegerVector, std::size_t, decltype(&lex_less)> idx(&lex_less);
    for (std::size_t i = 0; i < pv.rays.size(); ++i) idx[pv.rays[i]] = i;
    for (std::size_t k = 0; k < pv.cones.size(); ++k) {
        std::vector<std::string> ids;
        for (const auto& r : pv.cones[k].rays.rays) ids.push_back(std::to_string(idx.at(r)));
        out << "cone " << k << " (dimension " << pv.cones[k].dimension << "): rays " << join(ids, " ") << "\n";
    }
    out << "note: " << kPrevarietyNote << "\n";
    return kExitOk;
}

int cmd_correspond(const RunConfig& c, std::ostream& out) {
    const auto ctx = load_context(c);
    const auto nv = numbered_vertices(ctx, c.threads);
    const auto pv = prevariety(ctx.tri);
    const auto rep = correspond(pv, nv.pf);
    const auto maximal = nv.pf.maximal_cells();
    const bool ok = rep.bijective && rep.cells_match;

    auto vertex_id = [&](std::size_t v) { return v < nv.id_of.size() ? nv.id_of[v] : -1; };
    auto cell_ids = [&](std::size_t m) {
        std::vector<int> ids;
        if (m < maximal.size())
            for (auto v : maximal[m]->vertices) ids.push_back(nv.id_of[v]);
        std::sort(ids.begin(), ids.end());
        return ids;
    };

    if (c.format == Format::Json) {
        json j;
        j["bijective"] = rep.bijective;
        j["cells_match"] = rep.cells_match;
        json rays = json::array();
        for (std::size_t i = 0; i < pv.rays.size(); ++i) {
            json xi = json::array();
            for (const auto& x : pv.rays[i]) xi.push_back(to_string(x));
            rays.push_back({{"ray", i}, {"xi", xi}, {"vertex_id", vertex_id(rep.ray_to_vertex[i])}});
        }
        j["rays"] = rays;
        json cones = json::array();
        for (std::size_t k = 0; k < pv.cones.size(); ++k)
            cones.push_back({{"cone", k}, {"dimension", pv.cones[k].dimension}, {"cell_vertex_ids", cell_ids(rep.cone_to_cell[k])}});
        j["cones"] = cones;
        j["problems"] = rep.problems;
        out << j.dump(2) << "\n";
        return ok ? kExitOk : kExitComputation;
    }
    std::vector<std::vector<std::string>> rows = {{"ray", "vertex_id", "xi"}};
    for (std::size_t i = 0; i < pv.rays.size(); ++i)
        rows.push_back({std::to_string(i), std::to_string(vertex_id(rep.ray_to_vertex[i])), join(strings(pv.rays[i]), " ")});
    print_rows(out, c.format, rows);
    if (c.format == Format::Table) {
        out << "cones matched to maximal cells:\n";
        for (std::size_t k = 0; k < pv.cones.size(); ++k)
            out << "cone " << k << " (dimension " << pv.cones[k].dimension << ") -> vertices "
                << join(strings(cell_ids(rep.cone_to_cell[k])), " ") << "\n";
        out << "bijective: " << (rep.bijective ? "yes" : "no") << "\n";
        out << "cells_match: " << (rep.cells_match ? "yes" : "no") << "\n";
        for (const auto& p : rep.problems) out << "problem: " << p << "\n";
    }
    return ok ? kExitOk : kExitComputation;
}

int cmd_probe(const RunConfig& c, std::ostream& out) {
    if (c.path.empty()) throw Error(ErrorKind::MalformedDocument, "probe needs --path");
    const auto& path = find_path(c.path);
    if (!c.input.empty()) {
        const auto t = load_triangulation(c.input);
        if (t.size() != path.n)
            throw Error(ErrorKind::DimensionMismatch, "path " + path.name + " is for " + std::to_string(path.n) +
                                                          " tetrahedra");
    }
    const auto r = log_limit_probe(path, c.samples);
    std::vector<std::string> est, dir;
    for (double x : r.estimate) est.push_back(fixed12(x));
    for (double x : r.direction) dir.push_back(fixed12(x));

    if (c.format == Format::Json) {
        // Built by hand so the 12-digit strings print as numbers.
        out << "{\n"
            << "  \"path\": \"" << path.name << "\",\n"
            << "  \"description\": \"" << path.description << "\",\n"
            << "  \"samples\": " << r.samples << ",\n"
            << "  \"last_parameter_log2\": " << fixed12(r.last_parameter_log2) << ",\n"
            << "  \"divergent\": " << (r.divergent ? "true" : "false") << ",\n"
            << "  \"successive_angle\": " << fixed12(r.successive_angle) << ",\n"
            << "  \"estimate\": [" << join(est, ", ") << "],\n"
            << "  \"direction\": [" << join(dir, ", ") << "]\n"
            << "}\n";
        return kExitOk;
    }
    std::vector<std::vector<std::string>> rows = {
        {"path", path.name},
        {"description", path.description},
        {"samples", std::to_string(r.samples)},
        {"last_parameter_log2", fixed12(r.last_parameter_log2)},
        {"divergent", r.divergent ? "yes" : "no"},
        {"successive_angle", fixed12(r.successive_angle)},
        {"estimate", join(est, " ")},
        {"direction", join(dir, " ")},
    };
    if (c.format == Format::Csv) {
        out << "field,value\n";
        print_csv(out, rows);
    } else {
        for (const auto& r2 : rows) out << std::left << std::setw(22) << (r2[0] + ":") << r2[1] << "\n";
    }
    return kExitOk;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    if (c.vertices.empty()) throw Error(ErrorKind::MalformedDocument, "verify needs --vertices");
    const auto t = load_triangulation(c.input);
    const auto b = qmatching_direct(t);
    const auto records = parse_vertex_table_json(read_file(c.vertices));
    bool all = true;
    std::vector<std::vector<std::string>> rows = {{"id", "admissible", "matching", "status"}};
    json jr = json::array();
    for (const auto& r : records) {
        if (r.coordinates.size() != static_cast<std::size_t>(3 * t.size()))
            throw Error(ErrorKind::DimensionMismatch, "vertex " + std::to_string(r.id) + " has the wrong length");
        const bool adm = is_admissible(r.coordinates) && !is_zero(r.coordinates);
        const bool mat = satisfies_matching(b, r.coordinates);
        all = all && adm && mat;
        rows.push_back({std::to_string(r.id), adm ? "yes" : "no", mat ? "yes" : "no", adm && mat ? "ok" : "FAIL"});
        jr.push_back({{"id", r.id}, {"admissible", adm}, {"matching", mat}});
    }
    if (c.format == Format::Json) {
        out << json{{"records", jr}, {"all_valid", all}}.dump(2) << "\n";
    } else {
        print_rows(out, c.format, rows);
        if (c.format == Format::Table) out << "all_valid: " << (all ? "yes" : "no") << "\n";
    }
    return all ? kExitOk : kExitComputation;
}

int exit_code(ErrorKind k) {
    switch (classify(k)) {
    case ErrorClass::Validation: return kExitValidation;
    case ErrorClass::Io: return kExitIo;
    case ErrorClass::Computation: return kExitComputation;
    }
    return kExitComputation;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"validate", "equations", "vertices",   "slopes",    "orbits", "certify",
                                               "prevariety", "correspond", "probe", "verify"};
    return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.command != "probe" && c.input.empty())
            throw Error(ErrorKind::MalformedDocument, c.command + " needs an input triangulation");
        if (c.command == "validate") return cmd_validate(c, out);
        if (c.command == "equations") return cmd_equations(c, out);
        if (c.command == "vertices") return cmd_vertices(c, out);
        if (c.command == "slopes") return cmd_slopes(c, out);
        if (c.command == "orbits") return cmd_orbits(c, out);
        if (c.command == "certify") return cmd_certify(c, out);
        if (c.command == "prevariety") return cmd_prevariety(c, out);
        if (c.command == "correspond") return cmd_correspond(c, out);
        if (c.command == "probe") return cmd_probe(c, out);
        if (c.command == "verify") return cmd_verify(c, out);
        throw Error(ErrorKind::MalformedDocument, "unknown command '" + c.command + "'");
    } catch (const Error& e) {
        report_error(err, to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        report_error(err, "Internal", e.what());
        return kExitComputation;
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"spun: spun-normal surfaces, angle structures and tropical pre-varieties of ideal triangulations"};
    RunConfig c;
    std::string format = "table";
    std::string surfaces;
    std::string input, nz, vertices;

    app.add_option("command", c.command, "Subcommand")->required()->check(CLI::IsMember(commands()));
    app.add_option("input", input, "Triangulation JSON document");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--nz", nz, "Gluing/peripheral rows (default: <input stem>_nz.json if present)");
    app.add_option("--group", c.group, "orbits: kf (cusp stabiliser), full or trivial");
    app.add_option("--surfaces", surfaces, "certify: comma separated vertex ids");
    app.add_flag("--strict", c.strict, "certify: reject pairwise incompatible surfaces");
    app.add_option("--path", c.path, "probe: whl-1, whl-2, whl-3, whl-3-minus, whl-4 or complete");
    app.add_option("--samples", c.samples, "probe: schedule length")->check(CLI::Range(4, 100000));
    app.add_option("--vertices", vertices, "verify: vertex table produced by `vertices --format json`");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        report_error(err, "Usage", e.what());
        return kExitValidation;
    }

    c.input = input;
    if (!nz.empty()) c.nz = nz;
    c.vertices = vertices;
    c.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Table;
    if (!surfaces.empty()) {
        std::stringstream ss(surfaces);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                c.surfaces.push_back(std::stoi(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                report_error(err, "Usage", "bad surface id '" + item + "'");
                return kExitValidation;
            }
        }
    }
    if (const char* env = std::getenv("SPUN_THREADS")) {
        try {
            c.threads = static_cast<unsigned>(std::max(1L, std::stol(env)));
        } catch (const std::exception&) {
            c.threads = 1;
        }
    }
    return run(c, out, err);
}

}  // namespace spun::cli
