#include "spun/surfaces.hpp"

#include "spun/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace spun {

using json = nlohmann::json;

std::vector<const PFCell*> PFComplex::maximal_cells() const {
    std::vector<const PFCell*> out;
    for (const auto& c : cells)
        if (c.maximal) out.push_back(&c);
    return out;
}

Cone PFComplex::cell_cone(const PFCell& c) const {
    const auto d = static_cast<std::size_t>(3 * n);
    Cone cone;
    cone.dim = d;
    for (const auto& row : matching) cone.equalities.push_back(to_rational(row));
    for (std::size_t t = 0; t < static_cast<std::size_t>(n); ++t) {
        for (int k = 0; k < 3; ++k) {
            RationalVector e(d, 0);
            e[3 * t + static_cast<std::size_t>(k)] = 1;
            if (c.pattern[t] == k)
                cone.inequalities.push_back(std::move(e));
            else
                cone.equalities.push_back(std::move(e));
        }
    }
    std::vector<IntegerVector> rays;
    for (auto v : c.vertices) rays.push_back(vertices[v]);
    cone.rays = std::move(rays);
    return cone;
}

RationalVector BoundaryCoordinate::flat() const {
    RationalVector out;
    for (const auto& [l, m] : per_cusp) {
        out.push_back(l);
        out.push_back(m);
    }
    return out;
}

CuspFunctionals cusp_functionals(const std::vector<PeripheralCurve>& curves) {
    int cusps = 0;
    for (const auto& c : curves) cusps = std::max(cusps, c.cusp + 1);
    CuspFunctionals out;
    out.meridians.resize(static_cast<std::size_t>(cusps));
    out.longitudes.resize(static_cast<std::size_t>(cusps));
    std::vector<int> have_m(static_cast<std::size_t>(cusps), 0), have_l(static_cast<std::size_t>(cusps), 0);
    for (const auto& c : curves) {
        const auto i = static_cast<std::size_t>(c.cusp);
        if (c.kind == CurveKind::Meridian) {
            out.meridians[i] = slope_functional(c);
            ++have_m[i];
        } else if (c.kind == CurveKind::Longitude) {
            out.longitudes[i] = slope_functional(c);
            ++have_l[i];
        }
    }
    for (std::size_t i = 0; i < have_m.size(); ++i) {
        if (have_m[i] != 1 || have_l[i] != 1)
            throw Error(ErrorKind::MalformedDocument,
                        "cusp " + std::to_string(i) + " needs exactly one meridian and one longitude");
    }
    return out;
}

bool is_admissible(const NormalQCoordinate& x) {
    if (x.size() % 3 != 0) return false;
    for (std::size_t t = 0; t < x.size(); t += 3) {
        int nz = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            if (x[t + k] < 0) return false;
            if (x[t + k] != 0) ++nz;
        }
        if (nz > 1) return false;
    }
    return true;
}

bool satisfies_matching(const IntMatrix& b, const NormalQCoordinate& x) {
    for (const auto& row : b) {
        if (row.size() != x.size()) return false;
        if (dot(to_rational(row), x) != 0) return false;
    }
    return true;
}

namespace {

std::vector<IntegerVector> pattern_rays(const IntMatrix& b, int n, std::size_t index) {
    const auto d = static_cast<std::size_t>(3 * n);
    Cone cone;
    cone.dim = d;
    for (const auto& row : b) cone.equalities.push_back(to_rational(row));
    std::size_t code = index;
    for (std::size_t t = 0; t < static_cast<std::size_t>(n); ++t) {
        const std::size_t quad = code % 3;
        code /= 3;
        for (std::size_t k = 0; k < 3; ++k) {
            RationalVector e(d, 0);
            e[3 * t + k] = 1;
            if (k == quad)
                cone.inequalities.push_back(std::move(e));
            else
                cone.equalities.push_back(std::move(e));
        }
    }
    return extreme_rays(cone).rays;
}

int linear_dimension(const std::vector<std::size_t>& ids, const std::vector<IntegerVector>& verts) {
    std::vector<RationalVector> rows;
    for (auto i : ids) rows.push_back(to_rational(verts[i]));
    return rows.empty() ? 0 : static_cast<int>(rank(rows, rows.front().size()));
}

}  // namespace

PFComplex enumerate_pf(const IntMatrix& b, int n, unsigned threads) {
    const auto d = static_cast<std::size_t>(3 * n);
    for (const auto& row : b)
        if (row.size() != d) throw Error(ErrorKind::DimensionMismatch, "matching matrix must have 3n columns");

    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= 3;

    std::vector<std::vector<IntegerVector>> per_pattern(total);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
    if (threads == 1) {
        for (std::size_t i = 0; i < total; ++i) per_pattern[i] = pattern_rays(b, n, i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < total; i += threads) per_pattern[i] = pattern_rays(b, n, i);
            });
        }
        for (auto& th : pool) th.join();
    }

    PFComplex pf;
    pf.n = n;
    pf.matching = b;
    for (const auto& rays : per_pattern) pf.vertices.insert(pf.vertices.end(), rays.begin(), rays.end());
    std::sort(pf.vertices.begin(), pf.vertices.end(), lex_less);
    pf.vertices.erase(std::unique(pf.vertices.begin(), pf.vertices.end()), pf.vertices.end());

    auto index_of = [&](const IntegerVector& v) {
        auto it = std::lower_bound(pf.vertices.begin(), pf.vertices.end(), v, lex_less);
        return static_cast<std::size_t>(it - pf.vertices.begin());
    };

    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> queue;
    for (const auto& rays : per_pattern) {
        if (rays.empty()) continue;
        std::vector<std::size_t> ids;
        for (const auto& r : rays) ids.push_back(index_of(r));
        std::sort(ids.begin(), ids.end());
        if (seen.insert(ids).second) queue.push_back(std::move(ids));
    }
    // Close under faces: every face of a pattern cone is cut out by x_j = 0
    // for some coordinates j in its support.
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const auto ids = queue[qi];
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<std::size_t> face;
            bool cuts = false;
            for (auto v : ids) {
                if (pf.vertices[v][j] == 0)
                    face.push_back(v);
                else
                    cuts = true;
            }
            if (!cuts || face.empty()) continue;
            if (seen.insert(face).second) queue.push_back(std::move(face));
        }
    }

    for (const auto& ids : seen) {
        PFCell cell;
        cell.vertices = ids;
        cell.dimension = linear_dimension(ids, pf.vertices) - 1;
        cell.pattern.assign(static_cast<std::size_t>(n), -1);
        for (auto v : ids)
            for (std::size_t j = 0; j < d; ++j)
                if (pf.vertices[v][j] != 0) cell.pattern[j / 3] = static_cast<int>(j % 3);
        pf.cells.push_back(std::move(cell));
    }
    for (auto& c : pf.cells) {
        c.maximal = true;
        for (const auto& o : pf.cells) {
            if (o.vertices.size() > c.vertices.size() &&
                std::includes(o.vertices.begin(), o.vertices.end(), c.vertices.begin(), c.vertices.end())) {
                c.maximal = false;
                break;
            }
        }
    }
    return pf;
}

std::vector<NormalQCoordinate> vertex_solutions(const PFComplex& pf) {
    std::vector<NormalQCoordinate> out;
    for (const auto& v : pf.vertices) out.push_back(to_rational(v));
    return out;
}

bool compatible(const NormalQCoordinate& x, const NormalQCoordinate& y) {
    if (x.size() != y.size()) return false;
    NormalQCoordinate s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
    return is_admissible(s);
}

NormalQCoordinate haken_sum(const NormalQCoordinate& x, const NormalQCoordinate& y) {
    if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "haken_sum: coordinates differ in length");
    if (!compatible(x, y)) throw Error(ErrorKind::IncompatibleSupports, "haken_sum: union of supports is not admissible");
    NormalQCoordinate s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
    return s;
}

BoundaryCoordinate boundary_coordinate(const NormalQCoordinate& x, const CuspFunctionals& fns) {
    BoundaryCoordinate bc;
    for (std::size_t i = 0; i < fns.meridians.size(); ++i) {
        Rational l = dot(to_rational(fns.longitudes[i].coeffs), x);
        Rational m = dot(to_rational(fns.meridians[i].coeffs), x);
        bc.per_cusp.emplace_back(l, -m);
    }
    return bc;
}

NormalQCoordinate apply_quad_permutation(const std::vector<int>& perm, const NormalQCoordinate& x) {
    if (perm.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "permutation and coordinate differ in length");
    NormalQCoordinate y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[static_cast<std::size_t>(perm[i])] = x[i];
    return y;
}

std::vector<std::vector<std::size_t>> orbits(const PFComplex& pf, const std::vector<std::vector<int>>& perms) {
    const std::size_t m = pf.vertices.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& p : perms) {
        for (std::size_t v = 0; v < m; ++v) {
            auto img = primitive(apply_quad_permutation(p, to_rational(pf.vertices[v])));
            auto it = std::lower_bound(pf.vertices.begin(), pf.vertices.end(), img, lex_less);
            if (it == pf.vertices.end() || *it != img)
                throw Error(ErrorKind::MalformedDocument, "quad permutation does not preserve the vertex set");
            auto a = find(v), b = find(static_cast<std::size_t>(it - pf.vertices.begin()));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t v = 0; v < m; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

std::optional<NormalQCoordinate> center_point(const PFComplex& pf) {
    for (const auto& c : pf.cells) {
        if (c.dimension != 2 || c.vertices.size() != 4) continue;
        const auto& v = c.vertices;
        const std::array<std::array<std::size_t, 4>, 3> pairings = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
        for (const auto& p : pairings) {
            const auto& a = pf.vertices[v[p[0]]];
            const auto& b = pf.vertices[v[p[1]]];
            const auto& x = pf.vertices[v[p[2]]];
            const auto& y = pf.vertices[v[p[3]]];
            bool equal = true;
            for (std::size_t i = 0; i < a.size() && equal; ++i) equal = a[i] + b[i] == x[i] + y[i];
            if (!equal) continue;
            NormalQCoordinate mid(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) mid[i] = Rational(a[i] + b[i], 2);
            for (auto& q : mid) q.canonicalize();
            return mid;
        }
    }
    return std::nullopt;
}

namespace {

std::vector<std::string> coordinate_headers(std::size_t d) {
    std::vector<std::string> h;
    static const char* primes[3] = {"", "'", "''"};
    for (std::size_t i = 0; i < d; ++i) h.push_back("q" + std::string(primes[i % 3]) + "_" + std::to_string(i / 3));
    return h;
}

}  // namespace

std::string vertex_table_csv(const std::vector<NormalQCoordinate>& rows, const std::vector<int>& ids,
                             const CuspFunctionals* fns) {
    std::ostringstream os;
    const std::size_t d = rows.empty() ? 0 : rows.front().size();
    os << "id";
    for (const auto& h : coordinate_headers(d)) os << "," << h;
    if (fns) {
        for (std::size_t c = 0; c < fns->meridians.size(); ++c) os << ",nu(L_" << c << "),-nu(M_" << c << ")";
    }
    os << "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        os << ids[r];
        for (const auto& x : rows[r]) os << "," << to_string(x);
        if (fns) {
            for (const auto& x : boundary_coordinate(rows[r], *fns).flat()) os << "," << to_string(x);
        }
        os << "\n";
    }
    return os.str();
}

std::string vertex_table_json(const std::vector<NormalQCoordinate>& rows, const std::vector<int>& ids,
                              const CuspFunctionals* fns) {
    json out = json::array();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        json rec;
        rec["id"] = ids[r];
        json coords = json::array();
        for (const auto& x : rows[r]) coords.push_back(to_string(x));
        rec["coordinates"] = coords;
        if (fns) {
            json bc = json::array();
            for (const auto& x : boundary_coordinate(rows[r], *fns).flat()) bc.push_back(to_string(x));
            rec["boundary"] = bc;
        }
        out.push_back(rec);
    }
    return json{{"vertices", out}}.dump(2) + "\n";
}

std::vector<VertexRecord> parse_vertex_table_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::MalformedDocument, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw Error(ErrorKind::MalformedDocument, "vertex table needs a vertices array");
    std::vector<VertexRecord> out;
    for (const auto& rec : doc["vertices"]) {
        if (!rec.is_object() || !rec.contains("id") || !rec.contains("coordinates"))
            throw Error(ErrorKind::MalformedDocument, "vertex records need id and coordinates");
        VertexRecord v;
        v.id = rec["id"].get<int>();
        for (const auto& x : rec["coordinates"]) {
            try {
                Rational q(x.is_string() ? x.get<std::string>() : x.dump());
                if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
                q.canonicalize();
                v.coordinates.push_back(q);
            } catch (const std::invalid_argument&) {
                throw Error(ErrorKind::MalformedDocument, "bad rational in vertex " + std::to_string(v.id));
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace spun
