#include "spun/tri.hpp"

#include "spun/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace spun {

using json = nlohmann::json;

const std::array<std::pair<int, int>, 6> kTetEdges = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int parity(const Perm& p) {
    int s = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) s = -s;
    return s;
}

Perm compose(const Perm& a, const Perm& b) {
    Perm r{};
    for (std::size_t i = 0; i < 4; ++i) r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
}

Perm inverse(const Perm& p) {
    Perm r{};
    for (std::size_t i = 0; i < 4; ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return r;
}

std::string to_string(const Perm& p) {
    std::string s;
    for (int x : p) s += static_cast<char>('0' + x);
    return s;
}

int edge_label(int a, int b) {
    if (a > b) std::swap(a, b);
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) return 0;
    if ((a == 0 && b == 3) || (a == 1 && b == 2)) return 1;
    return 2;
}

int edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int i = 0; i < 6; ++i)
        if (kTetEdges[static_cast<std::size_t>(i)] == std::make_pair(a, b)) return i;
    return -1;
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedDocument, what); }

Perm parse_perm(const json& j, int tet, int face) {
    const std::string where = "tetrahedron " + std::to_string(tet) + " face " + std::to_string(face);
    Perm p{};
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.size() != 4) malformed(where + ": perm string must have 4 digits");
        for (std::size_t i = 0; i < 4; ++i) p[i] = s[i] - '0';
    } else if (j.is_array() && j.size() == 4) {
        for (std::size_t i = 0; i < 4; ++i) {
            if (!j[i].is_number_integer()) malformed(where + ": perm entries must be integers");
            p[i] = j[i].get<int>();
        }
    } else {
        malformed(where + ": perm must be a list of 4 images");
    }
    std::array<bool, 4> seen{};
    for (int x : p) {
        if (x < 0 || x > 3 || seen[static_cast<std::size_t>(x)]) malformed(where + ": perm is not a permutation of 0..3");
        seen[static_cast<std::size_t>(x)] = true;
    }
    return p;
}

}  // namespace

Triangulation parse_triangulation(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) malformed("document must be an object");
    if (!doc.contains("num_tetrahedra") || !doc["num_tetrahedra"].is_number_integer())
        malformed("missing integer field num_tetrahedra");
    const long n = doc["num_tetrahedra"].get<long>();
    if (n < 1) malformed("num_tetrahedra must be positive");
    if (!doc.contains("gluings") || !doc["gluings"].is_array()) malformed("missing array field gluings");
    const auto& gl = doc["gluings"];
    if (static_cast<long>(gl.size()) > n) malformed("more gluing rows than tetrahedra");

    Triangulation t;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) malformed("name must be a string");
        t.name = doc["name"].get<std::string>();
    }
    t.gluings.resize(static_cast<std::size_t>(n));
    std::vector<std::array<bool, 4>> present(static_cast<std::size_t>(n), {false, false, false, false});

    for (std::size_t ti = 0; ti < gl.size(); ++ti) {
        const auto& row = gl[ti];
        if (!row.is_array()) malformed("gluing row " + std::to_string(ti) + " must be an array");
        if (row.size() > 4) malformed("gluing row " + std::to_string(ti) + " has more than 4 faces");
        for (std::size_t f = 0; f < row.size(); ++f) {
            const auto& g = row[f];
            if (g.is_null()) continue;
            if (!g.is_object() || !g.contains("tet") || !g.contains("perm"))
                malformed("gluing entry " + std::to_string(ti) + ":" + std::to_string(f) + " needs tet and perm");
            if (!g["tet"].is_number_integer()) malformed("tet must be an integer");
            const long target = g["tet"].get<long>();
            if (target < 0 || target >= n)
                malformed("gluing entry " + std::to_string(ti) + ":" + std::to_string(f) + " targets a missing tetrahedron");
            t.gluings[ti][f].tet = static_cast<int>(target);
            t.gluings[ti][f].perm = parse_perm(g["perm"], static_cast<int>(ti), static_cast<int>(f));
            present[ti][f] = true;
        }
    }

    if (doc.contains("vertex_numbering")) {
        const auto& vn = doc["vertex_numbering"];
        if (!vn.is_array()) malformed("vertex_numbering must be an array");
        for (const auto& row : vn) {
            if (!row.is_array() || static_cast<long>(row.size()) != 3 * n)
                malformed("vertex_numbering rows must have 3n entries");
            std::vector<long> v;
            for (const auto& x : row) {
                if (!x.is_number_integer()) malformed("vertex_numbering entries must be integers");
                v.push_back(x.get<long>());
            }
            t.vertex_numbering.push_back(std::move(v));
        }
    }

    for (int ti = 0; ti < n; ++ti)
        for (int f = 0; f < 4; ++f)
            if (!present[static_cast<std::size_t>(ti)][static_cast<std::size_t>(f)])
                throw Error(ErrorKind::UnpairedFace,
                            "face " + std::to_string(f) + " of tetrahedron " + std::to_string(ti) + " is not glued");

    for (int ti = 0; ti < n; ++ti) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(ti, f);
            const int tf = g.perm[static_cast<std::size_t>(f)];
            const auto& back = t.gluing(g.tet, tf);
            const std::string where = "face " + std::to_string(f) + " of tetrahedron " + std::to_string(ti);
            if (g.tet == ti && tf == f) throw Error(ErrorKind::NonInvolutivePairing, where + " is glued to itself");
            if (back.tet != ti || back.perm != inverse(g.perm))
                throw Error(ErrorKind::NonInvolutivePairing,
                            where + " maps to face " + std::to_string(tf) + " of tetrahedron " + std::to_string(g.tet) +
                                ", which is not glued back by the inverse permutation");
        }
    }

    for (int ti = 0; ti < n; ++ti)
        for (int f = 0; f < 4; ++f)
            if (parity(t.gluing(ti, f).perm) != -1)
                throw Error(ErrorKind::OrientationViolation,
                            "gluing of face " + std::to_string(f) + " of tetrahedron " + std::to_string(ti) +
                                " preserves orientation");
    return t;
}

Triangulation load_triangulation(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_triangulation(ss.str());
}

std::string to_json(const Triangulation& t) {
    json doc;
    if (!t.name.empty()) doc["name"] = t.name;
    doc["num_tetrahedra"] = t.size();
    json rows = json::array();
    for (const auto& row : t.gluings) {
        json r = json::array();
        for (const auto& g : row) r.push_back({{"tet", g.tet}, {"perm", g.perm}});
        rows.push_back(r);
    }
    doc["gluings"] = rows;
    if (!t.vertex_numbering.empty()) doc["vertex_numbering"] = t.vertex_numbering;
    return doc.dump(2);
}

std::vector<EdgeClass> trace_edge_classes(const Triangulation& t) {
    const int n = t.size();
    std::vector<std::array<bool, 6>> seen(static_cast<std::size_t>(n), {false, false, false, false, false, false});
    std::vector<EdgeClass> out;
    for (int ti = 0; ti < n; ++ti) {
        for (int e = 0; e < 6; ++e) {
            if (seen[static_cast<std::size_t>(ti)][static_cast<std::size_t>(e)]) continue;
            auto [a, b] = kTetEdges[static_cast<std::size_t>(e)];
            int c = -1, d = -1;
            for (int v = 0; v < 4; ++v) {
                if (v == a || v == b) continue;
                (c < 0 ? c : d) = v;
            }
            if (parity(Perm{a, b, c, d}) < 0) std::swap(c, d);

            EdgeClass cls;
            cls.id = static_cast<int>(out.size());
            EdgeCorner cur{ti, a, b, c, d};
            const EdgeCorner start = cur;
            for (int steps = 0;; ++steps) {
                if (steps > 6 * n) throw Error(ErrorKind::MalformedDocument, "edge walk does not close");
                cls.corners.push_back(cur);
                seen[static_cast<std::size_t>(cur.tet)][static_cast<std::size_t>(edge_index(cur.a, cur.b))] = true;
                const auto& g = t.gluing(cur.tet, cur.d);
                const auto& p = g.perm;
                EdgeCorner nxt{g.tet, p[static_cast<std::size_t>(cur.a)], p[static_cast<std::size_t>(cur.b)],
                               p[static_cast<std::size_t>(cur.d)], p[static_cast<std::size_t>(cur.c)]};
                if (nxt.tet == start.tet && nxt.a == start.a && nxt.b == start.b && nxt.c == start.c && nxt.d == start.d)
                    break;
                cur = nxt;
            }
            out.push_back(std::move(cls));
        }
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

std::vector<CuspClass> trace_cusp_classes(const Triangulation& t) {
    const int n = t.size();
    UnionFind uf(static_cast<std::size_t>(4 * n));
    for (int ti = 0; ti < n; ++ti)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(ti, f);
            for (int v = 0; v < 4; ++v)
                if (v != f) uf.unite(4 * ti + v, 4 * g.tet + g.perm[static_cast<std::size_t>(v)]);
        }

    // Ends of edges at a vertex: (tet, v, w) is the end at v of edge vw.
    auto end_id = [](int ti, int v, int w) { return 16 * ti + 4 * v + w; };
    UnionFind ends(static_cast<std::size_t>(16 * n));
    for (int ti = 0; ti < n; ++ti)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(ti, f);
            for (int v = 0; v < 4; ++v)
                for (int w = 0; w < 4; ++w)
                    if (v != w && v != f && w != f)
                        ends.unite(end_id(ti, v, w),
                                   end_id(g.tet, g.perm[static_cast<std::size_t>(v)], g.perm[static_cast<std::size_t>(w)]));
        }

    std::map<int, CuspClass> by_root;
    for (int ti = 0; ti < n; ++ti)
        for (int v = 0; v < 4; ++v) by_root[uf.find(4 * ti + v)].vertices.emplace_back(ti, v);

    std::vector<CuspClass> out;
    for (auto& [root, cls] : by_root) {
        const int faces = static_cast<int>(cls.vertices.size());
        const int edges = 3 * faces / 2;
        std::vector<int> roots;
        for (auto [ti, v] : cls.vertices)
            for (int w = 0; w < 4; ++w)
                if (w != v) roots.push_back(ends.find(end_id(ti, v, w)));
        std::sort(roots.begin(), roots.end());
        const int verts = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
        cls.link_euler = verts - edges + faces;
        cls.id = static_cast<int>(out.size());
        out.push_back(std::move(cls));
    }
    return out;
}

void require_torus_cusps(const Triangulation& t) {
    for (const auto& c : trace_cusp_classes(t)) {
        if (c.link_euler != 0)
            throw Error(ErrorKind::NonTorusLink, "cusp " + std::to_string(c.id) + " has link Euler characteristic " +
                                                     std::to_string(c.link_euler));
    }
}

Symmetry identity_symmetry(int n) {
    Symmetry s;
    s.tet_perm.resize(static_cast<std::size_t>(n));
    std::iota(s.tet_perm.begin(), s.tet_perm.end(), 0);
    s.corner_perms.assign(static_cast<std::size_t>(n), Perm{0, 1, 2, 3});
    return s;
}

bool operator==(const Symmetry& a, const Symmetry& b) {
    return a.tet_perm == b.tet_perm && a.corner_perms == b.corner_perms;
}

Symmetry compose(const Symmetry& a, const Symmetry& b) {
    Symmetry s;
    const std::size_t n = a.tet_perm.size();
    s.tet_perm.resize(n);
    s.corner_perms.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const auto bt = static_cast<std::size_t>(b.tet_perm[t]);
        s.tet_perm[t] = a.tet_perm[bt];
        s.corner_perms[t] = compose(a.corner_perms[bt], b.corner_perms[t]);
    }
    return s;
}

bool is_symmetry(const Triangulation& t, const Symmetry& s) {
    const int n = t.size();
    if (static_cast<int>(s.tet_perm.size()) != n || static_cast<int>(s.corner_perms.size()) != n) return false;
    for (int ti = 0; ti < n; ++ti) {
        const auto& pi = s.corner_perms[static_cast<std::size_t>(ti)];
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(ti, f);
            const auto& img = t.gluing(s.tet_perm[static_cast<std::size_t>(ti)], pi[static_cast<std::size_t>(f)]);
            const auto want = compose(s.corner_perms[static_cast<std::size_t>(g.tet)], compose(g.perm, inverse(pi)));
            if (img.tet != s.tet_perm[static_cast<std::size_t>(g.tet)] || img.perm != want) return false;
        }
    }
    return true;
}

std::vector<Symmetry> symmetries(const Triangulation& t) {
    const int n = t.size();
    std::vector<Symmetry> out;
    Perm p0{0, 1, 2, 3};
    std::vector<Perm> all;
    do {
        all.push_back(p0);
    } while (std::next_permutation(p0.begin(), p0.end()));

    for (int target = 0; target < n; ++target) {
        for (const auto& pi0 : all) {
            Symmetry s;
            s.tet_perm.assign(static_cast<std::size_t>(n), -1);
            s.corner_perms.assign(static_cast<std::size_t>(n), Perm{0, 1, 2, 3});
            std::vector<bool> used(static_cast<std::size_t>(n), false);
            s.tet_perm[0] = target;
            s.corner_perms[0] = pi0;
            used[static_cast<std::size_t>(target)] = true;
            std::vector<int> stack{0};
            bool ok = true;
            while (!stack.empty() && ok) {
                const int ti = stack.back();
                stack.pop_back();
                const auto& pi = s.corner_perms[static_cast<std::size_t>(ti)];
                for (int f = 0; f < 4 && ok; ++f) {
                    const auto& g = t.gluing(ti, f);
                    const auto& img = t.gluing(s.tet_perm[static_cast<std::size_t>(ti)], pi[static_cast<std::size_t>(f)]);
                    const auto want = compose(img.perm, compose(pi, inverse(g.perm)));
                    const auto u = static_cast<std::size_t>(g.tet);
                    if (s.tet_perm[u] >= 0) {
                        ok = s.tet_perm[u] == img.tet && s.corner_perms[u] == want;
                    } else if (used[static_cast<std::size_t>(img.tet)]) {
                        ok = false;
                    } else {
                        s.tet_perm[u] = img.tet;
                        s.corner_perms[u] = want;
                        used[static_cast<std::size_t>(img.tet)] = true;
                        stack.push_back(g.tet);
                    }
                }
            }
            if (!ok || std::count(s.tet_perm.begin(), s.tet_perm.end(), -1) > 0) continue;
            if (is_symmetry(t, s)) out.push_back(std::move(s));
        }
    }
    std::sort(out.begin(), out.end(), [](const Symmetry& a, const Symmetry& b) {
        return std::tie(a.tet_perm, a.corner_perms) < std::tie(b.tet_perm, b.corner_perms);
    });
    return out;
}

std::vector<int> cusp_permutation(const Triangulation& t, const Symmetry& s) {
    const auto cusps = trace_cusp_classes(t);
    std::map<std::pair<int, int>, int> owner;
    for (const auto& c : cusps)
        for (const auto& v : c.vertices) owner[v] = c.id;
    std::vector<int> out;
    for (const auto& c : cusps) {
        auto [ti, v] = c.vertices.front();
        out.push_back(owner.at({s.tet_perm[static_cast<std::size_t>(ti)],
                                s.corner_perms[static_cast<std::size_t>(ti)][static_cast<std::size_t>(v)]}));
    }
    return out;
}

std::vector<Symmetry> cusp_stabilizer(const Triangulation& t, const std::vector<Symmetry>& group) {
    std::vector<Symmetry> out;
    for (const auto& s : group) {
        auto p = cusp_permutation(t, s);
        bool fixed = true;
        for (std::size_t i = 0; i < p.size(); ++i) fixed = fixed && p[i] == static_cast<int>(i);
        if (fixed) out.push_back(s);
    }
    return out;
}

std::vector<int> induced_quad_permutation(const Symmetry& s) {
    static const std::array<std::pair<int, int>, 3> rep = {{{0, 1}, {0, 3}, {0, 2}}};
    const std::size_t n = s.tet_perm.size();
    std::vector<int> out(3 * n);
    for (std::size_t t = 0; t < n; ++t) {
        const auto& pi = s.corner_perms[t];
        for (std::size_t k = 0; k < 3; ++k) {
            const int label = edge_label(pi[static_cast<std::size_t>(rep[k].first)], pi[static_cast<std::size_t>(rep[k].second)]);
            out[3 * t + k] = 3 * s.tet_perm[t] + label;
        }
    }
    return out;
}

}  // namespace spun
