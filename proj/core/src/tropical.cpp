#include "spun/tropical.hpp"

#include "spun/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace spun {

using json = nlohmann::json;

std::vector<SupportSet> parameter_supports(int n) {
    std::vector<SupportSet> out;
    for (int t = 0; t < n; ++t)
        for (auto& s : parameter_support_triple(n, t)) out.push_back(std::move(s));
    return out;
}

std::vector<SupportSet> gluing_supports(const std::vector<ExponentVector>& rows) {
    std::vector<SupportSet> out;
    for (const auto& r : rows) out.push_back(SupportSet::from({r.entries, IntRow(r.entries.size(), 0)}));
    return out;
}

bool max_attained_twice(const SupportSet& s, const RationalVector& xi) {
    if (s.points.empty()) return false;
    std::vector<Rational> vals;
    for (const auto& p : s.points) vals.push_back(dot(to_rational(p), xi));
    const Rational best = *std::max_element(vals.begin(), vals.end());
    return std::count(vals.begin(), vals.end(), best) >= 2;
}

namespace {

struct FanCone {
    Cone cone;
    RaySet rays;
};

bool same_generators(const RaySet& a, const RaySet& b) { return a.rays == b.rays && a.lineality == b.lineality; }

// Drops cones with no nonzero point, duplicates, and cones contained in
// another cone of the list.  Keeps the first of equal cones.
std::vector<FanCone> prune(std::vector<FanCone> in) {
    std::vector<FanCone> kept;
    for (auto& c : in) {
        if (c.rays.dimension() == 0) continue;
        bool dup = false;
        for (const auto& k : kept)
            if (same_generators(k.rays, c.rays)) {
                dup = true;
                break;
            }
        if (!dup) kept.push_back(std::move(c));
    }
    std::vector<bool> inside(kept.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = 0; j < kept.size() && !inside[i]; ++j)
            if (i != j && cone_contains(kept[j].cone, kept[i].rays)) inside[i] = true;
    std::vector<FanCone> out;
    for (std::size_t i = 0; i < kept.size(); ++i)
        if (!inside[i]) out.push_back(std::move(kept[i]));
    return out;
}

bool generator_less(const RaySet& a, const RaySet& b) {
    if (a.rays != b.rays)
        return std::lexicographical_compare(a.rays.begin(), a.rays.end(), b.rays.begin(), b.rays.end(), lex_less);
    return std::lexicographical_compare(a.lineality.begin(), a.lineality.end(), b.lineality.begin(), b.lineality.end(),
                                        lex_less);
}

json int_json(const Integer& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

json rows_json(const std::vector<IntegerVector>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json row = json::array();
        for (const auto& x : r) row.push_back(int_json(x));
        out.push_back(row);
    }
    return out;
}

json rows_json(const std::vector<RationalVector>& rows) {
    std::vector<IntegerVector> ints;
    for (const auto& r : rows) ints.push_back(primitive(r));
    return rows_json(ints);
}

}  // namespace

DualFan spherical_dual(const SupportSet& s) {
    if (s.points.size() < 2) throw Error(ErrorKind::DegenerateSupport, "support needs at least two points");
    const std::size_t d = s.points.front().size();
    std::vector<FanCone> cones;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        for (std::size_t j = i + 1; j < s.points.size(); ++j) {
            Cone c;
            c.dim = d;
            RationalVector diff(d);
            for (std::size_t t = 0; t < d; ++t) diff[t] = s.points[i][t] - s.points[j][t];
            c.equalities.push_back(diff);
            for (std::size_t k = 0; k < s.points.size(); ++k) {
                if (k == i || k == j) continue;
                RationalVector r(d);
                for (std::size_t t = 0; t < d; ++t) r[t] = s.points[i][t] - s.points[k][t];
                c.inequalities.push_back(std::move(r));
            }
            auto rays = extreme_rays(c, LinealityPolicy::Report);
            cones.push_back({std::move(c), std::move(rays)});
        }
    }
    DualFan fan;
    fan.dim = d;
    // When the locus is the origin alone, prune leaves nothing; keep the
    // origin so the fan still covers xi = 0.
    FanCone origin = cones.front();
    auto kept = prune(std::move(cones));
    if (kept.empty()) kept.push_back(std::move(origin));
    for (auto& fc : kept) {
        fc.cone.rays = fc.rays.rays;
        fan.cones.push_back(std::move(fc.cone));
    }
    return fan;
}

PreVariety prevariety_from_supports(std::size_t dim, const std::vector<SupportSet>& supports) {
    std::vector<FanCone> current;
    {
        FanCone whole{Cone::full(dim), {}};
        whole.rays = extreme_rays(whole.cone, LinealityPolicy::Report);
        current.push_back(std::move(whole));
    }
    for (const auto& s : supports) {
        if (!s.points.empty() && s.points.front().size() != dim)
            throw Error(ErrorKind::DimensionMismatch, "support lives in the wrong dimension");
        const auto fan = spherical_dual(s);
        std::vector<FanCone> next;
        for (const auto& cur : current) {
            for (const auto& fc : fan.cones) {
                auto c = canonical_constraints(cone_intersect(cur.cone, fc));
                auto rays = extreme_rays(c, LinealityPolicy::Report);
                if (rays.dimension() == 0) continue;
                next.push_back({std::move(c), std::move(rays)});
            }
        }
        current = prune(std::move(next));
    }

    std::sort(current.begin(), current.end(),
              [](const FanCone& a, const FanCone& b) { return generator_less(a.rays, b.rays); });
    PreVariety pv;
    pv.dim = dim;
    for (auto& fc : current) {
        PreVarietyCone pc{std::move(fc.cone), std::move(fc.rays), 0};
        pc.dimension = static_cast<int>(pc.rays.dimension()) - 1;
        pc.cone.rays = pc.rays.rays;
        pv.rays.insert(pv.rays.end(), pc.rays.rays.begin(), pc.rays.rays.end());
        pv.cones.push_back(std::move(pc));
    }
    std::sort(pv.rays.begin(), pv.rays.end(), lex_less);
    pv.rays.erase(std::unique(pv.rays.begin(), pv.rays.end()), pv.rays.end());
    return pv;
}

PreVariety prevariety(const Triangulation& t) {
    auto g = edge_rows(t);
    auto supports = parameter_supports(g.n);
    for (auto& s : gluing_supports(g.edge_rows)) supports.push_back(std::move(s));
    return prevariety_from_supports(static_cast<std::size_t>(3 * g.n), supports);
}

NormalQCoordinate xi_to_normal(const RationalVector& xi) {
    if (xi.size() % 3 != 0) throw Error(ErrorKind::DimensionMismatch, "xi length must be a multiple of 3");
    NormalQCoordinate x(xi.size());
    for (std::size_t t = 0; t < xi.size(); t += 3) {
        if (xi[t] + xi[t + 1] + xi[t + 2] != 0)
            throw Error(ErrorKind::NoAdmissibleSolution, "block " + std::to_string(t / 3) + " is not in the image of C_1^T");
        // Solutions of C_1^T y = xi form p + s(1,1,1); the admissible one
        // has its smallest entry equal to zero.
        RationalVector p = {0, xi[t + 2], -xi[t + 1]};
        const Rational lo = std::min({p[0], p[1], p[2]});
        int nonzero = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            x[t + k] = p[k] - lo;
            if (x[t + k] != 0) ++nonzero;
        }
        if (nonzero > 1)
            throw Error(ErrorKind::NoAdmissibleSolution, "block " + std::to_string(t / 3) + " has no admissible preimage");
    }
    return x;
}

NormalQCoordinate xi_to_normal(const TropicalRay& xi) { return xi_to_normal(to_rational(xi)); }

RationalVector normal_to_xi(const NormalQCoordinate& x) {
    if (x.size() % 3 != 0) throw Error(ErrorKind::DimensionMismatch, "coordinate length must be a multiple of 3");
    RationalVector xi(x.size());
    for (std::size_t t = 0; t < x.size(); t += 3) {
        xi[t] = x[t + 2] - x[t + 1];
        xi[t + 1] = x[t] - x[t + 2];
        xi[t + 2] = x[t + 1] - x[t];
    }
    return xi;
}

CorrespondenceReport correspond(const PreVariety& pv, const PFComplex& pf) {
    CorrespondenceReport rep;
    std::map<IntegerVector, std::size_t, decltype(&lex_less)> ray_index(&lex_less);
    std::vector<bool> hit(pf.vertices.size(), false);
    bool ok = true;
    for (std::size_t i = 0; i < pv.rays.size(); ++i) {
        ray_index[pv.rays[i]] = i;
        IntegerVector x;
        try {
            x = primitive(xi_to_normal(pv.rays[i]));
        } catch (const Error& e) {
            rep.problems.push_back("ray " + std::to_string(i) + ": " + e.what());
            rep.ray_to_vertex.push_back(pf.vertices.size());
            ok = false;
            continue;
        }
        auto it = std::lower_bound(pf.vertices.begin(), pf.vertices.end(), x, lex_less);
        if (it == pf.vertices.end() || *it != x) {
            rep.problems.push_back("ray " + std::to_string(i) + " maps to no PF vertex");
            rep.ray_to_vertex.push_back(pf.vertices.size());
            ok = false;
            continue;
        }
        const auto v = static_cast<std::size_t>(it - pf.vertices.begin());
        if (hit[v]) {
            rep.problems.push_back("PF vertex " + std::to_string(v) + " is hit twice");
            ok = false;
        }
        hit[v] = true;
        rep.ray_to_vertex.push_back(v);
    }
    for (std::size_t v = 0; v < hit.size(); ++v) {
        if (!hit[v]) {
            rep.problems.push_back("PF vertex " + std::to_string(v) + " has no pre-variety ray");
            ok = false;
        }
    }
    rep.bijective = ok;

    bool cells = ok;
    const auto maximal = pf.maximal_cells();
    std::vector<bool> used(maximal.size(), false);
    for (std::size_t c = 0; c < pv.cones.size(); ++c) {
        const auto& cone = pv.cones[c];
        std::vector<std::size_t> ids;
        bool mapped = cone.rays.lineality.empty();
        for (const auto& r : cone.rays.rays) {
            const auto i = ray_index.at(r);
            if (rep.ray_to_vertex[i] >= pf.vertices.size()) mapped = false;
            ids.push_back(rep.ray_to_vertex[i]);
        }
        std::sort(ids.begin(), ids.end());
        std::size_t match = maximal.size();
        for (std::size_t m = 0; m < maximal.size() && mapped; ++m) {
            if (maximal[m]->vertices == ids && maximal[m]->dimension == cone.dimension) {
                match = m;
                break;
            }
        }
        if (match == maximal.size()) {
            rep.problems.push_back("cone " + std::to_string(c) + " matches no maximal PF cell");
            cells = false;
        } else {
            if (used[match]) cells = false;
            used[match] = true;
        }
        rep.cone_to_cell.push_back(match);
    }
    if (pv.cones.size() != maximal.size()) {
        rep.problems.push_back("pre-variety has " + std::to_string(pv.cones.size()) + " maximal cones, PF has " +
                               std::to_string(maximal.size()) + " maximal cells");
        cells = false;
    }
    rep.cells_match = cells;
    return rep;
}

std::string fan_json(const PreVariety& pv) {
    json cones = json::array();
    for (const auto& c : pv.cones) {
        json jc;
        jc["equalities"] = rows_json(c.cone.equalities);
        jc["inequalities"] = rows_json(c.cone.inequalities);
        jc["rays"] = rows_json(c.rays.rays);
        if (!c.rays.lineality.empty()) jc["lineality"] = rows_json(c.rays.lineality);
        jc["dimension"] = c.dimension;
        cones.push_back(jc);
    }
    json out;
    out["dimension"] = pv.dim;
    out["cones"] = cones;
    out["rays"] = rows_json(pv.rays);
    return out.dump(2) + "\n";
}

std::string ray_csv(const PreVariety& pv) {
    std::ostringstream os;
    os << "ray";
    for (std::size_t i = 0; i < pv.dim; ++i) os << ",xi_" << i;
    os << "\n";
    for (std::size_t i = 0; i < pv.rays.size(); ++i) {
        os << i;
        for (const auto& x : pv.rays[i]) os << "," << to_string(x);
        os << "\n";
    }
    return os.str();
}

}  // namespace spun
