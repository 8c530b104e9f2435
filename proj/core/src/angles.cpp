#include "spun/angles.hpp"

#include "spun/error.hpp"

#include <nlohmann/json.hpp>

namespace spun {

using json = nlohmann::json;

bool is_semi_angle_structure(const SemiAngleStructure& a, const std::vector<ExponentVector>& edge_rows) {
    const auto& x = a.angles;
    if (x.size() % 3 != 0) return false;
    for (const auto& v : x)
        if (v < 0 || v > 1) return false;
    for (std::size_t t = 0; t < x.size(); t += 3)
        if (x[t] + x[t + 1] + x[t + 2] != 1) return false;
    for (const auto& row : edge_rows) {
        if (row.entries.size() != x.size()) return false;
        if (dot(to_rational(row.entries), x) != 2) return false;
    }
    return true;
}

LPProblem angle_polytope(const Triangulation& t, const std::vector<ExponentVector>& edge_rows) {
    const auto d = static_cast<std::size_t>(3 * t.size());
    LPProblem p;
    p.dim = d;
    for (std::size_t tet = 0; tet < d / 3; ++tet) {
        RationalVector r(d, 0);
        for (std::size_t k = 0; k < 3; ++k) r[3 * tet + k] = 1;
        p.add_equality(std::move(r), 1);
    }
    for (const auto& row : edge_rows) {
        if (row.entries.size() != d) throw Error(ErrorKind::DimensionMismatch, "edge row length differs from 3n");
        p.add_equality(to_rational(row.entries), 2);
    }
    for (std::size_t i = 0; i < d; ++i) p.add_bounds(i, 0, 1);
    return p;
}

DualSearch find_dual_semiangle(const NormalQCoordinate& s, const LPProblem& polytope) {
    if (s.size() != polytope.dim) throw Error(ErrorKind::DimensionMismatch, "surface and polytope differ in dimension");
    DualSearch out;
    out.system = polytope;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0) continue;
        RationalVector e(s.size(), 0);
        e[i] = 1;
        out.system.add_equality(std::move(e), 0);
    }
    auto res = lp_feasible(out.system);
    out.feasible = res.feasible;
    if (!res.feasible) {
        out.certificate = std::move(res.certificate);
        return out;
    }
    auto lex = lp_lexmin(out.system);
    out.alpha.angles = lex ? *lex : res.point;
    return out;
}

CertificateReport certify_essential(const std::vector<NormalQCoordinate>& surfaces, const std::vector<int>& ids,
                                    const LPProblem& polytope, bool require_compatible) {
    CertificateReport rep;
    rep.surface_ids = ids;
    NormalQCoordinate support(polytope.dim, 0);
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
        if (surfaces[i].size() != polytope.dim)
            throw Error(ErrorKind::DimensionMismatch, "surface and polytope differ in dimension");
        for (std::size_t j = i + 1; j < surfaces.size(); ++j)
            if (!compatible(surfaces[i], surfaces[j])) rep.pairwise_compatible = false;
        for (std::size_t k = 0; k < polytope.dim; ++k)
            if (surfaces[i][k] != 0) support[k] = 1;
    }
    if (require_compatible && !rep.pairwise_compatible)
        throw Error(ErrorKind::IncompatibleSupports, "some pair of surfaces is not compatible");
    auto dual = find_dual_semiangle(support, polytope);
    rep.feasible = dual.feasible;
    rep.alpha = dual.alpha;
    rep.certificate = dual.certificate;
    return rep;
}

std::string to_json(const CertificateReport& r) {
    json out;
    out["surface_ids"] = r.surface_ids;
    out["feasible"] = r.feasible;
    json alpha = json::array();
    if (r.feasible)
        for (const auto& a : r.alpha.angles) alpha.push_back(to_string(a));
    out["alpha"] = alpha;
    if (!r.feasible) {
        json eq = json::array(), ineq = json::array();
        for (const auto& y : r.certificate.equality_multipliers) eq.push_back(to_string(y));
        for (const auto& y : r.certificate.inequality_multipliers) ineq.push_back(to_string(y));
        out["farkas"] = {{"equality_multipliers", eq}, {"inequality_multipliers", ineq}};
    }
    out["pairwise_compatible"] = r.pairwise_compatible;
    out["two_sidedness_unchecked"] = r.two_sidedness_unchecked;
    return out.dump(2) + "\n";
}

}  // namespace spun
