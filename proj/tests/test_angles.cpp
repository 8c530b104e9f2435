#include "oracles.hpp"

#include "spun/angles.hpp"
#include "spun/error.hpp"

#include <doctest.h>

#include <algorithm>

using namespace spun;

namespace {

const LPProblem& whl_polytope() {
    static const LPProblem p = angle_polytope(oracle::whl().tri, oracle::whl().gluing.edge_rows);
    return p;
}

RationalVector constant(std::size_t n, Rational v) { return RationalVector(n, v); }

// Vertices whose quad support sits inside the zero set of alpha.
std::vector<int> dual_by_support(const std::vector<long>& alpha) {
    std::vector<int> out;
    for (const auto& r : oracle::whl_vertex_table()) {
        bool ok = true;
        for (std::size_t i = 0; i < r.q.size(); ++i)
            if (r.q[i] != 0 && alpha[i] != 0) ok = false;
        if (ok) out.push_back(r.id);
    }
    return out;
}

std::vector<NormalQCoordinate> surfaces(const std::vector<int>& ids) {
    std::vector<NormalQCoordinate> s;
    for (int id : ids) s.push_back(to_rational(oracle::whl_vertex(id)));
    return s;
}

}  // namespace

TEST_CASE("the eight published semi-angle structures") {
    const auto& rows = oracle::whl().gluing.edge_rows;
    for (const auto& a : oracle::whl_angle_table()) {
        CAPTURE(a.name);
        SemiAngleStructure s{to_rational(a.alpha)};
        CHECK(is_semi_angle_structure(s, rows));
        CHECK(satisfies(whl_polytope(), s.angles));
        CHECK(dual_by_support(a.alpha) == a.dual);
        for (int id : a.dual) CHECK(find_dual_semiangle(to_rational(oracle::whl_vertex(id)), whl_polytope()).feasible);
    }
}

TEST_CASE("certify returns a structure dual to every listed surface") {
    for (const auto& a : oracle::whl_angle_table()) {
        CAPTURE(a.name);
        const auto r = certify_essential(surfaces(a.dual), a.dual, whl_polytope());
        REQUIRE(r.feasible);
        CHECK(satisfies(whl_polytope(), r.alpha.angles));
        for (int id : a.dual) {
            const auto v = oracle::whl_vertex(id);
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] != 0) CHECK(r.alpha.angles[i] == 0);
        }
        CHECK(r.two_sidedness_unchecked);
    }
    const auto find = [](const std::string& n) {
        for (const auto& a : oracle::whl_angle_table())
            if (a.name == n) return to_rational(a.alpha);
        return RationalVector{};
    };
    CHECK(certify_essential(surfaces({1, 5, 6, 13, 14, 16, 19}), {}, whl_polytope()).alpha.angles == find("alpha+"));
    CHECK(certify_essential(surfaces({2, 7, 8, 13, 15, 16, 18}), {}, whl_polytope()).alpha.angles == find("beta+"));
}

TEST_CASE("the constant one-third assignment") {
    // Edge degrees 4, 8, 8, 4: no edge has degree 6.
    CHECK_FALSE(satisfies(whl_polytope(), constant(12, Rational(1, 3))));
    CHECK(lp_feasible(whl_polytope()).feasible);

    const auto fig8 = load_triangulation(oracle::data("fig8.json"));
    const auto p = angle_polytope(fig8, edge_rows(fig8).edge_rows);
    CHECK(satisfies(p, constant(6, Rational(1, 3))));
    CHECK(is_semi_angle_structure({constant(6, Rational(1, 3))}, edge_rows(fig8).edge_rows));
}

TEST_CASE("duals of Haken sums along the square and an arc") {
    const auto v1 = to_rational(oracle::whl_vertex(1)), v2 = to_rational(oracle::whl_vertex(2));
    const auto f1 = haken_sum(v1, v2);
    const auto d1 = find_dual_semiangle(f1, whl_polytope());
    if (d1.feasible) {
        for (std::size_t i = 0; i < f1.size(); ++i)
            if (f1[i] != 0) CHECK(d1.alpha.angles[i] == 0);
    } else {
        CHECK(verify_certificate(d1.system, d1.certificate));
    }

    const auto f2 = haken_sum(to_rational(oracle::whl_vertex(16)), to_rational(oracle::whl_vertex(19)));
    const auto d = find_dual_semiangle(f2, whl_polytope());
    REQUIRE(d.feasible);
    for (std::size_t i = 0; i < f2.size(); ++i)
        if (f2[i] != 0) CHECK(d.alpha.angles[i] == 0);
}

TEST_CASE("a surface using all three quads of one tetrahedron has no dual") {
    RationalVector s(12, 0);
    s[0] = s[1] = s[2] = 1;
    const auto d = find_dual_semiangle(s, whl_polytope());
    CHECK_FALSE(d.feasible);
    CHECK(verify_certificate(d.system, d.certificate));
}

TEST_CASE("certify edge cases") {
    const auto empty = certify_essential({}, {}, whl_polytope());
    CHECK(empty.feasible);
    CHECK(satisfies(whl_polytope(), empty.alpha.angles));

    std::vector<int> all;
    for (int i = 1; i <= 20; ++i) all.push_back(i);
    const auto r = certify_essential(surfaces(all), all, whl_polytope());
    CHECK_FALSE(r.feasible);
    CHECK_FALSE(r.pairwise_compatible);

    // The report's certificate refers to the polytope plus vanishing rows.
    LPProblem sys = whl_polytope();
    for (const auto& s : surfaces(all))
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] != 0) {
                RationalVector e(12, 0);
                e[i] = 1;
                sys.add_equality(e, 0);
            }
    CHECK_FALSE(lp_feasible(sys).feasible);
    CHECK(verify_certificate(sys, lp_feasible(sys).certificate));

    CHECK_THROWS_AS(certify_essential(surfaces({1, 14}), {1, 14}, whl_polytope(), true), Error);
    CHECK_NOTHROW(certify_essential(surfaces({1, 14}), {1, 14}, whl_polytope(), false));
    CHECK_FALSE(certify_essential(surfaces({1, 14}), {1, 14}, whl_polytope(), false).pairwise_compatible);
}

TEST_CASE("duality depends only on support") {
    for (const auto& r : oracle::whl_vertex_table()) {
        auto s = to_rational(r.q);
        const bool base = find_dual_semiangle(s, whl_polytope()).feasible;
        for (auto& x : s) x *= 7;
        CHECK(find_dual_semiangle(s, whl_polytope()).feasible == base);
        CHECK(base);
    }
}
