#include "oracles.hpp"

#include "spun/error.hpp"
#include "spun/tri.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace spun;

namespace {

ErrorKind parse_error(const std::string& doc) {
    try {
        parse_triangulation(doc);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("document was accepted");
    return ErrorKind::Io;
}

const std::vector<std::string> kTorusFixtures = {"whl.json", "fig8.json", "asym3.json"};

}  // namespace

TEST_CASE("perm helpers") {
    const Perm p{1, 0, 2, 3}, q{0, 2, 3, 1};
    CHECK(parity(p) == -1);
    CHECK(parity(q) == 1);
    CHECK(compose(p, inverse(p)) == Perm{0, 1, 2, 3});
    CHECK(compose(p, q) == Perm{1, 2, 3, 0});
    CHECK(to_string(q) == "0231");
    CHECK(edge_label(0, 1) == 0);
    CHECK(edge_label(2, 3) == 0);
    CHECK(edge_label(0, 3) == 1);
    CHECK(edge_label(1, 2) == 1);
    CHECK(edge_label(0, 2) == 2);
    CHECK(edge_label(3, 1) == 2);
}

TEST_CASE("parse the Whitehead link fixture") {
    const auto t = load_triangulation(oracle::data("whl.json"));
    CHECK(t.size() == 4);
    CHECK(t.name == "whitehead-link");
    CHECK(t.vertex_numbering.size() == 20);
    // Pairings are involutive: following a face and coming back is the identity.
    for (int tet = 0; tet < 4; ++tet)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(tet, f);
            const auto& back = t.gluing(g.tet, g.perm[static_cast<std::size_t>(f)]);
            CHECK(back.tet == tet);
            CHECK(compose(back.perm, g.perm) == Perm{0, 1, 2, 3});
        }
}

TEST_CASE("figure-eight fixture is a valid two-tetrahedron triangulation") {
    const auto t = load_triangulation(oracle::data("fig8.json"));
    REQUIRE(t.size() == 2);
    for (int tet = 0; tet < 2; ++tet)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(tet, f);
            CHECK(g.tet == 1 - tet);
            CHECK(parity(g.perm) == -1);
        }
}

TEST_CASE("validation errors") {
    CHECK(parse_error(R"({"num_tetrahedra": 1, "gluings": []})") == ErrorKind::UnpairedFace);
    CHECK(parse_error("not json") == ErrorKind::MalformedDocument);
    CHECK(parse_error(R"({"gluings": []})") == ErrorKind::MalformedDocument);
    CHECK(parse_error(R"({"num_tetrahedra": 1, "gluings": [[{"tet": 0, "perm": "0012"}]]})") ==
          ErrorKind::MalformedDocument);
    CHECK(parse_error(R"({"num_tetrahedra": 1, "gluings": [[{"tet": 3, "perm": "0123"}]]})") ==
          ErrorKind::MalformedDocument);

    // Face 0 of tet 0 goes to face 1 of tet 1, but face 1 of tet 1 points elsewhere.
    CHECK(parse_error(R"({"num_tetrahedra": 2, "gluings": [
        [{"tet": 1, "perm": "1023"}, {"tet": 1, "perm": "1023"}, {"tet": 1, "perm": "0132"}, {"tet": 1, "perm": "0132"}],
        [{"tet": 0, "perm": "1023"}, {"tet": 0, "perm": "0213"}, {"tet": 0, "perm": "0132"}, {"tet": 0, "perm": "0132"}]]})") ==
          ErrorKind::NonInvolutivePairing);

    // Involutive but the gluing maps are orientation preserving.
    CHECK(parse_error(R"({"num_tetrahedra": 2, "gluings": [
        [{"tet": 1, "perm": "0123"}, {"tet": 1, "perm": "0123"}, {"tet": 1, "perm": "0123"}, {"tet": 1, "perm": "0123"}],
        [{"tet": 0, "perm": "0123"}, {"tet": 0, "perm": "0123"}, {"tet": 0, "perm": "0123"}, {"tet": 0, "perm": "0123"}]]})") ==
          ErrorKind::OrientationViolation);

    CHECK_THROWS_AS(load_triangulation(oracle::data("no-such-file.json")), Error);
}

TEST_CASE("to_json round trip") {
    const auto t = load_triangulation(oracle::data("whl.json"));
    const auto u = parse_triangulation(to_json(t));
    CHECK(u.size() == t.size());
    for (int tet = 0; tet < t.size(); ++tet)
        for (int f = 0; f < 4; ++f) {
            CHECK(u.gluing(tet, f).tet == t.gluing(tet, f).tet);
            CHECK(u.gluing(tet, f).perm == t.gluing(tet, f).perm);
        }
}

TEST_CASE("edge classes agree with a union-find over edge slots") {
    for (const auto& name : kTorusFixtures) {
        CAPTURE(name);
        const auto t = load_triangulation(oracle::data(name));
        const auto classes = trace_edge_classes(t);
        const auto slots = oracle::edge_slot_classes(t);
        REQUIRE(classes.size() == slots.size());
        int total = 0;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            std::set<std::pair<int, int>> mine;
            for (const auto& c : classes[i].corners) mine.insert({c.tet, edge_index(c.a, c.b)});
            const std::set<std::pair<int, int>> ref(slots[i].begin(), slots[i].end());
            CHECK(mine == ref);
            total += classes[i].degree();
        }
        CHECK(total == 6 * t.size());
    }
}

TEST_CASE("edge walks close up and keep (a,b,c,d) even") {
    for (const auto& name : kTorusFixtures) {
        const auto t = load_triangulation(oracle::data(name));
        for (const auto& cls : trace_edge_classes(t)) {
            for (std::size_t i = 0; i < cls.corners.size(); ++i) {
                const auto& c = cls.corners[i];
                CHECK(parity(Perm{c.a, c.b, c.c, c.d}) == 1);
                const auto& g = t.gluing(c.tet, c.d);
                const auto& next = cls.corners[(i + 1) % cls.corners.size()];
                CHECK(next.tet == g.tet);
                CHECK(next.a == g.perm[static_cast<std::size_t>(c.a)]);
                CHECK(next.b == g.perm[static_cast<std::size_t>(c.b)]);
            }
        }
    }
}

TEST_CASE("edge and cusp counts") {
    const auto whl = load_triangulation(oracle::data("whl.json"));
    const auto fig8 = load_triangulation(oracle::data("fig8.json"));
    CHECK(trace_edge_classes(whl).size() == 4);
    const auto f8 = trace_edge_classes(fig8);
    REQUIRE(f8.size() == 2);
    CHECK(f8[0].degree() == 6);
    CHECK(f8[1].degree() == 6);

    const auto wc = trace_cusp_classes(whl);
    REQUIRE(wc.size() == 2);
    CHECK(wc[0].link_euler == 0);
    CHECK(wc[1].link_euler == 0);
    const auto fc = trace_cusp_classes(fig8);
    REQUIRE(fc.size() == 1);
    CHECK(fc[0].link_euler == 0);
    CHECK_NOTHROW(require_torus_cusps(whl));
}

TEST_CASE("every torus-cusped fixture has as many edges as tetrahedra") {
    for (const auto& name : kTorusFixtures) {
        CAPTURE(name);
        const auto t = load_triangulation(oracle::data(name));
        CHECK(static_cast<int>(trace_edge_classes(t).size()) == t.size());
        std::size_t link_triangles = 0;
        for (const auto& c : trace_cusp_classes(t)) {
            CHECK(c.link_euler == 0);
            link_triangles += c.vertices.size();
        }
        CHECK(link_triangles == static_cast<std::size_t>(4 * t.size()));
    }
}

TEST_CASE("the red edge is the first edge class and has one z corner per tetrahedron") {
    const auto t = load_triangulation(oracle::data("whl.json"));
    const auto cls = trace_edge_classes(t);
    std::map<std::pair<int, int>, int> count;
    for (const auto& c : cls[0].corners) ++count[{c.tet, c.label()}];
    for (int tet = 0; tet < 4; ++tet) CHECK(count[{tet, 0}] == 1);
}

TEST_CASE("symmetry groups") {
    const auto whl = load_triangulation(oracle::data("whl.json"));
    const auto g = symmetries(whl);
    CHECK(g.size() == 8);
    CHECK(cusp_stabilizer(whl, g).size() == 4);
    for (const auto& s : g) {
        CHECK(is_symmetry(whl, s));
        for (const auto& p : s.corner_perms) {
            // All Whitehead link automorphisms act on corners by the Klein four group.
            const Perm sq = compose(p, p);
            CHECK(sq == Perm{0, 1, 2, 3});
        }
    }

    const auto asym = load_triangulation(oracle::data("asym3.json"));
    const auto ga = symmetries(asym);
    REQUIRE(ga.size() == 1);
    CHECK(ga[0] == identity_symmetry(3));

    CHECK(symmetries(load_triangulation(oracle::data("fig8.json"))).size() >= 2);
}

TEST_CASE("symmetries form a group and act on quads") {
    for (const auto& name : kTorusFixtures) {
        CAPTURE(name);
        const auto t = load_triangulation(oracle::data(name));
        const auto g = symmetries(t);
        const auto id = identity_symmetry(t.size());
        CHECK(std::find(g.begin(), g.end(), id) != g.end());
        auto member = [&](const Symmetry& s) { return std::find(g.begin(), g.end(), s) != g.end(); };
        for (const auto& a : g) {
            bool has_inverse = false;
            for (const auto& b : g) {
                const auto ab = compose(a, b);
                CHECK(member(ab));
                if (ab == id) has_inverse = true;
                // Group action on quad coordinates.
                const auto pa = induced_quad_permutation(a), pb = induced_quad_permutation(b);
                const auto pab = induced_quad_permutation(ab);
                for (std::size_t i = 0; i < pab.size(); ++i)
                    CHECK(pab[i] == pa[static_cast<std::size_t>(pb[i])]);
            }
            CHECK(has_inverse);
            const auto p = induced_quad_permutation(a);
            for (std::size_t i = 0; i < p.size(); ++i)
                CHECK(static_cast<std::size_t>(p[i]) / 3 == static_cast<std::size_t>(a.tet_perm[i / 3]));
        }
        const auto pid = induced_quad_permutation(id);
        for (std::size_t i = 0; i < pid.size(); ++i) CHECK(pid[i] == static_cast<int>(i));
    }
}

TEST_CASE("a cusp-swapping symmetry exchanges the two central-square classes") {
    const auto t = load_triangulation(oracle::data("whl.json"));
    Symmetry s{{0, 1, 3, 2}, {Perm{3, 2, 1, 0}, Perm{3, 2, 1, 0}, Perm{2, 3, 0, 1}, Perm{2, 3, 0, 1}}};
    REQUIRE(is_symmetry(t, s));
    const auto cusps = cusp_permutation(t, s);
    CHECK(cusps == std::vector<int>{1, 0});
    const auto perm = induced_quad_permutation(s);
    const auto image = apply_quad_permutation(perm, to_rational(oracle::whl_vertex(2)));
    const auto prim = primitive(image);
    CHECK((prim == oracle::whl_vertex(1) || prim == oracle::whl_vertex(3)));
}
