// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.  Limits are pinned here and not read from the environment.

#include "oracles.hpp"

#include "cli.hpp"
#include "spun/angles.hpp"
#include "spun/error.hpp"
#include "spun/probe.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace spun;

namespace {

constexpr double kLimitVertices = 5.0;      // seconds
constexpr double kLimitCells = 5.0;
constexpr double kLimitAngles = 2.0;
constexpr double kLimitCorrespond = 60.0;
constexpr double kLimitProbe = 1.0;         // per path
constexpr double kProbeAngle = 1e-3;        // radians
constexpr int kProbeSamples = 4096;
constexpr double kCompleteTolerance = 1e-9;

struct Check {
    bool ok = true;
    std::vector<std::string> notes;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_time(double s) {
    std::ostringstream o;
    o.precision(3);
    o << std::fixed << s << " s";
    return o.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

std::vector<double> ct(const std::vector<long>& x) {
    std::vector<double> xi(x.size());
    for (std::size_t t = 0; t < x.size(); t += 3) {
        xi[t] = static_cast<double>(x[t + 2] - x[t + 1]);
        xi[t + 1] = static_cast<double>(x[t] - x[t + 2]);
        xi[t + 2] = static_cast<double>(x[t + 1] - x[t]);
    }
    return xi;
}

std::vector<long> row(int id) {
    for (const auto& r : oracle::whl_vertex_table())
        if (r.id == id) return r.q;
    return {};
}

std::vector<long> sum(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return s;
}

// 1. The `vertices` command on the fixture reproduces the vertex table.
Check criterion1() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    cli::RunConfig cfg;
    cfg.command = "vertices";
    cfg.input = oracle::data("whl.json");
    cfg.format = cli::Format::Csv;
    std::ostringstream out, err;
    const int code = cli::run(cfg, out, err);
    const double dt = seconds_since(t0);
    c.require(code == cli::kExitOk, "vertices exit code " + std::to_string(code));
    auto lines = split(out.str(), '\n');
    c.require(lines.size() == 21, "expected header plus 20 rows, got " + std::to_string(lines.size()));
    std::map<int, std::vector<long>> got;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i], ',');
        std::vector<long> v;
        for (std::size_t k = 1; k < cells.size(); ++k) v.push_back(std::stol(cells[k]));
        got[std::stoi(cells[0])] = v;
    }
    for (const auto& r : oracle::whl_vertex_table()) {
        auto expected = r.q;
        expected.insert(expected.end(), r.boundary.begin(), r.boundary.end());
        c.require(got.count(r.id) && got[r.id] == expected, "row V" + std::to_string(r.id) + " differs");
    }
    c.require(dt < kLimitVertices, "took " + fmt_time(dt));
    c.notes.push_back(fmt_time(dt));
    return c;
}

// 2. Maximal cells: 28 arcs and one quadrilateral.
Check criterion2() {
    Check c;
    const auto& w = oracle::whl();
    const auto t0 = std::chrono::steady_clock::now();
    const auto pf = enumerate_pf(w.matching, w.tri.size());
    const double dt = seconds_since(t0);
    int arcs = 0, squares = 0, other = 0;
    for (const auto* cell : pf.maximal_cells()) {
        if (cell->dimension == 1 && cell->vertices.size() == 2)
            ++arcs;
        else if (cell->dimension == 2 && cell->vertices.size() == 4)
            ++squares;
        else
            ++other;
    }
    c.require(arcs == 28, std::to_string(arcs) + " arcs");
    c.require(squares == 1, std::to_string(squares) + " squares");
    c.require(other == 0, std::to_string(other) + " other maximal cells");
    c.require(dt < kLimitCells, "took " + fmt_time(dt));
    c.notes.push_back(fmt_time(dt));
    return c;
}

// 3. Q-matching from A agrees with the direct construction up to row sign;
// the Whitehead link rows span the two published equations.
Check criterion3() {
    Check c;
    for (const auto* name : {"whl.json", "fig8.json"}) {
        const auto t = load_triangulation(oracle::data(name));
        const auto a = qmatching_from_A(edge_rows(t));
        const auto d = qmatching_direct(t);
        c.require(a.size() == d.size(), std::string(name) + ": row count");
        for (std::size_t i = 0; i < std::min(a.size(), d.size()); ++i) {
            IntRow neg = d[i];
            for (auto& x : neg) x = -x;
            c.require(a[i] == d[i] || a[i] == neg, std::string(name) + ": row " + std::to_string(i));
        }
    }
    const std::vector<long> red = {0, 1, -1, 0, 1, -1, 0, 1, -1, 0, 1, -1};
    const std::vector<long> second = {1, -1, 0, 1, -1, 0, -1, 1, 0, -1, 1, 0};
    std::vector<RationalVector> ours, both;
    for (const auto& r : oracle::whl().matching) ours.push_back(to_rational(r));
    both = ours;
    both.push_back(to_rational(red));
    both.push_back(to_rational(second));
    c.require(oracle::rank(ours, 12) == 2, "matching rank");
    c.require(oracle::rank(both, 12) == 2, "published rows not in the row space");
    return c;
}

// 4. The eight semi-angle structures and their dual lists.
Check criterion4() {
    Check c;
    const auto& w = oracle::whl();
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& a : oracle::whl_angle_table()) {
        const SemiAngleStructure s{to_rational(a.alpha)};
        c.require(is_semi_angle_structure(s, w.gluing.edge_rows), a.name + " is not a semi-angle structure");
        std::vector<int> dual;
        for (std::size_t v = 0; v < w.pf.vertices.size(); ++v) {
            if (dot(s.angles, to_rational(w.pf.vertices[v])) != 0) continue;
            for (const auto& r : oracle::whl_vertex_table())
                if (to_integer(r.q) == w.pf.vertices[v]) dual.push_back(r.id);
        }
        std::sort(dual.begin(), dual.end());
        c.require(dual == a.dual, a.name + " dual list differs");
    }
    const double dt = seconds_since(t0);
    c.require(dt < kLimitAngles, "took " + fmt_time(dt));
    c.notes.push_back(fmt_time(dt));
    return c;
}

// 5. Pre-variety rays and cones correspond to PF vertices and cells.
Check criterion5() {
    Check c;
    const auto& w = oracle::whl();
    const auto t0 = std::chrono::steady_clock::now();
    const auto pv = prevariety(w.tri);
    const double dt = seconds_since(t0);
    const auto rep = correspond(pv, w.pf);
    c.require(rep.bijective, "not bijective");
    c.require(rep.cells_match, "cell incidence differs");
    for (const auto& p : rep.problems) c.notes.push_back(p);
    c.require(dt < kLimitCorrespond, "took " + fmt_time(dt));
    c.notes.push_back(fmt_time(dt));
    return c;
}

// 6. Degeneration paths 1, 2, 4.
Check criterion6() {
    Check c;
    const std::vector<std::pair<std::string, std::vector<double>>> targets = {
        {"whl-1", ct(sum(row(16), row(19)))},
        {"whl-2", ct(row(8))},
        {"whl-4", ct(sum(row(1), row(3)))},
    };
    for (const auto& [name, target] : targets) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = log_limit_probe(find_path(name), kProbeSamples);
        const double dt = seconds_since(t0);
        const double ang = oracle::angle(r.direction, target);
        c.require(r.divergent, name + " not divergent");
        c.require(ang < kProbeAngle, name + " angle " + std::to_string(ang));
        c.require(dt < kLimitProbe, name + " took " + fmt_time(dt));
        std::ostringstream o;
        o << name << " angle " << ang << " in " << fmt_time(dt);
        c.notes.push_back(o.str());
    }
    return c;
}

// 7. Edge and meridian rows at the complete structure.
Check criterion7() {
    Check c;
    const auto& g = oracle::whl().gluing;
    const ShapeAssignment s{std::vector<std::complex<double>>(4, {0.0, 1.0})};
    for (std::size_t i = 0; i < g.edge_rows.size(); ++i)
        c.require(std::abs(evaluate_row(g.edge_rows[i], s) - 1.0) < kCompleteTolerance,
                  "edge row " + std::to_string(i));
    int meridians = 0;
    for (const auto& p : g.peripheral_rows) {
        if (p.kind != CurveKind::Meridian) continue;
        ++meridians;
        c.require(std::abs(evaluate_row(p.row, s) - 1.0) < kCompleteTolerance, p.name);
    }
    c.require(meridians == 2, std::to_string(meridians) + " meridian rows");
    return c;
}

// 8. Property suites.
Check criterion8() {
    Check c;
    std::mt19937 rng(20240601);

    {  // Hull versus brute force.
        std::uniform_int_distribution<std::size_t> dim(2, 5), cons(2, 8);
        int bad = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const auto cone = oracle::random_cone(rng, dim(rng), cons(rng));
            const auto expected = oracle::brute_force_rays(cone);
            try {
                const auto got = extreme_rays(cone);
                if (!expected || got.rays != *expected) ++bad;
            } catch (const Error&) {
                if (expected) ++bad;
            }
        }
        c.require(bad == 0, "hull: " + std::to_string(bad) + " of 200 cones differ");
    }
    {  // Dual fan versus max attained twice.
        std::uniform_int_distribution<std::size_t> dim(1, 4), pts(2, 6);
        int bad = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const auto d = dim(rng);
            const auto s = oracle::random_support(rng, d, pts(rng));
            const auto fan = spherical_dual(s);
            for (int k = 0; k < 40; ++k) {
                const auto xi = oracle::random_direction(rng, d, 2);
                if (oracle::in_fan(fan, xi) != max_attained_twice(s, xi)) ++bad;
            }
        }
        c.require(bad == 0, "dual fan: " + std::to_string(bad) + " disagreements");
    }
    {  // N-map round trip on every enumerated ray.
        const auto pv = prevariety(oracle::whl().tri);
        for (const auto& r : pv.rays) c.require(normal_to_xi(xi_to_normal(r)) == to_rational(r), "round trip");
    }
    for (const auto* name : {"whl.json", "fig8.json", "asym3.json"}) {
        const auto t = load_triangulation(oracle::data(name));
        c.require(trace_edge_classes(t).size() == static_cast<std::size_t>(t.size()),
                  std::string(name) + ": edge count");

        // Orbit refinement along trivial <= cusp stabiliser <= full group.
        const auto pf = enumerate_pf(qmatching_direct(t), t.size());
        const auto full = symmetries(t);
        const std::vector<std::vector<Symmetry>> chain = {{identity_symmetry(t.size())}, cusp_stabilizer(t, full), full};
        std::vector<std::vector<std::vector<std::size_t>>> parts;
        for (const auto& g : chain) {
            std::vector<std::vector<int>> perms;
            for (const auto& s : g) perms.push_back(induced_quad_permutation(s));
            parts.push_back(orbits(pf, perms));
        }
        for (std::size_t k = 0; k + 1 < parts.size(); ++k)
            for (const auto& small : parts[k]) {
                bool inside = false;
                for (const auto& big : parts[k + 1])
                    if (std::includes(big.begin(), big.end(), small.begin(), small.end())) inside = true;
                c.require(inside, std::string(name) + ": orbit refinement");
            }
    }
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"vertex table", criterion1},     {"cell structure", criterion2},
        {"Q-matching", criterion3},       {"semi-angle structures", criterion4},
        {"correspondence", criterion5},   {"degeneration probes", criterion6},
        {"complete structure", criterion7}, {"property suites", criterion8},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.ok = false;
            c.notes.push_back(std::string("exception: ") + e.what());
        }
        all = all && c.ok;
        std::cout << "criterion " << (i + 1) << ": " << (c.ok ? "PASS" : "FAIL") << "  " << criteria[i].first;
        for (const auto& n : c.notes) std::cout << " [" << n << "]";
        std::cout << std::endl;
    }
    return all ? 0 : 1;
}
