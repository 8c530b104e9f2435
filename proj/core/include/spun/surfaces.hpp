#pragma once

#include "spun/equations.hpp"
#include "spun/hull.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spun {

using NormalQCoordinate = RationalVector;

// Per tetrahedron: 0, 1, 2 for the permitted quad, -1 for "all zero".
using AdmissiblePattern = std::vector<int>;

struct PFCell {
    AdmissiblePattern pattern;      // support pattern of the cell
    std::vector<std::size_t> vertices;  // indices into PFComplex::vertices, sorted
    int dimension = 0;              // projective dimension (linear dimension - 1)
    bool maximal = false;
};

struct PFComplex {
    int n = 0;
    IntMatrix matching;
    std::vector<IntegerVector> vertices;  // primitive, lexicographic order
    std::vector<PFCell> cells;            // closed under faces

    std::vector<const PFCell*> maximal_cells() const;
    Cone cell_cone(const PFCell& c) const;
};

struct BoundaryCoordinate {
    // One (nu(L), -nu(M)) pair per cusp.
    std::vector<std::pair<Rational, Rational>> per_cusp;
    RationalVector flat() const;
};

// Meridian and longitude functionals, one pair per cusp.
struct CuspFunctionals {
    std::vector<SlopeFunctional> meridians;
    std::vector<SlopeFunctional> longitudes;
};

CuspFunctionals cusp_functionals(const std::vector<PeripheralCurve>& curves);

bool is_admissible(const NormalQCoordinate& x);
bool satisfies_matching(const IntMatrix& b, const NormalQCoordinate& x);

// `threads` > 1 splits the pattern range across worker threads; the result
// does not depend on it.
PFComplex enumerate_pf(const IntMatrix& b, int n, unsigned threads = 1);

std::vector<NormalQCoordinate> vertex_solutions(const PFComplex& pf);

NormalQCoordinate haken_sum(const NormalQCoordinate& x, const NormalQCoordinate& y);
bool compatible(const NormalQCoordinate& x, const NormalQCoordinate& y);

BoundaryCoordinate boundary_coordinate(const NormalQCoordinate& x, const CuspFunctionals& fns);

// Orbit partition of pf.vertices under the group generated by the given quad
// permutations.  Orbits are sorted, and listed by smallest member.
std::vector<std::vector<std::size_t>> orbits(const PFComplex& pf, const std::vector<std::vector<int>>& perms);

NormalQCoordinate apply_quad_permutation(const std::vector<int>& perm, const NormalQCoordinate& x);

std::optional<NormalQCoordinate> center_point(const PFComplex& pf);

// Vertex table export.  Columns: id, the 3n coordinates, then nu(L), -nu(M)
// per cusp when functionals are supplied.
std::string vertex_table_csv(const std::vector<NormalQCoordinate>& rows, const std::vector<int>& ids,
                             const CuspFunctionals* fns);
std::string vertex_table_json(const std::vector<NormalQCoordinate>& rows, const std::vector<int>& ids,
                              const CuspFunctionals* fns);

}  // namespace spun

namespace spun {

struct VertexRecord {
    int id = 0;
    NormalQCoordinate coordinates;
};

// Reads back the output of vertex_table_json.
std::vector<VertexRecord> parse_vertex_table_json(const std::string& text);

}  // namespace spun
