#pragma once

#include "spun/equations.hpp"
#include "spun/hull.hpp"
#include "spun/surfaces.hpp"

#include <string>
#include <vector>

namespace spun {

struct DualFan {
    std::size_t dim = 0;
    std::vector<Cone> cones;  // rays cached
};

struct PreVarietyCone {
    Cone cone;      // constraints as intersected
    RaySet rays;    // generators
    int dimension;  // projective dimension
};

struct PreVariety {
    std::size_t dim = 0;
    std::vector<PreVarietyCone> cones;  // maximal cones
    std::vector<IntegerVector> rays;    // union of cone rays, lexicographic
};

using TropicalRay = IntegerVector;

// 3n supports: tetrahedron 0's p, p', p'', then tetrahedron 1's, ...
std::vector<SupportSet> parameter_supports(int n);
// {row, 0} per edge row; a zero row gives the one-point support {0}.
std::vector<SupportSet> gluing_supports(const std::vector<ExponentVector>& rows);

DualFan spherical_dual(const SupportSet& s);

// max over the support of xi . alpha is attained at least twice.
bool max_attained_twice(const SupportSet& s, const RationalVector& xi);

// Intersection of the dual fans of the given supports, folded in order.
PreVariety prevariety_from_supports(std::size_t dim, const std::vector<SupportSet>& supports);
PreVariety prevariety(const Triangulation& t);

NormalQCoordinate xi_to_normal(const RationalVector& xi);
NormalQCoordinate xi_to_normal(const TropicalRay& xi);
RationalVector normal_to_xi(const NormalQCoordinate& x);

struct CorrespondenceReport {
    bool bijective = false;
    bool cells_match = false;
    // ray_to_vertex[i] is the PF vertex matching pre-variety ray i.
    std::vector<std::size_t> ray_to_vertex;
    // For each maximal pre-variety cone, the matched maximal PF cell.
    std::vector<std::size_t> cone_to_cell;
    std::vector<std::string> problems;
};

CorrespondenceReport correspond(const PreVariety& pv, const PFComplex& pf);

std::string fan_json(const PreVariety& pv);
std::string ray_csv(const PreVariety& pv);

}  // namespace spun
