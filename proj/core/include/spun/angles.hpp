#pragma once

#include "spun/equations.hpp"
#include "spun/hull.hpp"
#include "spun/surfaces.hpp"

#include <string>
#include <vector>

namespace spun {

// Angles in units of pi, indexed like quad types.
struct SemiAngleStructure {
    RationalVector angles;
};

bool is_semi_angle_structure(const SemiAngleStructure& a, const std::vector<ExponentVector>& edge_rows);

// Variables alpha_0 .. alpha_{3n-1}.  Equalities: per tetrahedron the three
// angles sum to 1, per edge the corner-weighted sum is 2.  Bounds 0..1.
LPProblem angle_polytope(const Triangulation& t, const std::vector<ExponentVector>& edge_rows);

struct DualSearch {
    bool feasible = false;
    SemiAngleStructure alpha;  // lexicographically smallest dual structure
    LPProblem system;          // polytope plus the vanishing constraints
    FarkasCertificate certificate;
};

// Semi-angle structure vanishing on every quad in the support of S.
DualSearch find_dual_semiangle(const NormalQCoordinate& s, const LPProblem& polytope);

struct CertificateReport {
    std::vector<int> surface_ids;
    bool feasible = false;
    SemiAngleStructure alpha;
    FarkasCertificate certificate;
    bool pairwise_compatible = true;
    // The essentialness conclusion assumes two-sided surfaces, which is not
    // decided here.
    bool two_sidedness_unchecked = true;
};

// One semi-angle structure dual to all given surfaces at once.  Incompatible
// surfaces are accepted and flagged unless `require_compatible` is set, in
// which case IncompatibleSupports is thrown.
CertificateReport certify_essential(const std::vector<NormalQCoordinate>& surfaces, const std::vector<int>& ids,
                                    const LPProblem& polytope, bool require_compatible = false);

std::string to_json(const CertificateReport& r);

}  // namespace spun
