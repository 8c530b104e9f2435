#pragma once

#include "spun/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spun {

// Polyhedral cone {x : E x = 0, I x >= 0} in Q^dim.
struct Cone {
    std::size_t dim = 0;
    std::vector<RationalVector> equalities;
    std::vector<RationalVector> inequalities;
    // Extreme rays, if already computed.  Left empty by every operation that
    // changes the constraints.
    std::optional<std::vector<IntegerVector>> rays;

    static Cone full(std::size_t dim);
    static Cone orthant(std::size_t dim);
    bool contains(const RationalVector& x) const;
    bool contains(const IntegerVector& x) const;
};

struct RaySet {
    std::vector<IntegerVector> rays;       // primitive, sorted lexicographically
    std::vector<IntegerVector> lineality;  // primitive basis, first nonzero entry positive
    std::size_t dimension() const;         // linear dimension of the cone
};

enum class LinealityPolicy { Reject, Report };

std::vector<RationalVector> nullspace(const std::vector<RationalVector>& rows, std::size_t dim);

// Double description.  With LinealityPolicy::Report the rays are those of the
// cone intersected with the orthogonal complement of its lineality space.
RaySet extreme_rays(const Cone& c, LinealityPolicy policy = LinealityPolicy::Reject);

Cone cone_intersect(const Cone& a, const Cone& b);

// True when every generator of `inner` lies in `outer`.
bool cone_contains(const Cone& outer, const RaySet& inner);

// Constraints with each row scaled to a primitive integer vector (equalities
// also sign-normalized), duplicates removed, sorted.  Two cones with equal
// canonical constraints are equal; the converse need not hold.
Cone canonical_constraints(const Cone& c);

std::string dump(const Cone& c);

// ---------------------------------------------------------------------------
// Exact linear feasibility.

struct LinearRow {
    RationalVector coeffs;
    Rational rhs;
};

// {x in Q^dim : eq.coeffs . x = eq.rhs, ineq.coeffs . x >= ineq.rhs}
struct LPProblem {
    std::size_t dim = 0;
    std::vector<LinearRow> equalities;
    std::vector<LinearRow> inequalities;

    void add_equality(RationalVector coeffs, Rational rhs);
    void add_inequality(RationalVector coeffs, Rational rhs);
    void add_bounds(std::size_t var, const Rational& lo, const Rational& hi);
};

// Multipliers y_E (free) and y_I (>= 0) with y_E E + y_I I = 0 and
// y_E b_E + y_I b_I > 0.
struct FarkasCertificate {
    RationalVector equality_multipliers;
    RationalVector inequality_multipliers;
};

struct LPResult {
    bool feasible = false;
    RationalVector point;
    FarkasCertificate certificate;
};

LPResult lp_feasible(const LPProblem& p);

// Lexicographically smallest feasible point (minimise x_0, then x_1, ...).
// Returns nullopt when infeasible or when some coordinate is unbounded below.
std::optional<RationalVector> lp_lexmin(const LPProblem& p);

bool satisfies(const LPProblem& p, const RationalVector& x);
bool verify_certificate(const LPProblem& p, const FarkasCertificate& cert);

}  // namespace spun
