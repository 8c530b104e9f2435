#include "spun/hull.hpp"

#include "spun/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace spun {

Cone Cone::full(std::size_t dim) {
    Cone c;
    c.dim = dim;
    return c;
}

Cone Cone::orthant(std::size_t dim) {
    Cone c;
    c.dim = dim;
    for (std::size_t i = 0; i < dim; ++i) {
        RationalVector e(dim, 0);
        e[i] = 1;
        c.inequalities.push_back(std::move(e));
    }
    return c;
}

bool Cone::contains(const RationalVector& x) const {
    for (const auto& e : equalities)
        if (dot(e, x) != 0) return false;
    for (const auto& a : inequalities)
        if (dot(a, x) < 0) return false;
    return true;
}

bool Cone::contains(const IntegerVector& x) const { return contains(to_rational(x)); }

std::size_t RaySet::dimension() const {
    if (rays.empty() && lineality.empty()) return 0;
    std::vector<RationalVector> gens;
    for (const auto& r : rays) gens.push_back(to_rational(r));
    for (const auto& l : lineality) gens.push_back(to_rational(l));
    return rank(gens, gens.front().size());
}

std::vector<RationalVector> nullspace(const std::vector<RationalVector>& rows, std::size_t dim) {
    for (const auto& r : rows) {
        if (r.size() != dim) throw Error(ErrorKind::DimensionMismatch, "nullspace: row length differs from ambient dimension");
    }
    auto rref = row_reduce(rows, dim);
    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(dim, false);
    for (const auto& r : rref) {
        std::size_t c = 0;
        while (r[c] == 0) ++c;
        pivot_col.push_back(c);
        is_pivot[c] = true;
    }
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < dim; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(dim, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < rref.size(); ++i) v[pivot_col[i]] = -rref[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct DDRay {
    IntegerVector v;
    Bits tight;
};

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= (std::uint64_t{1} << (i % 64)); }

std::size_t popcount(const Bits& b) {
    std::size_t n = 0;
    for (auto w : b) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

Bits bit_and(const Bits& a, const Bits& b) {
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
    return out;
}

bool subset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

std::size_t nonzeros(const IntegerVector& v) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; }));
}

// Extreme rays of {y in Q^k : A y >= 0} where A has full column rank k.
std::vector<IntegerVector> dd_pointed(const std::vector<IntegerVector>& rows, std::size_t k) {
    const std::size_t m = rows.size();

    // Initial basis: first k independent rows in the given order.
    std::vector<std::size_t> basis;
    std::vector<RationalVector> reduced;
    for (std::size_t i = 0; i < m && basis.size() < k; ++i) {
        auto trial = reduced;
        trial.push_back(to_rational(rows[i]));
        trial = row_reduce(trial, k);
        if (trial.size() > reduced.size()) {
            reduced = std::move(trial);
            basis.push_back(i);
        }
    }

    // Columns of the inverse of the basis block are the initial rays.
    std::vector<RationalVector> aug(k, RationalVector(2 * k, 0));
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) aug[r][c] = rows[basis[r]][c];
        aug[r][k + r] = 1;
    }
    aug = row_reduce(aug, 2 * k);

    std::vector<DDRay> rays;
    std::vector<bool> processed(m, false);
    for (std::size_t j = 0; j < k; ++j) {
        RationalVector col(k);
        for (std::size_t r = 0; r < k; ++r) col[r] = aug[r][k + j];
        DDRay ray{primitive(col), make_bits(m)};
        for (std::size_t r = 0; r < k; ++r)
            if (r != j) set_bit(ray.tight, basis[r]);
        rays.push_back(std::move(ray));
    }
    for (auto b : basis) processed[b] = true;

    for (std::size_t i = 0; i < m; ++i) {
        if (processed[i]) continue;
        processed[i] = true;
        const auto& a = rows[i];

        std::vector<Integer> val(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<DDRay> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(a, rays[r].v);
            if (val[r] > 0) {
                pos.push_back(r);
                next.push_back(rays[r]);
            } else if (val[r] < 0) {
                neg.push_back(r);
            } else {
                DDRay z = rays[r];
                set_bit(z.tight, i);
                next.push_back(std::move(z));
            }
        }
        if (neg.empty()) {
            rays = std::move(next);
            continue;
        }

        for (auto p : pos) {
            for (auto n : neg) {
                Bits common = bit_and(rays[p].tight, rays[n].tight);
                if (k >= 2 && popcount(common) + 2 < k) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == n) continue;
                    if (subset(common, rays[r].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                IntegerVector v(k);
                for (std::size_t c = 0; c < k; ++c) v[c] = val[p] * rays[n].v[c] - val[n] * rays[p].v[c];
                set_bit(common, i);
                next.push_back(DDRay{primitive(v), std::move(common)});
            }
        }
        rays = std::move(next);
    }

    std::vector<IntegerVector> out;
    for (auto& r : rays) out.push_back(std::move(r.v));
    return out;
}

std::vector<IntegerVector> integer_basis(const std::vector<RationalVector>& basis) {
    std::vector<IntegerVector> out;
    for (const auto& b : basis) out.push_back(primitive(b));
    return out;
}

// Row a (ambient coordinates) expressed in the coordinates of the basis K.
IntegerVector restrict_row(const RationalVector& a, const std::vector<IntegerVector>& K) {
    RationalVector r(K.size());
    for (std::size_t j = 0; j < K.size(); ++j) r[j] = dot(a, to_rational(K[j]));
    return primitive(r);
}

void check_dims(const Cone& c) {
    for (const auto& r : c.equalities)
        if (r.size() != c.dim) throw Error(ErrorKind::DimensionMismatch, "equality row has wrong length");
    for (const auto& r : c.inequalities)
        if (r.size() != c.dim) throw Error(ErrorKind::DimensionMismatch, "inequality row has wrong length");
}

}  // namespace

RaySet extreme_rays(const Cone& c, LinealityPolicy policy) {
    check_dims(c);
    const std::size_t d = c.dim;
    RaySet out;

    auto equalities = c.equalities;
    auto K = integer_basis(nullspace(equalities, d));
    if (K.empty()) return out;

    auto restricted = [&](const std::vector<IntegerVector>& basis) {
        std::vector<IntegerVector> rows;
        for (const auto& a : c.inequalities) {
            auto r = restrict_row(a, basis);
            if (!is_zero(r)) rows.push_back(std::move(r));
        }
        return rows;
    };

    auto rows = restricted(K);
    std::vector<RationalVector> rrows;
    for (const auto& r : rows) rrows.push_back(to_rational(r));
    auto lin_y = nullspace(rrows, K.size());
    if (!lin_y.empty()) {
        if (policy == LinealityPolicy::Reject)
            throw Error(ErrorKind::NotPointed, "cone has a lineality space of dimension " + std::to_string(lin_y.size()));
        std::vector<RationalVector> lin_x;
        for (const auto& l : lin_y) {
            RationalVector x(d, 0);
            for (std::size_t j = 0; j < K.size(); ++j)
                for (std::size_t t = 0; t < d; ++t) x[t] += l[j] * K[j][t];
            lin_x.push_back(std::move(x));
        }
        for (const auto& r : row_reduce(lin_x, d)) out.lineality.push_back(sign_normalized(primitive(r)));
        for (const auto& l : out.lineality) equalities.push_back(to_rational(l));
        K = integer_basis(nullspace(equalities, d));
        if (K.empty()) return out;
        rows = restricted(K);
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const IntegerVector& a, const IntegerVector& b) { return nonzeros(a) < nonzeros(b); });

    for (const auto& y : dd_pointed(rows, K.size())) {
        IntegerVector x(d, 0);
        for (std::size_t j = 0; j < K.size(); ++j)
            for (std::size_t t = 0; t < d; ++t) x[t] += y[j] * K[j][t];
        out.rays.push_back(primitive(x));
    }
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
    return out;
}

Cone cone_intersect(const Cone& a, const Cone& b) {
    if (a.dim != b.dim) {
        throw Error(ErrorKind::DimensionMismatch,
                    "cone_intersect: dimensions " + std::to_string(a.dim) + " and " + std::to_string(b.dim));
    }
    Cone c;
    c.dim = a.dim;
    c.equalities = a.equalities;
    c.equalities.insert(c.equalities.end(), b.equalities.begin(), b.equalities.end());
    c.inequalities = a.inequalities;
    c.inequalities.insert(c.inequalities.end(), b.inequalities.begin(), b.inequalities.end());
    return c;
}

bool cone_contains(const Cone& outer, const RaySet& inner) {
    for (const auto& r : inner.rays)
        if (!outer.contains(r)) return false;
    for (const auto& l : inner.lineality) {
        auto q = to_rational(l);
        for (const auto& e : outer.equalities)
            if (dot(e, q) != 0) return false;
        for (const auto& a : outer.inequalities)
            if (dot(a, q) != 0) return false;
    }
    return true;
}

Cone canonical_constraints(const Cone& c) {
    auto normalize = [](const std::vector<RationalVector>& rows, bool flip) {
        std::vector<IntegerVector> out;
        for (const auto& r : rows) {
            auto p = primitive(r);
            if (is_zero(p)) continue;
            out.push_back(flip ? sign_normalized(p) : p);
        }
        std::sort(out.begin(), out.end(), lex_less);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        std::vector<RationalVector> back;
        for (const auto& p : out) back.push_back(to_rational(p));
        return back;
    };
    Cone out;
    out.dim = c.dim;
    out.equalities = normalize(c.equalities, true);
    out.inequalities = normalize(c.inequalities, false);
    return out;
}

std::string dump(const Cone& c) {
    std::ostringstream os;
    auto row = [&](const RationalVector& r) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << to_string(r[i]);
    };
    os << "cone dim " << c.dim << "\n";
    for (const auto& e : c.equalities) {
        os << "  eq  ";
        row(e);
        os << " = 0\n";
    }
    for (const auto& a : c.inequalities) {
        os << "  ge  ";
        row(a);
        os << " >= 0\n";
    }
    if (c.rays) {
        for (const auto& r : *c.rays) {
            os << "  ray ";
            row(to_rational(r));
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace spun
