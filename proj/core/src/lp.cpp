#include "spun/error.hpp"
#include "spun/hull.hpp"

#include <optional>

namespace spun {

void LPProblem::add_equality(RationalVector coeffs, Rational rhs) {
    if (coeffs.size() != dim) throw Error(ErrorKind::DimensionMismatch, "LP row length differs from dimension");
    equalities.push_back({std::move(coeffs), std::move(rhs)});
}

void LPProblem::add_inequality(RationalVector coeffs, Rational rhs) {
    if (coeffs.size() != dim) throw Error(ErrorKind::DimensionMismatch, "LP row length differs from dimension");
    inequalities.push_back({std::move(coeffs), std::move(rhs)});
}

void LPProblem::add_bounds(std::size_t var, const Rational& lo, const Rational& hi) {
    RationalVector e(dim, 0);
    e[var] = 1;
    add_inequality(e, lo);
    e[var] = -1;
    add_inequality(e, -hi);
}

bool satisfies(const LPProblem& p, const RationalVector& x) {
    if (x.size() != p.dim) return false;
    for (const auto& r : p.equalities)
        if (dot(r.coeffs, x) != r.rhs) return false;
    for (const auto& r : p.inequalities)
        if (dot(r.coeffs, x) < r.rhs) return false;
    return true;
}

bool verify_certificate(const LPProblem& p, const FarkasCertificate& cert) {
    if (cert.equality_multipliers.size() != p.equalities.size()) return false;
    if (cert.inequality_multipliers.size() != p.inequalities.size()) return false;
    RationalVector combo(p.dim, 0);
    Rational value = 0;
    for (std::size_t i = 0; i < p.equalities.size(); ++i) {
        const auto& y = cert.equality_multipliers[i];
        for (std::size_t j = 0; j < p.dim; ++j) combo[j] += y * p.equalities[i].coeffs[j];
        value += y * p.equalities[i].rhs;
    }
    for (std::size_t i = 0; i < p.inequalities.size(); ++i) {
        const auto& y = cert.inequality_multipliers[i];
        if (y < 0) return false;
        for (std::size_t j = 0; j < p.dim; ++j) combo[j] += y * p.inequalities[i].coeffs[j];
        value += y * p.inequalities[i].rhs;
    }
    return is_zero(combo) && value > 0;
}

namespace {

// Dense tableau over the standard form
//   [A | -S | Art] z = b,  z >= 0,  b >= 0
// where each free variable x_j is split into columns 2j (x+) and 2j+1 (x-).
class Tableau {
public:
    explicit Tableau(const LPProblem& p) : d_(p.dim) {
        m_ = p.equalities.size() + p.inequalities.size();
        n_real_ = 2 * d_ + p.inequalities.size();
        cols_ = n_real_ + m_;
        t_.assign(m_, RationalVector(cols_ + 1, 0));
        sign_.assign(m_, 1);
        basis_.assign(m_, 0);
        std::size_t row = 0;
        auto fill = [&](const LinearRow& r, long slack_col) {
            for (std::size_t j = 0; j < d_; ++j) {
                t_[row][2 * j] = r.coeffs[j];
                t_[row][2 * j + 1] = -r.coeffs[j];
            }
            if (slack_col >= 0) t_[row][static_cast<std::size_t>(slack_col)] = -1;
            t_[row][cols_] = r.rhs;
            if (r.rhs < 0) {
                sign_[row] = -1;
                for (auto& x : t_[row]) x = -x;
            }
            t_[row][n_real_ + row] = 1;
            basis_[row] = n_real_ + row;
            ++row;
        };
        for (const auto& r : p.equalities) fill(r, -1);
        for (std::size_t i = 0; i < p.inequalities.size(); ++i)
            fill(p.inequalities[i], static_cast<long>(2 * d_ + i));
        allowed_.assign(cols_, true);

        obj_.assign(cols_ + 1, 0);
        for (std::size_t j = n_real_; j < cols_; ++j) obj_[j] = 1;
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= t_[i][j];
    }

    enum class Status { Optimal, Unbounded };

    Status run() {
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (allowed_[j] && obj_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return Status::Optimal;
            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][enter] <= 0) continue;
                Rational ratio = t_[i][cols_] / t_[i][enter];
                if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return Status::Unbounded;
            pivot(leave, enter);
        }
    }

    Rational objective() const { return -obj_[cols_]; }

    // Phase I dual values mapped back to the caller's rows.
    FarkasCertificate certificate(std::size_t n_eq) const {
        FarkasCertificate c;
        for (std::size_t i = 0; i < m_; ++i) {
            Rational y = 1 - obj_[n_real_ + i];
            y *= sign_[i];
            if (i < n_eq)
                c.equality_multipliers.push_back(y);
            else
                c.inequality_multipliers.push_back(y);
        }
        return c;
    }

    RationalVector point() const {
        RationalVector z(cols_, 0);
        for (std::size_t i = 0; i < m_; ++i) z[basis_[i]] = t_[i][cols_];
        RationalVector x(d_);
        for (std::size_t j = 0; j < d_; ++j) x[j] = z[2 * j] - z[2 * j + 1];
        return x;
    }

    // After a successful phase I: pivot artificials out of the basis, drop
    // redundant rows, and forbid artificial columns from re-entering.
    void drop_artificials() {
        for (std::size_t i = 0; i < m_;) {
            if (basis_[i] < n_real_) {
                ++i;
                continue;
            }
            std::size_t col = n_real_;
            for (std::size_t j = 0; j < n_real_; ++j) {
                if (allowed_[j] && t_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col < n_real_) {
                pivot(i, col);
                ++i;
            } else {
                t_.erase(t_.begin() + static_cast<long>(i));
                basis_.erase(basis_.begin() + static_cast<long>(i));
                sign_.erase(sign_.begin() + static_cast<long>(i));
                --m_;
            }
        }
        for (std::size_t j = n_real_; j < cols_; ++j) allowed_[j] = false;
    }

    void set_objective(const RationalVector& c) {
        obj_.assign(cols_ + 1, 0);
        for (std::size_t j = 0; j < cols_; ++j) obj_[j] = c[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational cb = c[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= cb * t_[i][j];
        }
    }

    // Restrict to the optimal face of the current objective.
    void fix_optimal_face() {
        for (std::size_t j = 0; j < cols_; ++j)
            if (obj_[j] > 0) allowed_[j] = false;
    }

    std::size_t dim() const { return d_; }
    std::size_t columns() const { return cols_; }

private:
    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / t_[r][c];
        for (auto& x : t_[r]) x *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || t_[i][c] == 0) continue;
            Rational f = t_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
        }
        if (obj_[c] != 0) {
            Rational f = obj_[c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (t_[r][j] != 0) obj_[j] -= f * t_[r][j];
        }
        basis_[r] = c;
    }

    std::size_t d_, m_, n_real_, cols_;
    std::vector<RationalVector> t_;
    RationalVector obj_;
    std::vector<int> sign_;
    std::vector<std::size_t> basis_;
    std::vector<bool> allowed_;
};

}  // namespace

LPResult lp_feasible(const LPProblem& p) {
    for (const auto& r : p.equalities)
        if (r.coeffs.size() != p.dim) throw Error(ErrorKind::DimensionMismatch, "LP row length differs from dimension");
    for (const auto& r : p.inequalities)
        if (r.coeffs.size() != p.dim) throw Error(ErrorKind::DimensionMismatch, "LP row length differs from dimension");

    Tableau tab(p);
    tab.run();
    LPResult res;
    if (tab.objective() > 0) {
        res.feasible = false;
        res.certificate = tab.certificate(p.equalities.size());
        return res;
    }
    res.feasible = true;
    res.point = tab.point();
    return res;
}

std::optional<RationalVector> lp_lexmin(const LPProblem& p) {
    Tableau tab(p);
    tab.run();
    if (tab.objective() > 0) return std::nullopt;
    tab.drop_artificials();
    for (std::size_t k = 0; k < p.dim; ++k) {
        RationalVector c(tab.columns(), 0);
        c[2 * k] = 1;
        c[2 * k + 1] = -1;
        tab.set_objective(c);
        if (tab.run() == Tableau::Status::Unbounded) return std::nullopt;
        tab.fix_optimal_face();
    }
    return tab.point();
}

}  // namespace spun
