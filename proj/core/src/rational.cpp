#include "spun/rational.hpp"

#include <utility>

namespace spun {

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer dot(const IntegerVector& a, const IntegerVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RationalVector to_rational(const IntegerVector& v) {
    RationalVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

RationalVector to_rational(const std::vector<long>& v) {
    RationalVector out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

IntegerVector to_integer(const std::vector<long>& v) {
    IntegerVector out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

IntegerVector primitive(const RationalVector& v) {
    Integer l = 1;
    for (const auto& x : v) {
        if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    IntegerVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * l;
        out[i] = s.get_num();
    }
    return primitive(out);
}

IntegerVector primitive(const IntegerVector& v) {
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    IntegerVector out = v;
    if (g > 1) {
        for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
    return out;
}

IntegerVector sign_normalized(const IntegerVector& v) {
    IntegerVector out = v;
    for (const auto& x : out) {
        if (x == 0) continue;
        if (x < 0) {
            for (auto& y : out) y = -y;
        }
        break;
    }
    return out;
}

bool is_zero(const RationalVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool is_zero(const IntegerVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool lex_less(const IntegerVector& a, const IntegerVector& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

std::vector<RationalVector> row_reduce(std::vector<RationalVector> m, std::size_t dim) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < dim; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

std::size_t rank(const std::vector<RationalVector>& rows, std::size_t dim) {
    return row_reduce(rows, dim).size();
}

}  // namespace spun
