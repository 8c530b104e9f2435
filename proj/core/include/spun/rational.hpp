#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace spun {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Rational dot(const RationalVector& a, const RationalVector& b);
Integer dot(const IntegerVector& a, const IntegerVector& b);

RationalVector to_rational(const IntegerVector& v);
RationalVector to_rational(const std::vector<long>& v);
IntegerVector to_integer(const std::vector<long>& v);

// Positive rescaling of a rational vector to a primitive integer vector
// (gcd of entries 1).  The zero vector maps to itself.
IntegerVector primitive(const RationalVector& v);
IntegerVector primitive(const IntegerVector& v);

// Sign fix for lines, not rays: first nonzero entry made positive.
IntegerVector sign_normalized(const IntegerVector& v);

bool is_zero(const RationalVector& v);
bool is_zero(const IntegerVector& v);

// Lexicographic comparison on integer vectors of equal length.
bool lex_less(const IntegerVector& a, const IntegerVector& b);

// Row reduction helpers.  Rows are vectors of length `dim`.
std::size_t rank(const std::vector<RationalVector>& rows, std::size_t dim);
std::vector<RationalVector> row_reduce(std::vector<RationalVector> rows, std::size_t dim);

}  // namespace spun
