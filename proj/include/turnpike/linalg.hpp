#pragma once

#include "turnpike/polynomial.hpp"
#include "turnpike/rational.hpp"

#include <vector>

namespace turnpike {

using RationalMatrix = std::vector<RationalVector>;
using PolynomialMatrix = std::vector<std::vector<Polynomial>>;

/// Exact solution of a x = b by Gaussian elimination. Throws SingularMatrix.
RationalVector solve_linear(const RationalMatrix& a, const RationalVector& b);

/// Rank of the family of row vectors.
std::size_t rank(const RationalMatrix& rows);

RationalVector multiply(const RationalMatrix& a, const RationalVector& v);

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
Polynomial determinant(PolynomialMatrix m);

}  // namespace turnpike
