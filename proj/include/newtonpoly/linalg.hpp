#pragma once

// Exact dense linear algebra over Q and Z. Matrices are row-major vectors of rows.

#include "newtonpoly/numeric.hpp"

#include <optional>
#include <vector>

namespace newtonpoly {

using RationalMatrix = std::vector<RationalVector>;
using IntegerMatrix = std::vector<IntegerVector>;

struct RowEchelon {
    RationalMatrix rows;              // nonzero rows of the reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon rref(RationalMatrix m, std::size_t cols);
std::size_t rank(const RationalMatrix& m, std::size_t cols);
std::size_t rank(const IntegerMatrix& m, std::size_t cols);

/// Basis of {x : m x = 0} read off the reduced echelon form, each vector
/// integral, primitive, first nonzero entry positive.
IntegerMatrix kernel_basis(const RationalMatrix& m, std::size_t cols);
IntegerMatrix kernel_basis(const IntegerMatrix& m, std::size_t cols);

/// Some solution of m x = rhs, or nullopt when inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& rhs, std::size_t cols);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(IntegerMatrix m);

/// Z-basis (as columns, returned as a list of vectors) of {x in Z^cols : m x = 0}.
/// Unimodular column reduction, so the result spans the whole saturated lattice.
IntegerMatrix lattice_kernel_basis(const IntegerMatrix& m, std::size_t cols);

/// Affine rank (dimension of the affine hull) of a point set; -1 when empty.
int affine_rank(const std::vector<IntVector>& points);
int affine_rank(const std::vector<IntegerVector>& points);

RationalMatrix to_rational(const IntegerMatrix& m);

}  // namespace newtonpoly
