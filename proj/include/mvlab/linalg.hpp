#pragma once

#include "mvlab/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mvlab {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major
using IntVector = std::vector<Integer>;

Rational dot(const Vector& a, const Vector& b);
Rational dot(const IntVector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& a);
bool is_zero(const Vector& a);

Vector to_rational(const IntVector& a);

/// Positive multiple of `a` with coprime integer entries. `a` must be nonzero.
IntVector primitive(const Vector& a);
IntVector primitive(const IntVector& a);

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// column of each nonzero row.
std::vector<std::size_t> row_reduce(Matrix& rows);

std::size_t rank(Matrix rows);

/// Unique solution of the square system A x = b, or nullopt if A is singular.
std::optional<Vector> solve(Matrix a, Vector b);

Rational determinant(Matrix a);

/// Basis of {x : rows · x = 0} for a matrix with `cols` columns.
Matrix nullspace(Matrix rows, std::size_t cols);

}  // namespace mvlab
