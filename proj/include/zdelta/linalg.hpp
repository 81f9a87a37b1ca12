#pragma once

#include <vector>

#include "zdelta/rational.hpp"

namespace zd {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

Matrix identity(std::size_t n);
Vector mat_vec(const Matrix& m, const Vector& v);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Rational dot(const Vector& a, const Vector& b);

// Gaussian elimination; throws SingularMatrix
Vector solve_linear_system(Matrix m, Vector rhs);

std::size_t rank(Matrix m);

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};
// congruence diagonalization of a symmetric matrix
Inertia inertia(const Matrix& sym);
bool is_symmetric(const Matrix& m);
bool is_negative_definite(const Matrix& sym);

}  // namespace zd
