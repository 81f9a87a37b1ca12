#include "zdelta/linalg.hpp"

#include "zdelta/errors.hpp"

namespace zd {

Matrix identity(std::size_t n) {
    Matrix m(n, Vector(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Vector mat_vec(const Matrix& m, const Vector& v) {
    Vector r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw ShapeError("mat_vec: dimension mismatch");
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    }
    return r;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    std::size_t k = b.size();
    std::size_t n = b.empty() ? 0 : b[0].size();
    Matrix r(a.size(), Vector(n));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != k) throw ShapeError("mat_mul: dimension mismatch");
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][l] * b[l][j];
    }
    return r;
}

Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw ShapeError("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vector solve_linear_system(Matrix m, Vector rhs) {
    std::size_t n = m.size();
    if (rhs.size() != n) throw ShapeError("solve: rhs length");
    for (const auto& row : m)
        if (row.size() != n) throw ShapeError("solve: matrix not square");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw SingularMatrix("singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

std::size_t rank(Matrix m) {
    std::size_t r = 0;
    std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

bool is_symmetric(const Matrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (m[i][j] != m[j][i]) return false;
    }
    return true;
}

Inertia inertia(const Matrix& sym) {
    if (!is_symmetric(sym)) throw ShapeError("inertia: matrix not symmetric");
    Matrix a = sym;
    std::size_t n = a.size();
    Inertia in;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t j = k + 1;
            while (j < n && a[j][j] == 0) ++j;
            if (j < n) {
                std::swap(a[j], a[k]);
                for (auto& row : a) std::swap(row[j], row[k]);
            } else {
                j = k + 1;
                while (j < n && a[k][j] == 0) ++j;
                if (j == n) {
                    ++in.zero;
                    continue;
                }
                // all remaining diagonal entries vanish; k <- k + j creates a pivot 2 a_kj
                for (std::size_t c = 0; c < n; ++c) a[k][c] += a[j][c];
                for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][j];
            }
        }
        const Rational d = a[k][k];
        if (d > 0) ++in.positive; else ++in.negative;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rational f = a[i][k] / d;
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
            a[i][k] = 0;
        }
        for (std::size_t j = k + 1; j < n; ++j) a[k][j] = 0;
    }
    return in;
}

bool is_negative_definite(const Matrix& sym) {
    Inertia in = inertia(sym);
    return in.negative == static_cast<int>(sym.size());
}

}  // namespace zd
