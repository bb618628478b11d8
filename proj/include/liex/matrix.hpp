#pragma once

// Dense exact linear algebra as free functions over Eigen matrices.
// The algorithms only need field operations, exact equality and conj(),
// so they are written for any such scalar type; the library instantiates
// them with liex::Scalar.

#include "liex/scalar.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <utility>
#include <vector>

namespace liex {

using Index = Eigen::Index;

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using ExactMatrix = Mat<Scalar>;
using ExactVector = Vec<Scalar>;

template <class T>
struct RowEchelon {
    Mat<T> r;                   // reduced row echelon form
    std::vector<Index> pivots;  // pivot column of each nonzero row
};

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& a) {
    using T = typename Derived::Scalar;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != T(0)) return false;
    return true;
}

template <class Derived>
bool is_lower_triangular(const Eigen::MatrixBase<Derived>& a, bool strict = false) {
    using T = typename Derived::Scalar;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = strict ? i : i + 1; j < a.cols(); ++j)
            if (a(i, j) != T(0)) return false;
    return true;
}

template <class Derived>
bool is_upper_triangular(const Eigen::MatrixBase<Derived>& a) {
    return is_lower_triangular(a.transpose());
}

template <class Derived>
Mat<typename Derived::Scalar> adjoint(const Eigen::MatrixBase<Derived>& a) {
    Mat<typename Derived::Scalar> out(a.cols(), a.rows());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
    return out;
}

template <class Derived>
RowEchelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& a) {
    using T = typename Derived::Scalar;
    RowEchelon<T> out{a, {}};
    Mat<T>& r = out.r;
    Index row = 0;
    for (Index col = 0; col < r.cols() && row < r.rows(); ++col) {
        Index piv = row;
        while (piv < r.rows() && r(piv, col) == T(0)) ++piv;
        if (piv == r.rows()) continue;
        r.row(piv).swap(r.row(row));
        T inv = T(1) / r(row, col);
        for (Index j = col; j < r.cols(); ++j) r(row, j) *= inv;
        for (Index i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col) == T(0)) continue;
            T f = r(i, col);
            for (Index j = col; j < r.cols(); ++j) r(i, j) -= f * r(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& a) {
    return static_cast<Index>(rref(a).pivots.size());
}

// Kernel basis read off the reduced echelon form: one vector per free column.
template <class Derived>
std::vector<Vec<typename Derived::Scalar>> null_space(const Eigen::MatrixBase<Derived>& a) {
    using T = typename Derived::Scalar;
    auto e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (Index p : e.pivots) is_pivot[p] = true;
    std::vector<Vec<T>> basis;
    for (Index free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec<T> v = Vec<T>::Zero(a.cols());
        v(free) = T(1);
        for (std::size_t k = 0; k < e.pivots.size(); ++k) v(e.pivots[k]) = -e.r(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
Mat<T> columns(const std::vector<Vec<T>>& vs, Index rows) {
    Mat<T> m(rows, static_cast<Index>(vs.size()));
    for (std::size_t k = 0; k < vs.size(); ++k) m.col(k) = vs[k];
    return m;
}

// Gauss-Jordan inverse; throws std::domain_error when singular.
template <class Derived>
Mat<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& a) {
    using T = typename Derived::Scalar;
    if (a.rows() != a.cols()) throw std::domain_error("inverse of a non-square matrix");
    const Index n = a.rows();
    Mat<T> aug(n, 2 * n);
    aug.leftCols(n) = a;
    aug.rightCols(n) = Mat<T>::Identity(n, n);
    auto e = rref(aug);
    if (static_cast<Index>(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] != n - 1))
        throw std::domain_error("matrix is singular");
    return e.r.rightCols(n);
}

template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a) {
    using T = typename Derived::Scalar;
    Mat<T> r = a;
    T det(1);
    const Index n = r.rows();
    for (Index col = 0; col < n; ++col) {
        Index piv = col;
        while (piv < n && r(piv, col) == T(0)) ++piv;
        if (piv == n) return T(0);
        if (piv != col) {
            r.row(piv).swap(r.row(col));
            det = -det;
        }
        det *= r(col, col);
        for (Index i = col + 1; i < n; ++i) {
            if (r(i, col) == T(0)) continue;
            T f = r(i, col) / r(col, col);
            for (Index j = col; j < n; ++j) r(i, j) -= f * r(col, j);
        }
    }
    return det;
}

// A = B C with B the pivot columns of A and C the nonzero rows of rref(A).
template <class Derived>
std::pair<Mat<typename Derived::Scalar>, Mat<typename Derived::Scalar>> rank_factorization(
    const Eigen::MatrixBase<Derived>& a) {
    using T = typename Derived::Scalar;
    auto e = rref(a);
    const Index r = static_cast<Index>(e.pivots.size());
    Mat<T> b(a.rows(), r);
    for (Index k = 0; k < r; ++k) b.col(k) = a.col(e.pivots[k]);
    Mat<T> c = e.r.topRows(r);
    return {b, c};
}

// Moore-Penrose inverse from the rank factorization:
// A+ = C* (C C*)^-1 (B* B)^-1 B*
template <class Derived>
Mat<typename Derived::Scalar> pseudoinverse(const Eigen::MatrixBase<Derived>& a) {
    using T = typename Derived::Scalar;
    auto [b, c] = rank_factorization(a);
    if (b.cols() == 0) return Mat<T>::Zero(a.cols(), a.rows());
    Mat<T> bh = adjoint(b);
    Mat<T> ch = adjoint(c);
    Mat<T> cc = c * ch;
    Mat<T> bb = bh * b;
    return ch * inverse(cc) * inverse(bb) * bh;
}

// Coefficients low to high of det(x I - A), by Faddeev-LeVerrier.
template <class Derived>
std::vector<typename Derived::Scalar> characteristic_polynomial(const Eigen::MatrixBase<Derived>& a) {
    using T = typename Derived::Scalar;
    const Index n = a.rows();
    std::vector<T> c(n + 1, T(0));
    c[n] = T(1);
    Mat<T> m = Mat<T>::Zero(n, n);
    Mat<T> id = Mat<T>::Identity(n, n);
    for (Index k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * id;
        Mat<T> am = a * m;
        T tr(0);
        for (Index i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / T(static_cast<int>(k));
    }
    return c;
}

// Solve S R = B for R when S has full column rank and the columns of B lie in span(S).
template <class DS, class DB>
Mat<typename DS::Scalar> solve_in_span(const Eigen::MatrixBase<DS>& s, const Eigen::MatrixBase<DB>& b) {
    using T = typename DS::Scalar;
    Mat<T> sh = adjoint(s);
    Mat<T> g = sh * s;
    Mat<T> r = inverse(g) * (sh * b);
    if (!(Mat<T>(s * r) == Mat<T>(b))) throw std::domain_error("columns are not in the span");
    return r;
}

}  // namespace liex
