#pragma once

#include "liex/basis_change.hpp"
#include "liex/extension.hpp"
#include "liex/linalg.hpp"

#include <initializer_list>
#include <random>

namespace testing {

using liex::ExactMatrix;
using liex::Index;
using liex::Scalar;

inline Scalar q(long p, long d = 1) { return Scalar::ratio(p, d); }
inline const Scalar I = Scalar::i();

inline ExactMatrix mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
    const auto r = static_cast<Index>(rows.size());
    const auto c = static_cast<Index>(rows.begin()->size());
    ExactMatrix m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (const Scalar& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline ExactMatrix diag(std::initializer_list<Scalar> d) {
    const auto n = static_cast<Index>(d.size());
    ExactMatrix m = ExactMatrix::Zero(n, n);
    Index i = 0;
    for (const Scalar& v : d) m(i, i) = v, ++i;
    return m;
}

inline Scalar small_rational(std::mt19937& rng, int range = 3) {
    std::uniform_int_distribution<int> num(-range, range), den(1, 3);
    return q(num(rng), den(rng));
}

inline ExactMatrix random_matrix(std::mt19937& rng, Index rows, Index cols, int range = 3) {
    ExactMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = small_rational(rng, range);
    return m;
}

// random rank-r matrix as a product of random factors
inline ExactMatrix random_rank(std::mt19937& rng, Index rows, Index cols, Index r) {
    if (r == 0) return ExactMatrix::Zero(rows, cols);
    for (;;) {
        ExactMatrix m = random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
        if (liex::rank(m) == r) return m;
    }
}

inline ExactMatrix random_invertible(std::mt19937& rng, Index n) {
    for (;;) {
        ExactMatrix m = random_matrix(rng, n, n);
        if (!liex::determinant(m).is_zero()) return m;
    }
}

// lower triangular with nonzero diagonal and a random nonzero scale; for a
// semidirect tensor the semisimple slot is left alone
inline liex::BasisChange random_lower(std::mt19937& rng, Index n, bool semidirect) {
    std::uniform_int_distribution<int> off(-3, 3), dg(1, 3), sign(0, 1);
    ExactMatrix m = ExactMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < i; ++j) m(i, j) = Scalar(off(rng));
        m(i, i) = Scalar(sign(rng) ? dg(rng) : -dg(rng));
    }
    if (semidirect) {
        m.row(0).setZero();
        m(0, 0) = 1;
        for (Index i = 1; i < n; ++i) m(i, 0) = 0;
    }
    Scalar scale = Scalar(sign(rng) ? dg(rng) : -dg(rng));
    return liex::BasisChange(m, scale);
}

// Jacobi law checked without slice matrices: sum_s W_l^{s t} W_s^{m n} symmetric in (t, m, n)
inline bool jacobi_oracle(const liex::ExtensionTensor& t) {
    const Index n = t.dim();
    for (Index l = 0; l < n; ++l)
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b)
                if (t(l, a, b) != t(l, b, a)) return false;
    for (Index l = 0; l < n; ++l)
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b)
                for (Index c = 0; c < n; ++c) {
                    Scalar x, y;
                    for (Index s = 0; s < n; ++s) {
                        x += t(l, s, a) * t(s, b, c);
                        y += t(l, s, b) * t(s, a, c);
                    }
                    if (x != y) return false;
                }
    return true;
}

}  // namespace testing
