#include "liex/transform.hpp"

#include "liex/linalg.hpp"

#include <algorithm>

namespace liex {

ExtensionTensor apply(const ExtensionTensor& t, const BasisChange& b) {
    if (b.size() != t.dim()) throw DimensionMismatch("basis change does not match the tensor dimension");
    const Index n = t.dim();
    const ExactMatrix m = b.effective();
    const ExactMatrix mt = m.transpose();
    const ExactMatrix minv = b.effective_inverse();
    std::vector<ExactMatrix> x(n);
    std::vector<bool> nonzero(n, false);
    for (Index lam = 0; lam < n; ++lam) {
        ExactMatrix low = t.lower_slice(lam);
        if (is_zero(low)) continue;
        nonzero[lam] = true;
        x[lam] = mt * low * m;
    }
    ExtensionTensor out(t.order(), t.semidirect());
    for (Index beta = 0; beta < n; ++beta) {
        ExactMatrix acc = ExactMatrix::Zero(n, n);
        for (Index lam = 0; lam < n; ++lam)
            if (nonzero[lam] && !minv(beta, lam).is_zero()) acc += minv(beta, lam) * x[lam];
        for (Index a = 0; a < n; ++a)
            for (Index g = 0; g < n; ++g) out(beta, a, g) = acc(a, g);
    }
    return out;
}

ExtensionTensor apply(const ExtensionTensor& t, const std::vector<BasisChange>& chain) {
    ExtensionTensor out = t;
    for (const BasisChange& b : chain) out = apply(out, b);
    return out;
}

Normalized normalize_w0_to_identity(const ExtensionTensor& t) {
    const Index n = t.dim();
    if (n == 0) return {t, BasisChange::identity(0)};
    for (Index nu = 0; nu < n; ++nu)
        if (!is_lower_triangular(t.upper_slice(nu))) throw NotTriangular("W^(" + std::to_string(t.printed_index(nu)) + ") is not lower triangular");
    const Scalar d = t(0, 0, 0);
    for (Index k = 0; k < n; ++k)
        if (t(k, k, 0) != d || d.is_zero())
            throw DegenerateEigenvalueMismatch("first slice must have one nonzero eigenvalue");

    ExactMatrix scale = ExactMatrix::Identity(n, n) * d.inverse();
    ExtensionTensor cur = apply(t, BasisChange(scale));
    ExactMatrix shear = ExactMatrix::Identity(n, n);
    // row by row: the sheared W_lam^{00} is r + L_lam with unit coefficient
    for (Index lam = 1; lam < n; ++lam) {
        ExtensionTensor probe = apply(cur, BasisChange(shear));
        shear(lam, 0) = -probe(lam, 0, 0);
    }
    BasisChange sb(shear);
    ExtensionTensor out = apply(cur, sb);
    if (!(out.upper_slice(0) == ExactMatrix::Identity(n, n)))
        throw DegenerateEigenvalueMismatch("first slice could not be brought to the identity");
    return {out, compose(sb, BasisChange(scale))};
}

BasisChange coboundary_change(Index dim, const ExactMatrix& k, const Scalar& c) {
    const Index head = k.cols();
    if (k.rows() + head != dim) throw DimensionMismatch("coboundary coefficients do not match the tensor");
    if (c.is_zero()) throw PreconditionViolation("scale must be nonzero");
    ExactMatrix m = ExactMatrix::Identity(dim, dim);
    m.bottomLeftCorner(k.rows(), head) = k;
    m.bottomRightCorner(k.rows(), k.rows()) *= c;
    return BasisChange(m);
}

ExtensionTensor remove_coboundary(const ExtensionTensor& t, const ExactMatrix& k, const Scalar& c) {
    const Index n = t.dim();
    const Index head = k.cols();
    if (k.rows() + head != n) throw DimensionMismatch("coboundary coefficients do not match the tensor");
    for (Index lam = 0; lam < n; ++lam)
        for (Index mu = 0; mu < n; ++mu)
            for (Index nu = 0; nu < n; ++nu) {
                if (t(lam, mu, nu).is_zero()) continue;
                bool tail_pair = mu >= head && nu >= head;
                bool leaks = lam < head && (mu >= head || nu >= head);
                if (tail_pair || leaks)
                    throw PreconditionViolation("indices past " + std::to_string(head) + " do not form an Abelian ideal");
            }
    return apply(t, coboundary_change(n, k, c));
}

Normalized congruence_reduce_tail(const ExtensionTensor& t) {
    const Index n = t.dim();
    if (t.semidirect() || n == 0) throw PreconditionViolation("congruence reduction needs a solvable tensor");
    for (Index lam = 0; lam + 1 < n; ++lam)
        if (!is_zero(t.lower_slice(lam))) throw PreconditionViolation("only the last slice may be nonzero");
    const ExactMatrix last = t.lower_slice(n - 1);
    if (!is_zero(last.row(n - 1)) || !is_zero(last.col(n - 1)))
        throw PreconditionViolation("last slice must have a zero last row and column");

    const Index k = n - 1;
    ExactMatrix s = last.topLeftCorner(k, k);
    ExactMatrix m = ExactMatrix::Identity(k, k);
    auto col_op = [&](Index dst, Index src, const Scalar& f) {  // v_dst += f v_src
        m.col(dst) += f * m.col(src);
        s.col(dst) += f * s.col(src);
        s.row(dst) += f * s.row(src);
    };
    auto swap = [&](Index a, Index b) {
        if (a == b) return;
        m.col(a).swap(m.col(b));
        s.col(a).swap(s.col(b));
        s.row(a).swap(s.row(b));
    };
    Index r = 0;
    for (Index p = 0; p < k; ++p) {
        Index piv = -1;
        for (Index j = p; j < k && piv < 0; ++j)
            if (!s(j, j).is_zero()) piv = j;
        if (piv < 0) {
            // no diagonal pivot: fold a hyperbolic pair into one
            for (Index j = p; j < k && piv < 0; ++j)
                for (Index l = j + 1; l < k && piv < 0; ++l)
                    if (!s(j, l).is_zero()) {
                        col_op(j, l, Scalar(1));
                        piv = j;
                    }
        }
        if (piv < 0) break;
        swap(p, piv);
        for (Index l = p + 1; l < k; ++l)
            if (!s(p, l).is_zero()) col_op(l, p, -s(p, l) / s(p, p));
        ++r;
    }
    if (r == 0) return {t, BasisChange::identity(n)};

    Scalar c = s(0, 0);
    // the scale's sign is free: keep at least as many +1 as -1
    int balance = 0;
    for (Index p = 0; p < r; ++p) {
        Scalar e = s(p, p) / c;
        if (e.is_real()) balance += sgn(e.re());
    }
    if (balance < 0) c = -c;
    std::vector<int> sign(k, 0);
    for (Index p = 0; p < r; ++p) {
        Scalar e = s(p, p) / c, root;
        if (e.is_real() && sgn(e.re()) > 0 && exact_sqrt(e, root)) sign[p] = 1;
        else if (e.is_real() && sgn(e.re()) < 0 && exact_sqrt(-e, root)) sign[p] = -1;
        else if (exact_sqrt(e, root)) sign[p] = 1;
        else if (exact_sqrt(-e, root)) sign[p] = -1;
        else throw NoRationalWitness("diagonal entry " + e.str() + " is not a square in Q(i) up to sign");
        m.col(p) /= root;
    }
    // +1 first, then -1, then 0
    std::vector<Index> order(k);
    for (Index p = 0; p < k; ++p) order[p] = p;
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        auto rank_of = [&](Index x) { return sign[x] == 1 ? 0 : sign[x] == -1 ? 1 : 2; };
        return rank_of(a) < rank_of(b);
    });
    ExactMatrix full = ExactMatrix::Identity(n, n);
    for (Index p = 0; p < k; ++p) full.col(p).head(k) = m.col(order[p]);
    full(n - 1, n - 1) = Scalar(1);
    BasisChange b(full, c);
    return {apply(t, b), b};
}

}  // namespace liex
