#include "liex/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace liex {

// ---------------------------------------------------------------------------
// BasisChange

BasisChange::BasisChange(ExactMatrix m, Scalar scale) : m_(std::move(m)), scale_(std::move(scale)) {
    if (m_.rows() != m_.cols()) throw DimensionMismatch("basis change must be square");
    if (scale_.is_zero()) throw PreconditionViolation("basis change scale must be nonzero");
    try {
        m_inv_ = liex::inverse(m_);
    } catch (const std::domain_error&) {
        throw PreconditionViolation("basis change matrix is singular");
    }
}

BasisChange BasisChange::identity(Index n) { return BasisChange(ExactMatrix::Identity(n, n)); }

ExactMatrix BasisChange::effective() const {
    ExactMatrix e = m_;
    if (!scale_.is_one() && e.cols() > 0) e.col(e.cols() - 1) *= scale_;
    return e;
}

ExactMatrix BasisChange::effective_inverse() const {
    ExactMatrix e = m_inv_;
    if (!scale_.is_one() && e.rows() > 0) e.row(e.rows() - 1) /= scale_;
    return e;
}

BasisChange BasisChange::inverse() const { return BasisChange(effective_inverse()); }

BasisChange BasisChange::embedded(Index offset, Index total) const {
    if (offset + size() > total) throw DimensionMismatch("embedding does not fit");
    ExactMatrix big = ExactMatrix::Identity(total, total);
    big.block(offset, offset, size(), size()) = effective();
    return BasisChange(big);
}

BasisChange compose(const BasisChange& b1, const BasisChange& b2) {
    if (b1.size() != b2.size()) throw DimensionMismatch("composing basis changes of different size");
    return BasisChange(ExactMatrix(b2.effective() * b1.effective()));
}

// ---------------------------------------------------------------------------
// Eigenvalues over Q(i)

namespace {

struct GaussInt {
    mpz_class re, im;
};

mpz_class gnorm(const GaussInt& z) { return z.re * z.re + z.im * z.im; }

bool gdivides(const GaussInt& d, const GaussInt& z) {
    mpz_class n = gnorm(d);
    mpz_class a = z.re * d.re + z.im * d.im;
    mpz_class b = z.im * d.re - z.re * d.im;
    return mpz_divisible_p(a.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(b.get_mpz_t(), n.get_mpz_t());
}

std::vector<GaussInt> gaussian_divisors(const GaussInt& z) {
    const mpz_class n = gnorm(z);
    if (n > mpz_class("100000000000000"))
        throw SplitFailure("coefficients too large for divisor enumeration", "");
    std::vector<mpz_class> int_divs;
    for (mpz_class k = 1; k * k <= n; ++k) {
        if (mpz_divisible_p(n.get_mpz_t(), k.get_mpz_t())) {
            int_divs.push_back(k);
            if (k * k != n) int_divs.push_back(n / k);
        }
    }
    std::vector<GaussInt> out;
    for (const mpz_class& m : int_divs) {
        for (mpz_class x = 0; x * x <= m; ++x) {
            mpz_class y2 = m - x * x;
            if (!mpz_perfect_square_p(y2.get_mpz_t())) continue;
            mpz_class y;
            mpz_sqrt(y.get_mpz_t(), y2.get_mpz_t());
            for (int sx : {1, -1})
                for (int sy : {1, -1}) {
                    if ((sx < 0 && x == 0) || (sy < 0 && y == 0)) continue;
                    GaussInt d{sx * x, sy * y};
                    if (gdivides(d, z)) out.push_back(d);
                }
        }
    }
    return out;
}

Scalar horner(const std::vector<Scalar>& p, const Scalar& x) {
    Scalar acc(0);
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

std::vector<Scalar> deflate(const std::vector<Scalar>& p, const Scalar& r) {
    const std::size_t d = p.size() - 1;
    std::vector<Scalar> q(d);
    Scalar carry(0);
    for (std::size_t k = d; k-- > 0;) {
        carry = p[k + 1] + carry * r;
        q[k] = carry;
    }
    return q;
}

}  // namespace

std::string polynomial_string(const std::vector<Scalar>& coeffs) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        if (coeffs[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool complex = !coeffs[k].is_real();
        if (k == 0 || !coeffs[k].is_one()) os << (complex ? "(" : "") << coeffs[k] << (complex ? ")" : "");
        if (k > 0) os << (coeffs[k].is_one() ? "" : " ") << "x" << (k > 1 ? "^" + std::to_string(k) : "");
    }
    return first ? "0" : os.str();
}

std::vector<Eigenvalue> eigenvalues_gaussian(const ExactMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("eigenvalues of a non-square matrix");
    std::map<Scalar, int> found;
    if (is_lower_triangular(a) || is_upper_triangular(a)) {
        for (Index i = 0; i < a.rows(); ++i) ++found[a(i, i)];
    } else {
        std::vector<Scalar> p = characteristic_polynomial(a);
        while (p.size() > 1 && p[0].is_zero()) {
            p.erase(p.begin());
            ++found[Scalar(0)];
        }
        if (p.size() > 1) {
            // clear denominators so every coefficient is a Gaussian integer
            mpz_class l = 1;
            for (const Scalar& c : p) {
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den_mpz_t());
            }
            auto as_gauss = [&](const Scalar& c) {
                mpq_class re = c.re() * l, im = c.im() * l;
                return GaussInt{re.get_num(), im.get_num()};
            };
            std::vector<GaussInt> num = gaussian_divisors(as_gauss(p.front()));
            std::vector<GaussInt> den = gaussian_divisors(as_gauss(p.back()));
            std::vector<Scalar> candidates;
            for (const GaussInt& q : den)
                for (const GaussInt& r : num)
                    candidates.push_back(Scalar(mpq_class(r.re), mpq_class(r.im)) /
                                         Scalar(mpq_class(q.re), mpq_class(q.im)));
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
            for (const Scalar& c : candidates) {
                while (p.size() > 1 && horner(p, c).is_zero()) {
                    p = deflate(p, c);
                    ++found[c];
                }
                if (p.size() == 1) break;
            }
            if (p.size() > 1)
                throw SplitFailure("characteristic polynomial does not split over Q(i)", polynomial_string(p));
        }
    }
    std::vector<Eigenvalue> out;
    for (auto& [v, m] : found) out.push_back({v, m});
    return out;
}

// ---------------------------------------------------------------------------
// Simultaneous forms

void require_commuting(const std::vector<ExactMatrix>& family) {
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (family[i].rows() != family[i].cols() || family[i].rows() != family[0].rows())
            throw DimensionMismatch("family members must be square and of equal size");
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (!(ExactMatrix(family[i] * family[j]) == ExactMatrix(family[j] * family[i])))
                throw NotCommuting(static_cast<int>(i), static_cast<int>(j));
    }
}

ExactMatrix complete_basis(const ExactMatrix& cols) {
    const Index n = cols.rows();
    ExactMatrix out = cols;
    Index r = rank(out);
    for (Index j = 0; j < n && out.cols() < n; ++j) {
        ExactMatrix trial(n, out.cols() + 1);
        trial << out, ExactMatrix::Identity(n, n).col(j);
        Index tr = rank(trial);
        if (tr > r) {
            out = trial;
            r = tr;
        }
    }
    return out;
}

namespace {

// restriction of A to an invariant subspace spanned by the columns of S
ExactMatrix restrict_to(const ExactMatrix& a, const ExactMatrix& s) {
    return solve_in_span(s, ExactMatrix(a * s));
}

// first columns of the result span an invariant flag (upper-triangular form)
ExactMatrix upper_flag(const std::vector<ExactMatrix>& family, Index k) {
    if (k == 0) return ExactMatrix(0, 0);
    ExactMatrix s = ExactMatrix::Identity(k, k);
    for (const ExactMatrix& a : family) {
        ExactMatrix r = restrict_to(a, s);
        auto ev = eigenvalues_gaussian(r);
        ExactMatrix shifted = r - ev.front().value * ExactMatrix::Identity(r.rows(), r.cols());
        s = s * columns(null_space(shifted), r.rows());
        if (s.cols() == 1) break;
    }
    ExactMatrix m0 = complete_basis(s.leftCols(1));
    ExactMatrix m0_inv = inverse(m0);
    std::vector<ExactMatrix> sub;
    for (const ExactMatrix& a : family) {
        ExactMatrix t = m0_inv * a * m0;
        sub.push_back(t.bottomRightCorner(k - 1, k - 1));
    }
    ExactMatrix m1 = upper_flag(sub, k - 1);
    ExactMatrix lift = ExactMatrix::Identity(k, k);
    lift.bottomRightCorner(k - 1, k - 1) = m1;
    return m0 * lift;
}

}  // namespace

BasisChange simultaneous_triangularize(const std::vector<ExactMatrix>& family) {
    if (family.empty()) throw DimensionMismatch("empty family");
    require_commuting(family);
    const Index n = family.front().rows();
    bool done = std::all_of(family.begin(), family.end(), [](const ExactMatrix& a) { return is_lower_triangular(a); });
    if (done) return BasisChange::identity(n);
    ExactMatrix u = upper_flag(family, n);
    // reversing the basis turns upper-triangular into lower-triangular
    ExactMatrix m = u.rowwise().reverse();
    return BasisChange(m);
}

BlockSplit simultaneous_block_split(const std::vector<ExactMatrix>& family) {
    if (family.empty()) throw DimensionMismatch("empty family");
    require_commuting(family);
    const Index n = family.front().rows();
    struct Piece {
        ExactMatrix basis;
        std::vector<Scalar> values;
    };
    std::vector<Piece> pieces{{ExactMatrix::Identity(n, n), {}}};
    for (const ExactMatrix& a : family) {
        std::vector<Piece> next;
        for (const Piece& p : pieces) {
            ExactMatrix r = restrict_to(a, p.basis);
            const Index d = r.rows();
            for (const Eigenvalue& ev : eigenvalues_gaussian(r)) {
                ExactMatrix shifted = r - ev.value * ExactMatrix::Identity(d, d);
                ExactMatrix power = ExactMatrix::Identity(d, d);
                for (Index k = 0; k < d; ++k) power = power * shifted;
                Piece q{p.basis * columns(null_space(power), d), p.values};
                q.values.push_back(ev.value);
                next.push_back(std::move(q));
            }
        }
        pieces = std::move(next);
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
        if (x.basis.cols() != y.basis.cols()) return x.basis.cols() > y.basis.cols();
        return std::lexicographical_compare(x.values.begin(), x.values.end(), y.values.begin(), y.values.end());
    });
    BlockSplit out;
    ExactMatrix m(n, n);
    Index at = 0;
    for (const Piece& p : pieces) {
        m.middleCols(at, p.basis.cols()) = p.basis;
        out.blocks.push_back({at, p.basis.cols()});
        out.eigenvalues.push_back(p.values);
        at += p.basis.cols();
    }
    out.change = BasisChange(m);
    return out;
}

}  // namespace liex
