#include "liex/extension.hpp"

namespace liex {

ExtensionTensor::ExtensionTensor(int order, bool semidirect)
    : order_(order), semidirect_(semidirect), dim_(order + (semidirect ? 1 : 0)) {
    if (order < 0) throw PreconditionViolation("negative order");
    w_.assign(static_cast<std::size_t>(dim_ * dim_ * dim_), Scalar(0));
}

void ExtensionTensor::set_sym(Index lam, Index mu, Index nu, const Scalar& v) {
    (*this)(lam, mu, nu) = v;
    (*this)(lam, nu, mu) = v;
}

ExactMatrix ExtensionTensor::upper_slice(Index nu) const {
    ExactMatrix m(dim_, dim_);
    for (Index lam = 0; lam < dim_; ++lam)
        for (Index mu = 0; mu < dim_; ++mu) m(lam, mu) = (*this)(lam, mu, nu);
    return m;
}

ExactMatrix ExtensionTensor::lower_slice(Index lam) const {
    ExactMatrix m(dim_, dim_);
    for (Index mu = 0; mu < dim_; ++mu)
        for (Index nu = 0; nu < dim_; ++nu) m(mu, nu) = (*this)(lam, mu, nu);
    return m;
}

std::vector<ExactMatrix> ExtensionTensor::upper_slices() const {
    std::vector<ExactMatrix> out;
    for (Index nu = 0; nu < dim_; ++nu) out.push_back(upper_slice(nu));
    return out;
}

bool ExtensionTensor::is_zero() const {
    for (const Scalar& s : w_)
        if (!s.is_zero()) return false;
    return true;
}

std::string Violation::describe() const {
    if (kind == Kind::Symmetry)
        return "SymmetryViolation: W_" + std::to_string(a) + "^{" + std::to_string(b) + "," + std::to_string(c) +
               "} != W_" + std::to_string(a) + "^{" + std::to_string(c) + "," + std::to_string(b) + "}";
    return "CommutationViolation: W^(" + std::to_string(a) + ") and W^(" + std::to_string(b) + ") do not commute";
}

std::optional<Violation> find_violation(const ExtensionTensor& t) {
    const Index n = t.dim();
    for (Index lam = 0; lam < n; ++lam)
        for (Index mu = 0; mu < n; ++mu)
            for (Index nu = mu + 1; nu < n; ++nu)
                if (t(lam, mu, nu) != t(lam, nu, mu))
                    return Violation{Violation::Kind::Symmetry, t.printed_index(lam), t.printed_index(mu),
                                     t.printed_index(nu)};
    auto slices = t.upper_slices();
    for (Index a = 0; a < n; ++a)
        for (Index b = a + 1; b < n; ++b)
            if (!(ExactMatrix(slices[a] * slices[b]) == ExactMatrix(slices[b] * slices[a])))
                return Violation{Violation::Kind::Commutation, t.printed_index(a), t.printed_index(b), 0};
    return std::nullopt;
}

ExtensionTensor validate(const ExtensionTensor& t) {
    if (auto v = find_violation(t)) {
        if (v->kind == Violation::Kind::Symmetry) throw SymmetryViolation(*v);
        throw CommutationViolation(*v);
    }
    return t;
}

ExtensionTensor validate(const std::vector<std::vector<std::vector<Scalar>>>& w, bool semidirect) {
    const auto n = static_cast<Index>(w.size());
    if (semidirect && n == 0) throw DimensionMismatch("semidirect tensor needs the semisimple slot");
    ExtensionTensor t(static_cast<int>(n) - (semidirect ? 1 : 0), semidirect);
    for (Index lam = 0; lam < n; ++lam) {
        if (static_cast<Index>(w[lam].size()) != n) throw DimensionMismatch("tensor is not cubic");
        for (Index mu = 0; mu < n; ++mu) {
            if (static_cast<Index>(w[lam][mu].size()) != n) throw DimensionMismatch("tensor is not cubic");
            for (Index nu = 0; nu < n; ++nu) t(lam, mu, nu) = w[lam][mu][nu];
        }
    }
    return validate(t);
}

bool is_nilpotent(const ExactMatrix& a) {
    ExactMatrix p = a;
    for (Index k = 1; k < a.rows(); ++k) p = p * a;
    return liex::is_zero(p);
}

bool is_solvable(const ExtensionTensor& t) {
    for (Index nu = 0; nu < t.dim(); ++nu)
        if (!is_nilpotent(t.upper_slice(nu))) return false;
    return true;
}

ExtensionTensor abelian(int order) { return ExtensionTensor(order, false); }

ExtensionTensor leibniz(int order, bool semidirect) {
    if (order < 1) throw PreconditionViolation("Leibniz order must be at least 1");
    ExtensionTensor t(order, false);
    // W_lam^{mu nu} = 1 exactly when lam = mu + nu in 1-based labels
    for (Index mu = 0; mu < order; ++mu)
        for (Index nu = 0; nu < order; ++nu)
            if (mu + nu + 1 < order) t(mu + nu + 1, mu, nu) = Scalar(1);
    return semidirect ? append_semisimple(t) : t;
}

ExtensionTensor crmhd(const Scalar& beta) {
    if (beta.is_zero()) throw ZeroParameter("beta must be nonzero");
    if (!beta.is_real()) throw PreconditionViolation("beta must be real");
    // solvable part on (v, p, psi): W_psi^{v p} = -beta
    ExtensionTensor s(3, false);
    s.set_sym(2, 0, 1, -beta);
    return append_semisimple(s);
}

ExtensionTensor direct_sum(const ExtensionTensor& a, const ExtensionTensor& b) {
    if (b.semidirect()) throw PreconditionViolation("second summand of a direct sum must be solvable");
    ExtensionTensor t(a.order() + b.order(), a.semidirect());
    const Index off = a.dim();
    for (Index l = 0; l < a.dim(); ++l)
        for (Index m = 0; m < a.dim(); ++m)
            for (Index n = 0; n < a.dim(); ++n) t(l, m, n) = a(l, m, n);
    for (Index l = 0; l < b.dim(); ++l)
        for (Index m = 0; m < b.dim(); ++m)
            for (Index n = 0; n < b.dim(); ++n) t(off + l, off + m, off + n) = b(l, m, n);
    return t;
}

ExtensionTensor append_semisimple(const ExtensionTensor& a) {
    if (a.semidirect()) throw PreconditionViolation("tensor already has a semisimple slot");
    for (Index nu = 0; nu < a.dim(); ++nu)
        if (!is_nilpotent(a.upper_slice(nu)))
            throw NotSolvable("W^(" + std::to_string(a.printed_index(nu)) + ") has a nonzero eigenvalue");
    ExtensionTensor t(a.order(), true);
    for (Index k = 0; k < t.dim(); ++k) t.set_sym(k, k, 0, Scalar(1));
    for (Index l = 0; l < a.dim(); ++l)
        for (Index m = 0; m < a.dim(); ++m)
            for (Index n = 0; n < a.dim(); ++n) t(l + 1, m + 1, n + 1) = a(l, m, n);
    return t;
}

ExtensionTensor solvable_part(const ExtensionTensor& t) {
    if (!t.semidirect()) throw PreconditionViolation("tensor has no semisimple slot");
    ExtensionTensor s(t.order(), false);
    for (Index l = 0; l < s.dim(); ++l)
        for (Index m = 0; m < s.dim(); ++m)
            for (Index n = 0; n < s.dim(); ++n) s(l, m, n) = t(l + 1, m + 1, n + 1);
    return s;
}

}  // namespace liex
