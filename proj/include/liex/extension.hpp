#pragma once

#include "liex/errors.hpp"
#include "liex/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liex {

// W_lambda^{mu nu} of an order-n extension, stored 0-based as w(lambda, mu, nu).
// A semidirect tensor carries one extra leading index (the semisimple slot), so
// dim() = order + 1 and storage index k is printed as k; solvable tensors print
// storage index k as k + 1.
class ExtensionTensor {
public:
    ExtensionTensor() = default;
    ExtensionTensor(int order, bool semidirect);

    int order() const { return order_; }
    bool semidirect() const { return semidirect_; }
    Index dim() const { return dim_; }
    int printed_index(Index k) const { return static_cast<int>(semidirect_ ? k : k + 1); }

    const Scalar& operator()(Index lam, Index mu, Index nu) const { return w_[flat(lam, mu, nu)]; }
    Scalar& operator()(Index lam, Index mu, Index nu) { return w_[flat(lam, mu, nu)]; }

    // sets W_lam^{mu nu} and W_lam^{nu mu}
    void set_sym(Index lam, Index mu, Index nu, const Scalar& v);

    // [W^(nu)]_lam^mu = W_lam^{mu nu}
    ExactMatrix upper_slice(Index nu) const;
    // [W_(lam)]^{mu nu} = W_lam^{mu nu}
    ExactMatrix lower_slice(Index lam) const;
    std::vector<ExactMatrix> upper_slices() const;

    bool is_zero() const;

    friend bool operator==(const ExtensionTensor& a, const ExtensionTensor& b) {
        return a.order_ == b.order_ && a.semidirect_ == b.semidirect_ && a.w_ == b.w_;
    }

private:
    std::size_t flat(Index lam, Index mu, Index nu) const {
        return static_cast<std::size_t>((lam * dim_ + mu) * dim_ + nu);
    }

    int order_ = 0;
    bool semidirect_ = false;
    Index dim_ = 0;
    std::vector<Scalar> w_;
};

struct Violation {
    enum class Kind { Symmetry, Commutation };
    Kind kind;
    // Symmetry: (lambda, mu, nu); Commutation: (nu, sigma, unused). Printed numbering.
    int a, b, c;
    std::string describe() const;
};

struct SymmetryViolation : Error {
    explicit SymmetryViolation(const Violation& v) : Error(v.describe()), where(v) {}
    Violation where;
};

struct CommutationViolation : Error {
    explicit CommutationViolation(const Violation& v) : Error(v.describe()), where(v) {}
    Violation where;
};

std::optional<Violation> find_violation(const ExtensionTensor& t);

// Throws SymmetryViolation or CommutationViolation; returns the tensor otherwise.
ExtensionTensor validate(const ExtensionTensor& t);
ExtensionTensor validate(const std::vector<std::vector<std::vector<Scalar>>>& w, bool semidirect);

bool is_nilpotent(const ExactMatrix& a);
// every slice nilpotent
bool is_solvable(const ExtensionTensor& t);

ExtensionTensor abelian(int order);
ExtensionTensor leibniz(int order, bool semidirect = false);
// fields (omega, v, p, psi) at storage indices 0..3
ExtensionTensor crmhd(const Scalar& beta);
ExtensionTensor direct_sum(const ExtensionTensor& a, const ExtensionTensor& b);
ExtensionTensor append_semisimple(const ExtensionTensor& a);
// drops the semisimple slot of a semidirect tensor
ExtensionTensor solvable_part(const ExtensionTensor& t);

}  // namespace liex
