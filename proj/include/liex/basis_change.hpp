#pragma once

#include "liex/matrix.hpp"

namespace liex {

// An invertible change of basis with its cached inverse. `scale` multiplies the
// last basis vector on top of `m`, so a tensor slice living on the last index is
// divided by it.
class BasisChange {
public:
    BasisChange() = default;
    explicit BasisChange(ExactMatrix m, Scalar scale = Scalar(1));

    static BasisChange identity(Index n);

    Index size() const { return m_.rows(); }
    const ExactMatrix& m() const { return m_; }
    const ExactMatrix& m_inv() const { return m_inv_; }
    const Scalar& scale() const { return scale_; }

    // m * diag(1, ..., 1, scale) and its inverse
    ExactMatrix effective() const;
    ExactMatrix effective_inverse() const;

    BasisChange inverse() const;

    // embed into a larger index set: identity on the first `offset` indices
    BasisChange embedded(Index offset, Index total) const;

    friend bool operator==(const BasisChange& a, const BasisChange& b) {
        return a.m_ == b.m_ && a.scale_ == b.scale_;
    }

private:
    ExactMatrix m_, m_inv_;
    Scalar scale_{1};
};

// compose(b1, b2) acts like b2 followed by b1
BasisChange compose(const BasisChange& b1, const BasisChange& b2);

}  // namespace liex
