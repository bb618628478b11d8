#pragma once

#include "liex/basis_change.hpp"
#include "liex/extension.hpp"

#include <vector>

namespace liex {

// Wbar_b^{a g} = (M^-1)_b^l W_l^{m n} M_m^a M_n^g with M = b.effective()
ExtensionTensor apply(const ExtensionTensor& t, const BasisChange& b);
ExtensionTensor apply(const ExtensionTensor& t, const std::vector<BasisChange>& chain);

struct Normalized {
    ExtensionTensor tensor;
    BasisChange change;
};

// Rescales and shears a lower-triangular tensor so that W^(0) becomes the identity.
Normalized normalize_w0_to_identity(const ExtensionTensor& t);

// M = [[I, 0], [k, c I]]; k has one row per tail index and one column per head index.
BasisChange coboundary_change(Index dim, const ExactMatrix& k, const Scalar& c = Scalar(1));

// Subtracts the coboundary generated by k from the tail slices, then divides them by c.
ExtensionTensor remove_coboundary(const ExtensionTensor& t, const ExactMatrix& k, const Scalar& c = Scalar(1));

// For a tensor whose only nonzero lower slice is the last one: brings that slice to
// diag(+1.., -1.., 0..) by congruence plus the overall scale.
Normalized congruence_reduce_tail(const ExtensionTensor& t);

}  // namespace liex
