#pragma once

#include "liex/basis_change.hpp"
#include "liex/errors.hpp"
#include "liex/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace liex {

struct Eigenvalue {
    Scalar value;
    int multiplicity;
};

// Roots of the characteristic polynomial in Q(i), found by enumerating
// Gaussian-integer divisors of the extreme coefficients. Throws SplitFailure
// when some root lies outside Q(i).
std::vector<Eigenvalue> eigenvalues_gaussian(const ExactMatrix& a);

std::string polynomial_string(const std::vector<Scalar>& coeffs);

// Throws NotCommuting for the first non-commuting pair.
void require_commuting(const std::vector<ExactMatrix>& family);

// M with M^-1 A M lower triangular for every A in the family.
BasisChange simultaneous_triangularize(const std::vector<ExactMatrix>& family);

struct IndexRange {
    Index begin;
    Index size;
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct BlockSplit {
    BasisChange change;
    std::vector<IndexRange> blocks;
    std::vector<std::vector<Scalar>> eigenvalues;  // one tuple per block, one entry per family member
};

// Joint generalized eigenspaces, ordered by size (descending) then eigenvalue tuple.
BlockSplit simultaneous_block_split(const std::vector<ExactMatrix>& family);

// Basis of the subspace, extended by standard basis vectors to a basis of the whole space.
ExactMatrix complete_basis(const ExactMatrix& independent_columns);

}  // namespace liex
