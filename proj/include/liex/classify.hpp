#pragma once

#include "liex/basis_change.hpp"
#include "liex/extension.hpp"

#include <string>
#include <vector>

namespace liex {

struct CaseLabel {
    int order = 0;
    std::string name;  // "n1-abelian", "n3-case2", "n4-case3c", ...
    bool semidirect = false;

    std::string str() const { return semidirect ? name + " (semidirect)" : name; }
    friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

struct Classification {
    CaseLabel label;
    std::vector<BasisChange> witness;  // replay in order with apply()
    ExtensionTensor normal_form;
};

// Reduces a solvable tensor of order <= 4, or a semidirect one whose solvable part
// has order <= 4, to its catalog normal form.
Classification classify(const ExtensionTensor& t);

struct CatalogEntry {
    CaseLabel label;
    ExtensionTensor tensor;
};

// Normal forms of the given order (1..4); throws OrderTooHigh otherwise.
const std::vector<CatalogEntry>& catalog(int order);
ExtensionTensor catalog_tensor(const std::string& name, bool semidirect = false);

struct Fingerprint {
    std::vector<Index> derived_series;  // dims of [g,g], [[g,g],[g,g]], ...
    std::vector<Index> lower_central;   // dims of [g,g], [g,[g,g]], ...
    Index center_dim = 0;
    // only meaningful for normal forms
    std::vector<Index> slice_ranks;  // rank of each lower slice
    Index wn_nullity = 0;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const ExtensionTensor& t);

struct EquivalenceVerdict {
    enum class Kind { Equivalent, Distinct, Unknown };
    Kind kind = Kind::Unknown;
    std::vector<BasisChange> witness;  // maps a onto b when Equivalent
    std::string reason;
};

EquivalenceVerdict equivalence_check(const ExtensionTensor& a, const ExtensionTensor& b);

}  // namespace liex
