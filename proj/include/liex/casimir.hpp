#pragma once

#include "liex/extension.hpp"
#include "liex/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liex {

using Poly = Polynomial<Scalar>;

// An arbitrary function of the linear coordinates eta_a = args[a] . xi.
struct FormalFunction {
    std::string label;
    std::vector<ExactVector> args;  // covectors of length dim
};

// poly * D^deriv label(args)
struct CasimirTerm {
    Poly poly;
    std::vector<int> deriv;  // one order per argument
};

struct CasimirFamily {
    int order = 0;
    bool semidirect = false;
    FormalFunction func;
    std::vector<CasimirTerm> terms;

    Index dim() const { return order + (semidirect ? 1 : 0); }
};

struct ConditionResult {
    bool pass = true;
    // first failing (lambda, sigma, nu) in storage indices, with its residual
    Index lambda = 0, sigma = 0, nu = 0;
    std::string residual;
};

// Checks that W_lam^{mu nu} C_{,mu sigma} is symmetric in lam <-> sigma for every nu,
// with formal derivatives of the arbitrary function treated as independent symbols.
ConditionResult casimir_condition_check(const ExtensionTensor& t, const CasimirFamily& fam);

struct CoextensionResult {
    ExactMatrix wn, wn_pinv, projector;
    std::vector<ExactMatrix> cow;  // cow[mu](tau, sigma)
    bool solvable_ok = false;
    bool coext_ok = false;
    bool nonsingular = false;
};

// For a semidirect tensor the coextension of its solvable part is returned.
CoextensionResult build_coextension(const ExtensionTensor& t);

// t must be normalized: strictly lower triangular, or append_semisimple of such a tensor.
std::vector<CasimirFamily> synthesize_casimirs(const ExtensionTensor& t);

// nu in 1..order for solvable Leibniz, nu = 0 for the semidirect one
CasimirFamily leibniz_casimirs_closed_form(int order, int nu);

// symmetric Q with W_lam^{mu nu} Q_{mu sigma} = W_sigma^{mu nu} Q_{mu lam}
std::vector<ExactMatrix> quadratic_casimir_basis(const ExtensionTensor& t);

// C = 1/2 Q_{mu nu} xi^mu xi^nu as a family with no arbitrary function
CasimirFamily quadratic_family(const ExactMatrix& q, int order, bool semidirect);

// "xi1 f(xi3) + 1/2 (xi2)^2 f'(xi3)"
std::string to_notation(const CasimirFamily& fam);
std::string poly_notation(const Poly& p, bool semidirect);

// Parses the notation above (also accepts x1 for xi1 and ^2 exponents).
CasimirFamily parse_family(const std::string& text, int order, bool semidirect);

// equal up to the name of the arbitrary function
bool same_family(const CasimirFamily& a, const CasimirFamily& b);
// same multiset of families up to relabeling
bool same_families(const std::vector<CasimirFamily>& a, const std::vector<CasimirFamily>& b);

// Assigns f, g, h, k, ... in order; a function of every coordinate is named 𝒞.
void relabel(std::vector<CasimirFamily>& fams);

}  // namespace liex
