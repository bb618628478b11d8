#include "liex/casimir.hpp"

#include "liex/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <string_view>

namespace liex {

namespace {

// label of a function of all coordinates
constexpr std::string_view kFull = "𝒞";

// formal expression: derivative multi-index -> polynomial coefficient
using Expr = std::map<std::vector<int>, Poly>;

void add_to(Expr& e, const std::vector<int>& k, const Poly& p) {
    if (p.is_zero()) return;
    auto it = e.find(k);
    if (it == e.end()) {
        e.emplace(k, p);
        return;
    }
    it->second += p;
    if (it->second.is_zero()) e.erase(it);
}

Expr collect(const CasimirFamily& fam) {
    Expr e;
    for (const CasimirTerm& t : fam.terms) add_to(e, t.deriv, t.poly);
    return e;
}

// d/dxi^mu with the chain rule through the arguments of the arbitrary function
Expr differentiate(const Expr& e, Index mu, const std::vector<ExactVector>& args) {
    Expr out;
    for (const auto& [k, p] : e) {
        add_to(out, k, p.derivative(static_cast<int>(mu)));
        for (std::size_t a = 0; a < args.size(); ++a) {
            const Scalar& u = args[a](mu);
            if (u.is_zero()) continue;
            std::vector<int> k2 = k;
            ++k2[a];
            add_to(out, k2, p * u);
        }
    }
    return out;
}

std::string var_name(Index storage, bool semidirect) {
    return "ξ" + std::to_string(semidirect ? storage : storage + 1);
}

std::string func_notation(const FormalFunction& f, const std::vector<int>& deriv, bool semidirect) {
    std::string s = f.label;
    if (f.args.size() == 1) {
        int d = deriv.empty() ? 0 : deriv[0];
        if (d <= 3) s += std::string(static_cast<std::size_t>(d), '\'');
        else s += "^(" + std::to_string(d) + ")";
    } else if (std::any_of(deriv.begin(), deriv.end(), [](int d) { return d != 0; })) {
        s += "_{";
        for (std::size_t a = 0; a < deriv.size(); ++a) s += (a ? "," : "") + std::to_string(deriv[a]);
        s += "}";
    }
    s += "(";
    for (std::size_t a = 0; a < f.args.size(); ++a) {
        if (a) s += ",";
        const ExactVector& u = f.args[a];
        Poly lin(static_cast<int>(u.size()));
        for (Index k = 0; k < u.size(); ++k) lin += Poly::variable(lin.nvars(), static_cast<int>(k), u(k));
        s += poly_notation(lin, semidirect);
    }
    return s + ")";
}

std::string expr_notation(const Expr& e, const FormalFunction& f, bool semidirect) {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [k, p] : e) {
        std::string ps = poly_notation(p, semidirect);
        bool unit = p == Poly::constant(p.nvars(), Scalar(1));
        std::string piece;
        if (f.args.empty()) piece = ps;
        else if (unit) piece = func_notation(f, k, semidirect);
        else if (p.terms().size() > 1) piece = "(" + ps + ") " + func_notation(f, k, semidirect);
        else if (ps == "-1") piece = "-" + func_notation(f, k, semidirect);
        else piece = ps + " " + func_notation(f, k, semidirect);
        if (out.empty()) out = piece;
        else if (piece[0] == '-') out += " - " + piece.substr(1);
        else out += " + " + piece;
    }
    return out;
}

// connected components of the index graph of nonzero entries
std::vector<std::vector<Index>> components(const ExtensionTensor& t) {
    const Index n = t.dim();
    std::vector<Index> parent(n);
    std::iota(parent.begin(), parent.end(), Index(0));
    std::function<Index(Index)> find = [&](Index x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto join = [&](Index a, Index b) { parent[find(a)] = find(b); };
    for (Index l = 0; l < n; ++l)
        for (Index m = 0; m < n; ++m)
            for (Index v = 0; v < n; ++v)
                if (!t(l, m, v).is_zero()) join(l, m), join(l, v);
    std::map<Index, std::vector<Index>> groups;
    for (Index k = 0; k < n; ++k) groups[find(k)].push_back(k);
    std::vector<std::vector<Index>> out;
    for (auto& [root, g] : groups) out.push_back(g);
    std::sort(out.begin(), out.end());
    return out;
}

ExtensionTensor restrict_to(const ExtensionTensor& t, const std::vector<Index>& idx) {
    ExtensionTensor b(static_cast<int>(idx.size()), false);
    const auto k = static_cast<Index>(idx.size());
    for (Index l = 0; l < k; ++l)
        for (Index m = 0; m < k; ++m)
            for (Index v = 0; v < k; ++v) b(l, m, v) = t(idx[l], idx[m], idx[v]);
    return b;
}

// re-embeds a polynomial in nvars variables, local variable j going to idx[j]
Poly lift(const Poly& p, const std::vector<Index>& idx, int nvars) {
    Poly out(nvars);
    for (const auto& [e, c] : p.terms()) {
        Exponents g(nvars, 0);
        for (std::size_t j = 0; j < e.size(); ++j) g[idx[j]] = e[j];
        out.add_term(g, c);
    }
    return out;
}

ExactVector lift(const ExactVector& u, const std::vector<Index>& idx, Index n) {
    ExactVector out = ExactVector::Zero(n);
    for (Index j = 0; j < u.size(); ++j) out(idx[j]) = u(j);
    return out;
}

// g^(i) from the Hessian H_{lam sigma} = cow^mu_{lam sigma} d_mu g^(i-1), by Euler's formula
std::vector<Poly> recursion(Poly g0, const std::vector<ExactMatrix>& cow, int nvars, int start_degree) {
    std::vector<Poly> gs{std::move(g0)};
    const auto m = static_cast<Index>(cow.size());
    for (int i = 1; i <= nvars + 1; ++i) {
        const Poly& prev = gs.back();
        std::vector<Poly> grad;
        for (Index mu = 0; mu < m; ++mu) grad.push_back(prev.derivative(static_cast<int>(mu)));
        Poly g(nvars);
        for (Index l = 0; l < m; ++l)
            for (Index s = 0; s < m; ++s) {
                Poly h(nvars);
                for (Index mu = 0; mu < m; ++mu)
                    if (!cow[mu](l, s).is_zero()) h += grad[mu] * cow[mu](l, s);
                if (h.is_zero()) continue;
                g += Poly::variable(nvars, static_cast<int>(l)) * Poly::variable(nvars, static_cast<int>(s)) * h;
            }
        const int d = start_degree + i;
        g *= Scalar(1) / Scalar(d * (d - 1));
        if (g.is_zero()) break;
        gs.push_back(std::move(g));
    }
    return gs;
}

CasimirFamily single_argument_family(int order, bool semidirect, Index arg, const std::vector<Poly>& gs,
                                     int first_deriv = 0) {
    CasimirFamily fam;
    fam.order = order;
    fam.semidirect = semidirect;
    const Index n = fam.dim();
    fam.func.args.push_back(ExactVector::Unit(n, arg));
    for (std::size_t i = 0; i < gs.size(); ++i)
        if (!gs[i].is_zero()) fam.terms.push_back({gs[i], {first_deriv + static_cast<int>(i)}});
    return fam;
}

// center of a solvable tensor as rref rows
std::vector<ExactVector> center_basis(const ExtensionTensor& t) {
    const Index n = t.dim();
    ExactMatrix sys(n * n, n);
    for (Index l = 0; l < n; ++l)
        for (Index m = 0; m < n; ++m)
            for (Index v = 0; v < n; ++v) sys(l * n + m, v) = t(l, m, v);
    auto ns = null_space(sys);
    if (ns.empty()) return {};
    auto e = rref(ExactMatrix(columns(ns, n).transpose()));
    std::vector<ExactVector> out;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) out.push_back(e.r.row(static_cast<Index>(r)).transpose());
    return out;
}

std::vector<CasimirFamily> synthesize_solvable(const ExtensionTensor& s) {
    const Index n = s.dim();
    const int nv = static_cast<int>(n);
    for (Index v = 0; v < n; ++v)
        if (!is_lower_triangular(s.upper_slice(v), true))
            throw PreconditionViolation("tensor is not in strictly lower-triangular form");

    std::vector<std::pair<Index, CasimirFamily>> keyed;
    std::vector<ExactVector> null_args;
    for (const auto& idx : components(s)) {
        const ExtensionTensor b = restrict_to(s, idx);
        for (const ExactVector& u : center_basis(b)) null_args.push_back(lift(u, idx, n));
        if (idx.size() == 1) continue;
        CoextensionResult co = build_coextension(b);
        if (!co.solvable_ok)
            throw SynthesisObstruction("projector does not commute with the subextension slices");
        if (!co.coext_ok) throw SynthesisObstruction("coextension fails the symmetry condition");
        const auto m = static_cast<Index>(idx.size()) - 1;
        auto rows = rref(ExactMatrix(co.projector.transpose())).pivots;
        for (Index nu : rows) {
            Poly g0(static_cast<int>(m + 1));
            for (Index r = 0; r < m; ++r)
                if (!co.projector(nu, r).is_zero()) g0 += Poly::variable(g0.nvars(), static_cast<int>(r), co.projector(nu, r));
            std::vector<Poly> gs = recursion(g0, co.cow, g0.nvars(), 1);
            for (Poly& g : gs) g = lift(g, idx, nv);
            keyed.emplace_back(idx[nu], single_argument_family(s.order(), false, idx.back(), gs));
        }
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<CasimirFamily> out;
    for (auto& [k, f] : keyed) out.push_back(std::move(f));
    if (!null_args.empty()) {
        auto e = rref(ExactMatrix(columns(null_args, n).transpose()));
        CasimirFamily fam;
        fam.order = s.order();
        for (std::size_t r = 0; r < e.pivots.size(); ++r) fam.func.args.push_back(e.r.row(static_cast<Index>(r)).transpose());
        fam.terms.push_back({Poly::constant(nv, Scalar(1)), std::vector<int>(fam.func.args.size(), 0)});
        out.push_back(std::move(fam));
    }
    return out;
}

CasimirFamily shift_into_semidirect(const CasimirFamily& f) {
    CasimirFamily out;
    out.order = f.order;
    out.semidirect = true;
    const Index n = out.dim();
    std::vector<Index> idx(static_cast<std::size_t>(f.dim()));
    std::iota(idx.begin(), idx.end(), Index(1));
    out.func.label = f.func.label;
    for (const ExactVector& u : f.func.args) out.func.args.push_back(lift(u, idx, n));
    for (const CasimirTerm& t : f.terms) out.terms.push_back({lift(t.poly, idx, static_cast<int>(n)), t.deriv});
    return out;
}

}  // namespace

ConditionResult casimir_condition_check(const ExtensionTensor& t, const CasimirFamily& fam) {
    const Index n = t.dim();
    if (fam.dim() != n) throw DimensionMismatch("family and tensor have different dimensions");
    const auto& args = fam.func.args;
    for (const CasimirTerm& term : fam.terms)
        if (term.poly.nvars() != n || term.deriv.size() != args.size())
            throw DimensionMismatch("malformed Casimir term");
    Expr c = collect(fam);
    std::vector<Expr> first(n);
    for (Index mu = 0; mu < n; ++mu) first[mu] = differentiate(c, mu, args);
    std::vector<std::vector<Expr>> hess(n, std::vector<Expr>(n));
    for (Index mu = 0; mu < n; ++mu)
        for (Index s = 0; s < n; ++s) hess[mu][s] = differentiate(first[mu], s, args);

    for (Index nu = 0; nu < n; ++nu)
        for (Index lam = 0; lam < n; ++lam)
            for (Index sig = lam + 1; sig < n; ++sig) {
                Expr r;
                for (Index mu = 0; mu < n; ++mu) {
                    if (!t(lam, mu, nu).is_zero())
                        for (const auto& [k, p] : hess[mu][sig]) add_to(r, k, p * t(lam, mu, nu));
                    if (!t(sig, mu, nu).is_zero())
                        for (const auto& [k, p] : hess[mu][lam]) add_to(r, k, p * -t(sig, mu, nu));
                }
                if (!r.empty()) return {false, lam, sig, nu, expr_notation(r, fam.func, fam.semidirect)};
            }
    return {};
}

CoextensionResult build_coextension(const ExtensionTensor& t) {
    if (t.semidirect()) return build_coextension(solvable_part(t));
    const Index m = t.dim() - 1;
    CoextensionResult co;
    if (m < 0) return co;
    co.wn = ExactMatrix(m, m);
    for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b) co.wn(a, b) = t(m, a, b);
    co.wn_pinv = pseudoinverse(co.wn);
    co.projector = co.wn * co.wn_pinv;
    co.nonsingular = rank(co.wn) == m;
    const ExactMatrix back = co.wn_pinv * co.wn;
    for (Index nu = 0; nu < m; ++nu) {
        ExactMatrix sub(m, m);  // sub(lam, rho) = W_lam^{rho nu}
        for (Index l = 0; l < m; ++l)
            for (Index r = 0; r < m; ++r) sub(l, r) = t(l, r, nu);
        ExactMatrix a = sub * co.wn_pinv;
        if (co.nonsingular) co.cow.push_back(co.wn_pinv * sub.transpose());
        else co.cow.push_back(ExactMatrix(a + a.transpose() - back * sub * co.wn_pinv));
    }
    co.solvable_ok = true;
    for (Index s = 0; s < m && co.solvable_ok; ++s) {
        ExactMatrix low(m, m);
        for (Index a = 0; a < m; ++a)
            for (Index b = 0; b < m; ++b) low(a, b) = t(s, a, b);
        co.solvable_ok = ExactMatrix(co.projector * low) == ExactMatrix(low * co.projector);
    }
    co.coext_ok = true;
    for (Index tau = 0; tau < m && co.coext_ok; ++tau)
        for (Index nu = 0; nu < m && co.coext_ok; ++nu)
            for (Index s = 0; s < m && co.coext_ok; ++s)
                for (Index l = s + 1; l < m && co.coext_ok; ++l) {
                    Scalar x(0), y(0);
                    for (Index mu = 0; mu < m; ++mu) {
                        x += co.cow[mu](tau, s) * co.cow[nu](mu, l);
                        y += co.cow[mu](tau, l) * co.cow[nu](mu, s);
                    }
                    co.coext_ok = x == y;
                }
    return co;
}

std::vector<CasimirFamily> synthesize_casimirs(const ExtensionTensor& t) {
    std::vector<CasimirFamily> out;
    if (!t.semidirect()) {
        out = synthesize_solvable(t);
    } else {
        const ExtensionTensor s = solvable_part(t);
        if (!(append_semisimple(s) == t))
            throw PreconditionViolation("semidirect tensor must have W^(0) = I and no other entries on slot 0");
        CoextensionResult co = build_coextension(s);
        if (co.nonsingular) {
            const Index m = co.wn.rows();
            const int nv = static_cast<int>(t.dim());
            const ExactMatrix inv = inverse(co.wn);
            Poly g1(nv);
            for (Index a = 0; a < m; ++a)
                for (Index b = 0; b < m; ++b)
                    if (!inv(a, b).is_zero())
                        g1 += Poly::variable(nv, static_cast<int>(a + 1)) * Poly::variable(nv, static_cast<int>(b + 1)) *
                              (inv(a, b) / Scalar(2));
            // remaining orders follow the solvable recursion on indices 1..m
            std::vector<ExactMatrix> cow(static_cast<std::size_t>(m + 1), ExactMatrix::Zero(m + 1, m + 1));
            for (Index mu = 0; mu < m; ++mu) cow[mu + 1].bottomRightCorner(m, m) = co.cow[mu];
            std::vector<Poly> gs{Poly::variable(nv, 0)};
            if (!g1.is_zero()) {
                if (!co.solvable_ok || !co.coext_ok)
                    throw SynthesisObstruction("coextension of the solvable part fails its conditions");
                std::vector<Index> idx(static_cast<std::size_t>(m + 1));
                std::iota(idx.begin(), idx.end(), Index(0));
                // recursion on the (m+1)-variable ring of slot 0 and the subextension indices
                Poly local(static_cast<int>(m + 1));
                for (const auto& [e, c] : g1.terms()) local.add_term(Exponents(e.begin(), e.begin() + m + 1), c);
                for (const Poly& g : recursion(local, cow, static_cast<int>(m + 1), 2)) gs.push_back(lift(g, idx, nv));
            }
            out.push_back(single_argument_family(t.order(), true, t.dim() - 1, gs));
        }
        for (const CasimirFamily& f : synthesize_solvable(s)) out.push_back(shift_into_semidirect(f));
    }
    relabel(out);
    for (const CasimirFamily& f : out) {
        ConditionResult r = casimir_condition_check(t, f);
        if (!r.pass) throw Error("synthesized family " + to_notation(f) + " fails the Casimir condition");
    }
    return out;
}

CasimirFamily leibniz_casimirs_closed_form(int order, int nu) {
    if (order < 1 || nu < 0 || nu > order) throw IndexOutOfRange("nu must lie in 0..order");
    const bool semidirect = nu == 0;
    const int n = order;
    const Index dim = n + (semidirect ? 1 : 0);
    const int nv = static_cast<int>(dim);
    auto storage = [&](int printed) { return semidirect ? printed : printed - 1; };
    if (nu == n) {
        CasimirFamily fam;
        fam.order = n;
        fam.func.args.push_back(ExactVector::Unit(dim, storage(n)));
        fam.terms.push_back({Poly::constant(nv, Scalar(1)), {0}});
        fam.func.label = "f";
        return fam;
    }
    std::vector<Poly> gs{Poly::variable(nv, storage(nu))};
    // k >= 2: nondecreasing tau_1..tau_k in 1..n-1 summing to nu + (k-1) n, weight 1/prod(m_j!)
    for (int k = 2; k <= n - nu; ++k) {
        Poly g(nv);
        const int target = nu + (k - 1) * n;
        std::vector<int> taus;
        std::function<void(int, int)> rec = [&](int lo, int remaining) {
            const int left = k - static_cast<int>(taus.size());
            if (left == 0) {
                if (remaining != 0) return;
                Exponents e(nv, 0);
                for (int tau : taus) ++e[storage(tau)];
                mpz_class denom = 1;
                for (int c : e)
                    for (int j = 2; j <= c; ++j) denom *= j;
                g.add_term(e, Scalar(mpq_class(1, denom)));
                return;
            }
            for (int tau = lo; tau <= n - 1; ++tau) {
                if (tau * left > remaining) break;
                if ((n - 1) * left < remaining) return;
                taus.push_back(tau);
                rec(tau, remaining - tau);
                taus.pop_back();
            }
        };
        rec(1, target);
        if (g.is_zero()) break;
        gs.push_back(std::move(g));
    }
    CasimirFamily fam = single_argument_family(n, semidirect, storage(n), gs);
    fam.func.label = "f";
    return fam;
}

std::vector<ExactMatrix> quadratic_casimir_basis(const ExtensionTensor& t) {
    const Index n = t.dim();
    std::vector<std::pair<Index, Index>> vars;
    std::map<std::pair<Index, Index>, Index> slot;
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) {
            slot[{i, j}] = static_cast<Index>(vars.size());
            vars.push_back({i, j});
        }
    auto q = [&](Index a, Index b) { return slot[{std::min(a, b), std::max(a, b)}]; };
    std::vector<ExactVector> rows;
    const auto nvars = static_cast<Index>(vars.size());
    for (Index nu = 0; nu < n; ++nu)
        for (Index lam = 0; lam < n; ++lam)
            for (Index sig = lam + 1; sig < n; ++sig) {
                ExactVector r = ExactVector::Zero(nvars);
                for (Index mu = 0; mu < n; ++mu) {
                    r(q(mu, sig)) += t(lam, mu, nu);
                    r(q(mu, lam)) -= t(sig, mu, nu);
                }
                if (!is_zero(r)) rows.push_back(r);
            }
    std::vector<ExactVector> ns;
    if (rows.empty()) {
        for (Index k = 0; k < nvars; ++k) ns.push_back(ExactVector::Unit(nvars, k));
    } else {
        ns = null_space(ExactMatrix(columns(rows, nvars).transpose()));
    }
    std::vector<ExactMatrix> out;
    if (ns.empty()) return out;
    auto e = rref(ExactMatrix(columns(ns, nvars).transpose()));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        ExactMatrix m = ExactMatrix::Zero(n, n);
        for (Index k = 0; k < nvars; ++k) {
            auto [i, j] = vars[k];
            m(i, j) = m(j, i) = e.r(static_cast<Index>(r), k);
        }
        out.push_back(m);
    }
    return out;
}

CasimirFamily quadratic_family(const ExactMatrix& q, int order, bool semidirect) {
    CasimirFamily fam;
    fam.order = order;
    fam.semidirect = semidirect;
    const Index n = fam.dim();
    if (q.rows() != n || q.cols() != n) throw DimensionMismatch("quadratic form does not match the tensor");
    Poly p(static_cast<int>(n));
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            if (!q(a, b).is_zero())
                p += Poly::variable(p.nvars(), static_cast<int>(a)) * Poly::variable(p.nvars(), static_cast<int>(b)) *
                     (q(a, b) / Scalar(2));
    fam.terms.push_back({p, {}});
    return fam;
}

std::string poly_notation(const Poly& p, bool semidirect) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : p.terms()) {
        std::string mono;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += " ";
            std::string v = var_name(static_cast<Index>(k), semidirect);
            mono += e[k] == 1 ? v : "(" + v + ")^" + std::to_string(e[k]);
        }
        const bool neg = c.is_real() && sgn(c.re()) < 0;
        const Scalar mag = neg ? -c : c;
        std::string coef = mag.is_real() ? mag.str() : "(" + mag.str() + ")";
        std::string piece;
        if (mono.empty()) piece = coef;
        else if (mag.is_one()) piece = mono;
        else piece = coef + " " + mono;
        if (out.empty()) out = neg ? "-" + piece : piece;
        else out += (neg ? " - " : " + ") + piece;
    }
    return out;
}

std::string to_notation(const CasimirFamily& fam) { return expr_notation(collect(fam), fam.func, fam.semidirect); }

namespace {

class NotationParser {
public:
    NotationParser(const std::string& text, int order, bool semidirect)
        : s_(text), semidirect_(semidirect), dim_(order + (semidirect ? 1 : 0)) {
        fam_.order = order;
        fam_.semidirect = semidirect;
    }

    CasimirFamily run() {
        skip();
        if (pos_ >= s_.size()) fail("empty family");
        Expr e;
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (eat('+')) sign = 1;
            else if (eat('-')) sign = -1;
            else if (!first) fail("expected + or -");
            first = false;
            auto [p, deriv] = term();
            if (sign < 0) p *= Scalar(-1);
            add_to(e, deriv, p);
            skip();
        }
        for (auto& [k, p] : e) fam_.terms.push_back({p, k});
        if (!have_func_) fam_.func.args.clear();
        return fam_;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("notation: " + what + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool at_variable() {
        skip();
        return s_.compare(pos_, 1, "x") == 0 || s_.compare(pos_, 2, "ξ") == 0;
    }
    int number() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return std::stoi(s_.substr(start, pos_ - start));
    }
    Index variable() {
        skip();
        if (s_.compare(pos_, 1, "x") == 0) pos_ += 1;
        else if (s_.compare(pos_, 2, "ξ") == 0) pos_ += 2;
        else fail("expected a variable");
        int k = number();
        Index st = semidirect_ ? k : k - 1;
        if (st < 0 || st >= dim_) fail("variable index out of range");
        return st;
    }
    Poly power(Poly p) {
        if (!eat('^')) return p;
        int e = number();
        Poly out = Poly::constant(static_cast<int>(dim_), Scalar(1));
        for (int k = 0; k < e; ++k) out = out * p;
        return out;
    }
    // sum of products without functions, used inside parentheses
    Poly sum() {
        Poly acc(static_cast<int>(dim_));
        bool first = true;
        for (;;) {
            int sign = 1;
            if (eat('+')) sign = 1;
            else if (eat('-')) sign = -1;
            else if (!first) break;
            first = false;
            Poly p = product();
            acc += sign < 0 ? -p : p;
            skip();
            if (pos_ >= s_.size() || s_[pos_] == ')') break;
        }
        return acc;
    }
    Poly product() {
        Poly acc = Poly::constant(static_cast<int>(dim_), Scalar(1));
        bool any = false;
        for (;;) {
            skip();
            if (pos_ >= s_.size()) break;
            char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
                acc *= Scalar::parse(s_.substr(start, pos_ - start));
            } else if (at_variable()) {
                acc = acc * power(Poly::variable(static_cast<int>(dim_), static_cast<int>(variable())));
            } else if (c == '(') {
                ++pos_;
                std::size_t close = s_.find(')', pos_);
                // a plain scalar such as (1+2 i)
                if (close != std::string::npos && s_.find_first_of("xξ", pos_) > close &&
                    s_.find('i', pos_) < close) {
                    acc *= Scalar::parse(s_.substr(pos_, close - pos_));
                    pos_ = close + 1;
                } else {
                    Poly inner = sum();
                    if (!eat(')')) fail("expected )");
                    acc = acc * power(inner);
                }
            } else {
                break;
            }
            any = true;
        }
        if (!any) fail("expected a factor");
        return acc;
    }
    std::pair<Poly, std::vector<int>> term() {
        skip();
        Poly p = Poly::constant(static_cast<int>(dim_), Scalar(1));
        bool have_factor = false;
        skip();
        if (pos_ < s_.size() && !at_label() && !at_variable()) {
            p = product();
            have_factor = true;
        } else if (at_variable()) {
            p = product();
            have_factor = true;
        }
        skip();
        if (pos_ < s_.size() && at_label() && !at_variable()) {
            return {p, function()};
        }
        if (!have_factor) fail("expected a term");
        if (have_func_) fail("every term must carry the arbitrary function");
        no_func_terms_ = true;
        return {p, {}};
    }
    bool at_label() const {
        return std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_.compare(pos_, kFull.size(), kFull) == 0;
    }
    std::vector<int> function() {
        std::size_t start = pos_;
        if (s_.compare(pos_, kFull.size(), kFull) == 0) pos_ += kFull.size();
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_') &&
               s_.compare(pos_, 2, "_{") != 0)
            ++pos_;
        std::string label = s_.substr(start, pos_ - start);
        int primes = 0;
        std::vector<int> multi;
        while (pos_ < s_.size() && s_[pos_] == '\'') ++primes, ++pos_;
        if (s_.compare(pos_, 2, "^(") == 0) {
            pos_ += 2;
            primes = number();
            if (!eat(')')) fail("expected )");
        }
        if (s_.compare(pos_, 2, "_{") == 0) {
            pos_ += 2;
            do multi.push_back(number());
            while (eat(','));
            if (!eat('}')) fail("expected }");
        }
        if (!eat('(')) fail("expected ( after function name");
        std::vector<ExactVector> args;
        do {
            Poly lin = sum();
            ExactVector u = ExactVector::Zero(dim_);
            for (const auto& [e, c] : lin.terms()) {
                int deg = std::accumulate(e.begin(), e.end(), 0);
                if (deg != 1) fail("function arguments must be linear forms");
                u(std::find(e.begin(), e.end(), 1) - e.begin()) = c;
            }
            args.push_back(u);
        } while (eat(','));
        if (!eat(')')) fail("expected )");
        if (no_func_terms_) fail("every term must carry the arbitrary function");
        if (!have_func_) {
            have_func_ = true;
            fam_.func.label = label;
            fam_.func.args = args;
        } else if (label != fam_.func.label || args != fam_.func.args) {
            fail("a family carries exactly one arbitrary function");
        }
        if (multi.empty()) multi.assign(args.size(), 0);
        if (args.size() == 1 && primes) multi[0] = primes;
        if (multi.size() != args.size()) fail("derivative orders do not match the arguments");
        return multi;
    }

    std::string s_;
    std::size_t pos_ = 0;
    bool semidirect_;
    Index dim_;
    bool have_func_ = false, no_func_terms_ = false;
    CasimirFamily fam_;
};

}  // namespace

CasimirFamily parse_family(const std::string& text, int order, bool semidirect) {
    return NotationParser(text, order, semidirect).run();
}

bool same_family(const CasimirFamily& a, const CasimirFamily& b) {
    return a.order == b.order && a.semidirect == b.semidirect && a.func.args == b.func.args && collect(a) == collect(b);
}

bool same_families(const std::vector<CasimirFamily>& a, const std::vector<CasimirFamily>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const CasimirFamily& f : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && !found; ++j)
            if (!used[j] && same_family(f, b[j])) used[j] = found = true;
        if (!found) return false;
    }
    return true;
}

void relabel(std::vector<CasimirFamily>& fams) {
    static const std::vector<std::string> names = {"f", "g", "h", "k", "l", "m", "p", "q", "r", "s"};
    for (std::size_t i = 0; i < fams.size(); ++i) {
        const CasimirFamily& f = fams[i];
        // an arbitrary function of every coordinate
        if (static_cast<Index>(f.func.args.size()) == f.dim() && f.terms.size() == 1 && f.terms[0].poly.degree() == 0)
            fams[i].func.label = std::string(kFull);
        else
            fams[i].func.label = i < names.size() ? names[i] : "f" + std::to_string(i + 1);
    }
}

}  // namespace liex
