#include "liex/classify.hpp"

#include "liex/linalg.hpp"
#include "liex/transform.hpp"

#include <map>
#include <mutex>

namespace liex {

namespace {

ExtensionTensor build_solvable(const std::string& name) {
    if (name == "n1-abelian") return ExtensionTensor(1, false);
    if (name == "n2-case1") return ExtensionTensor(2, false);
    if (name == "n2-case2") {
        ExtensionTensor t(2, false);
        t(1, 0, 0) = 1;
        return t;
    }
    if (name == "n3-case1") return ExtensionTensor(3, false);
    if (name == "n3-case2") {
        ExtensionTensor t(3, false);
        t.set_sym(2, 0, 1, 1);
        return t;
    }
    if (name == "n3-case3") {
        ExtensionTensor t(3, false);
        t(1, 0, 0) = 1;
        return t;
    }
    if (name == "n3-case4") return leibniz(3);

    ExtensionTensor t(4, false);
    if (name == "n4-case1a") return t;
    if (name == "n4-case1b") {
        t.set_sym(3, 0, 2, 1);
        t(3, 1, 1) = 1;
        return t;
    }
    if (name == "n4-case2") {
        t.set_sym(2, 0, 1, 1);
        return t;
    }
    if (name == "n4-case4b") return leibniz(4);
    if (name == "n4-case4a") {
        t(1, 0, 0) = 1;
        t.set_sym(2, 0, 1, 1);
        return t;
    }
    t(1, 0, 0) = 1;
    if (name == "n4-case3a") return t;
    if (name == "n4-case3b") {
        t(3, 2, 2) = 1;
        return t;
    }
    if (name == "n4-case3c") {
        t.set_sym(3, 0, 2, 1);
        return t;
    }
    if (name == "n4-case3d") {
        t.set_sym(3, 0, 1, 1);
        t(3, 2, 2) = 1;
        return t;
    }
    throw PreconditionViolation("unknown normal form " + name);
}

const std::vector<std::vector<std::string>> kNames = {
    {"n1-abelian"},
    {"n2-case1", "n2-case2"},
    {"n3-case1", "n3-case2", "n3-case3", "n3-case4"},
    {"n4-case1a", "n4-case1b", "n4-case2", "n4-case3a", "n4-case3b", "n4-case3c", "n4-case3d", "n4-case4a",
     "n4-case4b"},
};

bool is_identity(const BasisChange& b) {
    return b.scale().is_one() && b.m() == ExactMatrix::Identity(b.size(), b.size());
}

ExactMatrix permutation(const std::vector<Index>& pi) {
    const auto n = static_cast<Index>(pi.size());
    ExactMatrix m = ExactMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) m(pi[j], j) = 1;
    return m;
}

ExactMatrix swap_matrix(Index n, Index a, Index b) {
    std::vector<Index> pi(n);
    for (Index j = 0; j < n; ++j) pi[j] = j;
    std::swap(pi[a], pi[b]);
    return permutation(pi);
}

ExactMatrix diagonal(const std::vector<Scalar>& d) {
    const auto n = static_cast<Index>(d.size());
    ExactMatrix m = ExactMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) m(j, j) = d[j];
    return m;
}

struct Reducer {
    ExtensionTensor t;
    std::vector<BasisChange> chain;

    Index dim() const { return t.dim(); }
    ExactMatrix eye() const { return ExactMatrix::Identity(dim(), dim()); }

    void step(const BasisChange& b) {
        if (is_identity(b)) return;
        t = apply(t, b);
        chain.push_back(b);
    }
    void step(const ExactMatrix& m) { step(BasisChange(m)); }

    // last slice of the prefix of size n, on the head indices
    ExactMatrix tail(Index n) const { return t.lower_slice(n - 1).topLeftCorner(n - 1, n - 1); }

    // subtracts multiples of the head slices from the tail slice of the prefix of size n
    void kill_coboundaries(Index n) {
        const Index h = n - 1;
        ExactMatrix s = tail(n);
        ExactMatrix m = eye();
        for (Index lam = 0; lam < h; ++lam) {
            ExactMatrix w = t.lower_slice(lam).topLeftCorner(h, h);
            Index pi = -1, pj = -1;
            for (Index i = 0; i < h && pi < 0; ++i)
                for (Index j = i; j < h && pi < 0; ++j)
                    if (!w(i, j).is_zero()) pi = i, pj = j;
            if (pi < 0) continue;
            Scalar k = s(pi, pj) / w(pi, pj);
            s -= k * w;
            m(h, lam) = k;
        }
        step(m);
    }
};

void check(bool ok, const char* what) {
    if (!ok) throw Error(std::string("reduction failed: ") + what);
}

// isotropic nonzero vector of a nondegenerate symmetric form
ExactVector isotropic(const ExactMatrix& s) {
    const Index r = s.rows();
    for (Index j = 0; j < r; ++j)
        if (s(j, j).is_zero()) return ExactVector::Unit(r, j);
    auto pair_try = [&](const ExactMatrix& f, Index i, Index j, ExactVector& v) {
        // f(e_i + t e_j) = a + 2 b t + d t^2
        Scalar a = f(i, i), b = f(i, j), d = f(j, j), root;
        if (!exact_sqrt(b * b - a * d, root)) return false;
        v = ExactVector::Unit(r, i);
        v(j) = (-b + root) / d;
        return true;
    };
    ExactVector v;
    for (Index i = 0; i < r; ++i)
        for (Index j = i + 1; j < r; ++j)
            if (pair_try(s, i, j, v)) return v;
    if (r == 3) {
        // diagonalize, then look for a pair of opposite squares
        ExactMatrix d = s, p = ExactMatrix::Identity(r, r);
        for (Index k = 0; k < r; ++k) {
            check(!d(k, k).is_zero(), "isotropic vector search");
            for (Index l = k + 1; l < r; ++l) {
                Scalar f = -d(k, l) / d(k, k);
                p.col(l) += f * p.col(k);
                d.col(l) += f * d.col(k);
                d.row(l) += f * d.row(k);
                if (d(l, l).is_zero()) return p.col(l);
            }
        }
        for (Index i = 0; i < r; ++i)
            for (Index j = i + 1; j < r; ++j)
                if (pair_try(d, i, j, v)) return p * v;
    }
    throw NoRationalWitness("symmetric form has no isotropic vector over Q(i)");
}

// w with v^T S w = 1 and w^T S w = 0
ExactVector hyperbolic_partner(const ExactMatrix& s, const ExactVector& v) {
    ExactVector sv = s * v;
    Index j = 0;
    while (j < sv.size() && sv(j).is_zero()) ++j;
    check(j < sv.size(), "form is degenerate");
    ExactVector w1 = ExactVector::Unit(s.rows(), j) / sv(j);
    Scalar q = (w1.transpose() * s * w1)(0, 0);
    return w1 - (q / Scalar(2)) * v;
}

// Reduces the tail slice S of the prefix of size n (zero head) by congruence and scale.
// Targets: rank 1 -> E00, rank 2 -> E01 + E10, rank 3 -> antidiagonal.
Index reduce_free(Reducer& r, Index n) {
    const Index k = n - 1;
    ExactMatrix s = r.tail(n);
    const Index rk = rank(s);
    if (rk == 0) return 0;
    auto rad = null_space(s);
    ExactMatrix b0 = complete_basis(columns(rad, k));
    // nondegenerate directions first, radical last
    const auto nr = static_cast<Index>(rad.size());
    ExactMatrix b(k, k);
    b.leftCols(k - nr) = b0.rightCols(k - nr);
    b.rightCols(nr) = b0.leftCols(nr);
    ExactMatrix snd = (b.transpose() * s * b).topLeftCorner(rk, rk);

    ExactMatrix a = ExactMatrix::Identity(rk, rk);
    Scalar c(1);
    if (rk == 1) {
        c = snd(0, 0);
    } else if (rk == 2) {
        ExactVector v = isotropic(snd);
        a.col(0) = v;
        a.col(1) = hyperbolic_partner(snd, v);
    } else {
        ExactVector v = isotropic(snd);
        ExactVector w = hyperbolic_partner(snd, v);
        ExactMatrix cons(2, rk);
        cons.row(0) = (snd * v).transpose();
        cons.row(1) = (snd * w).transpose();
        auto perp = null_space(cons);
        check(perp.size() == 1, "orthogonal complement");
        ExactVector u = perp[0];
        Scalar d = (u.transpose() * snd * u)(0, 0);
        check(!d.is_zero(), "orthogonal complement is isotropic");
        a.col(0) = d * v;
        a.col(1) = u;
        a.col(2) = w;
        c = d;
    }
    ExactMatrix blk = ExactMatrix::Identity(k, k);
    blk.topLeftCorner(rk, rk) = a;
    ExactMatrix m = r.eye();
    m.topLeftCorner(k, k) = b * blk;
    m(k, k) = c;
    r.step(m);
    return rk;
}

std::string reduce_prefix(Reducer& r, Index n) {
    const Index N = r.dim();
    if (n == 1) return "n1-abelian";
    const std::string head = reduce_prefix(r, n - 1);

    if (n == 2) {
        Scalar a = r.t(1, 0, 0);
        if (a.is_zero()) return "n2-case1";
        ExactMatrix m = r.eye();
        m(1, 1) = a;
        r.step(m);
        return "n2-case2";
    }

    if (n == 3) {
        if (head == "n2-case1") {
            switch (reduce_free(r, n)) {
            case 0: return "n3-case1";
            case 1: r.step(swap_matrix(N, 1, 2)); return "n3-case3";
            default: return "n3-case2";
            }
        }
        r.kill_coboundaries(n);
        Scalar q = r.t(2, 0, 1);
        if (q.is_zero()) return "n3-case3";
        ExactMatrix m = r.eye();
        m(2, 2) = q;
        r.step(m);
        return "n3-case4";
    }

    check(n == 4, "prefix order");
    if (head == "n3-case1") {
        switch (reduce_free(r, n)) {
        case 0: return "n4-case1a";
        case 1: r.step(swap_matrix(N, 1, 3)); return "n4-case3a";
        case 2: r.step(swap_matrix(N, 2, 3)); return "n4-case2";
        default: return "n4-case1b";
        }
    }
    if (head == "n3-case2") {
        r.kill_coboundaries(n);
        ExactMatrix s = r.tail(n);
        check(s(0, 1).is_zero() && s(0, 2).is_zero() && s(1, 2).is_zero() && s(2, 2).is_zero(),
              "tail slice outside the expected pattern");
        Scalar p = s(0, 0), q = s(1, 1);
        if (p.is_zero() && q.is_zero()) return "n4-case2";
        if (!p.is_zero() && !q.is_zero()) {
            Scalar alpha;
            if (!exact_sqrt(p / q, alpha))
                throw NoRationalWitness("ratio " + (p / q).str() + " is not a square in Q(i)");
            ExactMatrix m = ExactMatrix::Zero(N, N);
            m(0, 0) = 1, m(1, 0) = alpha;
            m(2, 1) = Scalar(2) * alpha, m(3, 1) = Scalar(2) * p;
            m(0, 2) = 1, m(1, 2) = -alpha;
            m(2, 3) = Scalar(-2) * alpha, m(3, 3) = Scalar(2) * p;
            r.step(m);
            return "n4-case3b";
        }
        if (p.is_zero()) {
            r.step(swap_matrix(N, 0, 1));
            p = q;
        }
        r.step(permutation({0, 3, 1, 2}));
        r.step(diagonal({1, p, 1, 1}));
        return "n4-case3c";
    }
    if (head == "n3-case3") {
        r.kill_coboundaries(n);
        ExactMatrix s = r.tail(n);
        check(s(1, 1).is_zero() && s(1, 2).is_zero(), "tail slice outside the expected pattern");
        const Scalar q = s(0, 1), rr = s(0, 2), u = s(2, 2);
        if (!q.is_zero()) {
            ExactMatrix m = r.eye();
            m(1, 2) = -rr / q;
            r.step(m);
            r.kill_coboundaries(n);
            if (u.is_zero()) {
                r.step(swap_matrix(N, 2, 3));
                r.step(diagonal({1, 1, q, 1}));
                return "n4-case4a";
            }
            const Scalar a = u / q;
            r.step(diagonal({a, a * a, a, a * a * u}));
            return "n4-case3d";
        }
        if (!u.is_zero()) {
            ExactMatrix m = r.eye();
            m(2, 0) = -rr / u;
            r.step(m);
            r.kill_coboundaries(n);
            r.step(diagonal({1, 1, 1, u}));
            return "n4-case3b";
        }
        if (!rr.is_zero()) {
            r.step(diagonal({1, 1, 1, rr}));
            return "n4-case3c";
        }
        return "n4-case3a";
    }
    check(head == "n3-case4", "unexpected head");
    r.kill_coboundaries(n);
    Scalar c = r.t(3, 0, 2);
    if (c.is_zero()) return "n4-case4a";
    r.step(diagonal({1, 1, 1, c}));
    return "n4-case4b";
}

Classification finish(const ExtensionTensor& input, Reducer& r, const std::string& name) {
    Classification out;
    out.label = CaseLabel{input.order(), name, input.semidirect()};
    out.normal_form = catalog_tensor(name, input.semidirect());
    out.witness = std::move(r.chain);
    check(liex::apply(input, out.witness) == out.normal_form, "witness does not reach the normal form");
    return out;
}

std::string classify_solvable(Reducer& r) {
    if (!is_solvable(r.t)) throw NotSolvable("some W^(nu) has a nonzero eigenvalue");
    r.step(simultaneous_triangularize(r.t.upper_slices()));
    for (Index nu = 0; nu < r.dim(); ++nu)
        check(is_lower_triangular(r.t.upper_slice(nu), true), "triangularization");
    return reduce_prefix(r, r.dim());
}

// [U, V] spanned by sum_{mu,nu} W^{mu nu} u_mu v_nu
ExactMatrix bracket_span(const ExtensionTensor& t, const ExactMatrix& u, const ExactMatrix& v) {
    const Index n = t.dim();
    std::vector<ExactVector> cols;
    for (Index a = 0; a < u.cols(); ++a)
        for (Index b = 0; b < v.cols(); ++b) {
            ExactVector x = ExactVector::Zero(n);
            for (Index lam = 0; lam < n; ++lam) x(lam) = (u.col(a).transpose() * t.lower_slice(lam) * v.col(b))(0, 0);
            cols.push_back(x);
        }
    if (cols.empty()) return ExactMatrix(n, 0);
    ExactMatrix all = columns(cols, n);
    auto e = rref(ExactMatrix(all.transpose()));
    const auto rk = static_cast<Index>(e.pivots.size());
    return e.r.topRows(rk).transpose();
}

}  // namespace

const std::vector<CatalogEntry>& catalog(int order) {
    if (order < 1 || order > 4) throw OrderTooHigh("no catalog for order " + std::to_string(order));
    static std::once_flag once;
    static std::vector<std::vector<CatalogEntry>> all;
    std::call_once(once, [] {
        for (int o = 1; o <= 4; ++o) {
            std::vector<CatalogEntry> v;
            for (const auto& name : kNames[o - 1]) v.push_back({CaseLabel{o, name, false}, build_solvable(name)});
            all.push_back(std::move(v));
        }
    });
    return all[order - 1];
}

ExtensionTensor catalog_tensor(const std::string& name, bool semidirect) {
    ExtensionTensor t = build_solvable(name);
    return semidirect ? append_semisimple(t) : t;
}

Classification classify(const ExtensionTensor& t) {
    if (t.order() > 4) throw OrderTooHigh("classification is available up to order 4, got " + std::to_string(t.order()));
    if (t.order() < 1) throw PreconditionViolation("empty tensor");
    validate(t);
    Reducer r{t, {}};
    if (!t.semidirect()) return finish(t, r, classify_solvable(r));

    const Index n = t.dim();
    for (Index mu = 0; mu < n; ++mu)
        for (Index nu = 0; nu < n; ++nu)
            if ((mu || nu) && !t(0, mu, nu).is_zero())
                throw PreconditionViolation("indices 1..n do not form an ideal complementary to the semisimple slot");
    std::vector<ExactMatrix> ideal;
    for (Index nu = 0; nu < n; ++nu) ideal.push_back(t.upper_slice(nu).bottomRightCorner(n - 1, n - 1));
    BasisChange ps = simultaneous_triangularize(ideal);
    r.step(ps.embedded(1, n));
    for (Index nu = 1; nu < n; ++nu)
        if (!is_nilpotent(r.t.upper_slice(nu)))
            throw NotSolvable("W^(" + std::to_string(nu) + ") has a nonzero eigenvalue");
    Normalized w0 = normalize_w0_to_identity(r.t);
    r.step(w0.change);

    Reducer inner{solvable_part(r.t), {}};
    const std::string name = classify_solvable(inner);
    for (const BasisChange& b : inner.chain) r.step(b.embedded(1, n));
    return finish(t, r, name);
}

Fingerprint fingerprint(const ExtensionTensor& t) {
    const Index n = t.dim();
    Fingerprint f;
    const ExactMatrix g = ExactMatrix::Identity(n, n);
    ExactMatrix d = bracket_span(t, g, g);
    ExactMatrix c = d;
    f.derived_series.push_back(d.cols());
    f.lower_central.push_back(c.cols());
    for (Index k = 0; k < n && d.cols() > 0; ++k) {
        ExactMatrix next = bracket_span(t, d, d);
        if (next.cols() == d.cols()) break;
        d = next;
        f.derived_series.push_back(d.cols());
    }
    for (Index k = 0; k < n && c.cols() > 0; ++k) {
        ExactMatrix next = bracket_span(t, g, c);
        if (next.cols() == c.cols()) break;
        c = next;
        f.lower_central.push_back(c.cols());
    }
    // center: sum_nu W_lam^{mu nu} x_nu = 0 for all lam, mu
    ExactMatrix sys(n * n, n);
    for (Index lam = 0; lam < n; ++lam)
        for (Index mu = 0; mu < n; ++mu)
            for (Index nu = 0; nu < n; ++nu) sys(lam * n + mu, nu) = t(lam, mu, nu);
    f.center_dim = n - rank(sys);
    for (Index lam = 0; lam < n; ++lam) f.slice_ranks.push_back(rank(t.lower_slice(lam)));
    const Index off = t.semidirect() ? 1 : 0;
    const Index k = n - 1 - off;
    if (k > 0) f.wn_nullity = k - rank(ExactMatrix(t.lower_slice(n - 1).block(off, off, k, k)));
    return f;
}

EquivalenceVerdict equivalence_check(const ExtensionTensor& a, const ExtensionTensor& b) {
    using Kind = EquivalenceVerdict::Kind;
    if (a.order() != b.order() || a.semidirect() != b.semidirect())
        return {Kind::Distinct, {}, "orders or semidirect flags differ"};
    if (a == b) return {Kind::Equivalent, {}, "identical tensors"};

    auto invariant = [](const Fingerprint& f) { return std::tie(f.derived_series, f.lower_central, f.center_dim); };
    auto describe = [](const Fingerprint& x, const Fingerprint& y) -> std::string {
        auto dims = [](const std::vector<Index>& v) {
            std::string s;
            for (Index d : v) s += (s.empty() ? "" : ",") + std::to_string(d);
            return "(" + s + ")";
        };
        if (x.derived_series != y.derived_series)
            return "derived series " + dims(x.derived_series) + " vs " + dims(y.derived_series);
        if (x.lower_central != y.lower_central)
            return "lower central series " + dims(x.lower_central) + " vs " + dims(y.lower_central);
        if (x.center_dim != y.center_dim)
            return "center dimension " + std::to_string(x.center_dim) + " vs " + std::to_string(y.center_dim);
        if (x.slice_ranks != y.slice_ranks)
            return "normal-form slice ranks " + dims(x.slice_ranks) + " vs " + dims(y.slice_ranks);
        return "normal-form tail nullity " + std::to_string(x.wn_nullity) + " vs " + std::to_string(y.wn_nullity);
    };

    try {
        Classification ca = classify(a), cb = classify(b);
        if (ca.label == cb.label) {
            std::vector<BasisChange> w = ca.witness;
            for (auto it = cb.witness.rbegin(); it != cb.witness.rend(); ++it) w.push_back(it->inverse());
            return {Kind::Equivalent, w, "both reduce to " + ca.label.name};
        }
        Fingerprint fa = fingerprint(ca.normal_form), fb = fingerprint(cb.normal_form);
        std::string why = describe(fa, fb);
        for (std::size_t k = 0; k < fa.slice_ranks.size(); ++k)
            if (fa.slice_ranks[k] != fb.slice_ranks[k]) {
                why = "rank of W_(" + std::to_string(a.printed_index(static_cast<Index>(k))) + ") differs: " +
                      std::to_string(fa.slice_ranks[k]) + " vs " + std::to_string(fb.slice_ranks[k]);
                break;
            }
        return {Kind::Distinct, {}, ca.label.name + " vs " + cb.label.name + ": " + why};
    } catch (const OrderTooHigh&) {
    } catch (const NoRationalWitness&) {
    }
    Fingerprint fa = fingerprint(a), fb = fingerprint(b);
    if (invariant(fa) != invariant(fb)) return {Kind::Distinct, {}, describe(fa, fb)};
    return {Kind::Unknown, {}, "invariants agree but no witness was found"};
}

}  // namespace liex
