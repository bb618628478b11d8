// One line per acceptance criterion; exits nonzero if any fails.
#include "support.hpp"

#include "liex/casimir.hpp"
#include "liex/classify.hpp"
#include "liex/dynamics.hpp"
#include "liex/io.hpp"
#include "liex/transform.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace liex;
using namespace testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<CasimirFamily> parse_all(const Json& texts, int order, bool sd) {
    std::vector<CasimirFamily> out;
    for (const Json& t : texts) out.push_back(parse_family(t.get<std::string>(), order, sd));
    return out;
}

Outcome catalog_counts() {
    Outcome o;
    const std::size_t expect[] = {2, 4, 9};
    std::ostringstream d;
    for (int n = 2; n <= 4; ++n) {
        const auto& cat = catalog(n);
        d << cat.size() << (n < 4 ? "/" : "");
        o.pass = o.pass && cat.size() == expect[n - 2];
        for (const CatalogEntry& e : cat) o.pass = o.pass && !find_violation(e.tensor);
    }
    o.detail = "sizes " + d.str();
    return o;
}

Outcome round_trip() {
    Outcome o;
    std::mt19937 rng(20240601);
    int total = 0, ok = 0;
    for (int n = 1; n <= 4; ++n)
        for (const CatalogEntry& e : catalog(n))
            for (int k = 0; k < 50; ++k) {
                ++total;
                ExtensionTensor t = liex::apply(e.tensor, random_lower(rng, e.tensor.dim(), false));
                if (find_violation(t)) continue;
                try {
                    Classification c = classify(t);
                    if (c.label == e.label && liex::apply(t, c.witness) == e.tensor) ++ok;
                } catch (const Error&) {
                }
            }
    o.pass = ok == total;
    o.detail = std::to_string(ok) + "/" + std::to_string(total) + " transformed entries";
    return o;
}

Outcome leibniz_table() {
    Outcome o;
    Json j = read_json_file(fixtures_dir() + "/casimir_tables.json");
    int ok = 0;
    for (const Json& row : j.at("leibniz")) {
        const int n = row.at("n").get<int>();
        CasimirFamily closed = leibniz_casimirs_closed_form(n, 1);
        if (same_family(closed, parse_family(row.at("family").get<std::string>(), n, false))) ++ok;
    }
    o.pass = ok == 5;
    o.detail = std::to_string(ok) + "/5 rows";
    return o;
}

Outcome case_tables() {
    Outcome o;
    Json j = read_json_file(fixtures_dir() + "/casimir_tables.json");
    int ok = 0, total = 0;
    for (const Json& row : j.at("cases")) {
        ++total;
        const int n = row.at("n").get<int>();
        const bool sd = row.at("semidirect").get<bool>();
        ExtensionTensor t = catalog_tensor(row.at("label").get<std::string>(), sd);
        std::vector<CasimirFamily> expect = parse_all(row.at("families"), n, sd);
        bool good = same_families(synthesize_casimirs(t), expect);
        for (const CasimirFamily& f : expect) good = good && casimir_condition_check(t, f).pass;
        if (good) ++ok;
        else o.detail += " mismatch:" + row.at("label").get<std::string>();
    }
    o.pass = ok == total && total == 20;
    o.detail = std::to_string(ok) + "/" + std::to_string(total) + " table rows" + o.detail;
    return o;
}

Outcome crmhd_end_to_end() {
    Outcome o;
    Json j = read_json_file(fixtures_dir() + "/casimir_tables.json");
    int ok = 0;
    for (const Json& row : j.at("crmhd")) {
        const Scalar beta = Scalar::parse(row.at("beta").get<std::string>());
        ExtensionTensor t = crmhd(beta);
        CoextensionResult r = build_coextension(t);
        bool trivial = r.nonsingular && r.solvable_ok && r.coext_ok;
        for (const ExactMatrix& m : r.cow) trivial = trivial && is_zero(m);
        std::vector<CasimirFamily> fams = synthesize_casimirs(t);
        bool good = trivial && fams.size() == 4 && same_families(fams, parse_all(row.at("families"), 3, true));
        for (const CasimirFamily& f : fams) good = good && casimir_condition_check(t, f).pass;
        if (good) ++ok;
    }
    o.pass = ok == 2;
    o.detail = "beta in {1, 5/2}: " + std::to_string(ok) + "/2";
    return o;
}

Outcome singular_case() {
    Outcome o;
    ExtensionTensor t = catalog_tensor("n4-case3c");
    CoextensionResult r = build_coextension(t);
    ExactMatrix c1 = diag({0, 0, 0});
    c1(1, 2) = c1(2, 1) = 1;
    bool cow_ok = r.cow.size() == 3 && r.cow[0] == c1 && is_zero(r.cow[1]) && is_zero(r.cow[2]);
    bool proj_ok = r.projector == diag({1, 0, 1});
    std::vector<CasimirFamily> expect{parse_family("x1 f(x4) + x2 x3 f'(x4)", 4, false),
                                      parse_family("x3 g(x4)", 4, false), parse_family("h(x2,x4)", 4, false)};
    std::vector<CasimirFamily> fams = synthesize_casimirs(t);
    bool fam_ok = same_families(fams, expect);
    for (const CasimirFamily& f : fams) fam_ok = fam_ok && casimir_condition_check(t, f).pass;
    o.pass = cow_ok && proj_ok && r.solvable_ok && r.coext_ok && fam_ok;
    o.detail = std::string("projector ") + (proj_ok ? "ok" : "wrong") + ", coextension " + (cow_ok ? "ok" : "wrong") +
               ", flags " + (r.solvable_ok && r.coext_ok ? "true" : "false") + ", families " +
               (fam_ok ? "ok" : "wrong");
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    int ok = 0;
    for (int n = 2; n <= 8; ++n) {
        std::vector<CasimirFamily> closed;
        for (int nu = 1; nu <= n; ++nu) closed.push_back(leibniz_casimirs_closed_form(n, nu));
        if (same_families(synthesize_casimirs(leibniz(n)), closed)) ++ok;
    }
    o.pass = ok == 7;
    o.detail = std::to_string(ok) + "/7 orders";
    return o;
}

Outcome pseudoinverse_suite() {
    Outcome o;
    std::mt19937 rng(8);
    int ok = 0;
    std::vector<int> by_rank(5, 0);
    for (int k = 0; k < 200; ++k) {
        std::uniform_int_distribution<int> dim(1, 4);
        const Index r = dim(rng), c = dim(rng);
        const Index rk = k % (std::min(r, c) + 1);
        ExactMatrix a = random_rank(rng, r, c, rk);
        ExactMatrix p = pseudoinverse(a);
        ExactMatrix ap = a * p, pa = p * a;
        if (ExactMatrix(p * a * p) == p && ExactMatrix(a * p * a) == a && adjoint(ap) == ap && adjoint(pa) == pa) ++ok;
        ++by_rank[static_cast<std::size_t>(rk)];
    }
    o.pass = ok == 200;
    std::ostringstream d;
    d << ok << "/200 (ranks 0..4: " << by_rank[0] << "," << by_rank[1] << "," << by_rank[2] << "," << by_rank[3] << ","
      << by_rank[4] << ")";
    o.detail = d.str();
    return o;
}

Outcome jacobi_fuzzing() {
    Outcome o;
    std::mt19937 rng(99);
    std::vector<ExtensionTensor> bases{leibniz(3), leibniz(4), crmhd(Scalar(1)), catalog_tensor("n4-case3c"),
                                       leibniz(2, true), catalog_tensor("n4-case1b"), catalog_tensor("n3-case2")};
    int rejected = 0, confirmed = 0, wrong = 0;
    for (int k = 0; k < 100; ++k) {
        ExtensionTensor t = bases[static_cast<std::size_t>(k) % bases.size()];
        std::uniform_int_distribution<Index> idx(0, t.dim() - 1);
        const Index l = idx(rng), m = idx(rng), n = idx(rng);
        t(l, m, n) = t(l, m, n) + small_rational(rng) + Scalar(1);
        const bool accepted = !find_violation(t);
        const bool oracle = jacobi_oracle(t);
        if (accepted && oracle) ++confirmed;
        else if (!accepted && !oracle) ++rejected;
        else ++wrong;
    }
    o.pass = wrong == 0;
    o.detail = std::to_string(rejected) + " rejected, " + std::to_string(confirmed) + " confirmed valid, " +
               std::to_string(wrong) + " disagreements";
    return o;
}

Outcome dynamics() {
    Outcome o;
    ExtensionTensor rigid(0, true);
    rigid(0, 0, 0) = 1;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    double worst = 0;
    for (const ExtensionTensor& t : {rigid, leibniz(1, true), crmhd(Scalar(1))}) {
        std::vector<Monitor> mons = casimir_monitors(t);
        for (int k = 0; k < 100; ++k) {
            FieldState s;
            for (Index i = 0; i < t.dim(); ++i) s.tuples.emplace_back(u(rng), u(rng), u(rng));
            Eigen::MatrixXd b = Eigen::MatrixXd::Random(3 * t.dim(), 3 * t.dim());
            HamiltonianSpec h{b * b.transpose()};
            FieldState d = eom_rhs(t, h, s);
            for (const Monitor& m : mons)
                worst = std::max(worst, std::abs(m.rate(s, d)) / std::max(1.0, m.rate_scale(s, d)));
        }
    }
    const bool a = worst <= 1e-12;

    HamiltonianSpec h = HamiltonianSpec::rigid_body({1, 2, 3});
    FieldState s0;
    s0.tuples = {Eigen::Vector3d(1, 1, 1)};
    std::vector<Monitor> mons = casimir_monitors(rigid);
    TrajectoryRecord fine = simulate(rigid, h, s0, 1e-3, 10000, mons);
    double drift = 0;
    for (double d : fine.drift) drift = std::max(drift, d);
    const bool b = drift < 1e-8;

    TrajectoryRecord coarse = simulate(rigid, h, s0, 0.02, 500, mons);
    TrajectoryRecord half = simulate(rigid, h, s0, 0.01, 1000, mons);
    bool c = true;
    std::ostringstream ratios;
    for (std::size_t m = 0; m < coarse.drift.size(); ++m) {
        const double r = coarse.drift[m] / half.drift[m];
        c = c && r >= 8 && r <= 32;
        ratios << (m ? "," : "") << r;
    }
    std::ostringstream d;
    d << "(a) max relative rate " << worst << ", (b) max drift " << drift << ", (c) ratios " << ratios.str();
    o.pass = a && b && c;
    o.detail = d.str();
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double budget;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "catalog counts", 1, catalog_counts},
        {2, "classification round trip", 30, round_trip},
        {3, "Leibniz closed forms", 1, leibniz_table},
        {4, "Casimir tables for the normal forms", 10, case_tables},
        {5, "CRMHD end to end", 1, crmhd_end_to_end},
        {6, "singular Wn example", 1, singular_case},
        {7, "recursion vs closed form", 10, oracle_equivalence},
        {8, "pseudoinverse identities", 10, pseudoinverse_suite},
        {9, "Jacobi fuzzing", 5, jacobi_fuzzing},
        {10, "dynamics conservation and order", 60, dynamics},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.budget);
        std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << o.detail
                  << "; " << timing << (in_time ? "" : ", over budget") << "]\n";
    }
    return failures == 0 ? 0 : 1;
}
