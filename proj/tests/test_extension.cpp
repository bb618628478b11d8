#include "support.hpp"

#include "liex/classify.hpp"

#include <doctest.h>

using namespace liex;
using namespace testing;

TEST_CASE("validate examples") {
    CHECK_NOTHROW(validate(crmhd(Scalar(1))));

    ExtensionTensor rmhd(1, true);
    rmhd(0, 0, 0) = 1;
    rmhd(1, 0, 1) = rmhd(1, 1, 0) = 1;
    CHECK(rmhd.upper_slice(0) == ExactMatrix::Identity(2, 2));
    CHECK(rmhd.upper_slice(1) == mat({{0, 0}, {1, 0}}));
    CHECK_NOTHROW(validate(rmhd));

    ExtensionTensor broken = crmhd(Scalar(1));
    broken(3, 2, 1) = 1;
    try {
        validate(broken);
        FAIL("expected a symmetry violation");
    } catch (const SymmetryViolation& e) {
        CHECK(e.where.a == 3);
        CHECK(std::string(e.what()).find("SymmetryViolation") != std::string::npos);
    }

    ExtensionTensor noncomm(2, false);
    noncomm(0, 0, 0) = 1;
    noncomm(0, 1, 1) = 1;
    CHECK_THROWS_AS(validate(noncomm), CommutationViolation);
}

TEST_CASE("validate from a raw array checks the shape") {
    std::vector<std::vector<std::vector<Scalar>>> w(2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2)));
    w[1][0][0] = 1;
    ExtensionTensor t = validate(w, false);
    CHECK(t == leibniz(2));
    w[1].pop_back();
    CHECK_THROWS_AS(validate(w, false), DimensionMismatch);
}

TEST_CASE("leibniz examples") {
    ExtensionTensor two(2, false);
    two(1, 0, 0) = 1;
    CHECK(leibniz(2) == two);

    ExtensionTensor three(3, false);
    three(1, 0, 0) = 1;
    three.set_sym(2, 0, 1, Scalar(1));
    CHECK(leibniz(3) == three);

    ExtensionTensor sd = leibniz(1, true);
    CHECK(sd.upper_slice(0) == ExactMatrix::Identity(2, 2));
    CHECK(sd.upper_slice(1) == mat({{0, 0}, {1, 0}}));
}

TEST_CASE("leibniz slices are powers of the first") {
    for (int n = 1; n <= 8; ++n) {
        ExtensionTensor t = leibniz(n);
        CHECK_NOTHROW(validate(t));
        CHECK_NOTHROW(validate(leibniz(n, true)));
        ExactMatrix p = t.upper_slice(0);
        for (int nu = 1; nu < n; ++nu) {
            p = p * t.upper_slice(0);
            CHECK(t.upper_slice(nu) == p);
        }
        for (Index l = 0; l < n; ++l)
            for (Index m = 0; m < n; ++m)
                for (Index k = 0; k < n; ++k) CHECK(t(l, m, k) == Scalar(l == m + k + 1 ? 1 : 0));
    }
}

TEST_CASE("crmhd examples") {
    ExtensionTensor t = crmhd(Scalar(1));
    CHECK(t.semidirect());
    CHECK(t.order() == 3);
    ExactMatrix w1 = t.upper_slice(1);
    CHECK(w1(1, 0) == Scalar(1));
    CHECK(w1(3, 2) == Scalar(-1));
    CHECK(t.upper_slice(0) == ExactMatrix::Identity(4, 4));
    CHECK_NOTHROW(validate(crmhd(q(5, 2))));
    CHECK_THROWS_AS(crmhd(Scalar(0)), ZeroParameter);
    std::mt19937 rng(1);
    for (int k = 0; k < 5; ++k) {
        Scalar beta = small_rational(rng, 7);
        if (beta.is_zero()) beta = q(7, 3);
        CHECK_NOTHROW(validate(crmhd(beta)));
    }
}

TEST_CASE("direct sum examples") {
    CHECK(direct_sum(leibniz(2), leibniz(2)) == catalog_tensor("n4-case3b"));
    ExtensionTensor padded = direct_sum(leibniz(3), abelian(1));
    CHECK(padded.order() == 4);
    for (Index l = 0; l < 4; ++l)
        for (Index m = 0; m < 4; ++m)
            for (Index k = 0; k < 4; ++k)
                CHECK(padded(l, m, k) == ((l < 3 && m < 3 && k < 3) ? leibniz(3)(l, m, k) : Scalar(0)));
    CHECK(direct_sum(abelian(2), abelian(1)) == abelian(3));
    CHECK(direct_sum(abelian(2), abelian(1)).is_zero());
    CHECK_NOTHROW(validate(direct_sum(leibniz(3), catalog_tensor("n3-case2"))));
}

TEST_CASE("append_semisimple examples") {
    ExtensionTensor pure = append_semisimple(leibniz(1));
    CHECK(pure == leibniz(1, true));
    for (int n = 1; n <= 5; ++n) CHECK(append_semisimple(leibniz(n)) == leibniz(n, true));

    ExtensionTensor c = append_semisimple(catalog_tensor("n3-case2"));
    ExtensionTensor target = crmhd(Scalar(-1));
    CHECK(c == target);
    CHECK(solvable_part(c) == catalog_tensor("n3-case2"));

    ExtensionTensor not_solvable(1, false);
    not_solvable(0, 0, 0) = 1;
    CHECK_THROWS_AS(append_semisimple(not_solvable), NotSolvable);
}

TEST_CASE("single-entry mutations are rejected or genuinely valid") {
    std::mt19937 rng(31);
    std::vector<ExtensionTensor> bases{leibniz(3), leibniz(4), crmhd(Scalar(1)), catalog_tensor("n4-case3c"),
                                       leibniz(2, true), catalog_tensor("n4-case1b")};
    int accepted = 0, rejected = 0;
    for (int k = 0; k < 100; ++k) {
        ExtensionTensor t = bases[static_cast<std::size_t>(k) % bases.size()];
        std::uniform_int_distribution<Index> idx(0, t.dim() - 1);
        const Index l = idx(rng), m = idx(rng), n = idx(rng);
        t(l, m, n) = t(l, m, n) + small_rational(rng) + Scalar(k % 2);
        if (find_violation(t)) {
            ++rejected;
            CHECK_FALSE(jacobi_oracle(t));
        } else {
            ++accepted;
            CHECK(jacobi_oracle(t));
        }
    }
    CHECK(rejected > 0);
    CHECK(accepted + rejected == 100);
}

TEST_CASE("catalog tensors and their semidirect versions are valid") {
    for (int n = 1; n <= 4; ++n)
        for (const CatalogEntry& e : catalog(n)) {
            CHECK_NOTHROW(validate(e.tensor));
            CHECK(is_solvable(e.tensor));
            CHECK_NOTHROW(validate(append_semisimple(e.tensor)));
        }
}
