#include "support.hpp"

#include <doctest.h>

using namespace liex;
using namespace testing;

TEST_CASE("scalars stay in lowest terms") {
    Scalar a = q(6, 8);
    CHECK(a.re() == mpq_class(3, 4));
    CHECK(a.re().get_den() == 4);
    Scalar b = q(1, -2);
    CHECK(b.re().get_den() > 0);
    CHECK(b == q(-1, 2));
    CHECK((q(1, 3) + q(1, 6)).str() == "1/2");
}

TEST_CASE("i squared is minus one") {
    CHECK(I * I == Scalar(-1));
    CHECK((q(1, 2) + I).conj() == q(1, 2) - I);
    CHECK((Scalar(3) + Scalar(4) * I).norm() == 25);
}

TEST_CASE("field axioms hold exactly") {
    std::mt19937 rng(11);
    for (int k = 0; k < 200; ++k) {
        Scalar a = small_rational(rng, 9) + small_rational(rng, 9) * I;
        Scalar b = small_rational(rng, 9) + small_rational(rng, 9) * I;
        if (a.is_zero()) continue;
        CHECK((a * b) * a.inverse() == b);
        CHECK(a / a == Scalar(1));
        CHECK(a * (b + Scalar(1)) == a * b + a);
    }
    CHECK_THROWS(Scalar(0).inverse());
}

TEST_CASE("string round trip") {
    for (const char* s : {"0", "7", "-3/5", "i", "-i", "1/2+3/4 i", "-2-1/3 i", "5/7 i"}) {
        Scalar v = Scalar::parse(s);
        CHECK(Scalar::parse(v.str()) == v);
    }
    CHECK(Scalar::parse("1/2+3/4 i") == q(1, 2) + q(3, 4) * I);
    CHECK(Scalar::parse("-i") == -I);
    CHECK_THROWS(Scalar::parse("abc"));
    CHECK_THROWS(Scalar::parse("1/0"));
}

TEST_CASE("float conversion") {
    CHECK(q(1, 4).to_double() == 0.25);
    CHECK_THROWS_AS((void)I.to_double(), std::domain_error);
    CHECK(I.to_complex() == std::complex<double>(0, 1));
}

TEST_CASE("exact square roots") {
    Scalar r;
    CHECK(exact_sqrt(q(9, 4), r));
    CHECK(r * r == q(9, 4));
    CHECK(exact_sqrt(Scalar(-1), r));
    CHECK(r * r == Scalar(-1));
    CHECK(exact_sqrt(Scalar(2) * I, r));
    CHECK(r * r == Scalar(2) * I);
    CHECK_FALSE(exact_sqrt(Scalar(2), r));
}
