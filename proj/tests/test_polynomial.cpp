#include "support.hpp"

#include "liex/polynomial.hpp"

#include <doctest.h>

using namespace liex;
using namespace testing;

using P = Polynomial<Scalar>;

TEST_CASE("graded order puts low degree first") {
    GradedLex less;
    CHECK(less({0, 0, 1}, {1, 1, 0}));
    CHECK(less({1, 0, 0}, {0, 1, 0}));
    CHECK_FALSE(less({0, 1, 0}, {1, 0, 0}));
    P p = P::variable(3, 2) * P::variable(3, 2) + P::variable(3, 0) + P::constant(3, Scalar(5));
    std::vector<Exponents> order;
    for (const auto& [e, c] : p.terms()) order.push_back(e);
    CHECK(order == std::vector<Exponents>{{0, 0, 0}, {1, 0, 0}, {0, 0, 2}});
}

TEST_CASE("ring arithmetic") {
    P x = P::variable(2, 0), y = P::variable(2, 1);
    P s = x + y, d = x - y;
    CHECK(s * d == x * x - y * y);
    CHECK((s * s).coefficient({1, 1}) == Scalar(2));
    CHECK((x - x).is_zero());
    CHECK(P(2) == P(0));
    CHECK((q(1, 2) * x * Scalar(2)) == x);
    CHECK(-(-x) == x);
    CHECK((x * Scalar(0)).is_zero());
    CHECK(s.degree() == 1);
    CHECK((s * d * x).degree() == 3);
    CHECK(P(2).degree() == -1);
    CHECK_THROWS(P::variable(2, 0) + P::variable(3, 0));
}

TEST_CASE("derivatives and evaluation") {
    P x = P::variable(3, 0), y = P::variable(3, 1), z = P::variable(3, 2);
    P p = x * y * y + q(1, 6) * z * z * z;
    CHECK(p.derivative(1) == Scalar(2) * x * y);
    CHECK(p.derivative(2) == q(1, 2) * z * z);
    CHECK(p.derivative(0).derivative(0).is_zero());
    CHECK(p.uses(2));
    CHECK_FALSE(p.derivative(2).uses(0));
    CHECK(p.evaluate(std::vector<Scalar>{q(2), q(3), I}) == Scalar(18) - q(1, 6) * I);
}

TEST_CASE("works over plain rationals") {
    using R = Polynomial<mpq_class>;
    R x = R::variable(1, 0, mpq_class(1, 3));
    R p = x * x + R::constant(1, mpq_class(1));
    CHECK(p.coefficient({2}) == mpq_class(1, 9));
    CHECK(p.derivative(0) == R::variable(1, 0, mpq_class(2, 9)));
}

TEST_CASE("sums cancel to the zero polynomial") {
    std::mt19937 rng(6);
    for (int k = 0; k < 50; ++k) {
        P p(3);
        for (int t = 0; t < 5; ++t) {
            std::uniform_int_distribution<int> e(0, 3);
            p.add_term({e(rng), e(rng), e(rng)}, small_rational(rng));
        }
        P r = p * p - p * p;
        CHECK(r.is_zero());
        CHECK((p + p) == Scalar(2) * p);
        for (int i = 0; i < 3; ++i) CHECK((p * p).derivative(i) == Scalar(2) * p * p.derivative(i));
    }
}
