#include "dlbench/fitness.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace dlbench;
using testutil::bits;

TEST_CASE("phi counts leading width-2 blocks") {
    CHECK(phi(bits("111111")) == 3);
    CHECK(phi(bits("011111")) == 0);
    CHECK(phi(bits("110111")) == 1);
    CHECK(phi(bits("11")) == 1);
    CHECK_THROWS_AS(phi(bits("111")), std::invalid_argument);
}

TEST_CASE("dlb hand-evaluated examples") {
    CHECK(dlb(bits("11111111")) == 8);
    CHECK(dlb(bits("11110010")) == 5); // phi=2, active block 00
    CHECK(dlb(bits("10111111")) == 0); // phi=0, active block 10
    CHECK(dlb(bits("00111111")) == 1); // phi=0, active block 00
}

TEST_CASE("dlb/phi match the straight-from-definition evaluator exhaustively") {
    for (Eigen::Index n = 2; n <= 10; n += 2) {
        const Objective objective(Objective::Kind::Dlb, n);
        for (std::uint64_t v = 0; v < (1ull << n); ++v) {
            BitString x(n);
            for (Eigen::Index i = 0; i < n; ++i) x[i] = (v >> i) & 1u;
            CAPTURE(testutil::to_string(x));
            CHECK(phi(x) == testutil::phi_reference(x));
            CHECK(dlb(x) == testutil::dlb_reference(x));
            CHECK(objective(x) == testutil::dlb_reference(x));
        }
    }
}

TEST_CASE("dlb value range and optimum characterisation") {
    const Eigen::Index n = 8;
    for (std::uint64_t v = 0; v < (1ull << n); ++v) {
        BitString x(n);
        for (Eigen::Index i = 0; i < n; ++i) x[i] = (v >> i) & 1u;
        const Fitness f = dlb(x);
        CHECK(f >= 0);
        CHECK(f <= n);
        CHECK((f == n) == (v == (1ull << n) - 1));
        const int p = phi(x);
        CHECK((f == 2 * p || f == 2 * p + 1 || f == n));
    }
}

TEST_CASE("deception witness: zeroing the lone one in a 10/01 active block improves fitness") {
    const Eigen::Index n = 8;
    for (std::uint64_t v = 0; v < (1ull << n); ++v) {
        BitString x(n);
        for (Eigen::Index i = 0; i < n; ++i) x[i] = (v >> i) & 1u;
        const int f = phi(x);
        if (f == n / 2) continue;
        const Eigen::Index a = 2 * f, b = 2 * f + 1;
        if (x[a] + x[b] != 1) continue;
        BitString y = x;
        y[x[a] == 1 ? a : b] = 0; // active block becomes 00
        CHECK(dlb(y) > dlb(x));
    }
}

TEST_CASE("generalised width keeps the w=2 case and scores w*phi(+1)") {
    CHECK(dlb(bits("111111"), 3) == 6);
    CHECK(dlb(bits("111000"), 3) == 4);  // phi=1, active block all-zero
    CHECK(dlb(bits("111010"), 3) == 3);  // phi=1, active block mixed
    CHECK(dlb(bits("110111"), 3) == 0);  // first block incomplete
    CHECK(phi(bits("111110"), 3) == 1);
}

TEST_CASE("leading_ones and one_max") {
    CHECK(one_max(bits("1010")) == 2);
    CHECK(leading_ones(bits("1101")) == 2);
    CHECK(leading_ones(bits("0111")) == 0);
    CHECK(leading_ones(bits("1111")) == 4);
}

TEST_CASE("level_of equals phi") {
    CHECK(level_of(bits("1111111111")) == 5);
    CHECK(level_of(bits("001011")) == 0);
    CHECK(level_of(bits("110111")) == 1);
}

TEST_CASE("objective ids and validation") {
    CHECK(Objective::from_id("dlb", 8).optimum() == 8);
    CHECK(Objective::from_id("leading_ones", 5)(bits("11111")) == 5);
    CHECK(Objective::from_id("one_max", 4)(bits("0110")) == 2);
    CHECK_THROWS_AS(Objective::from_id("trap5", 10), ConfigError);
    CHECK_THROWS_AS(Objective::from_id("dlb", 7), ConfigError); // odd n at w=2
}

TEST_CASE("objective evaluation charges the budget and latches the first optimum") {
    const Objective objective(Objective::Kind::OneMax, 3);
    EvaluationBudget budget(10);
    objective.evaluate(bits("101"), budget);
    CHECK(budget.used == 1);
    CHECK_FALSE(budget.hit_optimum_at.has_value());
    objective.evaluate(bits("111"), budget);
    objective.evaluate(bits("111"), budget);
    CHECK(budget.used == 3);
    REQUIRE(budget.hit_optimum_at.has_value());
    CHECK(*budget.hit_optimum_at == 2);
}
