#include "dlbench/core.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace dlbench;
using testutil::bits;

TEST_CASE("sample_uniform_bitstring length and validation") {
    RngStream rng(7, 0);
    CHECK(sample_uniform_bitstring(4, rng).size() == 4);
    CHECK_THROWS_AS(sample_uniform_bitstring(0, rng), std::invalid_argument);
}

TEST_CASE("identical stream address replays the identical string") {
    RngStream a(123456, 9);
    RngStream b(123456, 9);
    for (int i = 0; i < 5; ++i) {
        const BitString xa = sample_uniform_bitstring(64, a);
        const BitString xb = sample_uniform_bitstring(64, b);
        CHECK((xa == xb).all());
    }
    RngStream c(123456, 10);
    bool any_diff = false;
    RngStream a2(123456, 9);
    for (int i = 0; i < 5; ++i)
        any_diff |= !(sample_uniform_bitstring(64, a2) == sample_uniform_bitstring(64, c)).all();
    CHECK(any_diff);
}

TEST_CASE("uniform sampling mean one-count: 50 +- 3 sigma at n=100") {
    RngStream rng(2024, 1);
    const int trials = 100000;
    double sum = 0;
    for (int i = 0; i < trials; ++i)
        sum += static_cast<double>(sample_uniform_bitstring(100, rng).cast<int>().sum());
    const double mean = sum / trials;
    const double sigma = std::sqrt(100 * 0.25) / std::sqrt(static_cast<double>(trials));
    CHECK(std::abs(mean - 50.0) <= 3 * sigma);
}

TEST_CASE("sort_population orders strictly by fitness") {
    RngStream rng(1, 0);
    std::vector<Individual> pop;
    pop.push_back({bits("00"), 1});
    pop.push_back({bits("01"), 3});
    pop.push_back({bits("10"), 2});
    const SortedPopulation sorted = sort_population(pop, rng);
    REQUIRE(sorted.size() == 3);
    CHECK(sorted.members[0].fitness == 3);
    CHECK(sorted.members[1].fitness == 2);
    CHECK(sorted.members[2].fitness == 1);
    CHECK(sorted.tiebreak_draws == 3);
}

TEST_CASE("sort_population on empty input") {
    RngStream rng(1, 0);
    CHECK(sort_population({}, rng).empty());
}

TEST_CASE("ties are broken uniformly: each order at 0.5 +- 0.02") {
    RngStream rng(99, 0);
    int first_wins = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        std::vector<Individual> pop;
        pop.push_back({bits("0"), 2});
        pop.push_back({bits("1"), 2});
        const SortedPopulation sorted = sort_population(std::move(pop), rng);
        if (sorted.members[0].genome[0] == 0) ++first_wins;
    }
    CHECK(std::abs(first_wins / static_cast<double>(trials) - 0.5) <= 0.02);
}

TEST_CASE("sorting preserves the fitness multiset") {
    RngStream rng(5, 3);
    for (int round = 0; round < 50; ++round) {
        std::vector<Individual> pop;
        std::vector<Fitness> fitnesses;
        const int size = 1 + static_cast<int>(rng.uniform_index(20));
        for (int i = 0; i < size; ++i) {
            const Fitness f = rng.uniform_index(4);
            pop.push_back({bits("1"), f});
            fitnesses.push_back(f);
        }
        const SortedPopulation sorted = sort_population(std::move(pop), rng);
        std::vector<Fitness> got;
        for (const Individual& ind : sorted.members) got.push_back(ind.fitness);
        std::vector<Fitness> sorted_got = got;
        std::sort(sorted_got.begin(), sorted_got.end());
        std::sort(fitnesses.begin(), fitnesses.end());
        CHECK(sorted_got == fitnesses);
        CHECK(std::is_sorted(got.begin(), got.end(), std::greater<>()));
    }
}

TEST_CASE("sample_binomial edge probabilities and validation") {
    RngStream rng(11, 0);
    for (int k : {0, 1, 7, 100}) {
        CHECK(sample_binomial(k, 0.0, rng) == 0);
        CHECK(sample_binomial(k, 1.0, rng) == k);
    }
    CHECK_THROWS_AS(sample_binomial(5, -0.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_binomial(5, 1.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_binomial(-1, 0.5, rng), std::invalid_argument);
}

TEST_CASE("sample_binomial second moment matches np(p(n-1)+1)") {
    // Lemma value at (10, 0.5): 5 * 5.5 = 27.5.
    RngStream rng(31337, 2);
    const int trials = 200000;
    double sum2 = 0, sum4 = 0;
    for (int i = 0; i < trials; ++i) {
        const double x = static_cast<double>(sample_binomial(10, 0.5, rng));
        sum2 += x * x;
        sum4 += x * x * x * x;
    }
    const double mean2 = sum2 / trials;
    const double var2 = sum4 / trials - mean2 * mean2;
    const double se = std::sqrt(var2 / trials);
    CHECK(std::abs(mean2 - 27.5) <= 4 * se);
}

TEST_CASE("sample_binomial mean/second moment on a (trials, p) grid") {
    RngStream rng(404, 0);
    const int trials = 40000;
    for (std::int64_t nb : {1, 2, 5, 10, 50}) {
        for (double p : {0.1, 0.5, 0.9}) {
            double s1 = 0, s2 = 0, s4 = 0;
            for (int i = 0; i < trials; ++i) {
                const double x = static_cast<double>(sample_binomial(nb, p, rng));
                s1 += x;
                s2 += x * x;
                s4 += x * x * x * x;
            }
            const double nd = static_cast<double>(nb);
            const double mean = s1 / trials;
            const double mean2 = s2 / trials;
            const double var = mean2 - mean * mean;
            const double se_mean = std::sqrt(var / trials);
            const double var2 = s4 / trials - mean2 * mean2;
            const double se_mean2 = std::sqrt(var2 / trials);
            CAPTURE(nb);
            CAPTURE(p);
            CHECK(std::abs(mean - nd * p) <= 4 * std::max(se_mean, 1e-12));
            CHECK(std::abs(mean2 - nd * p * (p * (nd - 1) + 1)) <= 4 * std::max(se_mean2, 1e-12));
        }
    }
}

TEST_CASE("budget accounting") {
    EvaluationBudget budget(5);
    CHECK_FALSE(budget.done());
    for (int i = 0; i < 5; ++i) budget.record_sample(false);
    CHECK(budget.exhausted());
    CHECK(budget.done());
    CHECK_FALSE(budget.hit_optimum_at.has_value());
}
