#include "dlbench/verify.hpp"

#include <doctest.h>

#include <json.hpp>

using namespace dlbench;

TEST_CASE("binomial moment checks pass at a pinned seed") {
    const VerifyReport report = verify_binomial_moments(1, 20000);
    CHECK(report.all_pass());
    const CheckResult& c = report.find("binomial_n10_p0.5_second_moment");
    CHECK(c.expected == doctest::Approx(27.5));
    const CheckResult& edge = report.find("binomial_n50_p1_mean");
    CHECK(edge.observed == doctest::Approx(50.0));
}

TEST_CASE("block distribution means match the closed forms at the uniform model") {
    const MarginalModel model = MarginalModel::uniform(20);
    const VerifyReport report = verify_block_distributions(model, 50, 200, 10000, 7);
    CHECK(report.all_pass());
    CHECK(report.find("block1_mean_C").expected == doctest::Approx(50.0)); // lambda/4
    CHECK(report.find("block1_mean_D").expected == doctest::Approx(50.0)); // lambda/4
    CHECK(report.find("block1_mean_E").expected == doctest::Approx(50.0)); // lambda p(1-p)
    CHECK(report.find("block2_mean_C").expected == doctest::Approx(12.5)); // lambda/16
}

TEST_CASE("block distribution E-mean at the upper border is lambda(1-1/n)(1/n)") {
    MarginalModel model = MarginalModel::uniform(20);
    model.p.setConstant(model.upper_border());
    const VerifyReport report = verify_block_distributions(model, 50, 200, 10000, 8);
    CHECK(report.all_pass());
    CHECK(report.find("block1_mean_E").expected ==
          doctest::Approx(200.0 * 0.95 * 0.05).epsilon(1e-12));
}

TEST_CASE("clamped-martingale dynamics: mean one half, variance above the curve") {
    const VerifyReport report =
        verify_untouched_marginal_dynamics(100, 100, 20000, 9, 10000, {10, 100});
    CHECK(report.all_pass());
    CHECK(report.find("lemma6_var_X_t0").expected == doctest::Approx(25.0));
    // The t-checkpoint bound is 0.9 (mu^2/4)(1 - (1-1/mu)^t).
    const double curve10 = 0.9 * 2500.0 * (1.0 - std::pow(0.99, 10));
    CHECK(report.find("lemma6_var_X_t10").expected == doctest::Approx(curve10).epsilon(1e-12));
}

TEST_CASE("Z0* Monte-Carlo mean stays below the Lemma bound") {
    const VerifyReport report = verify_z0_bound(1000, 100, 10000, 10);
    CHECK(report.all_pass());
    const CheckResult& c = report.find("lemma4_mean_Z0_star_le_bound");
    CHECK(c.expected == doctest::Approx(z0_expectation_bound(1000)));
    CHECK(c.observed < c.expected);
    CHECK(c.observed > 3.0); // sanity: the mean is near 4.9, not degenerate
}

TEST_CASE("X/Y one-step laws at the uniform model") {
    const MarginalModel model = MarginalModel::uniform(20);
    const VerifyReport report = verify_xy_one_step_laws(model, 50, 100, 3, 7, 10000, 11);
    CHECK(report.all_pass());
    CHECK(report.find("lawY_mean_block3").expected == doctest::Approx(12.5)); // mu/4
    CHECK(report.find("lawX_mean_pos7").expected == doctest::Approx(25.0));   // mu/2
}

TEST_CASE("report JSON carries name, expected, observed, z and pass per check") {
    VerifyReport report;
    report.checks.push_back({"demo", 1.0, 1.1, 0.5, true});
    const nlohmann::json j = nlohmann::json::parse(report_to_json(report));
    CHECK(j["all_pass"] == true);
    REQUIRE(j["checks"].size() == 1);
    CHECK(j["checks"][0]["name"] == "demo");
    CHECK(j["checks"][0]["expected"] == doctest::Approx(1.0));
    CHECK(j["checks"][0]["observed"] == doctest::Approx(1.1));
    CHECK(j["checks"][0]["z"] == doctest::Approx(0.5));
    CHECK(j["checks"][0]["pass"] == true);
}
