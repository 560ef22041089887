#pragma once

#include "dlbench/eda.hpp"

#include <string>
#include <vector>

/// Monte-Carlo verifiers for the distributional lemmas behind the runtime
/// analysis. Each check compares an empirical moment against a closed form
/// and reports a z-score; two-sided checks pass at |z| <= 4, one-sided
/// (lower-bound) checks pass when the observed value clears the bound.
namespace dlbench {

struct CheckResult {
    std::string name;
    double expected = 0.0;
    double observed = 0.0;
    double z = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void append(VerifyReport other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }
    const CheckResult& find(const std::string& name) const;
};

/// Serialises a report as a JSON array (name, expected, observed, z, pass).
std::string report_to_json(const VerifyReport& report);

/// Mean and second moment of sample_binomial on a (trials, p) grid against
/// np and the closed form np(p(n-1)+1).
VerifyReport verify_binomial_moments(std::uint64_t seed, std::int64_t trials);

/// Means of the block counts C_i, D_i, E_i (first blocks) for populations of
/// lambda genomes sampled from a fixed marginal model, against the nested
/// closed forms E[C_i] = E[C_{i-1}] p_{2i-1} p_{2i} etc., with E[C_0] =
/// lambda. Counts are over the whole population, so mu is unused here; it is
/// kept to mirror the sampling setup being verified.
VerifyReport verify_block_distributions(const MarginalModel& model, int mu, int lambda,
                                        std::int64_t trials, std::uint64_t seed);

/// The pure clamped martingale X_{t+1} ~ Bin(mu, clamp(X_t/mu)) started at
/// X_0 ~ Bin(mu, 1/2), the faithful reduction of the marginals beyond the
/// frozen prefix. At each checkpoint t: E[p_t] = 1/2 (two-sided) and
/// Var[X_t] >= 0.9 (mu^2/4)(1 - (1-1/mu)^t) (one-sided), plus the exact
/// Var[X_0] = mu/4 at t = 0.
VerifyReport verify_untouched_marginal_dynamics(int mu, int t_max, std::int64_t trials,
                                                std::uint64_t seed,
                                                Eigen::Index clamp_n = 10000,
                                                std::vector<int> checkpoints = {10, 100, 292});

/// Mean of Z_0^* (leading-11 count of the fittest of lambda uniform samples)
/// against the upper bound (1 + ln lambda)/ln 4.
VerifyReport verify_z0_bound(int lambda, Eigen::Index n, std::int64_t trials,
                             std::uint64_t seed);

/// One-step laws of the selected-parent statistics: conditioned on
/// Z_t <= j-2, Y_{t,j} ~ Bin(mu, p_{2j-1} p_{2j}); conditioned on
/// Z_t <= (i-3)/2, X_{t,i} ~ Bin(mu, p_i). Checks mean and variance of both
/// at a fixed model.
VerifyReport verify_xy_one_step_laws(const MarginalModel& model, int mu, int lambda,
                                     int block_j, int position_i, std::int64_t trials,
                                     std::uint64_t seed);

/// The full battery with default settings, scaled by `trials`.
VerifyReport verify_all(std::int64_t trials, std::uint64_t seed);

} // namespace dlbench
