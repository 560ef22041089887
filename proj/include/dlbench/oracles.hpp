#pragma once

#include "dlbench/core.hpp"
#include "dlbench/fitness.hpp"

#include <vector>

/// Instrumentation of the runtime-analysis quantities for width-2 blocks
/// (block counts C/D/E, the truncation cutoff Z and fittest-prefix Z*,
/// per-position and per-block one-counts among the selected parents) plus the
/// closed-form bound calculators used by the verification harness.
namespace dlbench {

/// Per-iteration block statistics of a sorted population under DLB at w=2.
/// Vectors are indexed by block i in [1, m] at position i-1; C_0 := lambda
/// is implicit.
struct IterationStats {
    Eigen::ArrayXi C;      ///< individuals with at least i leading 11s (whole population)
    Eigen::ArrayXi D;      ///< exactly i-1 leading 11s, then 00 at block i
    Eigen::ArrayXi E;      ///< exactly i-1 leading 11s, then 10 at block i
    Eigen::ArrayXi ones01; ///< exactly i-1 leading 11s, then 01 at block i
    int Z = 0;             ///< max{i in [0,m] : C_i >= mu}; counts marginals forced to the upper border
    int Z_star = 0;        ///< leading-11 count of the fittest individual(s)
    Eigen::ArrayXi X;      ///< ones per bit position among the mu fittest
    Eigen::ArrayXi Y;      ///< 11-blocks per block position among the mu fittest

    Eigen::Index blocks() const { return C.size(); }
};

/// Exact block statistics of a DLB-evaluated sorted population. Rejects
/// non-DLB objectives (block semantics are undefined there) and mu outside
/// [1, population size].
IterationStats block_stats(const SortedPopulation& pop, int mu, const Objective& objective);

/// Trap threshold theta = (mu^2/lambda)(1-eps) = gamma* mu (1-eps): with
/// fewer than theta ones per active-block position among the parents, the
/// 11-count drifts to zero.
double theta(double mu, double lambda, double epsilon);

/// 2(c - (1/2-g)^2) / (1 - 4(1/2-g)^2), floored at 0: a lower bound on
/// Pr(X <= theta) for a symmetric X on [0, mu] with Var[X] >= c mu^2.
/// Inapplicable when the denominator is not positive (gamma* in {0, 1}).
struct TrapTailBound {
    double value = 0.0;
    bool applicable = false;
};
TrapTailBound trap_tail_bound(double c_var, double gamma_star);

/// Upper bound (1 + ln lambda)/ln 4 on the expected leading-11 count of the
/// fittest of lambda uniform samples. Rejects lambda < 1.
double z0_expectation_bound(double lambda);

/// Level-based theorem, evaluated numerically: the population-size threshold
/// (condition G3) and the expected-runtime upper bound
///   (8/delta^2) sum_j [ lambda ln(6 delta lambda / (4 + z_j delta lambda)) + 1/z_j ].
struct LevelBasedBound {
    double bound = 0.0;        ///< E[T] upper bound
    bool g3_satisfied = false; ///< lambda >= lambda_min
    double lambda_min = 0.0;   ///< (4/(gamma0 delta^2)) ln(128 m / (z_* delta^2))
};

/// z holds the per-level upgrade probabilities z_1..z_{m-1}, so m = z.size()+1.
/// Rejects empty z, z_j outside (0,1], delta outside (0,1], gamma0 outside (0,1).
LevelBasedBound level_based_bound(const std::vector<double>& z, double delta, double lambda,
                                  double gamma0);

} // namespace dlbench
