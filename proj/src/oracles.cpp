#include "dlbench/oracles.hpp"

#include <cmath>

namespace dlbench {

IterationStats block_stats(const SortedPopulation& pop, int mu, const Objective& objective) {
    if (objective.kind() != Objective::Kind::Dlb || objective.width() != 2)
        throw std::invalid_argument("block_stats: requires the dlb objective at width 2");
    if (pop.empty()) throw std::invalid_argument("block_stats: empty population");
    if (mu < 1 || static_cast<std::size_t>(mu) > pop.size())
        throw std::invalid_argument("block_stats: mu outside [1, lambda]");

    const Eigen::Index n = pop.members.front().genome.size();
    const Eigen::Index m = n / 2;
    IterationStats s;
    s.C = Eigen::ArrayXi::Zero(m);
    s.D = Eigen::ArrayXi::Zero(m);
    s.E = Eigen::ArrayXi::Zero(m);
    s.ones01 = Eigen::ArrayXi::Zero(m);
    s.X = Eigen::ArrayXi::Zero(n);
    s.Y = Eigen::ArrayXi::Zero(m);

    const std::size_t lambda = pop.size();
    for (std::size_t k = 0; k < lambda; ++k) {
        const BitString& x = pop.members[k].genome;
        const int f = phi(x, 2);
        for (int i = 1; i <= f; ++i) s.C[i - 1] += 1;
        if (f < m) {
            const std::uint8_t a = x[2 * f], b = x[2 * f + 1];
            if (a == 0 && b == 0) s.D[f] += 1;
            else if (a == 1 && b == 0) s.E[f] += 1;
            else s.ones01[f] += 1; // a==0, b==1 (11 would extend phi)
        }
        if (k < static_cast<std::size_t>(mu)) {
            for (Eigen::Index i = 0; i < n; ++i) s.X[i] += x[i];
            for (Eigen::Index j = 0; j < m; ++j)
                if (x[2 * j] == 1 && x[2 * j + 1] == 1) s.Y[j] += 1;
        }
    }

    s.Z = 0;
    s.Z_star = 0;
    for (Eigen::Index i = m; i >= 1; --i) {
        if (s.C[i - 1] >= mu) {
            s.Z = static_cast<int>(i);
            break;
        }
    }
    for (Eigen::Index i = m; i >= 1; --i) {
        if (s.C[i - 1] > 0) {
            s.Z_star = static_cast<int>(i);
            break;
        }
    }
    return s;
}

double theta(double mu, double lambda, double epsilon) {
    return (mu * mu / lambda) * (1.0 - epsilon);
}

TrapTailBound trap_tail_bound(double c_var, double gamma_star) {
    const double d = 0.5 - gamma_star;
    const double denom = 1.0 - 4.0 * d * d;
    if (!(denom > 0.0)) return {0.0, false};
    const double value = 2.0 * (c_var - d * d) / denom;
    return {std::max(0.0, value), true};
}

double z0_expectation_bound(double lambda) {
    if (!(lambda >= 1.0)) throw std::invalid_argument("z0_expectation_bound: lambda must be >= 1");
    return (1.0 + std::log(lambda)) / std::log(4.0);
}

LevelBasedBound level_based_bound(const std::vector<double>& z, double delta, double lambda,
                                  double gamma0) {
    if (z.empty()) throw std::invalid_argument("level_based_bound: z must be non-empty");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("level_based_bound: delta outside (0,1]");
    if (!(gamma0 > 0.0 && gamma0 < 1.0))
        throw std::invalid_argument("level_based_bound: gamma0 outside (0,1)");
    double z_star = 1.0;
    for (double zj : z) {
        if (!(zj > 0.0 && zj <= 1.0))
            throw std::invalid_argument("level_based_bound: z_j outside (0,1]");
        z_star = std::min(z_star, zj);
    }

    const double m = static_cast<double>(z.size()) + 1.0;
    LevelBasedBound out;
    out.lambda_min = (4.0 / (gamma0 * delta * delta)) *
                     std::log(128.0 * m / (z_star * delta * delta));
    out.g3_satisfied = lambda >= out.lambda_min;

    double sum = 0.0;
    for (double zj : z)
        sum += lambda * std::log(6.0 * delta * lambda / (4.0 + zj * delta * lambda)) + 1.0 / zj;
    out.bound = (8.0 / (delta * delta)) * sum;
    return out;
}

} // namespace dlbench
