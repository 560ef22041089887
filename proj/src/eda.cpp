#include "dlbench/eda.hpp"

#include <algorithm>
#include <cmath>

namespace dlbench {

namespace {

// Entropy of a two-outcome empirical distribution given as counts, computed
// from the canonical form min(ones, total-ones) so that symmetric tables
// yield bit-identical doubles (exact ties then compare equal).
double binary_entropy_counts(std::int64_t ones, std::int64_t total, double log_base) {
    const std::int64_t k = std::min(ones, total - ones);
    if (k == 0) return 0.0;
    const double p = static_cast<double>(k) / static_cast<double>(total);
    const double q = 1.0 - p;
    return -(p * std::log(p) + q * std::log(q)) / std::log(log_base);
}

// Weighted branch term of the conditional entropy: p(b) * H(target | b),
// with the guarded denominator R(p) = max{p, 1/n} when forming the
// conditional distribution. `ones`/`branch` count within branch b; `total`
// is the number of selected individuals.
double branch_term(std::int64_t ones, std::int64_t branch, std::int64_t total, Eigen::Index n,
                   double log_base) {
    if (branch == 0) return 0.0;
    const double p_b = static_cast<double>(branch) / static_cast<double>(total);
    const double denom = std::max(p_b, 1.0 / static_cast<double>(n));
    if (denom == p_b) {
        // Common case: conditionals are ones/branch and sum to one.
        return p_b * binary_entropy_counts(ones, branch, log_base);
    }
    // Guarded case (branch smaller than mu/n): conditionals are scaled down
    // by p_b / R(p_b) and no longer sum to one.
    const std::int64_t k = std::min(ones, branch - ones);
    const double q1 = (static_cast<double>(k) / total) / denom;
    const double q0 = (static_cast<double>(branch - k) / total) / denom;
    double h = 0.0;
    if (q1 > 0.0) h -= q1 * std::log(q1);
    if (q0 > 0.0) h -= q0 * std::log(q0);
    return p_b * h / std::log(log_base);
}

double clamp_probability(double p, Eigen::Index n, ClampMode mode) {
    const double lo = 1.0 / static_cast<double>(n);
    if (mode == ClampMode::OneSided) return std::max(p, lo);
    return std::clamp(p, lo, 1.0 - lo);
}

} // namespace

ClampMode parse_clamp_mode(const std::string& id) {
    if (id == "two_sided") return ClampMode::TwoSided;
    if (id == "one_sided") return ClampMode::OneSided;
    throw ConfigError("unknown mimic_clamp value: \"" + id + "\"");
}

MarginalModel MarginalModel::uniform(Eigen::Index n) {
    if (n < 2) throw ConfigError("marginal model requires n >= 2");
    MarginalModel m;
    m.p = Eigen::ArrayXd::Constant(n, 0.5);
    m.t = 0;
    return m;
}

MarginalModel umda_update(const Eigen::ArrayXi& counts, int mu, Eigen::Index n) {
    if (counts.size() != n) throw std::invalid_argument("umda_update: counts size != n");
    if (mu < 1) throw std::invalid_argument("umda_update: mu must be >= 1");
    if ((counts < 0).any() || (counts > mu).any())
        throw std::invalid_argument("umda_update: counts outside [0, mu]");
    const double lo = 1.0 / static_cast<double>(n);
    MarginalModel m;
    m.p = (counts.cast<double>() / static_cast<double>(mu)).max(lo).min(1.0 - lo);
    return m;
}

std::vector<Individual> sample_marginal_population(const MarginalModel& model, int lambda,
                                                   const Objective& objective, RngStream& rng,
                                                   EvaluationBudget& budget) {
    const Eigen::Index n = model.n();
    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(lambda));
    for (int j = 0; j < lambda; ++j) {
        BitString x(n);
        for (Eigen::Index i = 0; i < n; ++i)
            x[i] = rng.uniform01() < model.p[i] ? 1u : 0u;
        pop.push_back(objective.evaluate(std::move(x), budget));
    }
    return pop;
}

UmdaStepResult umda_step(const MarginalModel& model, const EdaConfig& cfg,
                         const Objective& objective, RngStream& rng, EvaluationBudget& budget) {
    cfg.validate();
    if (objective.n() != model.n()) throw std::invalid_argument("umda_step: model/objective size mismatch");

    std::vector<Individual> pop = sample_marginal_population(model, cfg.lambda, objective, rng, budget);
    SortedPopulation sorted = sort_population(std::move(pop), rng);

    const Eigen::Index n = model.n();
    Eigen::ArrayXi counts = Eigen::ArrayXi::Zero(n);
    for (int j = 0; j < cfg.mu; ++j) {
        const BitString& x = sorted.members[static_cast<std::size_t>(j)].genome;
        for (Eigen::Index i = 0; i < n; ++i) counts[i] += x[i];
    }

    UmdaStepResult out{umda_update(counts, cfg.mu, n), std::move(sorted), std::nullopt};
    out.model.t = model.t + 1;
    if (objective.kind() == Objective::Kind::Dlb && objective.width() == 2)
        out.stats = block_stats(out.population, cfg.mu, objective);
    return out;
}

double empirical_entropy(std::int64_t ones, std::int64_t total) {
    if (total < 1) throw std::invalid_argument("empirical_entropy: total must be >= 1");
    if (ones < 0 || ones > total) throw std::invalid_argument("empirical_entropy: ones outside [0, total]");
    return binary_entropy_counts(ones, total, 2.0);
}

double conditional_entropy(const JointCounts2x2& joint, Eigen::Index n) {
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            if (joint.n[b][a] < 0) throw std::invalid_argument("conditional_entropy: negative count");
    const std::int64_t total = joint.total();
    if (total < 1) throw std::invalid_argument("conditional_entropy: empty table");
    double h = 0.0;
    for (int b = 0; b < 2; ++b)
        h += branch_term(joint.n[b][1], joint.branch_total(b), total, n, 2.0);
    return h;
}

ChainModel mimic_build_chain(const std::vector<Individual>& selected, Eigen::Index n,
                             RngStream& rng, ClampMode clamp, double entropy_log_base) {
    if (selected.empty()) throw std::invalid_argument("mimic_build_chain: no selected individuals");
    const std::int64_t mu = static_cast<std::int64_t>(selected.size());
    for (const Individual& ind : selected)
        if (ind.genome.size() != n)
            throw std::invalid_argument("mimic_build_chain: genome size mismatch");

    Eigen::ArrayX<std::int64_t> ones = Eigen::ArrayX<std::int64_t>::Zero(n);
    for (const Individual& ind : selected)
        for (Eigen::Index i = 0; i < n; ++i) ones[i] += ind.genome[i];

    ChainModel chain;
    chain.pi.reserve(static_cast<std::size_t>(n));
    chain.cond_given0 = Eigen::ArrayXd::Zero(n);
    chain.cond_given1 = Eigen::ArrayXd::Zero(n);
    chain.raw_given0 = Eigen::ArrayXd::Zero(n);
    chain.raw_given1 = Eigen::ArrayXd::Zero(n);

    std::vector<int> remaining(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) remaining[static_cast<std::size_t>(i)] = static_cast<int>(i);

    // Root: argmin empirical entropy. With a common denominator mu this is
    // an exact integer comparison of min(ones, mu - ones).
    {
        std::int64_t best_key = mu + 1;
        std::vector<std::size_t> tied;
        for (std::size_t r = 0; r < remaining.size(); ++r) {
            const std::int64_t key = std::min(ones[remaining[r]], mu - ones[remaining[r]]);
            if (key < best_key) {
                best_key = key;
                tied.clear();
            }
            if (key == best_key) tied.push_back(r);
        }
        const std::size_t pick = tied[static_cast<std::size_t>(rng.uniform_index(
            static_cast<std::int64_t>(tied.size())))];
        const int root = remaining[pick];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
        chain.pi.push_back(root);
        chain.root_p_raw = static_cast<double>(ones[root]) / static_cast<double>(mu);
        chain.root_p = clamp_probability(chain.root_p_raw, n, clamp);
    }

    std::vector<std::int64_t> c1(static_cast<std::size_t>(n));
    for (Eigen::Index k = 1; k < n; ++k) {
        const int prev = chain.pi.back();
        const std::int64_t s1 = ones[prev];
        const std::int64_t s0 = mu - s1;

        // Joint counts against the predecessor: c1[j] = #{x_prev=1, x_j=1}.
        for (int j : remaining) c1[static_cast<std::size_t>(j)] = 0;
        for (const Individual& ind : selected) {
            if (ind.genome[prev] == 0) continue;
            for (int j : remaining) c1[static_cast<std::size_t>(j)] += ind.genome[j];
        }

        double best_value = std::numeric_limits<double>::infinity();
        std::vector<std::size_t> tied;
        for (std::size_t r = 0; r < remaining.size(); ++r) {
            const int j = remaining[r];
            const std::int64_t cj1 = c1[static_cast<std::size_t>(j)];
            const std::int64_t cj0 = ones[j] - cj1;
            const double value = branch_term(cj0, s0, mu, n, entropy_log_base) +
                                 branch_term(cj1, s1, mu, n, entropy_log_base);
            if (value < best_value) {
                best_value = value;
                tied.clear();
            }
            if (value == best_value) tied.push_back(r);
        }
        const std::size_t pick = tied[static_cast<std::size_t>(rng.uniform_index(
            static_cast<std::int64_t>(tied.size())))];
        const int next = remaining[pick];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));

        // Counting estimates q(1|b) = p(1,b) / R(p(b)); an empty branch
        // yields 0 and is later lifted by the clamp.
        const std::int64_t n1 = c1[static_cast<std::size_t>(next)];
        const std::int64_t n0 = ones[next] - n1;
        const double r0 = std::max(static_cast<double>(s0) / mu, 1.0 / static_cast<double>(n));
        const double r1 = std::max(static_cast<double>(s1) / mu, 1.0 / static_cast<double>(n));
        chain.raw_given0[k] = (static_cast<double>(n0) / mu) / r0;
        chain.raw_given1[k] = (static_cast<double>(n1) / mu) / r1;
        chain.cond_given0[k] = clamp_probability(chain.raw_given0[k], n, clamp);
        chain.cond_given1[k] = clamp_probability(chain.raw_given1[k], n, clamp);
        chain.pi.push_back(next);
    }
    return chain;
}

BitString mimic_sample(const ChainModel& chain, RngStream& rng) {
    const Eigen::Index n = chain.n();
    BitString x(n);
    x[chain.pi[0]] = rng.uniform01() < chain.root_p ? 1u : 0u;
    for (Eigen::Index k = 1; k < n; ++k) {
        const std::uint8_t prev = x[chain.pi[static_cast<std::size_t>(k - 1)]];
        const double p = prev ? chain.cond_given1[k] : chain.cond_given0[k];
        x[chain.pi[static_cast<std::size_t>(k)]] = rng.uniform01() < p ? 1u : 0u;
    }
    return x;
}

MimicStepResult mimic_step(const std::vector<Individual>& population, const EdaConfig& cfg,
                           const Objective& objective, RngStream& rng, EvaluationBudget& budget) {
    cfg.validate();
    if (population.size() != static_cast<std::size_t>(cfg.lambda))
        throw std::invalid_argument("mimic_step: population size != lambda");

    SortedPopulation sorted = sort_population(population, rng);
    std::vector<Individual> selected(sorted.members.begin(),
                                     sorted.members.begin() + cfg.mu);

    MimicStepResult out;
    out.chain = mimic_build_chain(selected, objective.n(), rng, cfg.mimic_clamp);
    if (objective.kind() == Objective::Kind::Dlb && objective.width() == 2)
        out.stats = block_stats(sorted, cfg.mu, objective);

    out.population.reserve(static_cast<std::size_t>(cfg.lambda));
    for (int j = 0; j < cfg.lambda; ++j)
        out.population.push_back(objective.evaluate(mimic_sample(out.chain, rng), budget));
    return out;
}

ZValues z_values(const std::vector<Individual>& population, int mu) {
    if (population.empty()) throw std::invalid_argument("z_values: empty population");
    const Eigen::Index m = population.front().genome.size() / 2;
    Eigen::ArrayXi C = Eigen::ArrayXi::Zero(m);
    for (const Individual& ind : population) {
        const int f = phi(ind.genome, 2);
        for (int i = 1; i <= f; ++i) C[i - 1] += 1;
    }
    ZValues z;
    for (Eigen::Index i = m; i >= 1; --i)
        if (C[i - 1] >= mu) {
            z.Z = static_cast<int>(i);
            break;
        }
    for (Eigen::Index i = m; i >= 1; --i)
        if (C[i - 1] > 0) {
            z.Z_star = static_cast<int>(i);
            break;
        }
    return z;
}

} // namespace dlbench
