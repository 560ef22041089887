#include "dlbench/ea.hpp"

#include <algorithm>
#include <cmath>

namespace dlbench {

SelectionSpec SelectionSpec::parse(const std::string& id) {
    SelectionSpec spec;
    auto parse_param = [&](const std::string& s, const char* what) -> double {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(std::string("selection: bad ") + what + " in \"" + id + "\"");
        }
    };
    if (id == "comma") {
        spec.kind = Kind::Comma;
        return spec;
    }
    const auto colon = id.find(':');
    const std::string head = id.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : id.substr(colon + 1);
    if (head == "tournament") {
        spec.kind = Kind::Tournament;
        const double k = arg.empty() ? 2.0 : parse_param(arg, "tournament size");
        if (k < 1.0 || k != std::floor(k)) throw ConfigError("selection: tournament size must be an integer >= 1");
        spec.k = static_cast<int>(k);
        return spec;
    }
    if (head == "linrank") {
        spec.kind = Kind::LinearRank;
        spec.eta = arg.empty() ? 2.0 : parse_param(arg, "eta");
        if (!(spec.eta > 1.0 && spec.eta <= 2.0))
            throw ConfigError("selection: linrank eta must be in (1,2]");
        return spec;
    }
    if (head == "exprank") {
        spec.kind = Kind::ExponentialRank;
        spec.eta = arg.empty() ? 2.0 : parse_param(arg, "eta");
        if (!(spec.eta > 1.0)) throw ConfigError("selection: exprank eta must be > 1");
        return spec;
    }
    throw ConfigError("unknown selection id: \"" + id + "\"");
}

std::string SelectionSpec::to_string() const {
    switch (kind) {
        case Kind::Tournament: return "tournament:" + std::to_string(k);
        case Kind::Comma: return "comma";
        case Kind::LinearRank: return "linrank:" + std::to_string(eta);
        case Kind::ExponentialRank: return "exprank:" + std::to_string(eta);
    }
    return "?";
}

CrossoverOp parse_crossover(const std::string& id) {
    if (id == "uniform") return CrossoverOp::Uniform;
    if (id == "one_point") return CrossoverOp::OnePoint;
    throw ConfigError("unknown crossover id: \"" + id + "\"");
}

EaConfig::Variant EaConfig::parse_variant(const std::string& id) {
    if (id == "1+lambda") return Variant::OnePlusLambda;
    if (id == "mu+1") return Variant::MuPlusOne;
    if (id == "mu,lambda") return Variant::MuCommaLambda;
    if (id == "ga") return Variant::Ga;
    throw ConfigError("unknown algorithm id: \"" + id + "\"");
}

void EaConfig::validate(Eigen::Index n) const {
    if (mu < 1 || lambda < 1) throw ConfigError("ea: mu and lambda must be >= 1");
    if (!(chi > 0.0 && chi < static_cast<double>(n) / 2.0))
        throw ConfigError("ea: chi must lie in (0, n/2)");
    if (!(p_c >= 0.0 && p_c <= 1.0)) throw ConfigError("ea: p_c must lie in [0,1]");
    if (variant == Variant::MuCommaLambda && !(mu < lambda))
        throw ConfigError("ea: mu < lambda required for the comma variant");
    if (variant == Variant::Ga && selection.kind == SelectionSpec::Kind::Comma && mu > lambda)
        throw ConfigError("ea: comma selection requires mu <= lambda");
}

BitString mutate_bitwise(const BitString& x, double rate, RngStream& rng) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("mutate_bitwise: rate outside [0,1]");
    BitString y = x;
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (rng.uniform01() < rate) y[i] ^= 1u;
    return y;
}

BitString crossover(const BitString& a, const BitString& b, CrossoverOp op, RngStream& rng) {
    if (a.size() != b.size()) throw std::invalid_argument("crossover: parent lengths differ");
    const Eigen::Index n = a.size();
    BitString child(n);
    switch (op) {
        case CrossoverOp::Uniform:
            for (Eigen::Index i = 0; i < n; ++i) child[i] = (rng.next_u64() & 1u) ? a[i] : b[i];
            break;
        case CrossoverOp::OnePoint: {
            const Eigen::Index cut = n < 2 ? n : 1 + rng.uniform_index(n - 1);
            for (Eigen::Index i = 0; i < n; ++i) child[i] = i < cut ? a[i] : b[i];
            break;
        }
    }
    return child;
}

SortedPopulation step_mu_comma_lambda(const std::vector<Individual>& parents, const EaConfig& cfg,
                                      const Objective& objective, RngStream& rng,
                                      EvaluationBudget& budget) {
    const double rate = cfg.mutation_rate(objective.n());
    std::vector<Individual> offspring;
    offspring.reserve(cfg.lambda);
    for (int i = 0; i < cfg.lambda; ++i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_index(parents.size()));
        offspring.push_back(objective.evaluate(mutate_bitwise(parents[j].genome, rate, rng), budget));
    }
    SortedPopulation sorted = sort_population(std::move(offspring), rng);
    sorted.members.resize(static_cast<std::size_t>(cfg.mu));
    return sorted;
}

Individual step_one_plus_lambda(const Individual& incumbent, const EaConfig& cfg,
                                const Objective& objective, RngStream& rng,
                                EvaluationBudget& budget) {
    const double rate = cfg.mutation_rate(objective.n());
    std::vector<Individual> mutants;
    mutants.reserve(cfg.lambda);
    Fitness best = std::numeric_limits<Fitness>::min();
    for (int i = 0; i < cfg.lambda; ++i) {
        mutants.push_back(objective.evaluate(mutate_bitwise(incumbent.genome, rate, rng), budget));
        best = std::max(best, mutants.back().fitness);
    }
    if (best < incumbent.fitness) return incumbent;
    std::vector<std::size_t> argmax;
    for (std::size_t i = 0; i < mutants.size(); ++i)
        if (mutants[i].fitness == best) argmax.push_back(i);
    return mutants[argmax[rng.uniform_index(argmax.size())]];
}

void plus_one_replace(std::vector<Individual>& pop, Individual offspring, RngStream& rng) {
    pop.push_back(std::move(offspring));
    Fitness worst = pop.front().fitness;
    for (const Individual& ind : pop) worst = std::min(worst, ind.fitness);
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (pop[i].fitness == worst) candidates.push_back(i);
    const std::size_t victim = candidates[rng.uniform_index(candidates.size())];
    pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(victim));
}

std::vector<Individual> step_mu_plus_one(std::vector<Individual> pop, const EaConfig& cfg,
                                         const Objective& objective, RngStream& rng,
                                         EvaluationBudget& budget) {
    const double rate = cfg.mutation_rate(objective.n());
    const std::size_t j = static_cast<std::size_t>(rng.uniform_index(pop.size()));
    Individual offspring = objective.evaluate(mutate_bitwise(pop[j].genome, rate, rng), budget);
    plus_one_replace(pop, std::move(offspring), rng);
    return pop;
}

RankSelector::RankSelector(const SortedPopulation& pop, const SelectionSpec& spec, int mu)
    : pop_(pop), spec_(spec), mu_(mu) {
    const std::size_t lambda = pop.size();
    if (lambda == 0) throw std::invalid_argument("RankSelector: empty population");
    if (spec.kind == SelectionSpec::Kind::Comma &&
        (mu < 1 || static_cast<std::size_t>(mu) > lambda))
        throw std::invalid_argument("RankSelector: comma selection needs 1 <= mu <= lambda");

    if (spec.kind == SelectionSpec::Kind::LinearRank ||
        spec.kind == SelectionSpec::Kind::ExponentialRank) {
        cumulative_.resize(lambda);
        double acc = 0.0;
        for (std::size_t i = 0; i < lambda; ++i) {
            double w;
            if (spec.kind == SelectionSpec::Kind::LinearRank) {
                w = lambda == 1
                        ? 1.0
                        : (spec.eta - 2.0 * (spec.eta - 1.0) * static_cast<double>(i) /
                                          static_cast<double>(lambda - 1)) /
              static_cast<double>(lambda);
            } else {
                w = std::pow(spec.eta, -static_cast<double>(i));
            }
            acc += w;
            cumulative_[i] = acc;
        }
        for (double& c : cumulative_) c /= acc;
        cumulative_.back() = 1.0;
    }
}

std::size_t RankSelector::select(RngStream& rng) const {
    const std::size_t lambda = pop_.size();
    switch (spec_.kind) {
        case SelectionSpec::Kind::Tournament: {
            Fitness best = std::numeric_limits<Fitness>::min();
            std::vector<std::size_t> drawn(static_cast<std::size_t>(spec_.k));
            for (auto& d : drawn) {
                d = static_cast<std::size_t>(rng.uniform_index(lambda));
                best = std::max(best, pop_.members[d].fitness);
            }
            std::vector<std::size_t> tied;
            for (std::size_t d : drawn)
                if (pop_.members[d].fitness == best) tied.push_back(d);
            return tied[rng.uniform_index(tied.size())];
        }
        case SelectionSpec::Kind::Comma:
            return static_cast<std::size_t>(rng.uniform_index(mu_));
        case SelectionSpec::Kind::LinearRank:
        case SelectionSpec::Kind::ExponentialRank: {
            const double u = rng.uniform01();
            const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
            return static_cast<std::size_t>(it - cumulative_.begin());
        }
    }
    return 0; // unreachable
}

std::vector<Individual> ga_step(const std::vector<Individual>& pop, const EaConfig& cfg,
                                const Objective& objective, RngStream& rng,
                                EvaluationBudget& budget) {
    const double rate = cfg.mutation_rate(objective.n());
    SortedPopulation sorted = sort_population(pop, rng);
    RankSelector selector(sorted, cfg.selection, cfg.mu);

    std::vector<Individual> next;
    next.reserve(cfg.lambda);
    for (int i = 0; i < cfg.lambda; ++i) {
        BitString child;
        if (cfg.p_c > 0.0 && rng.bernoulli(cfg.p_c)) {
            const Individual& a = sorted.members[selector.select(rng)];
            const Individual& b = sorted.members[selector.select(rng)];
            child = mutate_bitwise(crossover(a.genome, b.genome, cfg.crossover, rng), rate, rng);
        } else {
            child = mutate_bitwise(sorted.members[selector.select(rng)].genome, rate, rng);
        }
        next.push_back(objective.evaluate(std::move(child), budget));
    }
    return next;
}

} // namespace dlbench
