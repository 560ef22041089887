#include "dlbench/core.hpp"

#include <algorithm>
#include <numeric>

namespace dlbench {

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed),
        static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(stream_id),
        static_cast<std::uint32_t>(stream_id >> 32),
        0x9e3779b9u, // distinguishes this seeding scheme from plain seeds
    };
    engine_.seed(seq);
}

double RngStream::uniform01() {
    // 53 random bits, uniform on [0,1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli: p outside [0,1]");
    return uniform01() < p;
}

std::int64_t RngStream::uniform_index(std::int64_t bound) {
    if (bound < 1) throw std::invalid_argument("uniform_index: bound must be >= 1");
    std::uniform_int_distribution<std::int64_t> dist(0, bound - 1);
    return dist(engine_);
}

BitString sample_uniform_bitstring(Eigen::Index n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_uniform_bitstring: n must be >= 1");
    BitString x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>(rng.next_u64() & 1u);
    return x;
}

SortedPopulation sort_population(std::vector<Individual> pop, RngStream& rng) {
    // One key per member, drawn in member order; a stable sort on
    // (fitness desc, key asc) yields a uniform permutation among ties.
    std::vector<double> key(pop.size());
    for (double& k : key) k = rng.uniform01();

    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pop[a].fitness != pop[b].fitness) return pop[a].fitness > pop[b].fitness;
        return key[a] < key[b];
    });

    SortedPopulation out;
    out.tiebreak_draws = pop.size();
    out.members.reserve(pop.size());
    for (std::size_t idx : order) out.members.push_back(std::move(pop[idx]));
    return out;
}

std::int64_t sample_binomial(std::int64_t trials, double p, RngStream& rng) {
    if (trials < 0) throw std::invalid_argument("sample_binomial: trials must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_binomial: p outside [0,1]");
    if (trials == 0 || p == 0.0) return 0;
    if (p == 1.0) return trials;
    std::binomial_distribution<std::int64_t> dist(trials, p);
    return dist(rng.engine());
}

} // namespace dlbench
