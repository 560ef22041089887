#include "dlbench/verify.hpp"

#include "dlbench/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace dlbench {

namespace {

constexpr int kShards = 64; // fixed shard count keeps results thread-count independent

struct Moments {
    double count = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0;

    void add(double x) {
        count += 1;
        s1 += x;
        const double x2 = x * x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
    }
    void merge(const Moments& o) {
        count += o.count;
        s1 += o.s1;
        s2 += o.s2;
        s3 += o.s3;
        s4 += o.s4;
    }
    double mean() const { return s1 / count; }
    double var() const {
        const double m = mean();
        return s2 / count - m * m;
    }
    // Fourth central moment, for the standard error of the sample variance.
    double central4() const {
        const double m = mean();
        return s4 / count - 4 * m * s3 / count + 6 * m * m * s2 / count - 3 * m * m * m * m;
    }
    double se_mean() const { return std::sqrt(std::max(0.0, var()) / count); }
    double se_var() const {
        const double v = var();
        return std::sqrt(std::max(0.0, central4() - v * v) / count);
    }
};

double safe_z(double observed, double expected, double se) {
    if (se > 0.0) return (observed - expected) / se;
    if (observed == expected) return 0.0;
    return observed > expected ? 1e9 : -1e9;
}

CheckResult two_sided(const std::string& name, double expected, double observed, double se) {
    const double z = safe_z(observed, expected, se);
    return {name, expected, observed, z, std::abs(z) <= 4.0};
}

CheckResult lower_bound(const std::string& name, double bound, double observed, double se) {
    const double z = safe_z(observed, bound, se);
    return {name, bound, observed, z, observed >= bound};
}

void sharded(std::int64_t trials, const std::function<void(int, std::int64_t, std::int64_t)>& run) {
    const int shards = static_cast<int>(std::min<std::int64_t>(kShards, trials));
    parallel_for(shards, [&](std::int64_t s) {
        const std::int64_t lo = trials * s / shards;
        const std::int64_t hi = trials * (s + 1) / shards;
        run(static_cast<int>(s), lo, hi);
    });
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

const CheckResult& VerifyReport::find(const std::string& name) const {
    for (const CheckResult& c : checks)
        if (c.name == name) return c;
    throw std::invalid_argument("no such check: " + name);
}

std::string report_to_json(const VerifyReport& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckResult& c : report.checks) {
        arr.push_back({{"name", c.name},
                       {"expected", c.expected},
                       {"observed", c.observed},
                       {"z", c.z},
                       {"pass", c.pass}});
    }
    nlohmann::json root{{"checks", arr}, {"all_pass", report.all_pass()}};
    return root.dump(2);
}

VerifyReport verify_binomial_moments(std::uint64_t seed, std::int64_t trials) {
    const std::int64_t ns[] = {1, 2, 5, 10, 50};
    const double ps[] = {0.0, 0.1, 0.5, 0.9, 1.0};
    VerifyReport report;
    std::uint64_t cell = 0;
    for (std::int64_t nb : ns) {
        for (double p : ps) {
            std::vector<Moments> acc(kShards);
            const std::uint64_t cell_base = 100000 * cell++;
            sharded(trials, [&](int s, std::int64_t lo, std::int64_t hi) {
                RngStream rng(seed, cell_base + static_cast<std::uint64_t>(s));
                for (std::int64_t i = lo; i < hi; ++i)
                    acc[static_cast<std::size_t>(s)].add(
                        static_cast<double>(sample_binomial(nb, p, rng)));
            });
            Moments m;
            for (const Moments& a : acc) m.merge(a);
            const double nd = static_cast<double>(nb);
            const std::string tag = "binomial_n" + std::to_string(nb) + "_p" + fmt(p);
            report.checks.push_back(two_sided(tag + "_mean", nd * p, m.mean(), m.se_mean()));
            // Lemma 3: E[X^2] = np(p(n-1)+1).
            const double ex2 = nd * p * (p * (nd - 1) + 1);
            Moments sq; // moments of X^2 for its own standard error
            sq.count = m.count;
            sq.s1 = m.s2;
            sq.s2 = m.s4;
            report.checks.push_back(
                two_sided(tag + "_second_moment", ex2, sq.mean(), sq.se_mean()));
        }
    }
    return report;
}

VerifyReport verify_block_distributions(const MarginalModel& model, int mu, int lambda,
                                        std::int64_t trials, std::uint64_t seed) {
    (void)mu; // counts are population-wide; mu only shapes the surrounding setup
    const Eigen::Index n = model.n();
    if (n % 2 != 0) throw std::invalid_argument("verify_block_distributions: n must be even");
    const Eigen::Index m = n / 2;
    const Eigen::Index blocks = std::min<Eigen::Index>(m, 3);

    struct Acc {
        std::vector<Moments> C, D, E;
    };
    std::vector<Acc> acc(kShards, Acc{std::vector<Moments>(blocks), std::vector<Moments>(blocks),
                                      std::vector<Moments>(blocks)});

    sharded(trials, [&](int s, std::int64_t lo, std::int64_t hi) {
        RngStream rng(seed, static_cast<std::uint64_t>(s));
        Acc& a = acc[static_cast<std::size_t>(s)];
        std::vector<int> c(static_cast<std::size_t>(m) + 1), d(c.size()), e(c.size());
        for (std::int64_t trial = lo; trial < hi; ++trial) {
            std::fill(c.begin(), c.end(), 0);
            std::fill(d.begin(), d.end(), 0);
            std::fill(e.begin(), e.end(), 0);
            for (int j = 0; j < lambda; ++j) {
                // Blocks are sampled left to right with early stop at the
                // active block; genes beyond it cannot change C/D/E.
                Eigen::Index f = 0;
                bool a1 = false, b1 = false;
                while (f < m) {
                    a1 = rng.uniform01() < model.p[2 * f];
                    b1 = rng.uniform01() < model.p[2 * f + 1];
                    if (!(a1 && b1)) break;
                    ++f;
                }
                for (Eigen::Index i = 1; i <= f; ++i) c[static_cast<std::size_t>(i)] += 1;
                if (f < m) {
                    if (!a1 && !b1) d[static_cast<std::size_t>(f + 1)] += 1;
                    else if (a1 && !b1) e[static_cast<std::size_t>(f + 1)] += 1;
                }
            }
            for (Eigen::Index i = 1; i <= blocks; ++i) {
                a.C[static_cast<std::size_t>(i - 1)].add(c[static_cast<std::size_t>(i)]);
                a.D[static_cast<std::size_t>(i - 1)].add(d[static_cast<std::size_t>(i)]);
                a.E[static_cast<std::size_t>(i - 1)].add(e[static_cast<std::size_t>(i)]);
            }
        }
    });

    VerifyReport report;
    double exC_prev = static_cast<double>(lambda); // E[C_0] = lambda
    for (Eigen::Index i = 1; i <= blocks; ++i) {
        Moments mc, md, me;
        for (const Acc& a : acc) {
            mc.merge(a.C[static_cast<std::size_t>(i - 1)]);
            md.merge(a.D[static_cast<std::size_t>(i - 1)]);
            me.merge(a.E[static_cast<std::size_t>(i - 1)]);
        }
        const double p1 = model.p[2 * (i - 1)];
        const double p2 = model.p[2 * (i - 1) + 1];
        const double exC = exC_prev * p1 * p2;
        const double exD = exC_prev * (1 - p1) * (1 - p2);
        const double exE = exC_prev * p1 * (1 - p2);
        const std::string tag = "block" + std::to_string(i);
        report.checks.push_back(two_sided(tag + "_mean_C", exC, mc.mean(), mc.se_mean()));
        report.checks.push_back(two_sided(tag + "_mean_D", exD, md.mean(), md.se_mean()));
        report.checks.push_back(two_sided(tag + "_mean_E", exE, me.mean(), me.se_mean()));
        exC_prev = exC;
    }
    return report;
}

VerifyReport verify_untouched_marginal_dynamics(int mu, int t_max, std::int64_t trials,
                                                std::uint64_t seed, Eigen::Index clamp_n,
                                                std::vector<int> checkpoints) {
    std::vector<int> marks;
    for (int t : checkpoints)
        if (t >= 1 && t <= t_max) marks.push_back(t);
    std::sort(marks.begin(), marks.end());

    struct Acc {
        Moments x0;
        std::vector<Moments> p, x;
    };
    std::vector<Acc> acc(kShards,
                         Acc{Moments{}, std::vector<Moments>(marks.size()),
                             std::vector<Moments>(marks.size())});
    const double lo_border = 1.0 / static_cast<double>(clamp_n);
    const double hi_border = 1.0 - lo_border;

    sharded(trials, [&](int s, std::int64_t lo, std::int64_t hi) {
        RngStream rng(seed, static_cast<std::uint64_t>(s));
        Acc& a = acc[static_cast<std::size_t>(s)];
        for (std::int64_t trial = lo; trial < hi; ++trial) {
            std::int64_t x = sample_binomial(mu, 0.5, rng);
            a.x0.add(static_cast<double>(x));
            std::size_t next_mark = 0;
            for (int t = 1; t <= t_max && next_mark < marks.size(); ++t) {
                const double p =
                    std::clamp(static_cast<double>(x) / mu, lo_border, hi_border);
                x = sample_binomial(mu, p, rng);
                if (t == marks[next_mark]) {
                    a.p[next_mark].add(p);
                    a.x[next_mark].add(static_cast<double>(x));
                    ++next_mark;
                }
            }
        }
    });

    VerifyReport report;
    Moments x0;
    for (const Acc& a : acc) x0.merge(a.x0);
    report.checks.push_back(
        two_sided("lemma6_var_X_t0", mu / 4.0, x0.var(), x0.se_var()));

    for (std::size_t k = 0; k < marks.size(); ++k) {
        Moments mp, mx;
        for (const Acc& a : acc) {
            mp.merge(a.p[k]);
            mx.merge(a.x[k]);
        }
        const int t = marks[k];
        report.checks.push_back(two_sided("lemma6_mean_p_t" + std::to_string(t), 0.5,
                                          mp.mean(), mp.se_mean()));
        const double curve = (static_cast<double>(mu) * mu / 4.0) *
                             (1.0 - std::pow(1.0 - 1.0 / mu, t));
        report.checks.push_back(lower_bound("lemma6_var_X_t" + std::to_string(t), 0.9 * curve,
                                            mx.var(), mx.se_var()));
    }
    return report;
}

VerifyReport verify_z0_bound(int lambda, Eigen::Index n, std::int64_t trials,
                             std::uint64_t seed) {
    if (n % 2 != 0) throw std::invalid_argument("verify_z0_bound: n must be even");
    const Eigen::Index m = n / 2;
    std::vector<Moments> acc(kShards);
    sharded(trials, [&](int s, std::int64_t lo, std::int64_t hi) {
        RngStream rng(seed, static_cast<std::uint64_t>(s));
        for (std::int64_t trial = lo; trial < hi; ++trial) {
            int z_star = 0;
            for (int j = 0; j < lambda; ++j) {
                // phi of a fresh uniform string, sampled block-by-block with
                // early stop (the same law as sampling all n genes).
                int f = 0;
                while (f < m) {
                    const bool a = rng.next_u64() & 1u;
                    const bool b = rng.next_u64() & 1u;
                    if (!(a && b)) break;
                    ++f;
                }
                z_star = std::max(z_star, f);
            }
            acc[static_cast<std::size_t>(s)].add(static_cast<double>(z_star));
        }
    });
    Moments mz;
    for (const Moments& a : acc) mz.merge(a);
    const double bound = z0_expectation_bound(static_cast<double>(lambda));
    VerifyReport report;
    // One-sided the other way round: the lemma upper-bounds the mean.
    const double z = safe_z(mz.mean(), bound, mz.se_mean());
    report.checks.push_back({"lemma4_mean_Z0_star_le_bound", bound, mz.mean(), z,
                             mz.mean() <= bound});
    return report;
}

VerifyReport verify_xy_one_step_laws(const MarginalModel& model, int mu, int lambda,
                                     int block_j, int position_i, std::int64_t trials,
                                     std::uint64_t seed) {
    const Eigen::Index n = model.n();
    const Objective objective(Objective::Kind::Dlb, n, 2);
    if (block_j < 1 || block_j > n / 2 || position_i < 1 || position_i > n)
        throw std::invalid_argument("verify_xy_one_step_laws: index out of range");

    struct Acc {
        Moments y, x;
    };
    std::vector<Acc> acc(kShards);
    sharded(trials, [&](int s, std::int64_t lo, std::int64_t hi) {
        RngStream rng(seed, static_cast<std::uint64_t>(s));
        EvaluationBudget budget(std::numeric_limits<std::int64_t>::max());
        Acc& a = acc[static_cast<std::size_t>(s)];
        for (std::int64_t trial = lo; trial < hi; ++trial) {
            auto pop = sample_marginal_population(model, lambda, objective, rng, budget);
            SortedPopulation sorted = sort_population(std::move(pop), rng);
            IterationStats stats = block_stats(sorted, mu, objective);
            if (stats.Z <= block_j - 2) a.y.add(static_cast<double>(stats.Y[block_j - 1]));
            if (2 * stats.Z + 3 <= position_i)
                a.x.add(static_cast<double>(stats.X[position_i - 1]));
        }
    });

    Moments my, mx;
    for (const Acc& a : acc) {
        my.merge(a.y);
        mx.merge(a.x);
    }
    VerifyReport report;
    const double qy = model.p[2 * (block_j - 1)] * model.p[2 * (block_j - 1) + 1];
    const double qx = model.p[position_i - 1];
    const double mud = static_cast<double>(mu);
    report.checks.push_back(
        two_sided("lawY_mean_block" + std::to_string(block_j), mud * qy, my.mean(), my.se_mean()));
    report.checks.push_back(two_sided("lawY_var_block" + std::to_string(block_j),
                                      mud * qy * (1 - qy), my.var(), my.se_var()));
    report.checks.push_back(
        two_sided("lawX_mean_pos" + std::to_string(position_i), mud * qx, mx.mean(), mx.se_mean()));
    report.checks.push_back(two_sided("lawX_var_pos" + std::to_string(position_i),
                                      mud * qx * (1 - qx), mx.var(), mx.se_var()));
    return report;
}

VerifyReport verify_all(std::int64_t trials, std::uint64_t seed) {
    VerifyReport report;
    report.append(verify_binomial_moments(seed, std::max<std::int64_t>(trials, 10000)));

    const MarginalModel uniform20 = MarginalModel::uniform(20);
    report.append(verify_block_distributions(uniform20, 50, 200, trials, seed + 1));

    MarginalModel border20 = MarginalModel::uniform(20);
    border20.p.setConstant(border20.upper_border());
    {
        VerifyReport b = verify_block_distributions(border20, 50, 200, trials, seed + 2);
        for (CheckResult& c : b.checks) c.name = "border_" + c.name;
        report.append(std::move(b));
    }

    report.append(verify_untouched_marginal_dynamics(
        100, 292, std::min<std::int64_t>(trials, 100000), seed + 3));
    report.append(verify_z0_bound(1000, 100, trials, seed + 4));
    report.append(verify_xy_one_step_laws(uniform20, 50, 100, 3, 7, trials, seed + 5));
    return report;
}

} // namespace dlbench
