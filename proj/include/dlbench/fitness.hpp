#pragma once

#include "dlbench/core.hpp"

#include <string>

/// Benchmark fitness functions: Deceptive Leading Blocks (parametric block
/// width), the leading-blocks count phi used throughout the analysis, and the
/// LeadingOnes / OneMax baselines. All are pure and freely shareable.
namespace dlbench {

/// Number of leading all-ones blocks of width w. For w=2 this is the number
/// of leading 11s: the largest i such that the first i*w genes are all 1.
/// Rejects genome lengths that are not a multiple of w.
int phi(const BitString& x, int width = 2);

/// Deceptive Leading Blocks. With m = n/w blocks and f = phi(x):
///   n        if f = m (all-ones, the unique optimum),
///   w*f + 1  if the active block (block f+1) is all-zero,
///   w*f      otherwise.
/// At w=2 this is exactly: 2*phi+1 when the active block sums to 0 and 2*phi
/// when it sums to 1 (a sum of 2 would extend phi and cannot occur). Each
/// leading block contributes w; the all-zero active block is the deceptive
/// reward.
Fitness dlb(const BitString& x, int width = 2);

/// Length of the longest all-ones prefix.
Fitness leading_ones(const BitString& x);

/// Number of ones.
Fitness one_max(const BitString& x);

/// Index of the level A_i = {x : phi(x) = i} containing x. Identical to phi;
/// named for use with the level-based machinery.
int level_of(const BitString& x, int width = 2);

/// A fitness function selected by its config identifier ("dlb",
/// "leading_ones", "one_max") and bound to a problem size.
class Objective {
  public:
    enum class Kind { Dlb, LeadingOnes, OneMax };

    Objective(Kind kind, Eigen::Index n, int width = 2);

    /// Resolves a config identifier. Unknown ids raise ConfigError.
    static Objective from_id(const std::string& id, Eigen::Index n, int width = 2);

    Fitness operator()(const BitString& x) const;

    /// All three functions have optimum n at the all-ones string.
    Fitness optimum() const { return static_cast<Fitness>(n_); }
    bool is_optimal(Fitness f) const { return f == optimum(); }

    /// Evaluates a freshly sampled genome, charging one evaluation.
    Individual evaluate(BitString genome, EvaluationBudget& budget) const {
        Individual ind{std::move(genome), 0};
        ind.fitness = (*this)(ind.genome);
        budget.record_sample(is_optimal(ind.fitness));
        return ind;
    }

    Kind kind() const { return kind_; }
    Eigen::Index n() const { return n_; }
    int width() const { return width_; }
    const std::string& id() const { return id_; }

  private:
    Kind kind_;
    Eigen::Index n_;
    int width_;
    std::string id_;
};

} // namespace dlbench
