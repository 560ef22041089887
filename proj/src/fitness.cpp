#include "dlbench/fitness.hpp"

namespace dlbench {

namespace {

void check_blocked(const BitString& x, int width) {
    if (width < 2) throw std::invalid_argument("block width must be >= 2");
    if (x.size() % width != 0)
        throw std::invalid_argument("genome length " + std::to_string(x.size()) +
                                    " is not a multiple of block width " + std::to_string(width));
}

} // namespace

int phi(const BitString& x, int width) {
    check_blocked(x, width);
    const Eigen::Index m = x.size() / width;
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < width; ++j) {
            if (x[i * width + j] == 0) return static_cast<int>(i);
        }
    }
    return static_cast<int>(m);
}

Fitness dlb(const BitString& x, int width) {
    const int f = phi(x, width);
    const Eigen::Index m = x.size() / width;
    if (f == m) return static_cast<Fitness>(x.size());
    const Eigen::Index start = static_cast<Eigen::Index>(f) * width;
    bool active_all_zero = true;
    for (Eigen::Index j = 0; j < width; ++j) {
        if (x[start + j] != 0) {
            active_all_zero = false;
            break;
        }
    }
    const Fitness base = static_cast<Fitness>(f) * width;
    return active_all_zero ? base + 1 : base;
}

Fitness leading_ones(const BitString& x) {
    Eigen::Index i = 0;
    while (i < x.size() && x[i] == 1) ++i;
    return static_cast<Fitness>(i);
}

Fitness one_max(const BitString& x) { return x.cast<std::int64_t>().sum(); }

int level_of(const BitString& x, int width) { return phi(x, width); }

Objective::Objective(Kind kind, Eigen::Index n, int width) : kind_(kind), n_(n), width_(width) {
    if (n < 1) throw ConfigError("problem size n must be >= 1");
    switch (kind) {
        case Kind::Dlb:
            if (width < 2) throw ConfigError("dlb: block width must be >= 2");
            if (n % width != 0)
                throw ConfigError("dlb: n=" + std::to_string(n) + " is not a multiple of w=" +
                                  std::to_string(width));
            id_ = "dlb";
            break;
        case Kind::LeadingOnes:
            id_ = "leading_ones";
            break;
        case Kind::OneMax:
            id_ = "one_max";
            break;
    }
}

Objective Objective::from_id(const std::string& id, Eigen::Index n, int width) {
    if (id == "dlb") return Objective(Kind::Dlb, n, width);
    if (id == "leading_ones") return Objective(Kind::LeadingOnes, n, width);
    if (id == "one_max") return Objective(Kind::OneMax, n, width);
    throw ConfigError("unknown fitness id: \"" + id + "\"");
}

Fitness Objective::operator()(const BitString& x) const {
    if (x.size() != n_)
        throw std::invalid_argument("genome length " + std::to_string(x.size()) +
                                    " does not match configured n=" + std::to_string(n_));
    switch (kind_) {
        case Kind::Dlb: return dlb(x, width_);
        case Kind::LeadingOnes: return leading_ones(x);
        case Kind::OneMax: return one_max(x);
    }
    return 0; // unreachable
}

} // namespace dlbench
