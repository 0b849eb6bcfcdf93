#include "qdsp/dsp_model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qdsp/errors.hpp"
#include "qdsp/math_util.hpp"

namespace qdsp {

namespace {

constexpr double kProbTol = 1e-12;

void check_distribution(const Eigen::VectorXd& p, const std::string& what) {
    if (p.size() < 1) throw DomainError(what + ": needs at least one entry");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!(p[i] >= 0.0) || !std::isfinite(p[i])) {
            throw DomainError(what + ": probabilities must be finite and >= 0");
        }
        sum += p[i];
    }
    if (std::abs(sum - 1.0) > kProbTol) {
        throw DomainError(what + ": probabilities must sum to 1");
    }
}

} // namespace

double DspModel::branch_prob(int level, int from, int to) const {
    switch (kind) {
    case DspKind::Independent:
        return levels[static_cast<std::size_t>(level - 1)].probs[to];
    case DspKind::FirstOrderMarkov:
        if (level == 1) return initial_dist[to];
        return transitions[static_cast<std::size_t>(level - 2)](from, to);
    case DspKind::CorrelatedWalk: {
        if (level == 1) return 0.5; // first step is fair by construction
        const double p = persistence_p[level - 1];
        const double q = persistence_q[level - 1];
        if (from == 1) return to == 1 ? p : 1.0 - p;
        return to == 0 ? q : 1.0 - q;
    }
    }
    throw DomainError("branch_prob: unknown model kind");
}

void DspModel::validate() const {
    const int n = num_levels();
    if (n < 1) throw DomainError("DspModel: needs at least one level");
    if (!std::isfinite(x0)) throw DomainError("DspModel: x0 must be finite");
    const int k = branching();
    if (k < 1) throw DomainError("DspModel: k must be >= 1");
    for (const auto& level : levels) {
        if (level.values.size() != k) {
            throw DomainError("DspModel: every level must carry k values");
        }
        for (Eigen::Index j = 0; j < level.values.size(); ++j) {
            if (!std::isfinite(level.values[j])) {
                throw DomainError("DspModel: increment values must be finite");
            }
        }
    }
    switch (kind) {
    case DspKind::Independent:
        for (const auto& level : levels) {
            if (level.probs.size() != k) {
                throw DomainError("DspModel: independent levels need k probabilities");
            }
            check_distribution(level.probs, "DspModel level");
        }
        break;
    case DspKind::FirstOrderMarkov: {
        if (initial_dist.size() != k) {
            throw DomainError("DspModel: initial distribution must have k entries");
        }
        check_distribution(initial_dist, "DspModel initial distribution");
        if (static_cast<int>(transitions.size()) != n - 1) {
            throw DomainError("DspModel: needs one transition matrix per level after the first");
        }
        for (const auto& t : transitions) {
            if (t.rows() != k || t.cols() != k) {
                throw DomainError("DspModel: transition matrices must be k x k");
            }
            for (Eigen::Index a = 0; a < k; ++a) {
                check_distribution(t.row(a).transpose(), "DspModel transition row");
            }
        }
        break;
    }
    case DspKind::CorrelatedWalk: {
        if (k != 2) throw DomainError("DspModel: correlated walks are two-valued");
        if (persistence_p.size() != n || persistence_q.size() != n) {
            throw DomainError("DspModel: persistence vectors must have one entry per level");
        }
        for (int l = 0; l < n; ++l) {
            const double p = persistence_p[l];
            const double q = persistence_q[l];
            if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
                throw DomainError("DspModel: persistence parameters must lie in [0, 1]");
            }
        }
        break;
    }
    }
}

std::vector<PathRealization> enumerate_paths(const DspModel& model, std::int64_t cap) {
    model.validate();
    const int n = model.num_levels();
    const int k = model.branching();

    std::int64_t total = 1;
    for (int l = 0; l < n; ++l) {
        if (k > 1 && total > cap / k) {
            throw CapExceeded("enumerate_paths: k^n exceeds enumeration cap");
        }
        total *= k;
    }
    if (total > cap) {
        throw CapExceeded("enumerate_paths: k^n exceeds enumeration cap");
    }

    std::vector<PathRealization> paths;
    paths.reserve(static_cast<std::size_t>(total));
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t rest = code;
        double prob = 1.0;
        double sum = model.x0;
        int prev = 0;
        for (int l = 1; l <= n; ++l) {
            const int j = static_cast<int>(rest % k);
            rest /= k;
            digits[static_cast<std::size_t>(l - 1)] = j;
            prob *= model.branch_prob(l, prev, j);
            sum += model.levels[static_cast<std::size_t>(l - 1)].values[j];
            prev = j;
        }
        paths.push_back(PathRealization{digits, prob, sum});
    }
    return paths;
}

double expectation_brute_force(const DspModel& model, const std::function<double(double)>& f,
                               std::int64_t cap) {
    double acc = 0.0;
    for (const auto& path : enumerate_paths(model, cap)) {
        acc += f(path.sum) * path.prob;
    }
    return acc;
}

std::complex<double> char_fn_brute_force(const DspModel& model, double v, std::int64_t cap) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& path : enumerate_paths(model, cap)) {
        acc += path.prob * std::complex<double>{std::cos(v * path.sum), std::sin(v * path.sum)};
    }
    return acc;
}

MonteCarloResult monte_carlo_estimate(const DspModel& model,
                                      const std::function<double(double)>& f,
                                      std::int64_t shots, std::uint64_t seed) {
    model.validate();
    if (shots < 2) throw DomainError("monte_carlo_estimate: needs at least 2 shots");
    const int n = model.num_levels();
    const int k = model.branching();
    std::mt19937_64 rng(seed);

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t s = 0; s < shots; ++s) {
        double path_sum = model.x0;
        int prev = 0;
        for (int l = 1; l <= n; ++l) {
            const double u = uniform_from_bits(rng());
            double acc = 0.0;
            int j = k - 1;
            for (int cand = 0; cand < k; ++cand) {
                acc += model.branch_prob(l, prev, cand);
                if (u < acc) {
                    j = cand;
                    break;
                }
            }
            path_sum += model.levels[static_cast<std::size_t>(l - 1)].values[j];
            prev = j;
        }
        const double val = f(path_sum);
        sum += val;
        sum_sq += val * val;
    }
    const double mean = sum / static_cast<double>(shots);
    double var = (sum_sq - static_cast<double>(shots) * mean * mean) /
                 static_cast<double>(shots - 1);
    if (var < 0.0) var = 0.0;
    return MonteCarloResult{mean, std::sqrt(var / static_cast<double>(shots))};
}

std::int64_t sample_count_for_margin(double alpha, double eps) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("sample_count_for_margin: alpha must lie in (0, 1)");
    }
    if (!(eps > 0.0)) {
        throw DomainError("sample_count_for_margin: eps must be positive");
    }
    const double z = inverse_normal_cdf(1.0 - alpha / 2.0);
    return static_cast<std::int64_t>(std::ceil(z * z / (4.0 * eps * eps)));
}

std::pair<double, double> attainable_range(const DspModel& model) {
    double lo = model.x0;
    double hi = model.x0;
    for (const auto& level : model.levels) {
        lo += level.values.minCoeff();
        hi += level.values.maxCoeff();
    }
    return {lo, hi};
}

DspModel make_independent_model(double x0, std::vector<LevelSpec> levels) {
    DspModel model;
    model.kind = DspKind::Independent;
    model.x0 = x0;
    model.levels = std::move(levels);
    model.validate();
    return model;
}

DspModel make_fair_walk(int n, double step, double x0) {
    LevelSpec level;
    level.values = Eigen::Vector2d(-step, step);
    level.probs = Eigen::Vector2d(0.5, 0.5);
    return make_independent_model(x0, std::vector<LevelSpec>(static_cast<std::size_t>(n), level));
}

} // namespace qdsp
