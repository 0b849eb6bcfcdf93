#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace qdsp {

/// One time step of a discrete stochastic process: the k possible increment
/// values and, for independent processes, their probabilities.
struct LevelSpec {
    Eigen::VectorXd values; ///< increment values x_{l,0}, ..., x_{l,k-1}
    Eigen::VectorXd probs;  ///< probabilities, entries >= 0 summing to 1
};

enum class DspKind { Independent, FirstOrderMarkov, CorrelatedWalk };

/// A discrete stochastic process S_n = x0 + sum_l X_l with one of three
/// dependence structures. Models are immutable values once built; every
/// operation in the library treats them as read-only.
///
/// Index convention is 0-based everywhere. For correlated walks, index 1
/// carries the up step (persistence p_l = P[repeat up]) and index 0 the
/// down step (persistence q_l = P[repeat down]); the first step is fair.
struct DspModel {
    DspKind kind = DspKind::Independent;
    double x0 = 0.0;
    std::vector<LevelSpec> levels;

    // FirstOrderMarkov: distribution of the first level plus one
    // row-stochastic k x k matrix per later level; transitions[l-2](a, b)
    // is P[X_l = x_{l,b} | X_{l-1} = x_{l-1,a}].
    Eigen::VectorXd initial_dist;
    std::vector<Eigen::MatrixXd> transitions;

    // CorrelatedWalk: per-level persistence parameters.
    Eigen::VectorXd persistence_p;
    Eigen::VectorXd persistence_q;

    int num_levels() const { return static_cast<int>(levels.size()); }
    int branching() const { return levels.empty() ? 0 : static_cast<int>(levels.front().values.size()); }

    /// Probability of branch `to` at 1-based level, given branch `from` at
    /// the previous level (ignored for level 1 and independent models).
    double branch_prob(int level, int from, int to) const;

    /// Checks all structural invariants; throws DomainError on violation.
    void validate() const;
};

/// One realization path: index vector, its joint probability, and the sum.
struct PathRealization {
    std::vector<int> index;
    double prob = 0.0;
    double sum = 0.0;
};

struct MonteCarloResult {
    double mean = 0.0;
    double std_error = 0.0;
};

constexpr std::int64_t kDefaultEnumerationCap = std::int64_t{1} << 24;

/// All k^n paths with chain-rule probabilities, ordered so that the path
/// whose index digits are (j_1 .. j_n) sits at position sum_l j_l * k^(l-1).
/// Throws CapExceeded when k^n > cap.
std::vector<PathRealization> enumerate_paths(const DspModel& model,
                                             std::int64_t cap = kDefaultEnumerationCap);

/// E[f(S_n)] by exhaustive path enumeration.
double expectation_brute_force(const DspModel& model, const std::function<double(double)>& f,
                               std::int64_t cap = kDefaultEnumerationCap);

/// phi(v) = E[exp(i v S_n)] by exhaustive path enumeration.
std::complex<double> char_fn_brute_force(const DspModel& model, double v,
                                         std::int64_t cap = kDefaultEnumerationCap);

/// Plain Monte Carlo baseline: ancestral sampling of paths, sample mean and
/// standard error of f(S_n). Deterministic for a fixed seed.
MonteCarloResult monte_carlo_estimate(const DspModel& model,
                                      const std::function<double(double)>& f,
                                      std::int64_t shots, std::uint64_t seed);

/// Number of Bernoulli experiments needed for confidence 1-alpha and margin
/// eps: ceil(z(1 - alpha/2)^2 / (4 eps^2)).
std::int64_t sample_count_for_margin(double alpha, double eps);

/// Smallest and largest attainable value of S_n.
std::pair<double, double> attainable_range(const DspModel& model);

/// Convenience builders used across tests and pipelines.
DspModel make_independent_model(double x0, std::vector<LevelSpec> levels);
DspModel make_fair_walk(int n, double step = 1.0, double x0 = 0.0);

} // namespace qdsp
