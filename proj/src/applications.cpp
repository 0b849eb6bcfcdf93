#include "qdsp/applications.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "qdsp/errors.hpp"
#include "qdsp/format.hpp"
#include "qdsp/math_util.hpp"

namespace qdsp {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
} // namespace

void MarketParams::validate() const {
    if (!(sigma > 0.0)) throw DomainError("MarketParams: sigma must be positive");
    if (!(S0 > 0.0)) throw DomainError("MarketParams: S0 must be positive");
    if (!(T > t && t >= 0.0)) throw DomainError("MarketParams: requires T > t >= 0");
    if (!std::isfinite(mu) || !std::isfinite(r)) {
        throw DomainError("MarketParams: rates must be finite");
    }
}

DonskerWalk donsker_walk_for_delta(const MarketParams& params, double K, int n) {
    params.validate();
    if (!(K > 0.0)) throw DomainError("donsker_walk_for_delta: K must be positive");
    if (n < 1) throw DomainError("donsker_walk_for_delta: n must be >= 1");
    const double horizon = params.T - params.t;
    const double scale = params.sigma * std::sqrt(horizon);
    DonskerWalk walk;
    walk.mu_B = (params.mu - 0.5 * params.sigma * params.sigma) / scale;
    walk.sigma_B = 1.0 / std::sqrt(horizon);
    walk.n = n;
    walk.x0 = (std::log(params.S0) - std::log(K) +
               (params.r + 0.5 * params.sigma * params.sigma) * horizon) /
              scale;
    return walk;
}

DspModel build_donsker_model(const DonskerWalk& walk) {
    if (walk.n < 1) throw DomainError("build_donsker_model: n must be >= 1");
    if (!(walk.sigma_B > 0.0)) throw DomainError("build_donsker_model: sigma_B must be positive");
    const double drift = walk.mu_B / static_cast<double>(walk.n);
    const double spread = walk.sigma_B / std::sqrt(static_cast<double>(walk.n));
    LevelSpec level;
    level.values = Eigen::Vector2d(drift - spread, drift + spread);
    level.probs = Eigen::Vector2d(0.5, 0.5);
    return make_independent_model(walk.x0,
                                  std::vector<LevelSpec>(static_cast<std::size_t>(walk.n), level));
}

DspModel build_delta_model(const MarketParams& params, int n) {
    return build_donsker_model(donsker_walk_for_delta(params, params.K, n));
}

double black_scholes_delta(const MarketParams& params, double K) {
    params.validate();
    if (!(K > 0.0)) throw DomainError("black_scholes_delta: K must be positive");
    const double horizon = params.T - params.t;
    const double d1 = (std::log(params.S0 / K) +
                       (params.r + 0.5 * params.sigma * params.sigma) * horizon) /
                      (params.sigma * std::sqrt(horizon));
    return norm_cdf(d1);
}

double donsker_delta_oracle(const MarketParams& params, double K, int n) {
    const DonskerWalk walk = donsker_walk_for_delta(params, K, n);
    const double drift = walk.mu_B / static_cast<double>(walk.n);
    const double spread = walk.sigma_B / std::sqrt(static_cast<double>(walk.n));
    const double lo = drift - spread;
    const double hi = drift + spread;

    // Binomial collapse: the walk is i.i.d. two-valued, so S~_n only depends
    // on the number of up steps.
    double weight = std::ldexp(1.0, -n); // C(n,0) / 2^n
    double acc = 0.0;
    for (int u = 0; u <= n; ++u) {
        const double sum = walk.x0 + u * hi + (n - u) * lo;
        acc += weight * norm_cdf(sum);
        weight *= static_cast<double>(n - u) / static_cast<double>(u + 1);
    }
    return acc;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (threads < 1) threads = 1;
    if (threads == 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    const int workers = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

CharFnEstimate estimate_harmonic(const DspModel& model, double P, int l, Method method,
                                 std::uint64_t seed, std::int64_t shots, int ae_m) {
    const double v = 2.0 * kPi * static_cast<double>(l) / P;
    const std::uint64_t tag = static_cast<std::uint64_t>(static_cast<std::int64_t>(l) + (1 << 20));
    switch (method) {
    case Method::Exact:
        return estimate_exact(model, v);
    case Method::Shots:
        return estimate_shots(model, v, shots, derive_seed(seed, tag, 1));
    case Method::Ae:
        return estimate_ae_full(model, v, ae_m, derive_seed(seed, tag, 2));
    }
    throw DomainError("estimate_harmonic: unknown method");
}

namespace {

// Grid of estimates for l = 0..L (synthesized negatives) or l = -L..L,
// evaluated in parallel; index i of the result holds harmonic l = i - L.
std::vector<CharFnEstimate> evaluate_grid(const DspModel& model, double P, int L, Method method,
                                          std::uint64_t seed, std::int64_t shots, int ae_m,
                                          int threads, bool explicit_negatives) {
    std::vector<CharFnEstimate> grid(static_cast<std::size_t>(2 * L + 1));
    const int lo = explicit_negatives ? -L : 0;
    const int count = L - lo + 1;
    parallel_for(count, threads, [&](int i) {
        const int l = lo + i;
        grid[static_cast<std::size_t>(l + L)] =
            estimate_harmonic(model, P, l, method, seed, shots, ae_m);
    });
    if (!explicit_negatives) {
        for (int l = 1; l <= L; ++l) {
            CharFnEstimate mirrored = grid[static_cast<std::size_t>(l + L)];
            mirrored.v = -mirrored.v;
            mirrored.value = std::conj(mirrored.value);
            grid[static_cast<std::size_t>(L - l)] = mirrored;
        }
    }
    return grid;
}

EvalMap to_eval_map(const std::vector<CharFnEstimate>& grid, int L) {
    EvalMap evals;
    for (int l = -L; l <= L; ++l) {
        evals[l] = grid[static_cast<std::size_t>(l + L)].value;
    }
    return evals;
}

} // namespace

std::vector<DeltaRow> run_delta_pipeline(const MarketParams& params,
                                         const std::vector<double>& strikes, int n, int L,
                                         double P, Method method, std::uint64_t seed,
                                         std::int64_t shots, int ae_m, int threads,
                                         std::vector<std::string>* warnings) {
    params.validate();
    if (L < 1) throw DomainError("run_delta_pipeline: L must be >= 1");
    const FourierSpec spec = cdf_coeffs_periodized(P, L);

    std::vector<DeltaRow> rows;
    rows.reserve(strikes.size());
    for (const double K : strikes) {
        MarketParams local = params;
        local.K = K;
        const DspModel model = build_delta_model(local, n);
        const auto [lo, hi] = attainable_range(model);
        if (warnings && (lo < -P / 2.0 || hi > P / 2.0)) {
            warnings->push_back("K=" + format_double(K) + ": walk range [" + format_double(lo) +
                                ", " + format_double(hi) + "] leaves the period [-P/2, P/2]");
        }
        const auto grid = evaluate_grid(model, P, L, method, derive_seed(seed, 0x4b,
                                        static_cast<std::uint64_t>(rows.size())),
                                        shots, ae_m, threads, false);
        DeltaRow row;
        row.K = K;
        row.estimate = assemble_expectation(spec, to_eval_map(grid, L));
        row.reference = black_scholes_delta(local, K);
        row.brute_force = donsker_delta_oracle(local, K, n);
        rows.push_back(row);
    }
    return rows;
}

DspModel build_crw_model(double x0, double x_plus, double x_minus,
                         const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size() || p.empty()) {
        throw DomainError("build_crw_model: p and q need one entry per level");
    }
    const int n = static_cast<int>(p.size());
    DspModel model;
    model.kind = DspKind::CorrelatedWalk;
    model.x0 = x0;
    LevelSpec level;
    level.values = Eigen::Vector2d(x_minus, x_plus);
    level.probs = Eigen::Vector2d(0.5, 0.5);
    model.levels.assign(static_cast<std::size_t>(n), level);
    model.persistence_p = Eigen::Map<const Eigen::VectorXd>(p.data(), n);
    model.persistence_q = Eigen::Map<const Eigen::VectorXd>(q.data(), n);
    model.validate();
    return model;
}

std::vector<CrwRow> run_crw_pipeline(const DspModel& model, int L, double P, Method method,
                                     std::uint64_t seed, std::int64_t shots, int ae_m,
                                     int threads, bool explicit_negatives) {
    model.validate();
    if (L < 0) throw DomainError("run_crw_pipeline: L must be >= 0");
    const auto grid =
        evaluate_grid(model, P, L, method, seed, shots, ae_m, threads, explicit_negatives);
    std::vector<CrwRow> rows(static_cast<std::size_t>(2 * L + 1));
    for (int l = -L; l <= L; ++l) {
        const double v = 2.0 * kPi * static_cast<double>(l) / P;
        CrwRow& row = rows[static_cast<std::size_t>(l + L)];
        row.v = v;
        row.estimate = grid[static_cast<std::size_t>(l + L)].value;
        row.oracle = char_fn_brute_force(model, v);
    }
    return rows;
}

} // namespace qdsp
