#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qdsp/char_estimator.hpp"
#include "qdsp/dsp_model.hpp"
#include "qdsp/fourier.hpp"

namespace qdsp {

/// Market description of the underlying asset and the option contract.
struct MarketParams {
    double mu = 0.0;    ///< drift of the underlying
    double sigma = 0.0; ///< volatility, > 0
    double r = 0.0;     ///< risk-free rate
    double S0 = 0.0;    ///< spot price, > 0
    double K = 0.0;     ///< strike price, > 0
    double t = 0.0;     ///< evaluation time
    double T = 0.0;     ///< maturity, > t

    void validate() const;
};

/// Scaled random walk approximating a Brownian motion with drift mu_B and
/// volatility sigma_B over n steps, started at x0.
struct DonskerWalk {
    double mu_B = 0.0;
    double sigma_B = 1.0;
    int n = 1;
    double x0 = 0.0;
};

/// The walk whose sum reproduces the log-return argument of the Delta.
DonskerWalk donsker_walk_for_delta(const MarketParams& params, double K, int n);

/// Fair two-valued independent model with steps mu_B/n -+ sigma_B/sqrt(n).
DspModel build_donsker_model(const DonskerWalk& walk);

/// Delta model of the European call: fair +-1/ (sqrt n sqrt(T-t)) steps with
/// the drift offset, starting from the scaled log-moneyness x0.
DspModel build_delta_model(const MarketParams& params, int n);

/// Closed-form Black-Scholes Delta, Phi(d1), for the given strike.
double black_scholes_delta(const MarketParams& params, double K);

/// Exact E[Phi(S~_n)] for the Delta walk through the binomial distribution
/// of the step count; handles n far beyond the path-enumeration cap.
double donsker_delta_oracle(const MarketParams& params, double K, int n);

struct DeltaRow {
    double K = 0.0;
    std::complex<double> estimate{0.0, 0.0};
    double reference = 0.0;   ///< Black-Scholes Delta
    double brute_force = 0.0; ///< binomial-collapse oracle at the same n
};

/// Fourier-assembled Delta per strike, next to its two reference values.
/// The coefficients are those of Phi restricted to [-P/2, P/2]. Emits a
/// warning line on `warnings` when the walk can leave the period.
std::vector<DeltaRow> run_delta_pipeline(const MarketParams& params,
                                         const std::vector<double>& strikes, int n, int L,
                                         double P, Method method, std::uint64_t seed,
                                         std::int64_t shots, int ae_m, int threads,
                                         std::vector<std::string>* warnings = nullptr);

/// Correlated random walk with step values x_plus (index 1, persistence p_l)
/// and x_minus (index 0, persistence q_l).
DspModel build_crw_model(double x0, double x_plus, double x_minus,
                         const std::vector<double>& p, const std::vector<double>& q);

struct CrwRow {
    double v = 0.0;
    std::complex<double> estimate{0.0, 0.0};
    std::complex<double> oracle{0.0, 0.0};
};

/// Characteristic function over the symmetric grid v_l = 2 pi l / P,
/// l = -L..L, with enumeration oracle columns. Negative-l estimates are
/// synthesized by conjugation unless explicit_negatives is set.
std::vector<CrwRow> run_crw_pipeline(const DspModel& model, int L, double P, Method method,
                                     std::uint64_t seed, std::int64_t shots, int ae_m,
                                     int threads, bool explicit_negatives = false);

/// Characteristic-function estimate at v = 2 pi l / P for one harmonic,
/// dispatching on the method; the shared evaluation core of the pipelines.
CharFnEstimate estimate_harmonic(const DspModel& model, double P, int l, Method method,
                                 std::uint64_t seed, std::int64_t shots, int ae_m);

/// Runs fn(i) for i in [0, count) on `threads` workers; results must be
/// written into per-index slots so the output is schedule-independent.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

} // namespace qdsp
