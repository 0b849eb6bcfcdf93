// Acceptance suite: runs every stated criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qdsp/amplitude_estimation.hpp"
#include "qdsp/applications.hpp"
#include "qdsp/char_estimator.hpp"
#include "qdsp/circuit.hpp"
#include "qdsp/cli.hpp"
#include "qdsp/dsp_model.hpp"
#include "qdsp/math_util.hpp"

using namespace qdsp;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail) {
    std::printf("criterion %2d %s  %s (%s)\n", criterion, ok ? "PASS" : "FAIL", what.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

DspModel random_independent(std::mt19937_64& rng, int max_n) {
    std::uniform_real_distribution<double> value_pick(-1.5, 1.5);
    std::uniform_real_distribution<double> prob_pick(0.05, 0.95);
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n));
    std::vector<LevelSpec> levels;
    for (int l = 0; l < n; ++l) {
        LevelSpec level;
        level.values = Eigen::Vector2d(value_pick(rng), value_pick(rng));
        const double p0 = prob_pick(rng);
        level.probs = Eigen::Vector2d(p0, 1.0 - p0);
        levels.push_back(level);
    }
    return make_independent_model(value_pick(rng), levels);
}

DspModel random_markov(std::mt19937_64& rng, int max_n) {
    std::uniform_real_distribution<double> value_pick(-1.5, 1.5);
    std::uniform_real_distribution<double> prob_pick(0.05, 0.95);
    const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - 1));
    DspModel model;
    model.kind = DspKind::FirstOrderMarkov;
    model.x0 = value_pick(rng);
    for (int l = 0; l < n; ++l) {
        LevelSpec level;
        level.values = Eigen::Vector2d(value_pick(rng), value_pick(rng));
        model.levels.push_back(level);
    }
    const double p0 = prob_pick(rng);
    model.initial_dist = Eigen::Vector2d(p0, 1.0 - p0);
    for (int l = 1; l < n; ++l) {
        Eigen::Matrix2d t;
        const double a = prob_pick(rng);
        const double b = prob_pick(rng);
        t << a, 1.0 - a, 1.0 - b, b;
        model.transitions.push_back(t);
    }
    model.validate();
    return model;
}

DspModel random_crw(std::mt19937_64& rng, int max_n) {
    std::uniform_real_distribution<double> value_pick(0.2, 1.5);
    std::uniform_real_distribution<double> prob_pick(0.05, 0.95);
    const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - 1));
    std::vector<double> p, q;
    for (int l = 0; l < n; ++l) {
        p.push_back(prob_pick(rng));
        q.push_back(prob_pick(rng));
    }
    return build_crw_model(value_pick(rng) - 0.8, value_pick(rng), -value_pick(rng), p, q);
}

DspModel reference_crw() {
    return build_crw_model(0.0, 1.0, -1.0, {0.5, 2.0 / 3.0, 5.0 / 6.0, 1.0},
                           {0.5, 1.0 / 3.0, 1.0 / 6.0, 0.0});
}

MarketParams call_params() {
    MarketParams params;
    params.mu = 0.0;
    params.sigma = 0.02;
    params.r = 0.02;
    params.S0 = 100.0;
    params.K = 110.0;
    params.t = 1.0;
    params.T = 10.0;
    return params;
}

const std::vector<double> kStudyStrikes = {25.0,  55.0,  85.0,  105.0, 110.0, 115.0,
                                          120.0, 125.0, 130.0, 160.0, 190.0, 220.0};

void criterion_1_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0xA11CE);
    std::uniform_real_distribution<double> v_pick(-3.0, 3.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const DspModel model = random_independent(rng, 10);
        for (int k = 0; k < 20; ++k) {
            const double v = v_pick(rng);
            const auto gap =
                std::abs(estimate_exact(model, v).value - char_fn_brute_force(model, v));
            worst = std::max(worst, gap);
        }
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "max |exact - oracle| = " << worst << ", " << elapsed << " s";
    report(1, worst <= 1e-10 && elapsed <= 30.0,
           "exact method matches enumeration on 50 random independent models x 20 v",
           detail.str());
}

void criterion_2_crw_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    const DspModel model = reference_crw();
    double worst = 0.0;
    double worst_sym = 0.0;
    std::vector<std::complex<double>> values(201);
    for (int l = -100; l <= 100; ++l) {
        const double v = 2.0 * kPi * l / 100.0;
        const auto estimate = estimate_exact(model, v).value;
        values[static_cast<std::size_t>(l + 100)] = estimate;
        worst = std::max(worst, std::abs(estimate - char_fn_brute_force(model, v)));
    }
    for (int l = 1; l <= 100; ++l) {
        worst_sym = std::max(worst_sym,
                             std::abs(values[static_cast<std::size_t>(100 - l)] -
                                      std::conj(values[static_cast<std::size_t>(100 + l)])));
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "max gap = " << worst << ", max symmetry residual = " << worst_sym << ", "
           << elapsed << " s";
    report(2, worst <= 1e-10 && worst_sym <= 1e-12 && elapsed <= 10.0,
           "reference correlated walk matches chain-rule enumeration over the full grid", detail.str());
}

void criterion_3_amplitude_identity() {
    std::mt19937_64 rng(0xBEEF);
    std::uniform_real_distribution<double> v_pick(-2.5, 2.5);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        DspModel model;
        if (trial % 3 == 0) model = random_independent(rng, 5);
        else if (trial % 3 == 1) model = random_markov(rng, 5);
        else model = random_crw(rng, 5);
        const double v = v_pick(rng);
        const auto oracle = char_fn_brute_force(model, v);
        const int data = model.num_levels();

        const Statevector cos_state = run_circuit(
            compile_charfn_circuit(model, MeasurementScheme{SchemeKind::AmplitudeRy, +1, v}));
        worst = std::max(worst, std::abs(1.0 - 2.0 * subspace_probability(cos_state, data, 1) -
                                         oracle.real()));
        const Statevector sin_state = run_circuit(
            compile_charfn_circuit(model, MeasurementScheme{SchemeKind::AmplitudeRy, -1, v}));
        worst = std::max(worst, std::abs(1.0 - 2.0 * subspace_probability(sin_state, data, 1) -
                                         oracle.imag()));
    }
    std::ostringstream detail;
    detail << "max identity residual = " << worst;
    report(3, worst <= 1e-10, "1 - 2<Psi_1|Psi_1> equals Re/Im phi(v) on 20 random models",
           detail.str());
}

void criterion_4_gate_counts() {
    bool ok = true;
    std::mt19937_64 rng(0xC0DE);
    for (int trial = 0; trial < 6; ++trial) {
        DspModel model;
        if (trial % 3 == 0) model = random_independent(rng, 6);
        else if (trial % 3 == 1) model = random_markov(rng, 6);
        else model = random_crw(rng, 6);
        for (SchemeKind kind : {SchemeKind::PauliRz, SchemeKind::AmplitudeRy}) {
            const Circuit ladder = compile_data_ladder(model, MeasurementScheme{kind, +1, 0.9});
            const auto counts = gate_count(ladder);
            const int controlled = kind == SchemeKind::PauliRz ? counts.at(GateKind::CRz)
                                                               : counts.at(GateKind::CRy);
            ok = ok && controlled == 2 * model.num_levels();
        }
    }

    const DspModel delta = build_delta_model(call_params(), 4);
    const Circuit ladder = compile_data_ladder(delta, MeasurementScheme{SchemeKind::PauliRz, +1,
                                                                        2.0 * kPi / 100.0});
    const auto counts = gate_count(decompose_crz_gates(ladder));
    const int cnots = counts.at(GateKind::Cnot);
    ok = ok && cnots == 16;
    std::ostringstream detail;
    detail << "delta ladder CNOTs after lowering = " << cnots;
    report(4, ok, "every ladder holds n*k controlled-V gates; n=4 delta lowers to 16 CNOTs",
           detail.str());
}

void criterion_5_amplitude_estimation() {
    LevelSpec a_level;
    a_level.values = Eigen::Vector2d(-1.0, 1.0);
    a_level.probs = Eigen::Vector2d(0.3, 0.7);
    LevelSpec b_level;
    b_level.values = Eigen::Vector2d(-0.5, 1.2);
    b_level.probs = Eigen::Vector2d(0.6, 0.4);
    const DspModel model = make_independent_model(0.1, {a_level, b_level});
    const double v = 0.73;

    AeProblem problem;
    problem.prep =
        compile_charfn_circuit(model, MeasurementScheme{SchemeKind::AmplitudeRy, +1, v});
    problem.flag_qubit = problem.prep.regs.data;
    const double a = subspace_probability(run_circuit(problem.prep), problem.flag_qubit, 1);

    bool ok = true;
    double prev_bound = 0.0;
    double worst_gap = 0.0;
    double worst_mass = 1.0;
    for (int m = 4; m <= 10; ++m) {
        problem.m = m;
        const AeResult result = run_ae(problem, 0, true);
        const double bound = ae_error_bound(a, m);
        worst_gap = std::max(worst_gap, std::abs(result.a_hat - a) / bound);
        ok = ok && std::abs(result.a_hat - a) <= bound;

        const auto& pmf = *result.distribution;
        double mass = 0.0;
        for (Eigen::Index y = 0; y < pmf.size(); ++y) {
            const double s =
                std::sin(kPi * static_cast<double>(y) / static_cast<double>(pmf.size()));
            if (std::abs(s * s - a) <= bound) mass += pmf[y];
        }
        worst_mass = std::min(worst_mass, mass);
        ok = ok && mass >= 8.0 / (kPi * kPi);

        if (m > 4) {
            const double ratio = bound / prev_bound;
            ok = ok && ratio >= 0.375 && ratio <= 0.625;
        }
        prev_bound = bound;
    }
    std::ostringstream detail;
    detail << "a = " << a << ", worst |a_hat - a| / bound = " << worst_gap
           << ", min in-bound mass = " << worst_mass;
    report(5, ok, "deterministic AE meets the phase-grid bound with 8/pi^2 mass for m = 4..10",
           detail.str());
}

void criterion_6_delta_pipeline() {
    const auto start = std::chrono::steady_clock::now();
    const auto rows = run_delta_pipeline(call_params(), kStudyStrikes, 4, 100, 100.0,
                                         Method::Exact, 7, 0, 0, 1);
    double worst_oracle = 0.0;
    double worst_reference = 0.0;
    double worst_imag = 0.0;
    for (const auto& row : rows) {
        worst_oracle = std::max(worst_oracle, std::abs(row.estimate.real() - row.brute_force));
        worst_reference =
            std::max(worst_reference, std::abs(row.estimate.real() - row.reference));
        worst_imag = std::max(worst_imag, std::abs(row.estimate.imag()));
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "max |est - oracle| = " << worst_oracle << ", max |est - BS| = " << worst_reference
           << ", max |Im| = " << worst_imag << ", " << elapsed << " s";
    report(6,
           worst_oracle <= 2e-3 && worst_reference <= 0.05 && worst_imag <= 1e-9 &&
               elapsed <= 60.0,
           "call-delta pipeline at n=4, L=P=100 stays within tolerances", detail.str());
}

void criterion_7_shot_noise() {
    const DspModel model = make_fair_walk(2);
    const double v = 1.0;
    const auto oracle = char_fn_brute_force(model, v);
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto estimate = estimate_shots(model, v, 8192, seed);
        if (std::abs(estimate.value.real() - oracle.real()) <= 2.0 * *estimate.stderr_re) {
            ++covered;
        }
        if (std::abs(estimate.value.imag() - oracle.imag()) <= 2.0 * *estimate.stderr_im) {
            ++covered;
        }
    }
    const double coverage = static_cast<double>(covered) / 400.0;

    const auto coarse = estimate_shots(model, v, 1000, 17);
    const auto fine = estimate_shots(model, v, 100000, 17);
    const double ratio = *coarse.stderr_re / *fine.stderr_re / 10.0;

    std::ostringstream detail;
    detail << "2-sigma coverage = " << 100.0 * coverage << "%, stderr ratio / 10 = " << ratio;
    report(7, coverage >= 0.90 && coverage <= 0.995 && ratio >= 0.8 && ratio <= 1.2,
           "8192-shot estimates cover the oracle and scale like 1/sqrt(shots)", detail.str());
}

void criterion_8_sample_count() {
    const auto count = sample_count_for_margin(0.05, 0.01);
    std::ostringstream detail;
    detail << "sample_count_for_margin(0.05, 0.01) = " << count;
    report(8, count == 9604, "the Bernoulli sample-count formula reproduces 9604", detail.str());
}

void criterion_9_donsker_convergence() {
    const auto start = std::chrono::steady_clock::now();
    const MarketParams params = call_params();
    const double K = 110.0;

    // Continuum limit of E[Phi(S~_n)]: the walk sum tends to a normal with
    // mean x0 + mu_B and variance sigma_B^2, and E[Phi(mu + s Z)] has the
    // closed form Phi(mu / sqrt(1 + s^2)).
    const DonskerWalk walk = donsker_walk_for_delta(params, K, 4);
    const double limit = norm_cdf((walk.x0 + walk.mu_B) /
                                  std::sqrt(1.0 + walk.sigma_B * walk.sigma_B));
    const double bs = black_scholes_delta(params, K);

    bool monotone = true;
    double prev_gap = 1e9;
    double prev_bs_gap = 1e9;
    double final_gap = 0.0;
    std::ostringstream detail;
    for (int n : {4, 16, 64, 256}) {
        const double value = donsker_delta_oracle(params, K, n);
        const double gap = std::abs(value - limit);
        const double bs_gap = std::abs(value - bs);
        monotone = monotone && gap < prev_gap && bs_gap < prev_bs_gap;
        prev_gap = gap;
        prev_bs_gap = bs_gap;
        final_gap = gap;
        detail << "n=" << n << ": " << gap << "  ";
    }
    const double elapsed = seconds_since(start);
    detail << "(constant Jensen offset vs Phi(d1): " << std::abs(prev_bs_gap) << "), " << elapsed
           << " s";
    report(9, monotone && final_gap <= 5e-3 && elapsed <= 120.0,
           "E[Phi(S~_n)] converges monotonically to the closed-form limit at K=110",
           detail.str());
}

void criterion_10_cli_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qdsp_acceptance";
    fs::create_directories(dir);

    const auto write = [&](const char* name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::trunc);
        out << content;
        return (dir / name).string();
    };
    const std::string crw = write("crw.json", R"({
      "kind": "correlated_walk", "x0": 0.0, "step_values": [1.0, -1.0],
      "persistence_p": [0.5, 0.6666666666666666, 0.8333333333333334, 1.0],
      "persistence_q": [0.5, 0.3333333333333333, 0.16666666666666666, 0.0]
    })");
    const std::string market = write("market.json", R"({
      "mu": 0.0, "sigma": 0.02, "r": 0.02, "S0": 100.0, "t": 1.0, "T": 10.0,
      "n": 4, "L": 50, "P": 100.0
    })");

    const auto read = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    struct Invocation {
        const char* name;
        std::vector<std::string> args;
        bool threaded;
    };
    const std::vector<Invocation> invocations = {
        {"charfn-shots",
         {"charfn", "--model", crw, "--method", "shots", "--shots", "4096", "--seed", "21",
          "--L", "40", "--P", "100"},
         true},
        {"charfn-ae",
         {"charfn", "--model", crw, "--method", "ae", "--ae-m", "4", "--seed", "21", "--L", "6",
          "--P", "100"},
         true},
        {"delta", {"delta", "--params", market, "--K", "105,110,120", "--seed", "21"}, true},
        {"crw",
         {"crw", "--model", crw, "--method", "shots", "--shots", "2048", "--seed", "21", "--L",
          "25", "--P", "100"},
         true},
        {"ae-demo", {"ae-demo", "--model", crw, "--v", "0.4", "--ae-m", "5", "--seed", "21"},
         false},
        {"bench", {"bench", "--model", crw, "--v", "1.0", "--seed", "21"}, false},
    };

    bool ok = true;
    std::string broken;
    for (const auto& invocation : invocations) {
        std::vector<std::string> outputs;
        const std::vector<std::pair<const char*, const char*>> variants = {
            {"a", "1"}, {"b", "1"}, {"c", "4"}};
        for (const auto& [tag, threads] : variants) {
            const std::string out =
                (dir / (std::string(invocation.name) + "_" + tag + ".csv")).string();
            std::vector<std::string> args = invocation.args;
            if (invocation.threaded) {
                args.push_back("--threads");
                args.push_back(threads);
            }
            args.push_back("-o");
            args.push_back(out);
            if (run_cli(args) != 0) {
                ok = false;
                broken = invocation.name;
                break;
            }
            outputs.push_back(read(out));
        }
        if (outputs.size() == 3 && (outputs[0] != outputs[1] || outputs[0] != outputs[2])) {
            ok = false;
            broken = invocation.name;
        }
        if (!ok) break;
    }
    report(10, ok, "every CLI command is byte-identical across reruns and thread counts",
           ok ? "charfn/delta/crw/ae-demo/bench" : ("first mismatch: " + broken));
}

} // namespace

int main() {
    criterion_1_oracle_equivalence();
    criterion_2_crw_equivalence();
    criterion_3_amplitude_identity();
    criterion_4_gate_counts();
    criterion_5_amplitude_estimation();
    criterion_6_delta_pipeline();
    criterion_7_shot_noise();
    criterion_8_sample_count();
    criterion_9_donsker_convergence();
    criterion_10_cli_determinism();
    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria failed\n", failures);
    }
    return failures == 0 ? 0 : 1;
}
