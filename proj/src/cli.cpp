#include "qdsp/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qdsp/amplitude_estimation.hpp"
#include "qdsp/applications.hpp"
#include "qdsp/errors.hpp"
#include "qdsp/format.hpp"
#include "qdsp/math_util.hpp"
#include "qdsp/model_io.hpp"

namespace qdsp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct CommonOpts {
    std::string output;
    std::uint64_t seed = 1;
    int threads = 0; // 0 = logical cores
};

int effective_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

Method parse_method(const std::string& name) {
    if (name == "exact") return Method::Exact;
    if (name == "shots") return Method::Shots;
    if (name == "ae") return Method::Ae;
    throw DomainError("unknown method '" + name + "'");
}

void write_output(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write output file: " + path);
    out << content;
    if (!out) throw DomainError("failed writing output file: " + path);
}

std::vector<double> parse_strike_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double value = std::stod(item, &pos);
        if (pos != item.size()) throw DomainError("bad strike value '" + item + "'");
        out.push_back(value);
    }
    if (out.empty()) throw DomainError("empty strike list");
    return out;
}

int run_charfn(const std::string& model_path, const std::string& method_name, std::int64_t shots,
               int ae_m, int L, double P, bool explicit_negatives, const CommonOpts& common) {
    const DspModel model = load_model(model_path);
    const Method method = parse_method(method_name);
    const int threads = effective_threads(common.threads);

    std::vector<CharFnEstimate> grid(static_cast<std::size_t>(2 * L + 1));
    const int lo = explicit_negatives ? -L : 0;
    parallel_for(L - lo + 1, threads, [&](int i) {
        const int l = lo + i;
        grid[static_cast<std::size_t>(l + L)] =
            estimate_harmonic(model, P, l, method, common.seed, shots, ae_m);
    });
    if (!explicit_negatives) {
        for (int l = 1; l <= L; ++l) {
            CharFnEstimate mirrored = grid[static_cast<std::size_t>(l + L)];
            mirrored.v = -mirrored.v;
            mirrored.value = std::conj(mirrored.value);
            grid[static_cast<std::size_t>(L - l)] = mirrored;
        }
    }

    std::string csv = "v,re,im,method,shots,stderr_re,stderr_im\n";
    for (const auto& estimate : grid) {
        csv += csv_row(estimate);
        csv += '\n';
    }
    write_output(common.output, csv);
    return 0;
}

int run_delta(const std::string& params_path, const std::string& strikes_text, int n, int L,
              double P, const std::string& method_name, std::int64_t shots, int ae_m,
              const CommonOpts& common) {
    MarketScenario scenario = load_market(params_path);
    if (n > 0) scenario.n = n;
    if (L > 0) scenario.L = L;
    if (P > 0) scenario.P = P;
    std::vector<double> strikes =
        strikes_text.empty() ? scenario.strikes : parse_strike_list(strikes_text);
    if (strikes.empty()) {
        throw DomainError("delta: no strikes given (use --K or a K/K_list in the params file)");
    }

    std::vector<std::string> warnings;
    const auto rows = run_delta_pipeline(scenario.params, strikes, scenario.n, scenario.L,
                                         scenario.P, parse_method(method_name), common.seed,
                                         shots, ae_m, effective_threads(common.threads),
                                         &warnings);
    for (const auto& warning : warnings) std::cerr << "warning: " << warning << '\n';

    std::string csv = "K,estimate_re,estimate_im,reference,brute_force\n";
    for (const auto& row : rows) {
        csv += format_double(row.K);
        csv += ',';
        csv += format_double(row.estimate.real());
        csv += ',';
        csv += format_double(row.estimate.imag());
        csv += ',';
        csv += format_double(row.reference);
        csv += ',';
        csv += format_double(row.brute_force);
        csv += '\n';
    }
    write_output(common.output, csv);
    return 0;
}

int run_crw(const std::string& model_path, int L, double P, const std::string& method_name,
            std::int64_t shots, int ae_m, bool explicit_negatives, const CommonOpts& common) {
    const DspModel model = load_model(model_path);
    const auto rows = run_crw_pipeline(model, L, P, parse_method(method_name), common.seed, shots,
                                       ae_m, effective_threads(common.threads),
                                       explicit_negatives);
    std::string csv = "v,re,im,oracle_re,oracle_im\n";
    for (const auto& row : rows) {
        csv += format_double(row.v);
        csv += ',';
        csv += format_double(row.estimate.real());
        csv += ',';
        csv += format_double(row.estimate.imag());
        csv += ',';
        csv += format_double(row.oracle.real());
        csv += ',';
        csv += format_double(row.oracle.imag());
        csv += '\n';
    }
    write_output(common.output, csv);
    return 0;
}

int run_ae_demo(const std::string& model_path, double v, const std::string& mode_name, int ae_m,
                const CommonOpts& common) {
    const DspModel model = load_model(model_path);
    const int sign = mode_name == "sin" ? -1 : +1;
    if (mode_name != "sin" && mode_name != "cos") {
        throw DomainError("ae-demo: mode must be 'cos' or 'sin'");
    }

    AeProblem problem;
    problem.prep = compile_charfn_circuit(model, MeasurementScheme{SchemeKind::AmplitudeRy, sign, v});
    problem.flag_qubit = problem.prep.regs.data;
    problem.m = ae_m;
    const AeResult result = run_ae(problem, common.seed, true);

    std::ostringstream csv;
    dump_ae_pmf_csv(result, csv);
    write_output(common.output, csv.str());

    std::cout << "y=" << result.y << " a_hat=" << format_double(result.a_hat)
              << " component=" << format_double(1.0 - 2.0 * result.a_hat) << '\n';
    return 0;
}

int run_bench(const std::string& model_path, double v, bool timing, const CommonOpts& common) {
    const DspModel model = load_model(model_path);
    const std::complex<double> oracle = char_fn_brute_force(model, v);
    const auto f = [v](double x) { return std::cos(v * x); };

    // Exact good-state amplitude for the AE bound column.
    const Statevector prep_state = run_circuit(
        compile_charfn_circuit(model, MeasurementScheme{SchemeKind::AmplitudeRy, +1, v}));
    const double a_exact = subspace_probability(prep_state, model.num_levels(), 1);

    std::string csv = "method,shots_or_m,abs_error,error_bound,wall_time_s\n";
    const auto add_row = [&](const std::string& method, std::int64_t count, double err,
                             double bound, double seconds) {
        csv += method;
        csv += ',';
        csv += format_int(count);
        csv += ',';
        csv += format_double(err);
        csv += ',';
        csv += format_double(bound);
        csv += ',';
        csv += format_double(timing ? seconds : 0.0);
        csv += '\n';
    };
    const auto now = [] { return std::chrono::steady_clock::now(); };
    const auto secs = [](auto t0, auto t1) {
        return std::chrono::duration<double>(t1 - t0).count();
    };

    const std::int64_t shot_sweep[] = {100, 1000, 10000};
    for (std::int64_t shots : shot_sweep) {
        auto t0 = now();
        const auto mc = monte_carlo_estimate(model, f, shots, derive_seed(common.seed, 10, shots));
        auto t1 = now();
        add_row("monte_carlo", shots, std::abs(mc.mean - oracle.real()), 2.0 * mc.std_error,
                secs(t0, t1));
    }
    for (std::int64_t shots : shot_sweep) {
        auto t0 = now();
        const auto est = estimate_shots(model, v, shots, derive_seed(common.seed, 11, shots));
        auto t1 = now();
        add_row("shots", shots, std::abs(est.value.real() - oracle.real()),
                2.0 * est.stderr_re.value(), secs(t0, t1));
    }
    for (int m = 4; m <= 8; ++m) {
        auto t0 = now();
        const auto est = estimate_ae(model, v, m, common.seed, AeMode::Cos, true);
        auto t1 = now();
        add_row("ae", m, std::abs(est.value.real() - oracle.real()),
                2.0 * ae_error_bound(a_exact, m), secs(t0, t1));
    }
    write_output(common.output, csv);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Quantum simulation of discrete stochastic processes: characteristic "
                 "functions by statevector, shot sampling or amplitude estimation, and "
                 "Fourier-assembled expectation values."};
    app.require_subcommand(1);

    CommonOpts common;
    std::string model_path;
    std::string params_path;
    std::string method_name = "exact";
    std::string mode_name = "cos";
    std::string strikes_text;
    std::int64_t shots = 8192;
    int ae_m = 6;
    int L = 100;
    double P = 100.0;
    int delta_n = 0;
    int delta_L = 0;
    double delta_P = 0.0;
    double v = 0.5;
    bool explicit_negatives = false;
    bool timing = false;

    const auto add_common = [&](CLI::App* cmd, bool needs_output = true) {
        cmd->add_option("--seed", common.seed, "RNG seed; fixed seed means identical output");
        cmd->add_option("--threads", common.threads, "worker threads (default: logical cores)")
            ->check(CLI::Range(0, 256));
        if (needs_output) {
            cmd->add_option("-o,--output", common.output, "output CSV path")->required();
        }
    };

    auto* charfn = app.add_subcommand("charfn", "characteristic function over a harmonic grid");
    charfn->add_option("--model", model_path, "model JSON file")->required();
    charfn->add_option("--method", method_name, "exact | shots | ae");
    charfn->add_option("--shots", shots, "shots per observable (shots method)")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
    charfn->add_option("--ae-m", ae_m, "amplitude-estimation ancilla count (ae method)")
        ->check(CLI::Range(3, 24));
    charfn->add_option("--L", L, "harmonic order")->check(CLI::NonNegativeNumber);
    charfn->add_option("--P", P, "period")->check(CLI::PositiveNumber);
    charfn->add_flag("--explicit-negatives", explicit_negatives,
                     "evaluate negative harmonics instead of conjugating");
    add_common(charfn);

    auto* delta = app.add_subcommand("delta", "Delta of a European call via Fourier assembly");
    delta->add_option("--params", params_path, "market scenario JSON file")->required();
    delta->add_option("--K", strikes_text, "strike or comma-separated strikes");
    delta->add_option("--n", delta_n, "walk steps (default: params file)")
        ->check(CLI::PositiveNumber);
    delta->add_option("--L", delta_L, "harmonic order (default: params file)")
        ->check(CLI::PositiveNumber);
    delta->add_option("--P", delta_P, "period (default: params file)")
        ->check(CLI::PositiveNumber);
    delta->add_option("--method", method_name, "exact | shots | ae");
    delta->add_option("--shots", shots, "shots per observable (shots method)")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
    delta->add_option("--ae-m", ae_m, "amplitude-estimation ancilla count (ae method)")
        ->check(CLI::Range(3, 24));
    add_common(delta);

    auto* crw = app.add_subcommand("crw", "correlated-random-walk characteristic function");
    crw->add_option("--model", model_path, "model JSON file")->required();
    crw->add_option("--L", L, "harmonic order")->check(CLI::NonNegativeNumber);
    crw->add_option("--P", P, "period")->check(CLI::PositiveNumber);
    crw->add_option("--method", method_name, "exact | shots | ae");
    crw->add_option("--shots", shots, "shots per observable (shots method)")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
    crw->add_option("--ae-m", ae_m, "amplitude-estimation ancilla count (ae method)")
        ->check(CLI::Range(3, 24));
    crw->add_flag("--explicit-negatives", explicit_negatives,
                  "evaluate negative harmonics instead of conjugating");
    add_common(crw);

    auto* ae_demo = app.add_subcommand("ae-demo", "amplitude-estimation outcome distribution");
    ae_demo->add_option("--model", model_path, "model JSON file")->required();
    ae_demo->add_option("--v", v, "evaluation point");
    ae_demo->add_option("--mode", mode_name, "cos | sin");
    ae_demo->add_option("--ae-m", ae_m, "ancilla count")->check(CLI::Range(1, 24));
    add_common(ae_demo);

    auto* bench = app.add_subcommand("bench", "error vs cost across estimation methods");
    bench->add_option("--model", model_path, "model JSON file")->required();
    bench->add_option("--v", v, "evaluation point");
    bench->add_flag("--timing", timing, "measure wall time (off keeps output reproducible)");
    add_common(bench);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.push_back("qdsp");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (charfn->parsed()) {
            return run_charfn(model_path, method_name, shots, ae_m, L, P, explicit_negatives,
                              common);
        }
        if (delta->parsed()) {
            return run_delta(params_path, strikes_text, delta_n, delta_L, delta_P, method_name,
                             shots, ae_m, common);
        }
        if (crw->parsed()) {
            return run_crw(model_path, L, P, method_name, shots, ae_m, explicit_negatives,
                           common);
        }
        if (ae_demo->parsed()) return run_ae_demo(model_path, v, mode_name, ae_m, common);
        if (bench->parsed()) return run_bench(model_path, v, timing, common);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

} // namespace qdsp
