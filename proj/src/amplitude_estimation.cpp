#include "qdsp/amplitude_estimation.hpp"

#include <cmath>
#include <random>

#include "qdsp/errors.hpp"
#include "qdsp/format.hpp"
#include "qdsp/math_util.hpp"

namespace qdsp {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
} // namespace

std::shared_ptr<const UnitaryBlock> build_grover_operator(const AeProblem& problem) {
    const int p = problem.prep.num_qubits;
    if (problem.flag_qubit < 0 || problem.flag_qubit >= p) {
        throw IndexError("build_grover_operator: flag qubit outside the prep register");
    }

    auto block = std::make_shared<UnitaryBlock>();
    block->phase = std::complex<double>{-1.0, 0.0};

    // S_f: phase flip on flag = 1.
    block->gates.push_back(gates::cphase(kPi, {}, problem.flag_qubit));

    // A^dag.
    const Circuit inv = inverse_circuit(problem.prep);
    block->gates.insert(block->gates.end(), inv.gates.begin(), inv.gates.end());

    // S_0: phase flip on |0...0> via X conjugation around a multi-controlled Z.
    for (int q = 0; q < p; ++q) block->gates.push_back(gates::x(q));
    {
        std::vector<int> controls;
        for (int q = 1; q < p; ++q) controls.push_back(q);
        block->gates.push_back(gates::cphase(kPi, std::move(controls), 0));
    }
    for (int q = 0; q < p; ++q) block->gates.push_back(gates::x(q));

    // A.
    block->gates.insert(block->gates.end(), problem.prep.gates.begin(),
                        problem.prep.gates.end());
    return block;
}

Circuit qft_circuit(int m) {
    if (m < 1) throw SizeError("qft_circuit: m must be >= 1");
    Circuit circuit;
    circuit.num_qubits = m;
    for (int j = m - 1; j >= 0; --j) {
        circuit.append(gates::h(j));
        for (int t = j - 1; t >= 0; --t) {
            circuit.append(gates::cphase(kPi / static_cast<double>(std::int64_t{1} << (j - t)),
                                         {t}, j));
        }
    }
    for (int i = 0; i < m / 2; ++i) {
        const int a = i;
        const int b = m - 1 - i;
        circuit.append(gates::cnot(a, b));
        circuit.append(gates::cnot(b, a));
        circuit.append(gates::cnot(a, b));
    }
    return circuit;
}

AeResult run_ae(const AeProblem& problem, std::uint64_t seed, bool deterministic) {
    if (problem.m < 1) throw SizeError("run_ae: m must be >= 1");
    const int p = problem.prep.num_qubits;
    const int total = p + problem.m;
    if (total > kMaxQubits) throw SizeError("run_ae: total qubit count exceeds the engine cap");

    Statevector state(total);
    apply_circuit(state, problem.prep);

    for (int j = 0; j < problem.m; ++j) apply_gate(state, gates::h(p + j));

    const auto grover = build_grover_operator(problem);
    for (int j = 0; j < problem.m; ++j) {
        apply_gate(state, gates::controlled_power(grover, std::int64_t{1} << j, p + j));
    }

    Circuit iqft = inverse_circuit(qft_circuit(problem.m));
    for (Gate& gate : iqft.gates) {
        gate.target += p;
        for (int& c : gate.controls) c += p;
    }
    iqft.num_qubits = total;
    apply_circuit(state, iqft);

    const std::int64_t big_m = std::int64_t{1} << problem.m;
    Eigen::VectorXd pmf = Eigen::VectorXd::Zero(big_m);
    const auto& amps = state.amps();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        pmf[i >> p] += std::norm(amps[i]);
    }

    std::int64_t y = 0;
    if (deterministic) {
        double best = -1.0;
        for (std::int64_t cand = 0; cand < big_m; ++cand) {
            if (pmf[cand] > best) {
                best = pmf[cand];
                y = cand;
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        const double u = uniform_from_bits(rng());
        double acc = 0.0;
        y = big_m - 1;
        for (std::int64_t cand = 0; cand < big_m; ++cand) {
            acc += pmf[cand];
            if (u < acc) {
                y = cand;
                break;
            }
        }
    }

    const double s = std::sin(kPi * static_cast<double>(y) / static_cast<double>(big_m));
    AeResult result;
    result.y = y;
    result.a_hat = s * s;
    result.distribution = std::move(pmf);
    if (!deterministic) result.distribution.reset();
    return result;
}

double ae_error_bound(double a, int m) {
    const double big_m = static_cast<double>(std::int64_t{1} << m);
    const double s = std::sqrt(std::max(a * (1.0 - a), 0.0));
    return 2.0 * kPi * s / big_m + kPi * kPi / (big_m * big_m);
}

void dump_ae_pmf_csv(const AeResult& result, std::ostream& out) {
    out << "y,probability,a_value\n";
    if (!result.distribution) return;
    const auto& pmf = *result.distribution;
    const double big_m = static_cast<double>(pmf.size());
    for (Eigen::Index y = 0; y < pmf.size(); ++y) {
        const double s = std::sin(kPi * static_cast<double>(y) / big_m);
        out << format_int(y) << ',' << format_double(pmf[y]) << ',' << format_double(s * s)
            << '\n';
    }
}

} // namespace qdsp
