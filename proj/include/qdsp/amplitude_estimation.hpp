#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>

#include "qdsp/circuit.hpp"

namespace qdsp {

/// An amplitude-estimation instance: the preparation circuit A with
/// A|0> = |Psi_f>, the flag qubit whose |1> subspace is the good state, and
/// the ancilla count m (M = 2^m grid points).
struct AeProblem {
    Circuit prep;
    int flag_qubit = 0;
    int m = 1;
};

/// Outcome of one phase-estimation readout; a_hat = sin^2(pi y / M).
struct AeResult {
    std::int64_t y = 0;
    double a_hat = 0.0;
    std::optional<Eigen::VectorXd> distribution;
};

/// The Grover-type operator Q = -A S_0 A^dag S_f as a gate block. S_f flips
/// the phase of the flag = 1 subspace, S_0 the all-zeros state of the prep
/// register; the leading minus sign is carried as the block phase so that
/// controlled applications stay exact.
std::shared_ptr<const UnitaryBlock> build_grover_operator(const AeProblem& problem);

/// Standard quantum Fourier transform on m qubits (H + controlled-phase
/// ladder + qubit reversal by CNOT triples).
Circuit qft_circuit(int m);

/// Phase estimation of Q: Hadamards on the ancillas, controlled Q^(2^j),
/// inverse QFT, then the ancilla distribution. Deterministic mode returns
/// the most probable outcome along with the full pmf; sampled mode draws one
/// outcome from it.
AeResult run_ae(const AeProblem& problem, std::uint64_t seed, bool deterministic);

/// Guaranteed estimation error at confidence 8/pi^2:
/// 2 pi sqrt(a(1-a)) / M + pi^2 / M^2.
double ae_error_bound(double a, int m);

/// pmf dump: one "y,probability,a_value" row per outcome.
void dump_ae_pmf_csv(const AeResult& result, std::ostream& out);

} // namespace qdsp
