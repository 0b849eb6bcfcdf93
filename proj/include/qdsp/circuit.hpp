#pragma once

#include <map>
#include <string>
#include <vector>

#include "qdsp/dsp_model.hpp"
#include "qdsp/statevector.hpp"

namespace qdsp {

/// Register layout of a compiled characteristic-function circuit:
/// index qubits [0 .. n-1] (level l on qubit l-1), the data qubit at n,
/// and any amplitude-estimation ancillas above it.
struct Registers {
    int num_index = 0;
    int data = 0;
    int num_ancillas = 0;
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;
    Registers regs;

    void append(Gate gate) { gates.push_back(std::move(gate)); }
    void append(const Circuit& other) {
        gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    }
};

enum class SchemeKind { PauliRz, AmplitudeRy };

/// Choice between the Pauli-measurement encoding (V(x) acting as a relative
/// phase exp(i v x)) and the Ry encoding read out through amplitudes.
/// `sign` selects the sine variant of the Ry scheme (-1 flips all angles and
/// prepends an Ry(pi/2) data input).
struct MeasurementScheme {
    SchemeKind kind = SchemeKind::PauliRz;
    int sign = +1;
    double v = 0.0;
};

/// Index-register preparation: per-level Ry rotations for independent
/// models, a first-qubit rotation followed by a controlled rotation pair per
/// level for Markov chains and correlated walks. Two-valued levels only.
Circuit compile_index_prep(const DspModel& model);

/// The controlled-V data ladder: an unconditional rotation by v*x0 on the
/// data qubit, then per level one controlled V(v*x_{l,1}) off the |1> branch
/// and an X-conjugated controlled V(v*x_{l,0}) off the |0> branch.
/// Exactly n*k controlled rotations and 2n X gates.
Circuit compile_data_ladder(const DspModel& model, const MeasurementScheme& scheme);

/// Full circuit for one characteristic-function evaluation: index prep,
/// data-input preparation for the scheme, then the ladder.
Circuit compile_charfn_circuit(const DspModel& model, const MeasurementScheme& scheme);

/// CRz(theta) as Rz(theta/2), CNOT, Rz(-theta/2), CNOT on the target.
std::vector<Gate> decompose_controlled_rz(const Gate& gate);

/// Copy of the circuit with every CRz expanded via decompose_controlled_rz.
Circuit decompose_crz_gates(const Circuit& circuit);

/// Exact gate counts per kind.
std::map<GateKind, int> gate_count(const Circuit& circuit);

/// Reversed circuit with every gate inverted.
Circuit inverse_circuit(const Circuit& circuit);

/// One gate per line: kind, qubits, angle. Stable across runs; used for
/// golden-file comparisons.
std::string to_text(const Circuit& circuit);

std::string gate_kind_name(GateKind kind);

/// Runs every gate of the circuit on the state.
void apply_circuit(Statevector& state, const Circuit& circuit);

/// Fresh statevector of the circuit's width with the circuit applied to |0...0>.
Statevector run_circuit(const Circuit& circuit);

} // namespace qdsp
