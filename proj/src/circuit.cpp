#include "qdsp/circuit.hpp"

#include <cmath>

#include "qdsp/errors.hpp"
#include "qdsp/format.hpp"

namespace qdsp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_two_valued(const DspModel& model) {
    if (model.branching() != 2) {
        throw UnsupportedK("circuit compiler: only two-valued levels are supported");
    }
}

// Theta with cos^2(theta/2) = p0, the amplitude split of Ry(theta)|0>.
double ry_angle_for_p0(double p0) {
    const double c = std::sqrt(std::min(std::max(p0, 0.0), 1.0));
    return 2.0 * std::acos(c);
}

bool exactly_fair(double p0) { return std::abs(p0 - 0.5) < 1e-15; }

} // namespace

Circuit compile_index_prep(const DspModel& model) {
    model.validate();
    require_two_valued(model);
    const int n = model.num_levels();

    Circuit circuit;
    circuit.num_qubits = n + 1; // data qubit reserved at index n
    circuit.regs = Registers{n, n, 0};

    switch (model.kind) {
    case DspKind::Independent:
        for (int l = 1; l <= n; ++l) {
            const double p0 = model.levels[static_cast<std::size_t>(l - 1)].probs[0];
            if (exactly_fair(p0)) {
                circuit.append(gates::h(l - 1));
            } else {
                circuit.append(gates::ry(ry_angle_for_p0(p0), l - 1));
            }
        }
        return circuit;
    case DspKind::FirstOrderMarkov:
    case DspKind::CorrelatedWalk: {
        circuit.append(gates::ry(ry_angle_for_p0(model.branch_prob(1, 0, 0)), 0));
        for (int l = 2; l <= n; ++l) {
            const int prev = l - 2;
            const int cur = l - 1;
            const double theta1 = ry_angle_for_p0(model.branch_prob(l, 1, 0));
            const double theta0 = ry_angle_for_p0(model.branch_prob(l, 0, 0));
            circuit.append(gates::cry(theta1, prev, cur));
            circuit.append(gates::x(prev));
            circuit.append(gates::cry(theta0, prev, cur));
            circuit.append(gates::x(prev));
        }
        return circuit;
    }
    }
    throw DomainError("compile_index_prep: unknown model kind");
}

Circuit compile_data_ladder(const DspModel& model, const MeasurementScheme& scheme) {
    model.validate();
    require_two_valued(model);
    if (!std::isfinite(scheme.v)) throw DomainError("MeasurementScheme: v must be finite");
    if (scheme.sign != 1 && scheme.sign != -1) {
        throw DomainError("MeasurementScheme: sign must be +1 or -1");
    }
    const int n = model.num_levels();
    const int data = n;

    // With the symmetric Rz convention the controlled V(v*x) is Rz(v*x),
    // equal to |0><0| + exp(i v x)|1><1| up to a branch phase that cancels
    // in the Pauli expectations.
    const auto v_gate = [&](double x, int control) {
        const double angle = scheme.v * x;
        if (scheme.kind == SchemeKind::PauliRz) return gates::crz(angle, control, data);
        return gates::cry(scheme.sign * angle, control, data);
    };

    Circuit circuit;
    circuit.num_qubits = n + 1;
    circuit.regs = Registers{n, data, 0};

    if (scheme.kind == SchemeKind::PauliRz) {
        circuit.append(gates::rz(scheme.v * model.x0, data));
    } else {
        circuit.append(gates::ry(scheme.sign * scheme.v * model.x0, data));
    }

    for (int l = 1; l <= n; ++l) {
        const auto& level = model.levels[static_cast<std::size_t>(l - 1)];
        const int control = l - 1;
        circuit.append(v_gate(level.values[1], control));
        circuit.append(gates::x(control));
        circuit.append(v_gate(level.values[0], control));
        circuit.append(gates::x(control));
    }
    return circuit;
}

Circuit compile_charfn_circuit(const DspModel& model, const MeasurementScheme& scheme) {
    Circuit circuit = compile_index_prep(model);
    const int data = circuit.regs.data;
    if (scheme.kind == SchemeKind::PauliRz) {
        circuit.append(gates::h(data));
    } else if (scheme.sign == -1) {
        circuit.append(gates::ry(kPi / 2.0, data));
    }
    circuit.append(compile_data_ladder(model, scheme));
    return circuit;
}

std::vector<Gate> decompose_controlled_rz(const Gate& gate) {
    if (gate.kind != GateKind::CRz || gate.controls.size() != 1) {
        throw WrongGateKind("decompose_controlled_rz: expected a singly-controlled Rz");
    }
    const int control = gate.controls.front();
    const int target = gate.target;
    return {gates::rz(gate.angle / 2.0, target), gates::cnot(control, target),
            gates::rz(-gate.angle / 2.0, target), gates::cnot(control, target)};
}

Circuit decompose_crz_gates(const Circuit& circuit) {
    Circuit out;
    out.num_qubits = circuit.num_qubits;
    out.regs = circuit.regs;
    for (const Gate& gate : circuit.gates) {
        if (gate.kind == GateKind::CRz) {
            for (Gate& g : decompose_controlled_rz(gate)) out.append(std::move(g));
        } else {
            out.append(gate);
        }
    }
    return out;
}

std::map<GateKind, int> gate_count(const Circuit& circuit) {
    std::map<GateKind, int> counts;
    for (const Gate& gate : circuit.gates) ++counts[gate.kind];
    return counts;
}

Circuit inverse_circuit(const Circuit& circuit) {
    Circuit out;
    out.num_qubits = circuit.num_qubits;
    out.regs = circuit.regs;
    out.gates.reserve(circuit.gates.size());
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        out.append(inverse_gate(*it));
    }
    return out;
}

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
    case GateKind::CRy: return "cry";
    case GateKind::CRz: return "crz";
    case GateKind::Cnot: return "cnot";
    case GateKind::CPhase: return "cphase";
    case GateKind::ControlledUnitaryPower: return "cpow";
    }
    return "?";
}

std::string to_text(const Circuit& circuit) {
    std::string out;
    for (const Gate& gate : circuit.gates) {
        out += gate_kind_name(gate.kind);
        for (int c : gate.controls) {
            out += ' ';
            out += format_int(c);
        }
        out += ' ';
        out += format_int(gate.target);
        switch (gate.kind) {
        case GateKind::Ry:
        case GateKind::Rz:
        case GateKind::CRy:
        case GateKind::CRz:
        case GateKind::CPhase:
            out += ' ';
            out += format_double(gate.angle);
            break;
        case GateKind::ControlledUnitaryPower:
            out += " ^";
            out += format_int(gate.power);
            break;
        default:
            break;
        }
        out += '\n';
    }
    return out;
}

void apply_circuit(Statevector& state, const Circuit& circuit) {
    for (const Gate& gate : circuit.gates) apply_gate(state, gate);
}

Statevector run_circuit(const Circuit& circuit) {
    Statevector state(circuit.num_qubits);
    apply_circuit(state, circuit);
    return state;
}

} // namespace qdsp
