#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace qdsp {

// Bit convention: qubit 0 is the least-significant bit of the basis index.
// Gate conventions:
//   Rz(theta) = diag(exp(-i theta/2), exp(+i theta/2))
//   Ry(theta) = cos(theta/2) I - i sin(theta/2) sigma_y
//   CPhase(theta) multiplies states with target = 1 and all controls = 1 by
//   exp(i theta); with no controls it is the plain phase gate diag(1, e^{i theta}).

enum class GateKind { H, X, Ry, Rz, CRy, CRz, Cnot, CPhase, ControlledUnitaryPower };

struct Gate;

/// A gate sequence with an overall phase, applied as a single unitary block.
/// Controlled application multiplies the phase onto the controlled subspace,
/// which is what makes a controlled minus-sign (as in the Grover operator)
/// act correctly.
struct UnitaryBlock {
    std::vector<Gate> gates;
    std::complex<double> phase{1.0, 0.0};
};

struct Gate {
    GateKind kind = GateKind::H;
    int target = 0;
    std::vector<int> controls;
    double angle = 0.0;
    std::shared_ptr<const UnitaryBlock> block; // ControlledUnitaryPower only
    std::int64_t power = 1;
};

namespace gates {
Gate h(int target);
Gate x(int target);
Gate ry(double angle, int target);
Gate rz(double angle, int target);
Gate cry(double angle, int control, int target);
Gate crz(double angle, int control, int target);
Gate cnot(int control, int target);
Gate cphase(double angle, std::vector<int> controls, int target);
Gate controlled_power(std::shared_ptr<const UnitaryBlock> block, std::int64_t power, int control);
} // namespace gates

constexpr int kMaxQubits = 28;

/// Dense complex statevector of num_qubits qubits, initialized to |0...0>.
class Statevector {
  public:
    explicit Statevector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return amps_.size(); }
    Eigen::VectorXcd& amps() { return amps_; }
    const Eigen::VectorXcd& amps() const { return amps_; }

    /// |sum |amp|^2 - 1|
    double norm_error() const;

  private:
    int num_qubits_;
    Eigen::VectorXcd amps_;
};

enum class Pauli { X, Y, Z };

/// Applies a gate in place; throws IndexError on bad qubit indices.
void apply_gate(Statevector& state, const Gate& gate);

/// <state| I (x) sigma_axis |state> on one qubit.
double expval_pauli(const Statevector& state, Pauli axis, int qubit);

/// Probability that the given qubit reads `value` in the computational basis.
double subspace_probability(const Statevector& state, int qubit, int value);

/// Multinomial sample of computational-basis outcomes, keyed by the basis
/// string with qubit num_qubits-1 first (so the string is the binary index).
std::map<std::string, std::int64_t> sample_counts(const Statevector& state, std::int64_t shots,
                                                  std::uint64_t seed);

/// Debug dump: one "index,re,im" row per amplitude.
void dump_amplitudes_csv(const Statevector& state, std::ostream& out);

/// Inverse of an elementary gate (theta -> -theta; H, X, CNOT self-inverse).
/// Throws WrongGateKind for ControlledUnitaryPower.
Gate inverse_gate(const Gate& gate);

} // namespace qdsp
