#include "qdsp/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qdsp/errors.hpp"
#include "qdsp/format.hpp"
#include "qdsp/math_util.hpp"

namespace qdsp {

namespace gates {

Gate h(int target) { return Gate{GateKind::H, target, {}, 0.0, nullptr, 1}; }
Gate x(int target) { return Gate{GateKind::X, target, {}, 0.0, nullptr, 1}; }
Gate ry(double angle, int target) { return Gate{GateKind::Ry, target, {}, angle, nullptr, 1}; }
Gate rz(double angle, int target) { return Gate{GateKind::Rz, target, {}, angle, nullptr, 1}; }
Gate cry(double angle, int control, int target) {
    return Gate{GateKind::CRy, target, {control}, angle, nullptr, 1};
}
Gate crz(double angle, int control, int target) {
    return Gate{GateKind::CRz, target, {control}, angle, nullptr, 1};
}
Gate cnot(int control, int target) {
    return Gate{GateKind::Cnot, target, {control}, 0.0, nullptr, 1};
}
Gate cphase(double angle, std::vector<int> controls, int target) {
    return Gate{GateKind::CPhase, target, std::move(controls), angle, nullptr, 1};
}
Gate controlled_power(std::shared_ptr<const UnitaryBlock> block, std::int64_t power, int control) {
    Gate g{GateKind::ControlledUnitaryPower, 0, {control}, 0.0, std::move(block), power};
    return g;
}

} // namespace gates

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw SizeError("Statevector: qubit count must lie in [1, 28]");
    }
    amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
    amps_[0] = 1.0;
}

double Statevector::norm_error() const {
    return std::abs(amps_.squaredNorm() - 1.0);
}

namespace {

void check_qubit(const Statevector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        throw IndexError("gate qubit index out of range");
    }
}

std::uint64_t control_mask(const Statevector& state, const Gate& gate) {
    std::uint64_t mask = 0;
    for (int c : gate.controls) {
        check_qubit(state, c);
        if (c == gate.target && gate.kind != GateKind::ControlledUnitaryPower) {
            throw IndexError("gate control equals target");
        }
        const std::uint64_t bit = std::uint64_t{1} << c;
        if (mask & bit) throw IndexError("duplicate control qubit");
        mask |= bit;
    }
    return mask;
}

// 2x2 unitary on `target`, restricted to basis states where every bit of
// `mask` is set.
void apply_two_by_two(Statevector& state, int target, std::uint64_t mask,
                      std::complex<double> m00, std::complex<double> m01,
                      std::complex<double> m10, std::complex<double> m11) {
    auto& amps = state.amps();
    const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
    const std::uint64_t tbit = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & tbit) || ((i & mask) != mask)) continue;
        const std::complex<double> a0 = amps[static_cast<Eigen::Index>(i)];
        const std::complex<double> a1 = amps[static_cast<Eigen::Index>(i | tbit)];
        amps[static_cast<Eigen::Index>(i)] = m00 * a0 + m01 * a1;
        amps[static_cast<Eigen::Index>(i | tbit)] = m10 * a0 + m11 * a1;
    }
}

void apply_masked(Statevector& state, const Gate& gate, std::uint64_t extra_mask);

void apply_block_masked(Statevector& state, const UnitaryBlock& block, std::int64_t power,
                        std::uint64_t mask) {
    auto& amps = state.amps();
    const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
    for (std::int64_t rep = 0; rep < power; ++rep) {
        for (const Gate& g : block.gates) {
            apply_masked(state, g, mask);
        }
        if (block.phase != std::complex<double>{1.0, 0.0}) {
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & mask) == mask) amps[static_cast<Eigen::Index>(i)] *= block.phase;
            }
        }
    }
}

void apply_masked(Statevector& state, const Gate& gate, std::uint64_t extra_mask) {
    if (gate.kind != GateKind::ControlledUnitaryPower) {
        check_qubit(state, gate.target);
    }
    if (!std::isfinite(gate.angle)) throw IndexError("gate angle must be finite");
    const std::uint64_t mask = control_mask(state, gate) | extra_mask;
    constexpr std::complex<double> kI{0.0, 1.0};
    const double half = 0.5 * gate.angle;

    switch (gate.kind) {
    case GateKind::H: {
        const double s = 1.0 / std::sqrt(2.0);
        apply_two_by_two(state, gate.target, mask, s, s, s, -s);
        return;
    }
    case GateKind::X:
    case GateKind::Cnot:
        apply_two_by_two(state, gate.target, mask, 0.0, 1.0, 1.0, 0.0);
        return;
    case GateKind::Ry:
    case GateKind::CRy:
        apply_two_by_two(state, gate.target, mask, std::cos(half), -std::sin(half),
                         std::sin(half), std::cos(half));
        return;
    case GateKind::Rz:
    case GateKind::CRz:
        apply_two_by_two(state, gate.target, mask, std::exp(-kI * half), 0.0, 0.0,
                         std::exp(kI * half));
        return;
    case GateKind::CPhase: {
        auto& amps = state.amps();
        const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
        const std::uint64_t full = mask | (std::uint64_t{1} << gate.target);
        const std::complex<double> ph = std::exp(kI * gate.angle);
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & full) == full) amps[static_cast<Eigen::Index>(i)] *= ph;
        }
        return;
    }
    case GateKind::ControlledUnitaryPower: {
        if (!gate.block) throw WrongGateKind("ControlledUnitaryPower: missing block");
        apply_block_masked(state, *gate.block, gate.power, mask);
        return;
    }
    }
    throw WrongGateKind("apply_gate: unknown gate kind");
}

} // namespace

void apply_gate(Statevector& state, const Gate& gate) { apply_masked(state, gate, 0); }

double expval_pauli(const Statevector& state, Pauli axis, int qubit) {
    check_qubit(state, qubit);
    const auto& amps = state.amps();
    const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
    const std::uint64_t qbit = std::uint64_t{1} << qubit;
    double acc = 0.0;
    if (axis == Pauli::Z) {
        for (std::uint64_t i = 0; i < dim; ++i) {
            const double w = std::norm(amps[static_cast<Eigen::Index>(i)]);
            acc += (i & qbit) ? -w : w;
        }
        return acc;
    }
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & qbit) continue;
        const std::complex<double> z =
            std::conj(amps[static_cast<Eigen::Index>(i)]) * amps[static_cast<Eigen::Index>(i | qbit)];
        acc += 2.0 * (axis == Pauli::X ? z.real() : z.imag());
    }
    return acc;
}

double subspace_probability(const Statevector& state, int qubit, int value) {
    check_qubit(state, qubit);
    if (value != 0 && value != 1) throw IndexError("subspace_probability: value must be 0 or 1");
    const auto& amps = state.amps();
    const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
    const std::uint64_t qbit = std::uint64_t{1} << qubit;
    double acc = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (((i & qbit) != 0) == (value == 1)) {
            acc += std::norm(amps[static_cast<Eigen::Index>(i)]);
        }
    }
    return acc;
}

std::map<std::string, std::int64_t> sample_counts(const Statevector& state, std::int64_t shots,
                                                  std::uint64_t seed) {
    if (shots < 1) throw DomainError("sample_counts: shots must be >= 1");
    const auto& amps = state.amps();
    const Eigen::Index dim = amps.size();

    std::vector<double> cdf(static_cast<std::size_t>(dim));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        acc += std::norm(amps[i]);
        cdf[static_cast<std::size_t>(i)] = acc;
    }
    cdf.back() = std::max(cdf.back(), 1.0);

    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> hist(static_cast<std::size_t>(dim), 0);
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = uniform_from_bits(rng());
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        ++hist[std::min(idx, static_cast<std::size_t>(dim - 1))];
    }

    std::map<std::string, std::int64_t> out;
    const int q = state.num_qubits();
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (hist[static_cast<std::size_t>(i)] == 0) continue;
        std::string bits(static_cast<std::size_t>(q), '0');
        for (int b = 0; b < q; ++b) {
            if (static_cast<std::uint64_t>(i) & (std::uint64_t{1} << b)) {
                bits[static_cast<std::size_t>(q - 1 - b)] = '1';
            }
        }
        out.emplace(std::move(bits), hist[static_cast<std::size_t>(i)]);
    }
    return out;
}

void dump_amplitudes_csv(const Statevector& state, std::ostream& out) {
    out << "index,re,im\n";
    const auto& amps = state.amps();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        out << format_int(i) << ',' << format_double(amps[i].real()) << ','
            << format_double(amps[i].imag()) << '\n';
    }
}

Gate inverse_gate(const Gate& gate) {
    Gate inv = gate;
    switch (gate.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Cnot:
        return inv;
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::CRy:
    case GateKind::CRz:
    case GateKind::CPhase:
        inv.angle = -gate.angle;
        return inv;
    case GateKind::ControlledUnitaryPower:
        throw WrongGateKind("inverse_gate: cannot invert a unitary-power block");
    }
    throw WrongGateKind("inverse_gate: unknown gate kind");
}

} // namespace qdsp
