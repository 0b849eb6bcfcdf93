#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "qdsp/circuit.hpp"
#include "qdsp/dsp_model.hpp"

namespace qdsp {

enum class Method { Exact, Shots, Ae };

enum class AeMode { Cos, Sin };

/// One evaluation of phi_{S_n}(v) together with how it was obtained.
struct CharFnEstimate {
    double v = 0.0;
    std::complex<double> value{0.0, 0.0};
    Method method = Method::Exact;
    std::optional<std::int64_t> shots;
    std::optional<double> stderr_re;
    std::optional<double> stderr_im;
    std::optional<int> ae_m;
};

/// phi(v) from the Pauli scheme statevector: <sigma_x> + i <sigma_y> on the
/// data qubit. Matches the enumeration oracle to float precision.
CharFnEstimate estimate_exact(const DspModel& model, double v);

/// phi(v) from two independent simulated shot batches, one per Pauli
/// observable, with the binomial standard error of each component.
CharFnEstimate estimate_shots(const DspModel& model, double v, std::int64_t shots,
                              std::uint64_t seed);

/// One component of phi(v) through amplitude estimation with m ancillas:
/// 1 - 2*a_hat lands in the real part (Cos mode) or the imaginary part
/// (Sin mode). Deterministic mode reads the most probable outcome.
CharFnEstimate estimate_ae(const DspModel& model, double v, int m, std::uint64_t seed,
                           AeMode mode, bool deterministic = true);

/// Both AE components combined into one complex estimate.
CharFnEstimate estimate_ae_full(const DspModel& model, double v, int m, std::uint64_t seed,
                                bool deterministic = true);

std::string method_name(Method method);

/// CSV row: v, re, im, method, shots, stderr_re, stderr_im.
std::string csv_row(const CharFnEstimate& estimate);

} // namespace qdsp
