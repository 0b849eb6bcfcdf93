#include "qdsp/char_estimator.hpp"

#include <cmath>
#include <random>

#include "qdsp/amplitude_estimation.hpp"
#include "qdsp/errors.hpp"
#include "qdsp/format.hpp"
#include "qdsp/math_util.hpp"

namespace qdsp {

namespace {

// Bernoulli draw count for probability p over `shots` trials, deterministic
// with the supplied generator.
std::int64_t binomial_draw(std::int64_t shots, double p, std::mt19937_64& rng) {
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < shots; ++s) {
        if (uniform_from_bits(rng()) < p) ++hits;
    }
    return hits;
}

} // namespace

CharFnEstimate estimate_exact(const DspModel& model, double v) {
    const Statevector state =
        run_circuit(compile_charfn_circuit(model, MeasurementScheme{SchemeKind::PauliRz, +1, v}));
    const int data = model.num_levels();
    CharFnEstimate estimate;
    estimate.v = v;
    estimate.method = Method::Exact;
    estimate.value = {expval_pauli(state, Pauli::X, data), expval_pauli(state, Pauli::Y, data)};
    return estimate;
}

CharFnEstimate estimate_shots(const DspModel& model, double v, std::int64_t shots,
                              std::uint64_t seed) {
    if (shots < 2) throw DomainError("estimate_shots: needs at least 2 shots");
    const Statevector state =
        run_circuit(compile_charfn_circuit(model, MeasurementScheme{SchemeKind::PauliRz, +1, v}));
    const int data = model.num_levels();

    // Probability of the +1 eigenvalue of each observable; each observable
    // gets its own experiment with an independent seed stream.
    const double px = 0.5 * (1.0 + expval_pauli(state, Pauli::X, data));
    const double py = 0.5 * (1.0 + expval_pauli(state, Pauli::Y, data));

    CharFnEstimate estimate;
    estimate.v = v;
    estimate.method = Method::Shots;
    estimate.shots = shots;

    double comps[2];
    double errs[2];
    const double probs[2] = {px, py};
    for (int axis = 0; axis < 2; ++axis) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(axis)));
        const double p_hat = static_cast<double>(binomial_draw(shots, probs[axis], rng)) /
                             static_cast<double>(shots);
        comps[axis] = 2.0 * p_hat - 1.0;
        errs[axis] = 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(shots));
    }
    estimate.value = {comps[0], comps[1]};
    estimate.stderr_re = errs[0];
    estimate.stderr_im = errs[1];
    return estimate;
}

CharFnEstimate estimate_ae(const DspModel& model, double v, int m, std::uint64_t seed,
                           AeMode mode, bool deterministic) {
    if (m < 3) throw DomainError("estimate_ae: m must be >= 3");
    const int sign = mode == AeMode::Cos ? +1 : -1;
    AeProblem problem;
    problem.prep = compile_charfn_circuit(model, MeasurementScheme{SchemeKind::AmplitudeRy, sign, v});
    problem.flag_qubit = problem.prep.regs.data;
    problem.m = m;

    const AeResult result =
        run_ae(problem, derive_seed(seed, mode == AeMode::Cos ? 0 : 1), deterministic);
    const double component = 1.0 - 2.0 * result.a_hat;

    CharFnEstimate estimate;
    estimate.v = v;
    estimate.method = Method::Ae;
    estimate.ae_m = m;
    estimate.value = mode == AeMode::Cos ? std::complex<double>{component, 0.0}
                                         : std::complex<double>{0.0, component};
    return estimate;
}

CharFnEstimate estimate_ae_full(const DspModel& model, double v, int m, std::uint64_t seed,
                                bool deterministic) {
    const CharFnEstimate re = estimate_ae(model, v, m, seed, AeMode::Cos, deterministic);
    const CharFnEstimate im = estimate_ae(model, v, m, seed, AeMode::Sin, deterministic);
    CharFnEstimate estimate = re;
    estimate.value = {re.value.real(), im.value.imag()};
    return estimate;
}

std::string method_name(Method method) {
    switch (method) {
    case Method::Exact: return "exact";
    case Method::Shots: return "shots";
    case Method::Ae: return "ae";
    }
    return "?";
}

std::string csv_row(const CharFnEstimate& estimate) {
    std::string out = format_double(estimate.v);
    out += ',';
    out += format_double(estimate.value.real());
    out += ',';
    out += format_double(estimate.value.imag());
    out += ',';
    out += method_name(estimate.method);
    out += ',';
    if (estimate.shots) out += format_int(*estimate.shots);
    out += ',';
    if (estimate.stderr_re) out += format_double(*estimate.stderr_re);
    out += ',';
    if (estimate.stderr_im) out += format_double(*estimate.stderr_im);
    return out;
}

} // namespace qdsp
