#pragma once

#include <complex>
#include <functional>
#include <map>
#include <ostream>
#include <vector>

namespace qdsp {

/// Fourier approximation of order L on a period P: coefficients c_l for
/// l in [-L, L], stored at index l + L.
struct FourierSpec {
    double period = 1.0;
    int order = 0;
    std::vector<std::complex<double>> coeffs;

    std::complex<double> c(int l) const { return coeffs[static_cast<std::size_t>(l + order)]; }
    std::complex<double>& c(int l) { return coeffs[static_cast<std::size_t>(l + order)]; }
};

/// Characteristic-function evaluations keyed by the harmonic index l
/// (the evaluation point is v_l = 2 pi l / P).
using EvalMap = std::map<int, std::complex<double>>;

/// Evaluation for harmonic l, synthesizing phi(-v) = conj(phi(v)) when only
/// the mirrored entry is present. Throws MissingEval when neither exists.
std::complex<double> eval_at(const EvalMap& evals, int l);

/// Closed-form coefficients of the standard normal CDF:
/// c_0 = 1/2, c_n = -i exp(-2 pi^2 n^2 / P^2) / (2 pi n).
///
/// These come from sampling the Fourier transform of Phi and ignore the unit
/// jump of the periodized CDF at +-P/2; the series they sum to is
/// Phi(x) - x/P inside the period, not Phi(x). Kept as the reference
/// formula; pipelines use cdf_coeffs_periodized.
FourierSpec cdf_fourier_coeffs(double P, int L);

/// Exact coefficients of Phi restricted to [-P/2, P/2]:
/// c_0 = 1/2, c_n = (i / 2 pi n) [(-1)^n erf(P / (2 sqrt 2)) - exp(-2 pi^2 n^2 / P^2)].
/// The boundary term restores the jump the closed form above drops.
FourierSpec cdf_coeffs_periodized(double P, int L);

/// Coefficients of an arbitrary integrable f by adaptive quadrature on
/// [-P/2, P/2], each component to absolute error <= tol.
FourierSpec numeric_fourier_coeffs(const std::function<double(double)>& f, double P, int L,
                                   double tol = 1e-9);

/// E[f_L(S_n)] = sum_l c_l phi(2 pi l / P).
std::complex<double> assemble_expectation(const FourierSpec& spec, const EvalMap& evals);

/// The CDF expectation in its primed-sum form,
/// 1/2 - sum_{l != 0} (i / 2 pi l) exp(-2 pi^2 l^2 / P^2) phi(2 pi l / P);
/// algebraically identical to assembling with cdf_fourier_coeffs when
/// phi(0) = 1.
double delta_sum_form(const EvalMap& evals, double P, int L);

/// Coefficient dump: one "l,re,im" row per harmonic.
void dump_coeffs_csv(const FourierSpec& spec, std::ostream& out);

} // namespace qdsp
