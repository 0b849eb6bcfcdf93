#include "qdsp/fourier.hpp"

#include <cmath>

#include "qdsp/errors.hpp"
#include "qdsp/format.hpp"
#include "qdsp/math_util.hpp"

namespace qdsp {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::complex<double> kI{0.0, 1.0};

void check_period_order(double P, int L, int min_order) {
    if (!(P > 0.0)) throw DomainError("Fourier coefficients: period must be positive");
    if (L < min_order) throw DomainError("Fourier coefficients: order too small");
}

FourierSpec empty_spec(double P, int L) {
    FourierSpec spec;
    spec.period = P;
    spec.order = L;
    spec.coeffs.assign(static_cast<std::size_t>(2 * L + 1), {0.0, 0.0});
    return spec;
}
} // namespace

std::complex<double> eval_at(const EvalMap& evals, int l) {
    auto it = evals.find(l);
    if (it != evals.end()) return it->second;
    it = evals.find(-l);
    if (it != evals.end()) return std::conj(it->second);
    throw MissingEval("eval_at: no characteristic-function value for harmonic " +
                      std::to_string(l));
}

FourierSpec cdf_fourier_coeffs(double P, int L) {
    check_period_order(P, L, 1);
    FourierSpec spec = empty_spec(P, L);
    spec.c(0) = {0.5, 0.0};
    for (int n = 1; n <= L; ++n) {
        const double damp = std::exp(-2.0 * kPi * kPi * n * n / (P * P));
        const std::complex<double> cn = -kI * damp / (2.0 * kPi * n);
        spec.c(n) = cn;
        spec.c(-n) = std::conj(cn);
    }
    return spec;
}

FourierSpec cdf_coeffs_periodized(double P, int L) {
    check_period_order(P, L, 1);
    const double jump = std::erf(P / (2.0 * std::sqrt(2.0)));
    FourierSpec spec = empty_spec(P, L);
    spec.c(0) = {0.5, 0.0};
    for (int n = 1; n <= L; ++n) {
        const double damp = std::exp(-2.0 * kPi * kPi * n * n / (P * P));
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const std::complex<double> cn = kI * (sign * jump - damp) / (2.0 * kPi * n);
        spec.c(n) = cn;
        spec.c(-n) = std::conj(cn);
    }
    return spec;
}

FourierSpec numeric_fourier_coeffs(const std::function<double(double)>& f, double P, int L,
                                   double tol) {
    check_period_order(P, L, 0);
    FourierSpec spec = empty_spec(P, L);
    const double a = -P / 2.0;
    const double b = P / 2.0;
    for (int n = 0; n <= L; ++n) {
        const double w = 2.0 * kPi * n / P;
        const int panels = std::max(8, 4 * n);
        const double re =
            adaptive_simpson([&](double x) { return f(x) * std::cos(w * x); }, a, b,
                             tol * P / 4.0, panels) /
            P;
        double im = 0.0;
        if (n > 0) {
            im = -adaptive_simpson([&](double x) { return f(x) * std::sin(w * x); }, a, b,
                                   tol * P / 4.0, panels) /
                 P;
        }
        spec.c(n) = {re, im};
        if (n > 0) spec.c(-n) = std::conj(spec.c(n));
    }
    return spec;
}

std::complex<double> assemble_expectation(const FourierSpec& spec, const EvalMap& evals) {
    std::complex<double> acc{0.0, 0.0};
    for (int l = -spec.order; l <= spec.order; ++l) {
        acc += spec.c(l) * eval_at(evals, l);
    }
    return acc;
}

double delta_sum_form(const EvalMap& evals, double P, int L) {
    check_period_order(P, L, 0);
    std::complex<double> acc{0.0, 0.0};
    for (int l = -L; l <= L; ++l) {
        if (l == 0) continue;
        const double damp = std::exp(-2.0 * kPi * kPi * l * l / (P * P));
        acc += kI / (2.0 * kPi * l) * damp * eval_at(evals, l);
    }
    return 0.5 - acc.real();
}

void dump_coeffs_csv(const FourierSpec& spec, std::ostream& out) {
    out << "l,re,im\n";
    for (int l = -spec.order; l <= spec.order; ++l) {
        out << format_int(l) << ',' << format_double(spec.c(l).real()) << ','
            << format_double(spec.c(l).imag()) << '\n';
    }
}

} // namespace qdsp
