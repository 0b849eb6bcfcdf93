#include "qdsp/math_util.hpp"

#include <cmath>

#include "qdsp/errors.hpp"

namespace qdsp {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;
} // namespace

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("inverse_normal_cdf: p must lie strictly inside (0, 1)");
    }

    // Acklam's coefficients.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the exact CDF residual.
    double e = norm_cdf(x) - p;
    double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag0, std::uint64_t tag1) {
    std::uint64_t h = splitmix64(seed ^ 0x2545f4914f6cdd1dULL);
    h = splitmix64(h ^ tag0);
    h = splitmix64(h ^ tag1);
    return h;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    if (depth > 48) {
        throw QuadratureFailure("adaptive_simpson: recursion depth exceeded");
    }
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int min_panels) {
    if (!(b > a)) {
        throw DomainError("adaptive_simpson: requires b > a");
    }
    if (min_panels < 1) min_panels = 1;
    const double h = (b - a) / min_panels;
    const double panel_tol = tol / min_panels;
    double total = 0.0;
    for (int i = 0; i < min_panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i + 1 == min_panels) ? b : x0 + h;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = f(x0);
        const double f1 = f(x1);
        const double fm = f(xm);
        const double whole = simpson(x0, f0, x1, f1, fm);
        total += adaptive_step(f, x0, f0, x1, f1, xm, fm, whole, panel_tol, 0);
    }
    return total;
}

} // namespace qdsp
