#pragma once

#include <cstdint>
#include <functional>

namespace qdsp {

/// Standard normal CDF, evaluated through erfc to stay accurate in the tails.
double norm_cdf(double x);

/// Inverse of the standard normal CDF.
///
/// Acklam's rational approximation polished with one Halley step, giving
/// errors far below the 1e-9 the sample-count formula needs.
/// Throws DomainError unless 0 < p < 1.
double inverse_normal_cdf(double p);

/// SplitMix64 step; used to derive independent sub-seeds from a user seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic sub-seed for a (seed, tag0, tag1) triple.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag0, std::uint64_t tag1 = 0);

/// Uniform double in [0, 1) from a 64-bit word (53 mantissa bits).
inline double uniform_from_bits(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
///
/// The interval is pre-split into min_panels pieces so oscillatory
/// integrands cannot fool the error estimate on the first subdivision.
/// Throws QuadratureFailure when the recursion depth limit is hit.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int min_panels = 8);

} // namespace qdsp
