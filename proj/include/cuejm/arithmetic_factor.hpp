#pragma once

#include "cuejm/moments.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <vector>

namespace cuejm {

/// High-precision real scalar for the Euler products (~166-bit mantissa).
using Real = boost::multiprecision::cpp_bin_float_50;

struct ArithmeticFactorResult {
    int k = 1;
    long prime_cutoff = 2;
    Real value{1};
    Real tail_bound_estimate{0};
};

std::vector<long> primes_up_to(long limit);

/// Euler product over primes p <= prime_cutoff of
/// (1 - 1/p)^{k^2} * sum_m binom(m+k-1, m)^2 p^{-m}, the inner sum truncated
/// at the first term below term_tolerance. For k = 1 every local factor
/// telescopes to 1 and the result is exactly 1 for any cutoff.
/// tail_bound_estimate extrapolates the per-prime deficits of the last decade
/// of primes log-linearly past the cutoff.
ArithmeticFactorResult arithmetic_factor(int k, long prime_cutoff, double term_tolerance);

/// Conjectured leading moment constant: the exact coefficient for `spec`
/// converted to Real, times the arithmetic factor for the same k.
Real conjectured_constant(Family family, const MomentSpec& spec, long prime_cutoff,
                          double term_tolerance);

Real to_real(const Rational& r);

} // namespace cuejm
