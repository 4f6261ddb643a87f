#include "cuejm/arithmetic_factor.hpp"

#include <cmath>
#include <stdexcept>

namespace cuejm {

std::vector<long> primes_up_to(long limit) {
    std::vector<long> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<size_t>(limit) + 1, false);
    for (long p = 2; p <= limit; ++p) {
        if (composite[static_cast<size_t>(p)]) continue;
        primes.push_back(p);
        for (long q = p * p; q <= limit; q += p) composite[static_cast<size_t>(q)] = true;
    }
    return primes;
}

namespace {

// (1 - 1/p)^{k^2} * sum_m binom(m+k-1, m)^2 p^{-m}, truncated at term < tol.
Real local_factor(int k, long p, double tol) {
    const Real invp = Real(1) / Real(p);
    Real sum(0);
    Real coeff(1); // binom(m+k-1, m), updated multiplicatively
    Real ppow(1);
    for (long m = 0;; ++m) {
        const Real term = coeff * coeff * ppow;
        sum += term;
        if (term < tol) break;
        coeff = coeff * Real(m + k) / Real(m + 1);
        ppow *= invp;
    }
    return boost::multiprecision::pow(Real(1) - invp, k * k) * sum;
}

} // namespace

ArithmeticFactorResult arithmetic_factor(int k, long prime_cutoff, double term_tolerance) {
    if (k < 1) throw std::invalid_argument("arithmetic_factor: k must be >= 1");
    if (prime_cutoff < 2) throw std::invalid_argument("arithmetic_factor: cutoff must be >= 2");
    if (!(term_tolerance > 0.0))
        throw std::invalid_argument("arithmetic_factor: term tolerance must be positive");

    ArithmeticFactorResult result;
    result.k = k;
    result.prime_cutoff = prime_cutoff;
    if (k == 1) {
        // (1 - 1/p) * sum_m p^{-m} = 1 at every prime.
        result.value = Real(1);
        result.tail_bound_estimate = Real(0);
        return result;
    }

    const std::vector<long> primes = primes_up_to(prime_cutoff);
    Real product(1);
    std::vector<std::pair<double, double>> decade; // (log p, log |local - 1|)
    const double decade_start = static_cast<double>(prime_cutoff) / 10.0;
    for (long p : primes) {
        const Real local = local_factor(k, p, term_tolerance);
        product *= local;
        if (static_cast<double>(p) >= decade_start) {
            const double deficit = std::abs((local - Real(1)).convert_to<double>());
            if (deficit > 0.0) decade.emplace_back(std::log(static_cast<double>(p)), std::log(deficit));
        }
    }
    result.value = product;

    // Least-squares fit log|local - 1| = alpha + beta log p over the last
    // decade, then integrate the fitted power law past the cutoff (prime
    // density 1/log x). The true decay is ~p^{-2}; clamp beta below -1.5 so a
    // flat fit cannot produce a divergent extrapolation.
    if (decade.size() >= 3) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [x, y] : decade) {
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        const double n = static_cast<double>(decade.size());
        const double denom = n * sxx - sx * sx;
        double beta = (denom != 0.0) ? (n * sxy - sx * sy) / denom : -2.0;
        beta = std::min(beta, -1.5);
        const double alpha = (sy - beta * sx) / n;
        const double x0 = static_cast<double>(prime_cutoff);
        const double tail =
            std::exp(alpha) * std::pow(x0, beta + 1.0) / ((-beta - 1.0) * std::log(x0));
        result.tail_bound_estimate = Real(tail);
    } else if (!primes.empty()) {
        const Real last = local_factor(k, primes.back(), term_tolerance);
        result.tail_bound_estimate = boost::multiprecision::abs(last - Real(1));
    }
    return result;
}

Real to_real(const Rational& r) {
    return Real(numerator(r)) / Real(denominator(r));
}

Real conjectured_constant(Family family, const MomentSpec& spec, long prime_cutoff,
                          double term_tolerance) {
    const CoeffResult coeff = coefficient(family, spec, preferred_route(spec));
    const ArithmeticFactorResult ck = arithmetic_factor(spec.k, prime_cutoff, term_tolerance);
    return to_real(coeff.value) * ck.value;
}

} // namespace cuejm
