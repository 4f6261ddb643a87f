#pragma once

#include "cuejm/moments.hpp"
#include "cuejm/rational.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cuejm {

/// Eigenphases of one Haar-distributed unitary matrix, in [0, 2*pi).
struct EigenphaseSample {
    std::vector<double> phases;
    int size() const { return static_cast<int>(phases.size()); }
};

/// splitmix64 finalizer; the sub-stream seed for global sample index i is
/// mix64(seed + (i+1) * 0x9e3779b97f4a7c15), i.e. successive splitmix64
/// outputs of the master seed. This makes the set of per-sample streams, and
/// hence the merged estimate, independent of how samples are sharded over
/// workers.
uint64_t mix64(uint64_t x);
uint64_t substream_seed(uint64_t master_seed, uint64_t index);

/// Haar sampling via complex Ginibre + QR. The unitary factor alone is NOT
/// Haar distributed; each column must be rotated by the phase of the matching
/// diagonal entry of the triangular factor.
EigenphaseSample sample_cue(int N, std::mt19937_64& rng);

/// n-th derivative at s = 1 of prod_m (1 - s e^{-i theta_m}), evaluated from
/// the polynomial coefficients (expanded in O(N^2)).
std::complex<double> lambda_derivative(const EigenphaseSample& sample, int n);

/// n-th derivative at s = 1 of the real-on-the-circle normalization
/// e^{-i pi N/2} e^{i sum theta/2} s^{-N/2} Lambda(s), via the Leibniz rule.
std::complex<double> z_derivative(const EigenphaseSample& sample, int n);

struct MCReport {
    MomentSpec spec;
    Family family = Family::a;
    int N = 0;
    long samples = 0;
    double estimate = 0.0; // already divided by N^exponent
    double stderr_ = 0.0;
    uint64_t seed = 0;
    int workers = 1;
};

/// Monte Carlo estimate of the joint moment divided by N^exponent.
/// Deterministic given (seed); bit-identical for any worker count.
MCReport mc_moment(Family family, const MomentSpec& spec, int N, long samples,
                   uint64_t seed, int workers = 1);

/// E |Lambda^{(n)}(1)|^2 at finite N, exactly: the secular coefficients are
/// uncorrelated with unit variance, so the expectation is
/// sum_{j=n}^{N} (j!/(j-n)!)^2. Leading term N^{2n+1}/(2n+1).
Rational exact_k1_second_moment(int N, int n);

/// JSON with reals at 17 significant digits.
std::string to_json(const MCReport& report);

} // namespace cuejm
