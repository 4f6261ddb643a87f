#include "cuejm/cue_sim.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cuejm {

namespace {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller on the raw integer stream; keeps the sampler independent of
// library-specific distribution implementations.
struct NormalGen {
    std::mt19937_64& rng;
    bool have_spare = false;
    double spare = 0.0;

    double operator()() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = 1.0 - uniform01(rng); // (0, 1]
        const double u2 = uniform01(rng);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare = radius * std::sin(angle);
        have_spare = true;
        return radius * std::cos(angle);
    }
};

} // namespace

uint64_t mix64(uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t substream_seed(uint64_t master_seed, uint64_t index) {
    return mix64(master_seed + (index + 1) * kGolden);
}

EigenphaseSample sample_cue(int N, std::mt19937_64& rng) {
    if (N < 1) throw std::invalid_argument("sample_cue: N must be >= 1");
    NormalGen normal{rng};
    Eigen::MatrixXcd ginibre(N, N);
    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) {
            const double re = normal();
            const double im = normal();
            ginibre(i, j) = std::complex<double>(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
    Eigen::MatrixXcd unitary = qr.householderQ();
    const Eigen::MatrixXcd& packed = qr.matrixQR();
    for (int j = 0; j < N; ++j) {
        const std::complex<double> d = packed(j, j);
        const double mag = std::abs(d);
        const std::complex<double> phase = (mag > 0.0) ? d / mag : std::complex<double>(1.0, 0.0);
        unitary.col(j) *= phase;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(unitary, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("sample_cue: eigensolver failed to converge");
    }
    EigenphaseSample sample;
    sample.phases.resize(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) {
        double theta = std::arg(solver.eigenvalues()(i));
        if (theta < 0.0) theta += 2.0 * std::numbers::pi;
        sample.phases[static_cast<size_t>(i)] = theta;
    }
    return sample;
}

namespace {

std::vector<std::complex<double>> secular_coefficients(const EigenphaseSample& sample) {
    const int N = sample.size();
    std::vector<std::complex<double>> coeff(static_cast<size_t>(N) + 1,
                                            std::complex<double>(0.0, 0.0));
    coeff[0] = 1.0;
    for (int m = 0; m < N; ++m) {
        const std::complex<double> root = std::polar(1.0, -sample.phases[static_cast<size_t>(m)]);
        for (int j = m + 1; j >= 1; --j) coeff[static_cast<size_t>(j)] -= root * coeff[static_cast<size_t>(j) - 1];
    }
    return coeff;
}

std::complex<double> derivative_from_coefficients(const std::vector<std::complex<double>>& coeff,
                                                  int n) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t j = static_cast<size_t>(n); j < coeff.size(); ++j) {
        double falling = 1.0;
        for (int r = 0; r < n; ++r) falling *= static_cast<double>(j - static_cast<size_t>(r));
        acc += falling * coeff[j];
    }
    return acc;
}

} // namespace

std::complex<double> lambda_derivative(const EigenphaseSample& sample, int n) {
    if (n < 0) throw std::invalid_argument("lambda_derivative: negative order");
    return derivative_from_coefficients(secular_coefficients(sample), n);
}

std::complex<double> z_derivative(const EigenphaseSample& sample, int n) {
    if (n < 0) throw std::invalid_argument("z_derivative: negative order");
    const int N = sample.size();
    const auto coeff = secular_coefficients(sample);
    double theta_sum = 0.0;
    for (double t : sample.phases) theta_sum += t;
    const std::complex<double> prefactor =
        std::polar(1.0, -std::numbers::pi * N / 2.0 + theta_sum / 2.0);

    // Leibniz over (d/ds)^m s^{-N/2} |_{s=1} = prod_{r<m} (-N/2 - r).
    std::complex<double> acc(0.0, 0.0);
    double power_term = 1.0;
    double binom = 1.0;
    for (int m = 0; m <= n; ++m) {
        acc += binom * power_term * derivative_from_coefficients(coeff, n - m);
        power_term *= (-0.5 * N - m);
        binom = binom * (n - m) / (m + 1);
    }
    return prefactor * acc;
}

Rational exact_k1_second_moment(int N, int n) {
    if (N < 1) throw std::invalid_argument("exact_k1_second_moment: N must be >= 1");
    if (n < 0) throw std::invalid_argument("exact_k1_second_moment: n must be >= 0");
    Integer total(0);
    for (int j = n; j <= N; ++j) {
        Integer falling(1);
        for (int r = 0; r < n; ++r) falling *= Integer(j - r);
        total += falling * falling;
    }
    return Rational(total);
}

MCReport mc_moment(Family family, const MomentSpec& spec, int N, long samples, uint64_t seed,
                   int workers) {
    spec.validate();
    if (samples < 2) throw std::invalid_argument("mc_moment: need at least 2 samples");
    if (N < 1) throw std::invalid_argument("mc_moment: N must be >= 1");
    if (workers < 1) throw std::invalid_argument("mc_moment: workers must be >= 1");

    const double scale = std::pow(static_cast<double>(N), spec.exponent());
    std::vector<double> values(static_cast<size_t>(samples));

    auto run_range = [&](long begin, long end) {
        for (long i = begin; i < end; ++i) {
            std::mt19937_64 rng(substream_seed(seed, static_cast<uint64_t>(i)));
            const EigenphaseSample sample = sample_cue(N, rng);
            double moment = 1.0;
            if (family == Family::a) {
                const double d1 = std::norm(lambda_derivative(sample, spec.n1));
                const double d2 = std::norm(lambda_derivative(sample, spec.n2));
                moment = std::pow(d1, spec.M) * std::pow(d2, spec.k - spec.M);
            } else {
                const double d1 = std::norm(z_derivative(sample, spec.n1));
                const double d2 = std::norm(z_derivative(sample, spec.n2));
                moment = std::pow(d1, spec.M) * std::pow(d2, spec.k - spec.M);
            }
            values[static_cast<size_t>(i)] = moment / scale;
        }
    };

    const int used_workers = static_cast<int>(std::min<long>(workers, samples));
    if (used_workers == 1) {
        run_range(0, samples);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (samples + used_workers - 1) / used_workers;
        for (int w = 0; w < used_workers; ++w) {
            const long begin = w * chunk;
            const long end = std::min<long>(samples, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    // Index-ordered reduction keeps the report bit-identical across worker counts.
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(samples);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double variance = ss / static_cast<double>(samples - 1);

    MCReport report;
    report.spec = spec;
    report.family = family;
    report.N = N;
    report.samples = samples;
    report.estimate = mean;
    report.stderr_ = std::sqrt(variance / static_cast<double>(samples));
    report.seed = seed;
    report.workers = workers;
    return report;
}

std::string to_json(const MCReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"family\":\"" << to_string(r.family) << "\",\"k\":" << r.spec.k
       << ",\"M\":" << r.spec.M << ",\"n1\":" << r.spec.n1 << ",\"n2\":" << r.spec.n2
       << ",\"N\":" << r.N << ",\"samples\":" << r.samples << ",\"estimate\":" << r.estimate
       << ",\"stderr\":" << r.stderr_ << ",\"seed\":" << r.seed << ",\"workers\":" << r.workers
       << "}";
    return os.str();
}

} // namespace cuejm
