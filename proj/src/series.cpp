#include "cuejm/series.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace cuejm {

TruncSeries series_bessel_normalized(int nu, int order) {
    if (nu < 0) throw std::invalid_argument("series_bessel_normalized: negative index");
    TruncSeries s(order);
    for (int l = 0; l <= order; ++l) {
        s[l] = make_rational(Integer(1), factorial(l) * factorial(nu + l));
    }
    return s;
}

TruncSeries series_exp(const Rational& rate, int order) {
    TruncSeries s(order);
    Rational power(1);
    s[0] = power;
    for (int l = 1; l <= order; ++l) {
        power *= rate;
        s[l] = power * reciprocal_factorial(l);
    }
    return s;
}

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b) {
    const int order = std::min(a.order(), b.order());
    TruncSeries out(order);
    for (int i = 0; i <= order; ++i) out[i] = a[i] + b[i];
    return out;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
    const int order = std::min(a.order(), b.order());
    TruncSeries out(order);
    for (int i = 0; i <= order; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= order; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

TruncSeries series_det(const std::vector<std::vector<TruncSeries>>& m) {
    const int k = static_cast<int>(m.size());
    if (k == 0) throw std::invalid_argument("series_det: empty matrix");
    int order = m[0][0].order();
    for (const auto& row : m) {
        if (static_cast<int>(row.size()) != k)
            throw std::invalid_argument("series_det: matrix is not square");
        for (const auto& e : row) order = std::min(order, e.order());
    }
    if (k == 1) {
        TruncSeries out(order);
        for (int i = 0; i <= order; ++i) out[i] = m[0][0][i];
        return out;
    }

    // minor[S] = det of rows 0..popcount(S)-1 with column set S, built by
    // cofactor expansion along the last row of each minor. This shares the
    // partial products among all permutations.
    std::vector<TruncSeries> minor(size_t{1} << k, TruncSeries(order));
    minor[0] = TruncSeries::constant(Rational(1), order);
    for (unsigned s = 1; s < (1u << k); ++s) {
        const int row = std::popcount(s) - 1;
        TruncSeries acc(order);
        int pos = 0;
        for (int j = 0; j < k; ++j) {
            if (!(s & (1u << j))) continue;
            const TruncSeries part = series_mul(m[row][j], minor[s & ~(1u << j)]);
            const bool negate = ((row + pos) % 2) != 0;
            for (int t = 0; t <= order; ++t) {
                if (negate) acc[t] -= part[t];
                else acc[t] += part[t];
            }
            ++pos;
        }
        minor[s] = std::move(acc);
    }
    return minor[(1u << k) - 1];
}

Rational derivative_at_zero(const TruncSeries& s, int m) {
    if (m < 0) throw std::domain_error("derivative_at_zero: negative order");
    if (m > s.order()) throw std::domain_error("derivative_at_zero: truncation order too small");
    return Rational(factorial(m)) * s[m];
}

namespace {

struct DetKey {
    std::vector<int> rho; // sorted row indices nu_i + i (1-based rows)
    int order;
    bool operator==(const DetKey&) const = default;
};

struct DetKeyHash {
    size_t operator()(const DetKey& key) const {
        size_t h = std::hash<int>()(key.order);
        for (int v : key.rho) h = h * 1000003u + static_cast<size_t>(v) + 0x9e3779b9u;
        return h;
    }
};

std::unordered_map<DetKey, TruncSeries, DetKeyHash> g_det_cache;
std::shared_mutex g_det_mutex;

TruncSeries shifted_bessel_det(const std::vector<int>& rho, int order) {
    const DetKey key{rho, order};
    {
        std::shared_lock lock(g_det_mutex);
        auto it = g_det_cache.find(key);
        if (it != g_det_cache.end()) return it->second;
    }
    const int k = static_cast<int>(rho.size());
    std::vector<std::vector<TruncSeries>> m;
    m.reserve(k);
    for (int i = 0; i < k; ++i) {
        std::vector<TruncSeries> row;
        row.reserve(k);
        for (int j = 0; j < k; ++j) row.push_back(series_bessel_normalized(rho[i] + j, order));
        m.push_back(std::move(row));
    }
    TruncSeries det = series_det(m);
    std::unique_lock lock(g_det_mutex);
    return g_det_cache.try_emplace(key, std::move(det)).first->second;
}

} // namespace

Rational bessel_det_derivative(int k, std::span<const int> shifts, int half_power_times2,
                               const Rational& exp_rate, int deriv_order) {
    if (k < 1 || static_cast<int>(shifts.size()) != k)
        throw std::invalid_argument("bessel_det_derivative: bad dimension");
    if (deriv_order < 0) throw std::domain_error("bessel_det_derivative: negative derivative order");
    long shift_sum = 0;
    for (int s : shifts) {
        if (s < 0) throw std::invalid_argument("bessel_det_derivative: negative shift");
        shift_sum += s;
    }
    if (static_cast<long>(half_power_times2) != shift_sum + static_cast<long>(k) * k)
        throw std::domain_error("bessel_det_derivative: 2p != sum(shifts) + k^2");

    // Row i of the determinant is g_{rho_i + j - 1} with rho_i = nu_i + i.
    // Equal rho values mean equal rows, so the determinant vanishes; otherwise
    // sort the rows and track the permutation parity.
    std::vector<int> rho(shifts.size());
    for (int i = 0; i < k; ++i) rho[i] = shifts[i] + i + 1;
    int parity = 1;
    for (int i = 0; i < k; ++i) { // insertion sort, counting swaps
        for (int j = i; j > 0 && rho[j] < rho[j - 1]; --j) {
            std::swap(rho[j], rho[j - 1]);
            parity = -parity;
        }
    }
    for (int i = 0; i + 1 < k; ++i) {
        if (rho[i] == rho[i + 1]) return Rational(0);
    }

    const TruncSeries det = shifted_bessel_det(rho, deriv_order);
    // Only coefficient deriv_order of e^{rate x} * det is needed.
    Rational acc(0);
    Rational rate_power(1);
    for (int l = 0; l <= deriv_order; ++l) {
        const Rational& d = det[deriv_order - l];
        if (d != 0) acc += rate_power * reciprocal_factorial(l) * d;
        rate_power *= exp_rate;
    }
    acc *= Rational(factorial(deriv_order));
    if (parity < 0) acc = -acc;
    return acc;
}

} // namespace cuejm
