#include "cuejm/moments.hpp"

#include "cuejm/combinatorics.hpp"
#include "cuejm/series.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <future>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace cuejm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Kernels: sum over k-part splittings of a derivative profile m = (m_1..m_n).
// Two independent evaluation paths (series determinant vs expanded sum), each
// memoized separately so one can never contaminate the other.
// ---------------------------------------------------------------------------

enum class KernelRate : uint8_t { full, half }; // e^{-x} vs e^{-x/2}

std::vector<int> strip_trailing_zeros(std::span<const int> m) {
    std::vector<int> out(m.begin(), m.end());
    while (!out.empty() && out.back() == 0) out.pop_back();
    for (int v : out) {
        if (v < 0) throw std::invalid_argument("moment kernel: negative entry in profile");
    }
    return out;
}

struct KernelKey {
    int k;
    uint8_t rate;
    uint8_t path; // 0 series, 1 explicit
    std::vector<int> m;
    bool operator==(const KernelKey&) const = default;
};

struct KernelKeyHash {
    size_t operator()(const KernelKey& key) const {
        size_t h = static_cast<size_t>(key.k) * 31 + key.rate * 7 + key.path;
        for (int v : key.m) h = h * 1000003u + static_cast<size_t>(v) + 0x9e3779b9u;
        return h;
    }
};

std::unordered_map<KernelKey, Rational, KernelKeyHash> g_kernel_cache;
std::shared_mutex g_kernel_mutex;

// --- series path -----------------------------------------------------------

struct SeriesKernel {
    int k;
    Rational rate;
    int m1;
    std::span<const int> rest; // m_2..m_n
    std::vector<int> shifts;
    Rational total{0};

    void run() {
        shifts.assign(static_cast<size_t>(k), 0);
        descend(0, Integer(1));
    }

    void descend(size_t idx, const Integer& weight) {
        if (idx == rest.size()) {
            long shift_sum = 0;
            for (int s : shifts) shift_sum += s;
            total += Rational(weight) *
                     bessel_det_derivative(k, shifts, static_cast<int>(shift_sum) + k * k,
                                           rate, m1);
            return;
        }
        const int s = static_cast<int>(idx) + 2;
        for_each_composition(rest[idx], k, [&](std::span<const int> comp) {
            Integer w = weight * multinomial(rest[idx], comp);
            for (int i = 0; i < k; ++i) shifts[i] += s * comp[i];
            descend(idx + 1, w);
            for (int i = 0; i < k; ++i) shifts[i] -= s * comp[i];
        });
    }
};

Rational kernel_series(int k, const std::vector<int>& m, KernelRate rate) {
    SeriesKernel sum;
    sum.k = k;
    sum.rate = (rate == KernelRate::half) ? make_rational(Integer(-1), Integer(2)) : Rational(-1);
    sum.m1 = m.empty() ? 0 : m[0];
    sum.rest = std::span<const int>(m).subspan(m.empty() ? 0 : 1);
    sum.run();
    return sum.total;
}

// --- explicit path ---------------------------------------------------------

// Partial Vandermonde product held in __int128 and flushed to an Integer
// before it can overflow.
struct VdmAccum {
    __int128 small = 1;
    Integer big{1};
    bool has_big = false;

    void multiply(long factor) {
        constexpr __int128 limit = (__int128(1) << 100);
        if (small > limit || small < -limit) {
            big *= Integer(static_cast<long long>(small >> 64)) * (Integer(1) << 64) +
                   Integer(static_cast<unsigned long long>(small & ~0ull));
            has_big = true;
            small = 1;
        }
        small *= factor;
    }

    Integer value() const {
        Integer v = Integer(static_cast<long long>(small >> 64)) * (Integer(1) << 64) +
                    Integer(static_cast<unsigned long long>(small & ~0ull));
        return has_big ? big * v : v;
    }
};

// Row-wise expansion of the factorial/Vandermonde sum. Recursing over matrix
// rows (instead of over one splitting at a time) lets a repeated row degree
// kill the whole subtree as soon as it appears, since the Vandermonde factor
// of a repeat is zero.
struct ExplicitKernel {
    int k = 0;
    int n = 0;
    std::vector<int> m;
    std::vector<Rational> slack;  // weight of the left-over first-order slot
    std::vector<int> rem;
    std::vector<int> rho;
    Rational total{0};

    void prepare(KernelRate rate) {
        const int m1 = m.empty() ? 0 : m[0];
        slack.resize(static_cast<size_t>(m1) + 1);
        Rational step = (rate == KernelRate::half) ? make_rational(Integer(-1), Integer(2))
                                                   : Rational(-1);
        Rational power(1);
        for (int t = 0; t <= m1; ++t) {
            slack[t] = power * reciprocal_factorial(t);
            power *= step;
        }
        rem = m;
        rho.assign(static_cast<size_t>(k), 0);
    }

    Integer profile_weight() const {
        Integer w(1);
        for (int ms : m) w *= factorial(ms);
        return w;
    }

    bool rho_seen(int row, int value) const {
        for (int j = 0; j < row; ++j) {
            if (rho[j] == value) return true;
        }
        return false;
    }

    void cell(int row, int s, int degree, const Rational& weight, const VdmAccum& vdm) {
        if (s > n) {
            finish_row(row, degree, weight, vdm);
            return;
        }
        const bool targeted = (row == k && s >= 2); // last row must consume the budget
        const int lo = targeted ? rem[s - 1] : 0;
        const int hi = rem[s - 1];
        for (int c = lo; c <= hi; ++c) {
            rem[s - 1] -= c;
            cell(row, s + 1, degree + s * c, weight * reciprocal_factorial(c), vdm);
            rem[s - 1] += c;
        }
    }

    void finish_row(int row, int degree, const Rational& weight, VdmAccum vdm) {
        const int r = degree - row;
        if (rho_seen(row - 1, r)) return; // repeated row degree: zero subtree
        for (int j = 0; j < row - 1; ++j) vdm.multiply(r - rho[j]);
        rho[row - 1] = r;
        const Rational w = weight * reciprocal_factorial(2 * k + degree - row);
        if (row == k) {
            const int m10 = m.empty() ? 0 : rem[0];
            total += w * slack[m10] * Rational(vdm.value());
        } else {
            cell(row + 1, 1, 0, w, vdm);
        }
    }
};

Rational kernel_explicit(int k, const std::vector<int>& m, KernelRate rate) {
    const int n = static_cast<int>(m.size());
    // Rough leaf count decides whether to fan the first row out across threads.
    double est = 1.0;
    if (n >= 1) {
        for (int i = 1; i < n; ++i)
            est *= binomial(m[i] + k - 1, k - 1).convert_to<double>();
        est *= binomial(m[0] + k, k).convert_to<double>();
    }
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (est < 2e6 || hw < 2 || k < 2) {
        ExplicitKernel sum;
        sum.k = k;
        sum.n = n;
        sum.m = m;
        sum.prepare(rate);
        sum.cell(1, 1, 0, Rational(1), VdmAccum{});
        return sum.total * Rational(sum.profile_weight());
    }

    // Enumerate the first row's choices, then split them across workers.
    struct RowState {
        Rational weight;
        std::vector<int> rem;
        int rho0;
    };
    std::vector<RowState> states;
    {
        ExplicitKernel probe;
        probe.k = 1; // stop after one row
        probe.n = n;
        probe.m = m;
        probe.prepare(rate);
        // replicate cell() for row 1, capturing states instead of recursing
        std::vector<int>& rem = probe.rem;
        std::vector<int> choice(static_cast<size_t>(n), 0);
        auto rec = [&](auto&& self, int s, int degree, const Rational& weight) -> void {
            if (s > n) {
                const int r = degree - 1;
                states.push_back(RowState{weight * reciprocal_factorial(2 * k + degree - 1), rem, r});
                return;
            }
            for (int c = 0; c <= rem[s - 1]; ++c) {
                rem[s - 1] -= c;
                self(self, s + 1, degree + s * c, weight * reciprocal_factorial(c));
                rem[s - 1] += c;
            }
        };
        rec(rec, 1, 0, Rational(1));
    }

    const unsigned workers = std::min<unsigned>(hw, 4);
    std::vector<std::future<Rational>> futures;
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w]() {
            Rational part(0);
            for (size_t idx = w; idx < states.size(); idx += workers) {
                ExplicitKernel sum;
                sum.k = k;
                sum.n = n;
                sum.m = m;
                sum.prepare(rate);
                sum.rem = states[idx].rem;
                sum.rho[0] = states[idx].rho0;
                VdmAccum vdm;
                sum.cell(2, 1, 0, states[idx].weight, vdm);
                part += sum.total;
            }
            return part;
        }));
    }
    Rational total(0);
    for (auto& f : futures) total += f.get();
    ExplicitKernel weight_helper;
    weight_helper.m = m;
    return total * Rational(weight_helper.profile_weight());
}

Rational kernel(int k, std::span<const int> m_in, KernelRate rate, bool explicit_path) {
    if (k < 1) throw std::invalid_argument("moment kernel: k must be >= 1");
    KernelKey key{k, static_cast<uint8_t>(rate), static_cast<uint8_t>(explicit_path ? 1 : 0),
                  strip_trailing_zeros(m_in)};
    {
        std::shared_lock lock(g_kernel_mutex);
        auto it = g_kernel_cache.find(key);
        if (it != g_kernel_cache.end()) return it->second;
    }
    Rational value = explicit_path ? kernel_explicit(k, key.m, rate)
                                   : kernel_series(k, key.m, rate);
    std::unique_lock lock(g_kernel_mutex);
    return g_kernel_cache.try_emplace(std::move(key), std::move(value)).first->second;
}

// ---------------------------------------------------------------------------
// Outer sums of the determinant-based routes. The two routes share this outer
// enumeration and differ only in the kernel path.
// ---------------------------------------------------------------------------

struct PartitionProfiles {
    std::vector<std::vector<int>> parts; // (m_1..m_n) with sum j*m_j = n
    std::vector<Integer> fact;           // prod_j m_j!
    std::vector<Integer> jpow;           // prod_j j^{m_j}
};

PartitionProfiles partition_profiles(int n) {
    PartitionProfiles out;
    for (auto& p : weighted_partition_vectors(n)) {
        Integer f(1), jp(1);
        for (int j = 1; j <= static_cast<int>(p.size()); ++j) {
            f *= factorial(p[j - 1]);
            jp *= boost::multiprecision::pow(Integer(j), static_cast<unsigned>(p[j - 1]));
        }
        out.parts.push_back(p);
        out.fact.push_back(std::move(f));
        out.jpow.push_back(std::move(jp));
    }
    return out;
}

using WeightMap = std::map<std::vector<int>, Rational>;

int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

// Moments of the characteristic polynomial, theorem parameterisation
// (exponent 2(k - Mthm) on the n1-th derivative); needs n1 >= n2.
Rational theorem_lambda(int k, int Mthm, int n1, int n2, bool explicit_core) {
    const auto A = partition_profiles(n1);
    const auto B = partition_profiles(n2);
    const int P = static_cast<int>(A.parts.size());
    const int Q = static_cast<int>(B.parts.size());
    const int kM = k - Mthm;

    auto build = [&](const PartitionProfiles& prof, int count, int order, int n) {
        WeightMap mp;
        const int nparts = static_cast<int>(prof.parts.size());
        const auto comps = compositions_exact(order, nparts);
        const Integer nf_pow =
            boost::multiprecision::pow(factorial(n), static_cast<unsigned>(2 * order));
        (void)count;
        for (const auto& l : comps) {
            for (const auto& lp : comps) {
                Integer denom(1);
                for (int i = 0; i < nparts; ++i) {
                    if (l[i] + lp[i] > 0)
                        denom *= boost::multiprecision::pow(prof.fact[i] * prof.jpow[i],
                                                            static_cast<unsigned>(l[i] + lp[i]));
                }
                const Rational w0 =
                    make_rational(multinomial(order, l) * multinomial(order, lp) * nf_pow, denom);
                int first_sum = 0;
                std::vector<int> base(static_cast<size_t>(n), 0);
                for (int i = 0; i < nparts; ++i) {
                    for (int j = 0; j < n; ++j) base[j] += (l[i] + lp[i]) * prof.parts[i][j];
                    if (n >= 1) first_sum += lp[i] * prof.parts[i][0];
                }
                for (int t = 0; t <= first_sum; ++t) {
                    std::vector<int> v = base;
                    if (n >= 1) v[0] -= t;
                    mp[v] += w0 * Rational(binomial(first_sum, t));
                }
            }
        }
        return mp;
    };

    const WeightMap MA = build(A, P, kM, n1);
    const WeightMap MB = build(B, Q, Mthm, n2);

    WeightMap combined;
    for (const auto& [va, wa] : MA) {
        for (const auto& [vb, wb] : MB) {
            std::vector<int> v = va;
            for (int j = 0; j < n2; ++j) v[j] += vb[j];
            combined[v] += wa * wb;
        }
    }

    Rational total(0);
    for (const auto& [v, w] : combined) {
        total += w * kernel(k, v, KernelRate::full, explicit_core);
    }
    return Rational(parity_sign(static_cast<long>(kM) * n1 + static_cast<long>(Mthm) * n2 +
                                static_cast<long>(k) * (k - 1) / 2)) *
           total;
}

// Moments of the Z-analogue, theorem parameterisation; needs n1 >= n2.
Rational theorem_z(int k, int Mthm, int n1, int n2, bool explicit_core) {
    const auto A = partition_profiles(n1);
    const auto B = partition_profiles(n2);
    const int kM = k - Mthm;

    auto build = [&](const PartitionProfiles& prof, int order, int n) {
        WeightMap mp;
        const int nparts = static_cast<int>(prof.parts.size());
        const Integer nf_pow =
            boost::multiprecision::pow(factorial(n), static_cast<unsigned>(order));
        for (const auto& l : compositions_exact(order, nparts)) {
            Integer denom(1);
            for (int i = 0; i < nparts; ++i) {
                if (l[i] > 0)
                    denom *= boost::multiprecision::pow(prof.fact[i] * prof.jpow[i],
                                                        static_cast<unsigned>(l[i]));
            }
            std::vector<int> v(static_cast<size_t>(n), 0);
            for (int i = 0; i < nparts; ++i) {
                for (int j = 0; j < n; ++j) v[j] += l[i] * prof.parts[i][j];
            }
            mp[v] += make_rational(multinomial(order, l) * nf_pow, denom);
        }
        return mp;
    };

    const WeightMap MA = build(A, 2 * kM, n1);
    const WeightMap MB = build(B, 2 * Mthm, n2);

    WeightMap combined;
    for (const auto& [va, wa] : MA) {
        for (const auto& [vb, wb] : MB) {
            std::vector<int> v = va;
            for (int j = 0; j < n2; ++j) v[j] += vb[j];
            combined[v] += wa * wb;
        }
    }

    Rational total(0);
    for (const auto& [v, w] : combined) {
        total += w * kernel(k, v, KernelRate::half, explicit_core);
    }
    return Rational(parity_sign(static_cast<long>(kM) * n1 + static_cast<long>(Mthm) * n2 +
                                static_cast<long>(k) * (k - 1) / 2)) *
           total;
}

// ---------------------------------------------------------------------------
// Alternate route: bounded-composition sums. The per-factor enumerations are
// aggregated into weight maps over the row-degree vector W and convolved, an
// exact regrouping of the nested sum that keeps the term count polynomial.
// ---------------------------------------------------------------------------

struct Packing {
    int k;
    int bits;
    uint64_t pack(std::span<const int> v) const {
        uint64_t key = 0;
        for (int i = 0; i < k; ++i) key |= static_cast<uint64_t>(v[i]) << (i * bits);
        return key;
    }
    void unpack(uint64_t key, int* out) const {
        const uint64_t mask = (bits == 64) ? ~0ull : ((uint64_t{1} << bits) - 1);
        for (int i = 0; i < k; ++i) out[i] = static_cast<int>((key >> (i * bits)) & mask);
    }
};

Packing make_packing(int k, int wmax) {
    if (k < 1) throw std::invalid_argument("alternate route: k must be >= 1");
    const int bits = 64 / k;
    if (bits < 1 || (bits < 64 && wmax >= (1 << std::min(bits, 30))))
        throw std::domain_error("alternate route: request too large for packed enumeration");
    return Packing{k, bits};
}

using PackedMap = std::unordered_map<uint64_t, Rational>;

PackedMap convolve(const PackedMap& a, const PackedMap& b) {
    PackedMap out;
    out.reserve(a.size() * 2);
    for (const auto& [ka, wa] : a) {
        for (const auto& [kb, wb] : b) {
            out[ka + kb] += wa * wb; // coordinate-wise add; packing has headroom
        }
    }
    return out;
}

// One factor of the characteristic-polynomial alternate sum: pairs of a
// bounded and an exact composition of n, keyed by their coordinate-wise sum.
PackedMap lambda_block(int n, int k, const Packing& pk) {
    PackedMap mp;
    std::vector<int> v(static_cast<size_t>(k));
    for_each_bounded_composition(n, k, [&](std::span<const int> s) {
        int ssum = 0;
        for (int x : s) ssum += x;
        const Rational ws = Rational(parity_sign(ssum)) * reciprocal_factorial(n - ssum);
        for_each_composition(n, k, [&](std::span<const int> h) {
            for (int i = 0; i < k; ++i) v[i] = s[i] + h[i];
            mp[pk.pack(v)] += ws;
        });
    });
    return mp;
}

// One factor of the Z alternate sum: bounded compositions weighted by the
// half-power of the unused budget.
PackedMap z_block(int n, int k, const Packing& pk) {
    PackedMap mp;
    const Rational half = make_rational(Integer(-1), Integer(2));
    for_each_bounded_composition(n, k, [&](std::span<const int> s) {
        int ssum = 0;
        for (int x : s) ssum += x;
        mp[pk.pack(s)] += pow_rational(half, n - ssum) * reciprocal_factorial(n - ssum);
    });
    return mp;
}

Rational alt_reduce(const PackedMap& acc, int k, const Packing& pk) {
    Rational total(0);
    std::vector<int> w(static_cast<size_t>(k));
    std::vector<int> rho(static_cast<size_t>(k));
    for (const auto& [key, weight] : acc) {
        pk.unpack(key, w.data());
        bool repeat = false;
        for (int i = 0; i < k && !repeat; ++i) {
            rho[i] = w[i] - (i + 1);
            for (int j = 0; j < i; ++j) {
                if (rho[j] == rho[i]) { repeat = true; break; }
            }
        }
        if (repeat) continue;
        VdmAccum vdm;
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < i; ++j) vdm.multiply(rho[i] - rho[j]);
        }
        Rational term = weight * Rational(vdm.value());
        for (int i = 0; i < k; ++i) term *= reciprocal_factorial(2 * k - (i + 1) + w[i]);
        total += term;
    }
    return total;
}

Rational alt_lambda(int k, int Mthm, int n1, int n2) {
    const int kM = k - Mthm;
    const int wmax = 2 * kM * n1 + 2 * Mthm * n2;
    const Packing pk = make_packing(k, wmax);
    PackedMap acc;
    acc.emplace(0, Rational(1));
    if (kM > 0) {
        const PackedMap block = lambda_block(n1, k, pk);
        for (int q = 0; q < kM; ++q) acc = convolve(acc, block);
    }
    if (Mthm > 0) {
        const PackedMap block = lambda_block(n2, k, pk);
        for (int q = 0; q < Mthm; ++q) acc = convolve(acc, block);
    }
    Rational total = alt_reduce(acc, k, pk);
    total *= Rational(boost::multiprecision::pow(factorial(n1), static_cast<unsigned>(2 * kM)));
    total *= Rational(boost::multiprecision::pow(factorial(n2), static_cast<unsigned>(2 * Mthm)));
    return Rational(parity_sign(static_cast<long>(k) * (k - 1) / 2)) * total;
}

Rational alt_z(int k, int Mthm, int n1, int n2) {
    const int kM = k - Mthm;
    const int wmax = 2 * kM * n1 + 2 * Mthm * n2;
    const Packing pk = make_packing(k, wmax);
    PackedMap acc;
    acc.emplace(0, Rational(1));
    if (kM > 0) {
        const PackedMap block = z_block(n1, k, pk);
        for (int q = 0; q < 2 * kM; ++q) acc = convolve(acc, block);
    }
    if (Mthm > 0) {
        const PackedMap block = z_block(n2, k, pk);
        for (int q = 0; q < 2 * Mthm; ++q) acc = convolve(acc, block);
    }
    Rational total = alt_reduce(acc, k, pk);
    total *= Rational(boost::multiprecision::pow(factorial(n1), static_cast<unsigned>(2 * kM)));
    total *= Rational(boost::multiprecision::pow(factorial(n2), static_cast<unsigned>(2 * Mthm)));
    return Rational(parity_sign(static_cast<long>(kM) * n1 + static_cast<long>(Mthm) * n2 +
                                static_cast<long>(k) * (k - 1) / 2)) *
           total;
}

// ---------------------------------------------------------------------------
// Dispatch + per-coefficient memoization.
// ---------------------------------------------------------------------------

struct CoeffKey {
    Family family;
    Route route;
    MomentSpec spec;
    bool operator==(const CoeffKey&) const = default;
};

struct CoeffKeyHash {
    size_t operator()(const CoeffKey& key) const {
        size_t h = static_cast<size_t>(key.family) * 2 + static_cast<size_t>(key.route);
        h = h * 31 + static_cast<size_t>(key.spec.k);
        h = h * 31 + static_cast<size_t>(key.spec.M);
        h = h * 31 + static_cast<size_t>(key.spec.n1);
        h = h * 31 + static_cast<size_t>(key.spec.n2);
        return h;
    }
};

std::unordered_map<CoeffKey, Rational, CoeffKeyHash> g_coeff_cache;
std::shared_mutex g_coeff_mutex;

Rational coefficient_value(Family family, const MomentSpec& spec, Route route) {
    const CoeffKey key{family, route, spec};
    {
        std::shared_lock lock(g_coeff_mutex);
        auto it = g_coeff_cache.find(key);
        if (it != g_coeff_cache.end()) return it->second;
    }

    Rational value;
    if (route == Route::alternate) {
        const int Mthm = spec.k - spec.M;
        value = (family == Family::a) ? alt_lambda(spec.k, Mthm, spec.n1, spec.n2)
                                      : alt_z(spec.k, Mthm, spec.n1, spec.n2);
    } else {
        // The determinant-based forms assume n1 >= n2; reordering the two
        // factors of the moment swaps M with k-M.
        int M = spec.M, n1 = spec.n1, n2 = spec.n2;
        if (n1 < n2) {
            M = spec.k - M;
            std::swap(n1, n2);
        }
        const int Mthm = spec.k - M;
        const bool explicit_core = (route == Route::combinatorial);
        value = (family == Family::a) ? theorem_lambda(spec.k, Mthm, n1, n2, explicit_core)
                                      : theorem_z(spec.k, Mthm, n1, n2, explicit_core);
    }

    std::unique_lock lock(g_coeff_mutex);
    return g_coeff_cache.try_emplace(key, std::move(value)).first->second;
}

} // namespace

std::string_view to_string(Family f) { return f == Family::a ? "a" : "b"; }

std::string_view to_string(Route r) {
    switch (r) {
        case Route::bessel_det: return "besselDet";
        case Route::combinatorial: return "combinatorial";
        case Route::alternate: return "alternate";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view text) {
    if (text == "a") return Family::a;
    if (text == "b") return Family::b;
    return std::nullopt;
}

std::optional<Route> parse_route(std::string_view text) {
    if (text == "besselDet" || text == "bessel") return Route::bessel_det;
    if (text == "combinatorial") return Route::combinatorial;
    if (text == "alternate") return Route::alternate;
    return std::nullopt;
}

std::vector<Route> all_routes() {
    return {Route::bessel_det, Route::combinatorial, Route::alternate};
}

void MomentSpec::validate() const {
    if (k < 1) throw std::invalid_argument("MomentSpec: k must be >= 1");
    if (M < 0 || M > k) throw std::invalid_argument("MomentSpec: M must lie in [0, k]");
    if (n1 < 0 || n2 < 0) throw std::invalid_argument("MomentSpec: derivative orders must be >= 0");
}

RouteDisagreement::RouteDisagreement(CoeffResult lhs, CoeffResult rhs)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "route disagreement for " << to_string(lhs.family) << "(k=" << lhs.spec.k
             << ",M=" << lhs.spec.M << ",n1=" << lhs.spec.n1 << ",n2=" << lhs.spec.n2
             << "): " << to_string(lhs.route) << "=" << to_string(lhs.value) << " vs "
             << to_string(rhs.route) << "=" << to_string(rhs.value);
          return os.str();
      }()),
      lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

Rational lambda_moment_kernel(int k, std::span<const int> m) {
    return kernel(k, m, KernelRate::full, false);
}

Rational z_moment_kernel(int k, std::span<const int> m) {
    return kernel(k, m, KernelRate::half, false);
}

namespace detail {

Rational lambda_moment_kernel_explicit(int k, std::span<const int> m) {
    return kernel(k, m, KernelRate::full, true);
}

Rational z_moment_kernel_explicit(int k, std::span<const int> m) {
    return kernel(k, m, KernelRate::half, true);
}

} // namespace detail

CoeffResult coefficient(Family family, const MomentSpec& spec, Route route) {
    spec.validate();
    const auto t0 = Clock::now();
    CoeffResult result;
    result.value = coefficient_value(family, spec, route);
    result.exponent = spec.exponent();
    result.route = route;
    result.spec = spec;
    result.family = family;
    result.seconds = seconds_since(t0);
    if (result.value <= 0) {
        throw std::logic_error("coefficient: non-positive value for " +
                               std::string(to_string(family)) + ", internal error");
    }
    return result;
}

CoeffResult coefficient_cross_checked(Family family, const MomentSpec& spec,
                                      std::span<const Route> routes) {
    std::vector<Route> selected(routes.begin(), routes.end());
    if (selected.empty()) selected = all_routes();
    const auto t0 = Clock::now();
    CoeffResult first = coefficient(family, spec, selected.front());
    for (size_t i = 1; i < selected.size(); ++i) {
        CoeffResult other = coefficient(family, spec, selected[i]);
        if (other.value != first.value) throw RouteDisagreement(first, other);
    }
    first.seconds = seconds_since(t0);
    first.cross_checked = true;
    return first;
}

Route preferred_route(const MomentSpec& spec) {
    if (spec.k <= 2 && std::max(spec.n1, spec.n2) >= 3) return Route::alternate;
    return Route::bessel_det;
}

} // namespace cuejm
