#pragma once

#include "cuejm/rational.hpp"

#include <span>
#include <vector>

namespace cuejm {

using Composition = std::vector<int>;

// The enumerators below are streaming: the callback sees a scratch buffer that
// is reused between visits, so callers must copy if they keep a tuple. Orders
// are deterministic (lexicographic, first coordinate slowest) so that sums
// accumulated over them are bit-reproducible.

namespace detail {

template <typename Fn>
void composition_rec(int remaining, int index, int k, std::vector<int>& buf, Fn&& fn) {
    if (index == k - 1) {
        buf[index] = remaining;
        fn(std::span<const int>(buf));
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        buf[index] = v;
        composition_rec(remaining - v, index + 1, k, buf, fn);
    }
}

template <typename Fn>
void bounded_rec(int budget, int index, int k, std::vector<int>& buf, Fn&& fn) {
    if (index == k) {
        fn(std::span<const int>(buf));
        return;
    }
    for (int v = 0; v <= budget; ++v) {
        buf[index] = v;
        bounded_rec(budget - v, index + 1, k, buf, fn);
    }
}

template <typename Fn>
void weighted_rec(int j, int remaining, std::vector<int>& buf, Fn&& fn) {
    if (j == 1) {
        buf[0] = remaining;
        fn(std::span<const int>(buf));
        return;
    }
    for (int mj = 0; mj * j <= remaining; ++mj) {
        buf[j - 1] = mj;
        weighted_rec(j - 1, remaining - mj * j, buf, fn);
    }
}

} // namespace detail

/// All k-tuples of non-negative integers with sum exactly n;
/// count C(n+k-1, k-1).
template <typename Fn>
void for_each_composition(int n, int k, Fn&& fn) {
    if (n < 0 || k < 0) throw std::invalid_argument("for_each_composition: bad arguments");
    if (k == 0) {
        if (n == 0) fn(std::span<const int>{});
        return;
    }
    std::vector<int> buf(k);
    detail::composition_rec(n, 0, k, buf, fn);
}

/// All k-tuples of non-negative integers with sum at most n; count C(n+k, k).
template <typename Fn>
void for_each_bounded_composition(int n, int k, Fn&& fn) {
    if (n < 0 || k < 0) throw std::invalid_argument("for_each_bounded_composition: bad arguments");
    if (k == 0) {
        fn(std::span<const int>{});
        return;
    }
    std::vector<int> buf(k);
    detail::bounded_rec(n, 0, k, buf, fn);
}

/// All vectors (m_1..m_n) of non-negative integers with sum_j j*m_j = n;
/// count p(n). m_1 is determined by the higher entries, which vary slowest.
template <typename Fn>
void for_each_weighted_partition_vector(int n, Fn&& fn) {
    if (n < 0) throw std::invalid_argument("for_each_weighted_partition_vector: n < 0");
    if (n == 0) {
        fn(std::span<const int>{});
        return;
    }
    std::vector<int> buf(n);
    detail::weighted_rec(n, n, buf, fn);
}

std::vector<Composition> compositions_exact(int n, int k);
std::vector<Composition> compositions_bounded(int n, int k);
std::vector<Composition> weighted_partition_vectors(int n);

/// prod_{i<j} (values[j] - values[i]); 1 for fewer than two entries.
Integer vandermonde_integer(std::span<const int> values);

} // namespace cuejm
