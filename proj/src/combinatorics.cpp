#include "cuejm/combinatorics.hpp"

namespace cuejm {

std::vector<Composition> compositions_exact(int n, int k) {
    std::vector<Composition> out;
    for_each_composition(n, k, [&](std::span<const int> c) {
        out.emplace_back(c.begin(), c.end());
    });
    return out;
}

std::vector<Composition> compositions_bounded(int n, int k) {
    std::vector<Composition> out;
    for_each_bounded_composition(n, k, [&](std::span<const int> c) {
        out.emplace_back(c.begin(), c.end());
    });
    return out;
}

std::vector<Composition> weighted_partition_vectors(int n) {
    std::vector<Composition> out;
    for_each_weighted_partition_vector(n, [&](std::span<const int> c) {
        out.emplace_back(c.begin(), c.end());
    });
    return out;
}

Integer vandermonde_integer(std::span<const int> values) {
    Integer product(1);
    for (size_t i = 0; i < values.size(); ++i) {
        for (size_t j = i + 1; j < values.size(); ++j) {
            product *= Integer(values[j] - values[i]);
            if (product == 0) return product;
        }
    }
    return product;
}

} // namespace cuejm
