#pragma once

#include "cuejm/moments.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <tuple>

namespace cuejm {

/// File-backed store of computed coefficients, one JSON document with
/// "schema": 1. Loading spot-checks a deterministic 5% sample of the cheap
/// entries against fresh computation and throws on any mismatch.
class CoefficientCache {
public:
    explicit CoefficientCache(std::filesystem::path path) : path_(std::move(path)) {}

    /// Loads the file if it exists. Throws std::runtime_error on schema or
    /// spot-check failure.
    void load();
    void save() const;

    std::optional<CoeffResult> lookup(Family family, const MomentSpec& spec, Route route) const;
    void store(const CoeffResult& result);

    size_t size() const { return entries_.size(); }
    const std::filesystem::path& path() const { return path_; }

private:
    using Key = std::tuple<int, int, int, int, int, int>; // family, route, k, M, n1, n2
    static Key make_key(Family family, Route route, const MomentSpec& spec);

    std::filesystem::path path_;
    std::map<Key, CoeffResult> entries_;
};

} // namespace cuejm
