#include "cuejm/result_cache.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace cuejm {

namespace {

using nlohmann::ordered_json;

ordered_json record_to_json(const CoeffResult& r) {
    return ordered_json{{"family", std::string(to_string(r.family))},
                        {"k", r.spec.k},
                        {"M", r.spec.M},
                        {"n1", r.spec.n1},
                        {"n2", r.spec.n2},
                        {"value", to_string(r.value)},
                        {"exponent", r.exponent},
                        {"route", std::string(to_string(r.route))}};
}

CoeffResult record_from_json(const ordered_json& j) {
    CoeffResult r;
    const auto family = parse_family(j.at("family").get<std::string>());
    const auto route = parse_route(j.at("route").get<std::string>());
    if (!family || !route) throw std::runtime_error("cache: unknown family or route");
    r.family = *family;
    r.route = *route;
    r.spec = MomentSpec{j.at("k").get<int>(), j.at("M").get<int>(), j.at("n1").get<int>(),
                        j.at("n2").get<int>()};
    r.spec.validate();
    r.value = parse_rational(j.at("value").get<std::string>());
    r.exponent = j.at("exponent").get<int>();
    if (r.exponent != r.spec.exponent()) throw std::runtime_error("cache: exponent mismatch");
    return r;
}

// Entry is cheap enough to recompute during the load-time spot check.
bool spot_checkable(const CoeffResult& r) {
    return r.spec.k <= 4 && std::max(r.spec.n1, r.spec.n2) <= 6;
}

} // namespace

CoefficientCache::Key CoefficientCache::make_key(Family family, Route route,
                                                 const MomentSpec& spec) {
    return {static_cast<int>(family), static_cast<int>(route), spec.k, spec.M, spec.n1, spec.n2};
}

void CoefficientCache::load() {
    entries_.clear();
    std::ifstream in(path_);
    if (!in) return; // absent cache is an empty cache
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (text.empty()) return;

    ordered_json doc = ordered_json::parse(text);
    if (!doc.contains("schema") || doc["schema"].get<int>() != 1) {
        throw std::runtime_error("cache: unsupported schema in " + path_.string());
    }
    std::vector<CoeffResult> loaded;
    for (const auto& rec : doc.at("records")) {
        loaded.push_back(record_from_json(rec));
    }

    // Deterministic 5% spot check of cheap entries: selection seeded by the
    // file content so repeated loads of the same file check the same records.
    std::vector<size_t> candidates;
    for (size_t i = 0; i < loaded.size(); ++i) {
        if (spot_checkable(loaded[i])) candidates.push_back(i);
    }
    if (!candidates.empty()) {
        uint64_t h = 1469598103934665603ULL;
        for (char c : text) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
        std::mt19937_64 rng(h);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        const size_t checks = (candidates.size() + 19) / 20;
        for (size_t i = 0; i < checks; ++i) {
            const CoeffResult& cached = loaded[candidates[i]];
            const CoeffResult fresh = coefficient(cached.family, cached.spec, cached.route);
            if (fresh.value != cached.value) {
                throw std::runtime_error("cache: spot check failed for record in " +
                                         path_.string() + ": cached " + to_string(cached.value) +
                                         " != computed " + to_string(fresh.value));
            }
        }
    }

    for (auto& r : loaded) {
        r.cross_checked = false;
        entries_[make_key(r.family, r.route, r.spec)] = std::move(r);
    }
}

void CoefficientCache::save() const {
    ordered_json records = ordered_json::array();
    for (const auto& [key, r] : entries_) records.push_back(record_to_json(r));
    ordered_json doc{{"schema", 1}, {"records", records}};
    const std::filesystem::path tmp = path_.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
        out << doc.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path_);
}

std::optional<CoeffResult> CoefficientCache::lookup(Family family, const MomentSpec& spec,
                                                    Route route) const {
    const auto it = entries_.find(make_key(family, route, spec));
    if (it == entries_.end()) return std::nullopt;
    CoeffResult r = it->second;
    return r;
}

void CoefficientCache::store(const CoeffResult& result) {
    entries_[make_key(result.family, result.route, result.spec)] = result;
}

} // namespace cuejm
