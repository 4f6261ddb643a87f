// cuejm: exact joint-moment coefficients of CUE characteristic polynomial
// derivatives, their Monte Carlo validation, and the conjectured zeta/Z
// moment constants.
//
// Exit codes: 0 ok, 2 usage error, 3 route disagreement, 4 table fixture
// mismatch, 5 Monte Carlo check failed, 1 anything else.

#include "cuejm/arithmetic_factor.hpp"
#include "cuejm/cue_sim.hpp"
#include "cuejm/moments.hpp"
#include "cuejm/result_cache.hpp"
#include "cuejm/table_fixtures.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using cuejm::CoeffResult;
using cuejm::Family;
using cuejm::MomentSpec;
using cuejm::Route;
using nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitDisagreement = 3;
constexpr int kExitFixtureMismatch = 4;
constexpr int kExitMcFail = 5;

ordered_json record_json(const CoeffResult& r) {
    return ordered_json{{"family", std::string(to_string(r.family))},
                        {"k", r.spec.k},
                        {"M", r.spec.M},
                        {"n1", r.spec.n1},
                        {"n2", r.spec.n2},
                        {"value", cuejm::to_string(r.value)},
                        {"exponent", r.exponent},
                        {"route", std::string(to_string(r.route))}};
}

struct CoeffArgs {
    std::string family;
    MomentSpec spec;
    std::string route;
    bool cross_check = false;
    std::string cache_path;
};

struct TableArgs {
    std::string preset;
    std::string family = "a";
    int k = 2, M = 1, max_n1 = 3;
    std::string format = "csv";
    bool verify = false;
    std::string output;
    bool skip_alternate = false;
};

struct McArgs {
    std::string family;
    MomentSpec spec;
    int N = 64;
    long samples = 10000;
    uint64_t seed = 1;
    int workers = 1;
    double sigma = 3.0;
    double rel_tol = 0.05;
};

struct CkArgs {
    int k = 2;
    long cutoff = 1000000;
    double tol = 1e-14;
};

Family family_or_throw(const std::string& text) {
    const auto f = cuejm::parse_family(text);
    if (!f) throw CLI::ValidationError("family must be 'a' or 'b'");
    return *f;
}

int run_coeff(const CoeffArgs& args) {
    const Family family = family_or_throw(args.family);
    std::optional<Route> route;
    if (!args.route.empty()) {
        route = cuejm::parse_route(args.route);
        if (!route) throw CLI::ValidationError("unknown route: " + args.route);
    }

    std::optional<cuejm::CoefficientCache> cache;
    if (!args.cache_path.empty()) {
        cache.emplace(args.cache_path);
        cache->load();
    }

    auto evaluate = [&](Route r) {
        if (cache) {
            if (auto hit = cache->lookup(family, args.spec, r)) return *hit;
        }
        CoeffResult res = cuejm::coefficient(family, args.spec, r);
        if (cache) cache->store(res);
        return res;
    };

    CoeffResult result;
    if (route) {
        result = evaluate(*route);
    } else {
        // cross-check mode is the default: compute all routes, require equality
        std::vector<CoeffResult> results;
        for (Route r : cuejm::all_routes()) results.push_back(evaluate(r));
        for (size_t i = 1; i < results.size(); ++i) {
            if (results[i].value != results[0].value)
                throw cuejm::RouteDisagreement(results[0], results[i]);
        }
        result = results[0];
        result.cross_checked = true;
    }
    if (cache) cache->save();
    ordered_json out = record_json(result);
    if (result.cross_checked) out["cross_checked"] = true;
    std::cout << out.dump() << "\n";
    return 0;
}

int run_table(const TableArgs& args) {
    std::vector<cuejm::TableEntry> entries;
    std::string label;
    const bool is_preset = !args.preset.empty();
    if (is_preset) {
        const cuejm::TablePreset* preset = cuejm::find_preset(args.preset);
        if (!preset) throw CLI::ValidationError("unknown preset: " + args.preset);
        entries = preset->entries;
        label = preset->name;
    } else {
        const Family family = family_or_throw(args.family);
        for (int n1 = 0; n1 <= args.max_n1; ++n1) {
            for (int n2 = 0; n2 <= n1; ++n2) {
                entries.push_back({family, MomentSpec{args.k, args.M, n1, n2}, cuejm::Rational(0)});
            }
        }
        label = "grid";
    }

    std::vector<Route> routes = cuejm::all_routes();
    if (args.skip_alternate) {
        routes = {Route::bessel_det, Route::combinatorial};
    }

    std::vector<CoeffResult> results;
    bool mismatch = false;
    for (const auto& entry : entries) {
        CoeffResult res = cuejm::coefficient_cross_checked(entry.family, entry.spec, routes);
        if (args.verify && is_preset && res.value != entry.expected) {
            std::cerr << "fixture mismatch: " << to_string(entry.family) << "(k=" << entry.spec.k
                      << ",M=" << entry.spec.M << ",n1=" << entry.spec.n1
                      << ",n2=" << entry.spec.n2 << ") computed " << cuejm::to_string(res.value)
                      << " != table " << cuejm::to_string(entry.expected) << "\n";
            mismatch = true;
        }
        results.push_back(std::move(res));
    }

    std::ostringstream body;
    if (args.format == "csv") {
        body << "family,k,M,n1,n2,value,exponent\n";
        for (const auto& r : results) {
            body << to_string(r.family) << "," << r.spec.k << "," << r.spec.M << "," << r.spec.n1
                 << "," << r.spec.n2 << "," << cuejm::to_string(r.value) << "," << r.exponent
                 << "\n";
        }
    } else if (args.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : results) arr.push_back(record_json(r));
        body << arr.dump(2) << "\n";
    } else {
        throw CLI::ValidationError("format must be csv or json");
    }

    if (!args.output.empty()) {
        std::ofstream out(args.output);
        if (!out) throw std::runtime_error("cannot write " + args.output);
        out << body.str();
    } else {
        std::cout << body.str();
    }

    if (args.verify) {
        if (mismatch) return kExitFixtureMismatch;
        std::cerr << "verified " << label << ": " << results.size() << " entries match\n";
    }
    return 0;
}

int run_mc(const McArgs& args) {
    const Family family = family_or_throw(args.family);
    const cuejm::MCReport report =
        cuejm::mc_moment(family, args.spec, args.N, args.samples, args.seed, args.workers);
    const CoeffResult target =
        cuejm::coefficient(family, args.spec, cuejm::preferred_route(args.spec));
    const double exact = cuejm::to_real(target.value).convert_to<double>();

    const double err = std::abs(report.estimate - exact);
    const double allowed = std::max(args.sigma * report.stderr_, args.rel_tol * exact);
    const bool pass = err <= allowed;

    std::cout << cuejm::to_json(report) << "\n";
    std::cout << "target " << cuejm::to_string(target.value) << " = " << exact << ", |diff| "
              << err << " vs allowed " << allowed << " (" << args.sigma << "*stderr or "
              << args.rel_tol * 100 << "%): " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : kExitMcFail;
}

int run_ck(const CkArgs& args) {
    const cuejm::ArithmeticFactorResult r =
        cuejm::arithmetic_factor(args.k, args.cutoff, args.tol);
    ordered_json out{{"k", r.k},
                     {"cutoff", r.prime_cutoff},
                     {"value", r.value.str(30)},
                     {"tail_bound_estimate", r.tail_bound_estimate.str(6)}};
    std::cout << out.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint-moment coefficients of CUE characteristic polynomial derivatives"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags override file values");

    CoeffArgs coeff_args;
    auto* coeff = app.add_subcommand("coeff", "compute one coefficient (cross-checked by default)");
    coeff->add_option("family", coeff_args.family, "a|b")->required();
    coeff->add_option("k", coeff_args.spec.k)->required();
    coeff->add_option("M", coeff_args.spec.M)->required();
    coeff->add_option("n1", coeff_args.spec.n1)->required();
    coeff->add_option("n2", coeff_args.spec.n2)->required();
    auto* route_opt = coeff->add_option("--route", coeff_args.route,
                                        "single route: besselDet|combinatorial|alternate");
    coeff->add_flag("--cross-check", coeff_args.cross_check, "evaluate all routes (default)")
        ->excludes(route_opt);
    coeff->add_option("--cache", coeff_args.cache_path,
                      "JSON result cache (also CUEJM_CACHE)")
        ->envname("CUEJM_CACHE");

    TableArgs table_args;
    auto* table = app.add_subcommand("table", "emit/verify a coefficient table");
    auto* preset_opt = table->add_option("preset", table_args.preset, "bkk20|a21|b21");
    table->add_option("--family", table_args.family, "grid family (when no preset)");
    table->add_option("--k", table_args.k, "grid k");
    table->add_option("--M", table_args.M, "grid M");
    table->add_option("--max-n1", table_args.max_n1, "grid: all n2 <= n1 <= max-n1");
    table->add_option("--format", table_args.format, "csv|json (default csv)");
    table->add_flag("--verify", table_args.verify, "compare against the embedded reference values")
        ->needs(preset_opt);
    table->add_option("-o,--output", table_args.output, "write to file instead of stdout");
    table->add_flag("--skip-alternate", table_args.skip_alternate,
                    "cross-check with the two determinant routes only");

    McArgs mc_args;
    auto* mc = app.add_subcommand("mc", "Monte Carlo check of one coefficient");
    mc->add_option("family", mc_args.family, "a|b")->required();
    mc->add_option("k", mc_args.spec.k)->required();
    mc->add_option("M", mc_args.spec.M)->required();
    mc->add_option("n1", mc_args.spec.n1)->required();
    mc->add_option("n2", mc_args.spec.n2)->required();
    mc->add_option("--N", mc_args.N, "matrix size")->required();
    mc->add_option("--samples", mc_args.samples, "sample count (default 10000)");
    mc->add_option("--seed", mc_args.seed, "master seed (default 1)");
    mc->add_option("--workers", mc_args.workers, "worker threads (default 1)");
    mc->add_option("--sigma", mc_args.sigma, "stderr multiple in the tolerance (default 3)");
    mc->add_option("--rel-tol", mc_args.rel_tol, "relative slack in the tolerance (default 0.05)");

    CkArgs ck_args;
    auto* ck = app.add_subcommand("ck", "arithmetic factor of the moment conjecture");
    ck->add_option("k", ck_args.k)->required();
    ck->add_option("cutoff", ck_args.cutoff, "prime cutoff");
    ck->add_option("tol", ck_args.tol, "inner-sum term tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (coeff->parsed()) return run_coeff(coeff_args);
        if (table->parsed()) return run_table(table_args);
        if (mc->parsed()) return run_mc(mc_args);
        if (ck->parsed()) return run_ck(ck_args);
    } catch (const cuejm::RouteDisagreement& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDisagreement;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
