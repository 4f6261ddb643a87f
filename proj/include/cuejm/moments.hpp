#pragma once

#include "cuejm/rational.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace cuejm {

/// Coefficient family: 'a' for moments of the characteristic polynomial,
/// 'b' for moments of the real Z-analogue.
enum class Family { a, b };

/// Independent evaluation strategies. besselDet works through truncated-series
/// determinants of normalized Bessel columns, combinatorial through the fully
/// expanded factorial/Vandermonde sum, alternate through bounded-composition
/// sums. All three must agree exactly.
enum class Route { bessel_det, combinatorial, alternate };

std::string_view to_string(Family f);
std::string_view to_string(Route r);
std::optional<Family> parse_family(std::string_view text);
std::optional<Route> parse_route(std::string_view text);
std::vector<Route> all_routes();

/// Identifies one joint-moment coefficient: exponent 2M goes with the n1-th
/// derivative and 2(k-M) with the n2-th, so the moment grows like
/// N^{k^2 + 2 M n1 + 2 (k-M) n2}.
struct MomentSpec {
    int k = 1;
    int M = 0;
    int n1 = 0;
    int n2 = 0;

    int exponent() const { return k * k + 2 * M * n1 + 2 * (k - M) * n2; }
    void validate() const; // throws std::invalid_argument
    bool operator==(const MomentSpec&) const = default;
};

struct CoeffResult {
    Rational value;
    int exponent = 0;
    Route route = Route::bessel_det;
    MomentSpec spec;
    Family family = Family::a;
    double seconds = 0.0;
    bool cross_checked = false;
};

/// Raised when two routes produce different exact values for the same
/// coefficient; carries both offending results.
class RouteDisagreement : public std::runtime_error {
public:
    RouteDisagreement(CoeffResult lhs, CoeffResult rhs);
    const CoeffResult& lhs() const { return lhs_; }
    const CoeffResult& rhs() const { return rhs_; }

private:
    CoeffResult lhs_, rhs_;
};

/// Kernel shared by the determinant-based routes: for a derivative profile
/// m = (m_1..m_n), sums over all k-part splittings of each m_s (s >= 2) the
/// multinomial weight times the m_1-th derivative at zero of
/// e^{rate x} x^{-p} det( I_{shift_i+i+j-1}(2 sqrt x) ). The rate is -1 for the
/// characteristic-polynomial family and -1/2 for the Z family. Trailing zeros
/// of m are immaterial.
Rational lambda_moment_kernel(int k, std::span<const int> m);
Rational z_moment_kernel(int k, std::span<const int> m);

namespace detail {
/// Closed-form twins of the kernels above (expanded factorial/Vandermonde
/// sums). They back the combinatorial route and the kernel equality tests;
/// they share no series machinery with the kernels.
Rational lambda_moment_kernel_explicit(int k, std::span<const int> m);
Rational z_moment_kernel_explicit(int k, std::span<const int> m);
} // namespace detail

/// Evaluate one coefficient by one route.
CoeffResult coefficient(Family family, const MomentSpec& spec, Route route);

/// Evaluate by every route in `routes` (default: all three) and require exact
/// agreement; throws RouteDisagreement otherwise. This is the primary
/// correctness gate.
CoeffResult coefficient_cross_checked(Family family, const MomentSpec& spec,
                                      std::span<const Route> routes = {});

/// Cheapest route for a given shape: the bounded-composition route wins for
/// small k with large derivative orders, the determinant route otherwise.
Route preferred_route(const MomentSpec& spec);

} // namespace cuejm
