#pragma once

#include "cuejm/rational.hpp"

#include <span>
#include <vector>

namespace cuejm {

/// Formal power series over Rational truncated at a fixed order (inclusive).
/// Coefficients beyond the order are unknown, not zero: arithmetic on two
/// series truncates the result to the smaller order.
class TruncSeries {
public:
    explicit TruncSeries(int order) : coeffs_(static_cast<size_t>(order) + 1) {
        if (order < 0) throw std::invalid_argument("TruncSeries: negative order");
    }
    explicit TruncSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("TruncSeries: empty coefficient list");
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& operator[](int i) const { return coeffs_[static_cast<size_t>(i)]; }
    Rational& operator[](int i) { return coeffs_[static_cast<size_t>(i)]; }

    static TruncSeries constant(const Rational& value, int order) {
        TruncSeries s(order);
        s[0] = value;
        return s;
    }

    bool operator==(const TruncSeries&) const = default;

private:
    std::vector<Rational> coeffs_;
};

/// g_nu(x) = sum_l x^l / (l! (nu+l)!), so that I_nu(2 sqrt x) = x^{nu/2} g_nu(x).
TruncSeries series_bessel_normalized(int nu, int order);

/// e^{rate x}: coeff[l] = rate^l / l!.
TruncSeries series_exp(const Rational& rate, int order);

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);

/// Determinant of a square matrix of series, truncated to the smallest operand
/// order. Signed permutation expansion with the partial row-minor products
/// memoized over column subsets.
TruncSeries series_det(const std::vector<std::vector<TruncSeries>>& m);

/// m! * coeff[m]. Throws std::domain_error when m exceeds the truncation order.
Rational derivative_at_zero(const TruncSeries& s, int m);

/// (d/dx)^deriv_order [ e^{exp_rate x} x^{-p} det_{kxk}( I_{nu_i+i+j-1}(2 sqrt x) ) ] at x = 0,
/// where p = half_power_times2 / 2 and nu = shifts. Requires the exact
/// cancellation 2p == sum(shifts) + k^2 (throws std::domain_error otherwise);
/// under it the x^{(sum nu + k^2)/2} factor pulled out of the determinant
/// cancels x^{-p} and the whole expression is an honest power series.
Rational bessel_det_derivative(int k, std::span<const int> shifts, int half_power_times2,
                               const Rational& exp_rate, int deriv_order);

} // namespace cuejm
