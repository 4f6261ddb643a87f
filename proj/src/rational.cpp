#include "cuejm/rational.hpp"

#include <charconv>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace cuejm {

namespace {

// Factorials are appended to a deque so existing elements never move;
// references handed out under the shared lock stay valid forever.
std::deque<Integer> g_factorials{Integer(1)};
std::shared_mutex g_factorial_mutex;

} // namespace

const Integer& factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    {
        std::shared_lock lock(g_factorial_mutex);
        if (static_cast<size_t>(n) < g_factorials.size()) return g_factorials[n];
    }
    std::unique_lock lock(g_factorial_mutex);
    while (g_factorials.size() <= static_cast<size_t>(n)) {
        g_factorials.push_back(g_factorials.back() * Integer(g_factorials.size()));
    }
    return g_factorials[n];
}

Rational reciprocal_factorial(int n) {
    if (n < 0) return Rational(0);
    return make_rational(Integer(1), factorial(n));
}

Integer multinomial(int n, std::span<const int> parts) {
    long long sum = 0;
    for (int p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        sum += p;
    }
    if (sum != n) throw std::invalid_argument("multinomial: parts do not sum to n");
    Integer result = factorial(n);
    for (int p : parts) {
        if (p > 1) result /= factorial(p);
    }
    return result;
}

Integer binomial(int n, int k) {
    if (k < 0 || k > n) return Integer(0);
    const int parts[2] = {k, n - k};
    return multinomial(n, parts);
}

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    Rational r(num, den);
    // boost's mpq backend canonicalizes on two-argument construction, but be
    // explicit in case the backend ever changes.
    mpq_canonicalize(r.backend().data());
    return r;
}

Rational pow_rational(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0) {
        if (exp < 0) throw std::domain_error("pow_rational: zero base with negative exponent");
        return Rational(0);
    }
    const unsigned long mag = static_cast<unsigned long>(exp < 0 ? -exp : exp);
    Integer num = boost::multiprecision::pow(numerator(base), mag);
    Integer den = boost::multiprecision::pow(denominator(base), mag);
    return exp > 0 ? make_rational(num, den) : make_rational(den, num);
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& r) {
    const Integer den = denominator(r);
    if (den == 1) return numerator(r).str();
    return numerator(r).str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty input");
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(Integer(std::string(text)));
        }
        Integer num{std::string(text.substr(0, slash))};
        Integer den{std::string(text.substr(slash + 1))};
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return make_rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument(std::string("parse_rational: ") + e.what());
    }
}

} // namespace cuejm
