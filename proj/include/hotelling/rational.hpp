#pragma once

// Exact rational arithmetic over a checked signed integer type.
//
// Every value is kept in canonical form: denominator > 0 and
// gcd(|num|, den) == 1, with zero stored as 0/1. Equality is therefore
// plain structural equality. All arithmetic either returns the exact
// result or throws std::overflow_error; nothing is ever rounded.

#include <cstdint>
#include <charconv>
#include <compare>
#include <concepts>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hotelling {

namespace detail {

template <typename I>
struct wider;
template <>
struct wider<std::int32_t> { using type = std::int64_t; };
template <>
struct wider<std::int64_t> { using type = __int128; };

template <std::signed_integral I>
constexpr I checked_add(I a, I b) {
    I r{};
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("rational: addition overflow");
    return r;
}

template <std::signed_integral I>
constexpr I checked_sub(I a, I b) {
    I r{};
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("rational: subtraction overflow");
    return r;
}

template <std::signed_integral I>
constexpr I checked_mul(I a, I b) {
    I r{};
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational: multiplication overflow");
    return r;
}

template <std::signed_integral I>
constexpr I checked_negate(I a) {
    return checked_sub(I{0}, a);
}

} // namespace detail

template <std::signed_integral I>
class basic_rational {
public:
    using int_type = I;

    constexpr basic_rational() = default;
    constexpr basic_rational(I value) : num_(value), den_(1) {}

    constexpr basic_rational(I num, I den) : num_(num), den_(den) {
        if (den_ == 0)
            throw std::domain_error("rational: zero denominator");
        normalize();
    }

    constexpr I num() const { return num_; }
    constexpr I den() const { return den_; }

    constexpr int sign() const { return (num_ > 0) - (num_ < 0); }
    constexpr bool is_zero() const { return num_ == 0; }
    constexpr bool is_integer() const { return den_ == 1; }

    constexpr basic_rational operator-() const {
        basic_rational r;
        r.num_ = detail::checked_negate(num_);
        r.den_ = den_;
        return r;
    }

    // a/b + c/d with the shared-gcd form that keeps intermediates small:
    // g = gcd(b, d); result = (a*(d/g) + c*(b/g)) / (b/g * d), reduced by
    // gcd with g only (the cofactors are already coprime to it).
    friend constexpr basic_rational operator+(const basic_rational& a, const basic_rational& b) {
        using detail::checked_add;
        using detail::checked_mul;
        I g = std::gcd(a.den_, b.den_);
        I bd = b.den_ / g;
        I num = checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, a.den_ / g));
        I g2 = std::gcd(absolute(num), g);
        basic_rational r;
        r.num_ = num / g2;
        r.den_ = checked_mul(a.den_ / g2, bd);
        return r;
    }

    friend constexpr basic_rational operator-(const basic_rational& a, const basic_rational& b) {
        return a + (-b);
    }

    friend constexpr basic_rational operator*(const basic_rational& a, const basic_rational& b) {
        using detail::checked_mul;
        I g1 = std::gcd(absolute(a.num_), b.den_);
        I g2 = std::gcd(absolute(b.num_), a.den_);
        basic_rational r;
        r.num_ = checked_mul(a.num_ / g1, b.num_ / g2);
        r.den_ = checked_mul(a.den_ / g2, b.den_ / g1);
        return r;
    }

    friend constexpr basic_rational operator/(const basic_rational& a, const basic_rational& b) {
        if (b.num_ == 0)
            throw std::domain_error("rational: division by zero");
        basic_rational inv;
        if (b.num_ > 0) {
            inv.num_ = b.den_;
            inv.den_ = b.num_;
        } else {
            inv.num_ = detail::checked_negate(b.den_);
            inv.den_ = detail::checked_negate(b.num_);
        }
        return a * inv;
    }

    constexpr basic_rational& operator+=(const basic_rational& o) { return *this = *this + o; }
    constexpr basic_rational& operator-=(const basic_rational& o) { return *this = *this - o; }
    constexpr basic_rational& operator*=(const basic_rational& o) { return *this = *this * o; }
    constexpr basic_rational& operator/=(const basic_rational& o) { return *this = *this / o; }

    friend constexpr bool operator==(const basic_rational&, const basic_rational&) = default;

    // Cross products in the doubled-width type never overflow, so ordering
    // is exact for all representable values.
    friend constexpr std::strong_ordering operator<=>(const basic_rational& a, const basic_rational& b) {
        using W = typename detail::wider<I>::type;
        W lhs = static_cast<W>(a.num_) * static_cast<W>(b.den_);
        W rhs = static_cast<W>(b.num_) * static_cast<W>(a.den_);
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    static constexpr I absolute(I v) { return v < 0 ? detail::checked_negate(v) : v; }

    constexpr void normalize() {
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = detail::checked_negate(num_);
            den_ = detail::checked_negate(den_);
        }
        I g = std::gcd(absolute(num_), den_);
        num_ /= g;
        den_ /= g;
    }

    I num_ = 0;
    I den_ = 1;
};

using Rat = basic_rational<std::int64_t>;

template <std::signed_integral I>
constexpr basic_rational<I> abs(const basic_rational<I>& r) {
    return r.sign() < 0 ? -r : r;
}

template <std::signed_integral I>
constexpr const basic_rational<I>& min(const basic_rational<I>& a, const basic_rational<I>& b) {
    return b < a ? b : a;
}

template <std::signed_integral I>
constexpr const basic_rational<I>& max(const basic_rational<I>& a, const basic_rational<I>& b) {
    return a < b ? b : a;
}

/// Canonical text form "num/den", e.g. "1/2", "0/1", "-3/10".
template <std::signed_integral I>
std::string to_string(const basic_rational<I>& r) {
    return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

template <std::signed_integral I>
std::ostream& operator<<(std::ostream& os, const basic_rational<I>& r) {
    return os << r.num() << '/' << r.den();
}

namespace detail {

inline std::int64_t parse_int64(std::string_view text, std::string_view whole) {
    std::int64_t value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc::result_out_of_range)
        throw std::overflow_error("rational: literal out of range in '" + std::string(whole) + "'");
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("rational: malformed literal '" + std::string(whole) + "'");
    return value;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

} // namespace detail

/// Parses "p/q" (integer p, positive integer q) or a finite decimal such as
/// "0.3" or "-2.25". Decimals convert exactly; anything else (including
/// repeating-decimal notation) is rejected.
inline Rat parse_rat(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("rational: empty literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num_part = text.substr(0, slash);
        std::string_view den_part = text.substr(slash + 1);
        if (!detail::all_digits(den_part))
            throw std::invalid_argument("rational: malformed literal '" + std::string(text) + "'");
        std::int64_t num = detail::parse_int64(num_part, text);
        std::int64_t den = detail::parse_int64(den_part, text);
        if (den == 0)
            throw std::domain_error("rational: zero denominator in '" + std::string(text) + "'");
        return Rat(num, den);
    }

    std::string_view rest = text;
    bool negative = false;
    if (rest.front() == '+' || rest.front() == '-') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }

    std::string_view int_part = rest;
    std::string_view frac_part;
    if (auto dot = rest.find('.'); dot != std::string_view::npos) {
        int_part = rest.substr(0, dot);
        frac_part = rest.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty())
        throw std::invalid_argument("rational: malformed literal '" + std::string(text) + "'");
    if (!int_part.empty() && !detail::all_digits(int_part))
        throw std::invalid_argument("rational: malformed literal '" + std::string(text) + "'");
    if (!frac_part.empty() && !detail::all_digits(frac_part))
        throw std::invalid_argument("rational: malformed literal '" + std::string(text) + "'");

    std::int64_t num = int_part.empty() ? 0 : detail::parse_int64(int_part, text);
    std::int64_t den = 1;
    for (char c : frac_part) {
        den = detail::checked_mul<std::int64_t>(den, 10);
        num = detail::checked_add(detail::checked_mul<std::int64_t>(num, 10),
                                  static_cast<std::int64_t>(c - '0'));
    }
    if (negative)
        num = detail::checked_negate(num);
    return Rat(num, den);
}

} // namespace hotelling
