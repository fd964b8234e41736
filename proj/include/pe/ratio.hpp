#pragma once

// Exact rational time values. Every timestamp and duration in the library is a
// Ratio; nothing is ever rounded. Arithmetic is carried out in 128-bit
// intermediates and throws std::overflow_error instead of wrapping.

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <charconv>

namespace pe {

class Ratio {
public:
    constexpr Ratio() = default;
    Ratio(std::int64_t num, std::int64_t den = 1) { assign(num, den); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    /// Largest integer <= value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    /// Smallest integer >= value.
    std::int64_t ceil() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Canonical "num/den" form, used by every serializer.
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    /// Accepts "n", "n/d", with optional leading '-'. Throws std::invalid_argument.
    static Ratio parse(std::string_view text);

    friend Ratio operator+(const Ratio& a, const Ratio& b) {
        return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Ratio operator-(const Ratio& a, const Ratio& b) {
        return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Ratio operator*(const Ratio& a, const Ratio& b) {
        return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
    }
    friend Ratio operator/(const Ratio& a, const Ratio& b) {
        if (b.num_ == 0) throw std::domain_error("Ratio: division by zero");
        return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
    }
    Ratio operator-() const { return from_wide(-wide(num_), den_); }

    Ratio& operator+=(const Ratio& o) { return *this = *this + o; }
    Ratio& operator-=(const Ratio& o) { return *this = *this - o; }
    Ratio& operator*=(const Ratio& o) { return *this = *this * o; }

    friend bool operator==(const Ratio& a, const Ratio& b) = default;
    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
        return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

private:
    using Wide = __int128;
    static Wide wide(std::int64_t v) { return static_cast<Wide>(v); }

    static Wide gcd_wide(Wide a, Wide b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            Wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Ratio from_wide(Wide num, Wide den) {
        if (den == 0) throw std::domain_error("Ratio: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        Wide g = gcd_wide(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr Wide lo = INT64_MIN + 1;  // keep negation of num representable
        constexpr Wide hi = INT64_MAX;
        if (num < lo || num > hi || den > hi) throw std::overflow_error("Ratio: 64-bit overflow");
        Ratio r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Ratio Ratio::parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
            throw std::invalid_argument("not a rational: \"" + std::string(text) + "\"");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Ratio(parse_int(text));
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    return Ratio(parse_int(text.substr(0, slash)), den);
}

inline Ratio max(const Ratio& a, const Ratio& b) { return a < b ? b : a; }
inline Ratio min(const Ratio& a, const Ratio& b) { return b < a ? b : a; }

}  // namespace pe
