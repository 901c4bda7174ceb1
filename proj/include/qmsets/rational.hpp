#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qmsets {

// Exact rational number on 64-bit integers, always kept reduced with a
// positive denominator. Intermediates widen to 128 bits; the values that
// occur here (probabilities with denominators bounded by |U|, attribute
// values from small integer tables) stay far below the word limit.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value), den_(1) {}

    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) {
            throw std::invalid_argument("Rational: zero denominator");
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        num_ = g ? num / g : num;
        den_ = g ? den / g : 1;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    // "p/q" for proper fractions, bare "p" for integers.
    std::string str() const {
        if (den_ == 1) {
            return std::to_string(num_);
        }
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p" or "p/q" with an optional leading sign.
    static Rational parse(std::string_view text) {
        const auto bad = [&] {
            throw std::invalid_argument("Rational: cannot parse '" +
                                        std::string(text) + "'");
        };
        if (text.empty()) bad();
        std::size_t slash = text.find('/');
        std::int64_t num = 0;
        std::int64_t den = 1;
        try {
            num = std::stoll(std::string(text.substr(0, slash)));
            if (slash != std::string_view::npos) {
                den = std::stoll(std::string(text.substr(slash + 1)));
            }
        } catch (const std::exception&) {
            bad();
        }
        return Rational(num, den);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_,
                         wide(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_,
                         wide(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) {
            throw std::invalid_argument("Rational: division by zero");
        }
        return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
    }
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return wide(a.num_) * b.den_ < wide(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    __extension__ typedef __int128 wide;

    static Rational from_wide(wide num, wide den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const wide g = wide_gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr wide lo = INT64_MIN, hi = INT64_MAX;
        if (num < lo || num > hi || den > hi) {
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        }
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den == 0 ? 1 : den);
        return r;
    }

    static wide wide_gcd(wide a, wide b) {
        while (b != 0) {
            const wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace qmsets
