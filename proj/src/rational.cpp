#include "tinregion/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace tinregion {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits64(num) || !fits64(den)) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational n = parse(text.substr(0, slash));
        Rational d = parse(text.substr(slash + 1));
        if (d.num() == 0) return fail();
        return n / d;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    i128 mantissa = 0;
    int scale = 0;
    bool any_digit = false;
    bool seen_point = false;
    constexpr i128 mantissa_cap = static_cast<i128>(1) << 100;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (seen_point) return fail();
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9') break;
        any_digit = true;
        if (mantissa > mantissa_cap) {
            throw std::overflow_error("too many digits: '" + std::string(text) + "'");
        }
        mantissa = mantissa * 10 + (c - '0');
        if (seen_point) ++scale;
    }
    if (!any_digit) return fail();

    int exponent = 0;
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E') return fail();
        ++pos;
        std::string_view rest = text.substr(pos);
        if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
        if (ec != std::errc() || ptr != rest.data() + rest.size()) return fail();
    }
    int power = exponent - scale;
    if (power > 30 || power < -30) {
        throw std::overflow_error("exponent out of range: '" + std::string(text) + "'");
    }
    i128 num = negative ? -mantissa : mantissa;
    i128 den = 1;
    for (int i = 0; i < power; ++i) num *= 10;
    for (int i = 0; i < -power; ++i) den *= 10;
    return from_wide(num, den);
}

Rational Rational::from_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw std::invalid_argument("cannot format double");
    }
    return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    return from_wide(-static_cast<i128>(num_), den_);
}

Rational& Rational::operator+=(const Rational& o) {
    if (den_ == o.den_) {
        *this = from_wide(static_cast<i128>(num_) + o.num_, den_);
    } else {
        *this = from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                          static_cast<i128>(den_) * o.den_);
    }
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (den_ == o.den_) {
        *this = from_wide(static_cast<i128>(num_) - o.num_, den_);
    } else {
        *this = from_wide(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
                          static_cast<i128>(den_) * o.den_);
    }
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    *this = from_wide(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    *this = from_wide(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

}  // namespace tinregion
