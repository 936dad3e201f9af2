#include "sseq/rational.hpp"

#include <cstdlib>
#include <numeric>
#include <ostream>

#include "sseq/errors.hpp"

namespace sseq {

namespace {

std::int64_t checked(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw Error(ErrorKind::Overflow, std::string("rational overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorKind::InvalidParams, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

Rational operator+(const Rational& a, const Rational& b) {
    __int128 num = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    // Reduce in 128 bits before narrowing.
    __int128 x = num < 0 ? -num : num, y = den;
    while (y != 0) {
        __int128 t = x % y;
        x = y;
        y = t;
    }
    if (x > 1) {
        num /= x;
        den /= x;
    }
    return Rational(checked(num, "+"), checked(den, "+"));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
    __int128 num = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 den = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return Rational(checked(num, "*"), checked(den, "*"));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(ErrorKind::InvalidParams, "rational division by zero");
    return a * Rational(b.den_, b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    auto fail = [&]() -> Rational {
        throw Error(ErrorKind::Syntax, "malformed rational '" + text + "'");
    };
    if (text.empty()) return fail();
    auto parse_int = [&](const std::string& s) {
        if (s.empty() || (s.size() == 1 && (s[0] == '+' || s[0] == '-'))) fail();
        for (std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') fail();
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(s.c_str(), &end, 10);
        if (errno != 0 || end != s.c_str() + s.size())
            throw Error(ErrorKind::Overflow, "integer out of range '" + s + "'");
        return static_cast<std::int64_t>(v);
    };
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::int64_t num = parse_int(text.substr(0, slash));
        std::int64_t den = parse_int(text.substr(slash + 1));
        if (den == 0) fail();
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string head = text.substr(0, dot);
        std::string tail = text.substr(dot + 1);
        if (tail.empty()) fail();
        bool negative = !head.empty() && head[0] == '-';
        std::int64_t whole = head.empty() || head == "-" || head == "+" ? 0 : parse_int(head);
        std::int64_t frac = parse_int(tail);
        if (frac < 0) fail();
        std::int64_t den = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) {
            if (den > INT64_MAX / 10) throw Error(ErrorKind::Overflow, "decimal too long");
            den *= 10;
        }
        Rational magnitude = Rational(whole < 0 ? -whole : whole) + Rational(frac, den);
        return negative ? -magnitude : magnitude;
    }
    return Rational(parse_int(text));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace sseq
