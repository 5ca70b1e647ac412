#ifndef GBSGI_NUMERIC_HPP
#define GBSGI_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbsgi {

// Exact arithmetic used everywhere certificates are compared. Probabilities
// are the only quantities that ever become floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

// Parses "p/q", "p" or decimal notation ("0.25", "1/6.9") into an exact
// rational.
inline Rat parse_rational(const std::string& text) {
    auto parse_decimal = [](const std::string& s) -> Rat {
        if (s.empty()) throw std::invalid_argument("empty number");
        std::size_t start = 0;
        bool neg = false;
        if (s[0] == '+' || s[0] == '-') {
            neg = s[0] == '-';
            start = 1;
        }
        Int num = 0;
        Int den = 1;
        bool seen_dot = false, seen_digit = false;
        for (std::size_t i = start; i < s.size(); ++i) {
            char ch = s[i];
            if (ch == '.') {
                if (seen_dot) throw std::invalid_argument("bad number: " + s);
                seen_dot = true;
            } else if (ch >= '0' && ch <= '9') {
                num = num * 10 + (ch - '0');
                if (seen_dot) den *= 10;
                seen_digit = true;
            } else {
                throw std::invalid_argument("bad number: " + s);
            }
        }
        if (!seen_digit) throw std::invalid_argument("bad number: " + s);
        Rat r(num, den);
        return neg ? -r : r;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return parse_decimal(text);
    Rat num = parse_decimal(text.substr(0, slash));
    Rat den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return num / den;
}

inline std::string format_rational(const Rat& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// FNV-1a, used for content-addressed certificate caching.
inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace gbsgi

#endif
