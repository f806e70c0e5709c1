#include "rowpade/complex.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rowpade {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const Rational num = parse_rational(s.substr(0, slash));
        const Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return num / den;
    }

    // [sign] digits [. digits] [e [sign] digits]
    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    std::string digits;
    long exponent = 0;
    bool seen_digit = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        digits += s[i++];
        seen_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits += s[i++];
            --exponent;
            seen_digit = true;
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed rational literal '" + s + "'");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(s.substr(i), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed exponent in '" + s + "'");
        }
        i += used;
        exponent += e;
    }
    if (i != s.size()) throw std::invalid_argument("trailing characters in rational literal '" + s + "'");

    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));  // no octal reading
    Rational value{Integer(digits)};
    Integer ten_pow(1);
    for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) ten_pow *= 10;
    if (exponent < 0)
        value /= Rational(ten_pow);
    else
        value *= Rational(ten_pow);
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(const Real& r, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << r;
    return os.str();
}

namespace {

template <class Part>
std::string join(const std::string& re, const std::string& im, const Part& imag, const Part& real) {
    if (imag == 0) return re;
    const bool neg = imag < 0;
    std::string mag = neg ? im.substr(1) : im;
    if (real == 0) return (neg ? "-" : "") + mag + "i";
    return re + (neg ? "-" : "+") + mag + "i";
}

}  // namespace

std::string to_string(const Exact& z) { return join(to_string(z.real()), to_string(z.imag()), z.imag(), z.real()); }

std::string to_string(const Float& z, int digits) {
    return join(to_string(z.real(), digits), to_string(z.imag(), digits), z.imag(), z.real());
}

}  // namespace rowpade
