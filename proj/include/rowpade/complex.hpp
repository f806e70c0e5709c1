#ifndef ROWPADE_COMPLEX_HPP
#define ROWPADE_COMPLEX_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace rowpade {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
/// Variable precision binary float; precision follows the active PrecisionScope.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

/// Complex number over an arbitrary real field. Instantiated over Rational
/// (exact mode) and Real (float mode); only field operations are required of R.
template <class R>
class Complex {
public:
    using value_type = R;

    Complex() : re_(0), im_(0) {}
    Complex(int re) : re_(re), im_(0) {}  // NOLINT(google-explicit-constructor)
    Complex(R re) : re_(std::move(re)), im_(0) {}  // NOLINT(google-explicit-constructor)
    Complex(R re, R im) : re_(std::move(re)), im_(std::move(im)) {}

    const R& real() const { return re_; }
    const R& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Complex& operator+=(const Complex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        R re = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        R den = o.re_ * o.re_ + o.im_ * o.im_;
        if (den == 0) throw std::domain_error("complex division by zero");
        R re = (re_ * o.re_ + im_ * o.im_) / den;
        im_ = (im_ * o.re_ - re_ * o.im_) / den;
        re_ = std::move(re);
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

    friend Complex conj(const Complex& a) { return Complex(a.re_, -a.im_); }
    /// Squared modulus, exact in exact mode.
    friend R norm(const Complex& a) { return a.re_ * a.re_ + a.im_ * a.im_; }

private:
    R re_;
    R im_;
};

using Exact = Complex<Rational>;
using Float = Complex<Real>;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Exact>;

inline Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

inline Float to_float(const Exact& z) { return Float(to_real(z.real()), to_real(z.imag())); }
inline const Float& to_float(const Float& z) { return z; }

inline Real abs(const Float& z) { return mp::sqrt(norm(z)); }
inline Real abs(const Exact& z) { return abs(to_float(z)); }

inline Real arg(const Float& z) { return mp::atan2(z.imag(), z.real()); }

/// Principal branch logarithm.
inline Float log(const Float& z) {
    if (z.is_zero()) throw std::domain_error("logarithm of zero");
    return Float(mp::log(abs(z)), arg(z));
}

inline Float pow(Float base, unsigned e) {
    Float result(1);
    while (e) {
        if (e & 1u) result *= base;
        base *= base;
        e >>= 1u;
    }
    return result;
}

/// Parses "p/q", an integer, or a decimal literal ("1.25", "-3e-2") exactly.
Rational parse_rational(std::string_view text);

/// "p/q" or "p" for rationals.
std::string to_string(const Rational& q);
/// Decimal rendering with the given significant digits.
std::string to_string(const Real& r, int digits = 20);
/// "a", "a+bi" or "bi" with each part rendered as above.
std::string to_string(const Exact& z);
std::string to_string(const Float& z, int digits = 20);

template <class R>
std::ostream& operator<<(std::ostream& os, const Complex<R>& z) {
    return os << to_string(z);
}

}  // namespace rowpade

#endif
