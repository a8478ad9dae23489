#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace mkit {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using cplx = std::complex<double>;

/// Error raised by every module; `kind` is a short machine-readable tag
/// ("syntax", "precondition", "infeasible", "numerics", ...).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Exact Gaussian-rational number re + im*i.  Real rationals are the im == 0 case.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : re_(v) {}
    Scalar(long v) : re_(v) {}
    Scalar(long long v) : re_(v) {}
    Scalar(Rational re) : re_(std::move(re)) {}
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    Scalar conj() const { return {re_, -im_}; }
    Rational norm2() const { return re_ * re_ + im_ * im_; }
    cplx to_complex() const;

    Scalar operator-() const { return {-re_, -im_}; }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    static Scalar i() { return {Rational(0), Rational(1)}; }

private:
    Rational re_{0};
    Rational im_{0};
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline bool is_zero(const cplx& z) { return z == cplx(0.0, 0.0); }

/// Exact square root in Q(i), if it exists.
std::optional<Scalar> exact_sqrt(const Scalar& s);
std::optional<Rational> exact_sqrt(const Rational& r);

/// Exact conversion of a finite double (binary fractions are rationals).
Rational rational_from_double(double v);

/// Parses "3", "-3/4", "0.125", "1e-3" exactly.
Rational parse_rational(const std::string& text);

/// Parses a complex-rational literal: "2", "1/3", "(1+2i)", "(-i)", "2i".
Scalar parse_scalar(const std::string& text);

std::string to_string(const Rational& r);
/// Canonical form: "3/2", "-1", "(1+2i)", "(2i)", "(-1/2-i)".
std::string to_string(const Scalar& s);

double to_double(const Rational& r);

/// Least common multiple of the denominators of re and im.
Integer denominator_lcm(const Scalar& s);

}  // namespace mkit
