#include "mkit/scalar.hpp"

#include <cctype>
#include <cmath>

namespace mkit {

Scalar& Scalar::operator+=(const Scalar& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (im_ == 0 && o.im_ == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero())
        throw Error("arithmetic", "division by zero scalar");
    if (o.im_ == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    Rational n = o.norm2();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

cplx Scalar::to_complex() const { return {to_double(re_), to_double(im_)}; }

std::optional<Rational> exact_sqrt(const Rational& r)
{
    if (r < 0)
        return std::nullopt;
    Integer n = numerator(r), d = denominator(r);
    Integer sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d)
        return std::nullopt;
    return Rational(sn, sd);
}

std::optional<Scalar> exact_sqrt(const Scalar& s)
{
    if (s.im() == 0) {
        if (s.re() >= 0) {
            if (auto r = exact_sqrt(s.re()))
                return Scalar(*r);
            return std::nullopt;
        }
        if (auto r = exact_sqrt(Rational(-s.re())))
            return Scalar(Rational(0), *r);
        return std::nullopt;
    }
    // (u + vi)^2 = a + bi  =>  u^2 = (a + |s|)/2, v = b/(2u)
    auto modulus = exact_sqrt(s.norm2());
    if (!modulus)
        return std::nullopt;
    auto u = exact_sqrt(Rational((s.re() + *modulus) / 2));
    if (!u || *u == 0)
        return std::nullopt;
    Rational v = s.im() / (2 * *u);
    return Scalar(*u, v);
}

Rational rational_from_double(double v)
{
    if (!std::isfinite(v))
        throw Error("arithmetic", "non-finite value cannot be made exact");
    int exp = 0;
    double mant = std::frexp(v, &exp);
    // 53 bits of mantissa
    long long m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(m);
    if (exp > 0)
        r *= Rational(Integer(1) << exp);
    else if (exp < 0)
        r /= Rational(Integer(1) << (-exp));
    return r;
}

namespace {
// mpz parsing treats a leading 0 as an octal prefix
Integer decimal(const std::string& digits)
{
    std::size_t k = digits.find_first_not_of('0');
    return k == std::string::npos ? Integer(0) : Integer(digits.substr(k));
}
}  // namespace

Rational parse_rational(const std::string& text)
{
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> Error {
        return Error("syntax", "bad number '" + text + "': " + why);
    };
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        digits += text[pos++];
    Rational value;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::string den;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            den += text[pos++];
        if (digits.empty() || den.empty() || pos != text.size())
            throw fail("malformed fraction");
        Integer d = decimal(den);
        if (d == 0)
            throw fail("zero denominator");
        value = Rational(decimal(digits), d);
    } else {
        std::string frac;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                frac += text[pos++];
        }
        if (digits.empty() && frac.empty())
            throw fail("no digits");
        long exp10 = 0;
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            ++pos;
            std::string e;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
                e += text[pos++];
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                e += text[pos++];
            if (e.empty() || e == "+" || e == "-")
                throw fail("malformed exponent");
            exp10 = std::stol(e);
        }
        if (pos != text.size())
            throw fail("trailing characters");
        Integer mant = decimal(digits + frac);
        exp10 -= static_cast<long>(frac.size());
        Integer p10 = pow(Integer(10), static_cast<unsigned>(std::labs(exp10)));
        value = exp10 >= 0 ? Rational(mant * p10) : Rational(mant, p10);
    }
    return neg ? Rational(-value) : value;
}

Scalar parse_scalar(const std::string& raw)
{
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            text += c;
    if (text.empty())
        throw Error("syntax", "empty scalar");
    if (text.front() == '(') {
        if (text.back() != ')')
            throw Error("syntax", "unbalanced parenthesis in '" + raw + "'");
        text = text.substr(1, text.size() - 2);
    }
    if (text.empty() || text.back() != 'i')
        return Scalar(parse_rational(text));
    // a+bi, a-bi, bi, i, -i
    std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    Rational re(0);
    std::string imtext = body;
    if (split != std::string::npos) {
        re = parse_rational(body.substr(0, split));
        imtext = body.substr(split);
    }
    Rational im;
    if (imtext.empty() || imtext == "+")
        im = 1;
    else if (imtext == "-")
        im = -1;
    else
        im = parse_rational(imtext);
    return Scalar(re, im);
}

std::string to_string(const Rational& r) { return r.str(); }

std::string to_string(const Scalar& s)
{
    if (s.is_real())
        return to_string(s.re());
    std::string im;
    if (s.im() == 1)
        im = "i";
    else if (s.im() == -1)
        im = "-i";
    else
        im = to_string(s.im()) + "i";
    if (s.re() == 0)
        return "(" + im + ")";
    std::string sep = s.im() > 0 ? "+" : "";
    return "(" + to_string(s.re()) + sep + im + ")";
}

Integer denominator_lcm(const Scalar& s)
{
    return lcm(denominator(s.re()), denominator(s.im()));
}

}  // namespace mkit
