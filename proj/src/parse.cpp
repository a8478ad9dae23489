#include "mkit/parse.hpp"

#include <cctype>
#include <cstdio>

namespace mkit {

namespace {

class PolyParser {
public:
    explicit PolyParser(const std::string& text) : s_(text) {}

    BivarPoly parse()
    {
        BivarPoly result;
        skip();
        if (pos_ >= s_.size())
            fail("empty polynomial");
        bool first = true;
        while (pos_ < s_.size()) {
            Scalar sign(1);
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-')
                    sign = Scalar(-1);
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            auto [coef, mono] = term();
            result.add_term(mono.i, mono.j, sign * coef);
            first = false;
            skip();
        }
        return result;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const
    {
        throw Error("syntax", "polynomial syntax error at position " + std::to_string(pos_) + ": " + why);
    }

    std::pair<Scalar, Mono> term()
    {
        Scalar coef(1);
        Mono mono;
        bool any = false;
        for (;;) {
            skip();
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                coef *= number();
            } else if (c == '(') {
                coef *= parenthesized();
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t at = pos_;
                ++pos_;
                int e = exponent();
                if (c == 'x')
                    mono.i += e;
                else if (c == 'y')
                    mono.j += e;
                else {
                    pos_ = at;
                    fail(std::string("unknown variable name '") + c + "'");
                }
            } else {
                if (!any)
                    fail("expected a coefficient or a variable");
                break;
            }
            any = true;
            skip();
            if (peek() == '*') {
                ++pos_;
                skip();
                char n = peek();
                if (!(std::isalnum(static_cast<unsigned char>(n)) || n == '(' || n == '.'))
                    fail("expected a factor after '*'");
                continue;
            }
            char n = peek();
            if (n == '+' || n == '-' || n == '\0')
                break;
        }
        return {coef, mono};
    }

    int exponent()
    {
        skip();
        if (peek() != '^')
            return 1;
        ++pos_;
        skip();
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_)
            fail("expected an integer exponent");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    Rational number()
    {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (peek() == '/') {
            ++pos_;
            std::size_t den = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            if (den == pos_)
                fail("expected a denominator");
        } else {
            if (peek() == '.') {
                ++pos_;
                while (std::isdigit(static_cast<unsigned char>(peek())))
                    ++pos_;
            }
            if (peek() == 'e' || peek() == 'E') {
                std::size_t save = pos_;
                ++pos_;
                if (peek() == '+' || peek() == '-')
                    ++pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    pos_ = save;
                else
                    while (std::isdigit(static_cast<unsigned char>(peek())))
                        ++pos_;
            }
        }
        try {
            return parse_rational(s_.substr(start, pos_ - start));
        } catch (const Error& e) {
            pos_ = start;
            fail(e.what());
        }
    }

    Scalar parenthesized()
    {
        std::size_t open = pos_;
        std::size_t close = s_.find(')', pos_);
        if (close == std::string::npos)
            fail("unbalanced '('");
        pos_ = close + 1;
        try {
            return parse_scalar(s_.substr(open, close - open + 1));
        } catch (const Error& e) {
            pos_ = open;
            fail(e.what());
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

std::string mono_string(const Mono& m)
{
    std::string out;
    auto factor = [&](char v, int e) {
        if (e == 0)
            return;
        if (!out.empty())
            out += "*";
        out += v;
        if (e > 1)
            out += "^" + std::to_string(e);
    };
    factor('x', m.i);
    factor('y', m.j);
    return out;
}

template <class K, class CoefFn>
std::string poly_string(const BasicPoly<K>& p, CoefFn&& coef_string)
{
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
        std::string cs = coef_string(c);
        std::string ms = mono_string(m);
        std::string t;
        if (ms.empty())
            t = cs;
        else if (cs == "1")
            t = ms;
        else if (cs == "-1")
            t = "-" + ms;
        else
            t = cs + "*" + ms;
        if (first) {
            out = t;
        } else if (t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
        first = false;
    }
    return out;
}

}  // namespace

BivarPoly parse_poly(const std::string& text) { return PolyParser(text).parse(); }

std::string to_string(const BivarPoly& p)
{
    return poly_string(p, [](const Scalar& s) { return to_string(s); });
}

std::string to_string(const BasicPoly<cplx>& p)
{
    return poly_string(p, [](const cplx& c) {
        char buf[96];
        if (c.imag() == 0.0)
            std::snprintf(buf, sizeof buf, "%.17g", c.real());
        else
            std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
        return std::string(buf);
    });
}

std::string to_string(const OneForm& w) { return "(" + to_string(w.A) + ") dx + (" + to_string(w.B) + ") dy"; }

}  // namespace mkit
