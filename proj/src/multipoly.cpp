#include "mkit/multipoly.hpp"

#include <algorithm>

namespace mkit {

namespace {

MultiPoly::Exponents trimmed(MultiPoly::Exponents e)
{
    while (!e.empty() && e.back() == 0)
        e.pop_back();
    return e;
}

}  // namespace

MultiPoly MultiPoly::variable(int index)
{
    MultiPoly p;
    Exponents e(index + 1, 0);
    e[index] = 1;
    p.terms_.emplace(std::move(e), Scalar(1));
    return p;
}

Scalar MultiPoly::constant_value() const
{
    auto it = terms_.find(Exponents{});
    return it == terms_.end() ? Scalar(0) : it->second;
}

int MultiPoly::total_degree() const
{
    int d = -1;
    for (auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e)
            s += k;
        d = std::max(d, s);
    }
    return d;
}

void MultiPoly::add_term(const Exponents& e, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly r;
    for (auto& [e, c] : terms_)
        r.terms_.emplace(e, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    for (auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    for (auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o)
{
    MultiPoly r;
    for (auto& [ea, ca] : terms_)
        for (auto& [eb, cb] : o.terms_) {
            Exponents e(std::max(ea.size(), eb.size()), 0);
            for (std::size_t k = 0; k < ea.size(); ++k)
                e[k] += ea[k];
            for (std::size_t k = 0; k < eb.size(); ++k)
                e[k] += eb[k];
            r.add_term(trimmed(std::move(e)), ca * cb);
        }
    *this = std::move(r);
    return *this;
}

MultiPoly& MultiPoly::operator/=(const MultiPoly& o)
{
    if (!o.is_constant() || o.is_zero())
        throw Error("arithmetic", "symbolic division by a non-constant or zero polynomial");
    Scalar d = o.constant_value();
    for (auto& [e, c] : terms_)
        c /= d;
    return *this;
}

Scalar MultiPoly::evaluate(const std::vector<Scalar>& values) const
{
    Scalar sum(0);
    for (auto& [e, c] : terms_) {
        Scalar t = c;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0)
                continue;
            if (k >= values.size())
                throw Error("precondition", "missing value for indeterminate " + std::to_string(k));
            for (int p = 0; p < e[k]; ++p)
                t *= values[k];
        }
        sum += t;
    }
    return sum;
}

MultiPoly MultiPoly::primitive_integer_form() const
{
    if (terms_.empty())
        return {};
    Integer l(1);
    for (auto& [e, c] : terms_)
        l = lcm(l, denominator_lcm(c));
    Integer g(0);
    for (auto& [e, c] : terms_) {
        Scalar s = c * Scalar(Rational(l));
        g = gcd(g, abs(numerator(s.re())));
        g = gcd(g, abs(numerator(s.im())));
    }
    Scalar factor(Rational(l, g));
    // sign normalization on the last (highest in map order) term
    const Scalar& lead = terms_.rbegin()->second;
    if (lead.re() < 0 || (lead.re() == 0 && lead.im() < 0))
        factor = -factor;
    MultiPoly r;
    for (auto& [e, c] : terms_)
        r.terms_.emplace(e, c * factor);
    return r;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string ms;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0)
                continue;
            if (!ms.empty())
                ms += "*";
            ms += k < names.size() ? names[k] : "t" + std::to_string(k);
            if (e[k] > 1)
                ms += "^" + std::to_string(e[k]);
        }
        std::string cs = mkit::to_string(c);
        std::string t = ms.empty() ? cs : cs == "1" ? ms : cs == "-1" ? "-" + ms : cs + "*" + ms;
        if (first)
            out = t;
        else if (t[0] == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
        first = false;
    }
    return out;
}

}  // namespace mkit
