#pragma once

// Sparse bivariate polynomials and polynomial differential forms over a
// coefficient ring K (exact Scalar, symbolic MultiPoly, or complex<double>).

#include "mkit/scalar.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace mkit {

/// Exponent pair of x^i y^j.
struct Mono {
    int i = 0;
    int j = 0;
    int degree() const { return i + j; }
    friend bool operator==(const Mono& a, const Mono& b) { return a.i == b.i && a.j == b.j; }
};

/// Graded-lex, descending: higher total degree first, then higher x power.
struct GradedLexDesc {
    bool operator()(const Mono& a, const Mono& b) const
    {
        if (a.degree() != b.degree())
            return a.degree() > b.degree();
        return a.i > b.i;
    }
};

template <class K>
class BasicPoly {
public:
    using Terms = std::map<Mono, K, GradedLexDesc>;

    BasicPoly() = default;
    BasicPoly(const K& c)
    {
        if (!mkit::is_zero(c))
            terms_.emplace(Mono{0, 0}, c);
    }
    static BasicPoly monomial(int i, int j, const K& c = K(1))
    {
        BasicPoly p;
        p.add_term(i, j, c);
        return p;
    }
    static BasicPoly x() { return monomial(1, 0); }
    static BasicPoly y() { return monomial(0, 1); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }
    int degree_x() const
    {
        int d = -1;
        for (auto& [m, c] : terms_)
            d = std::max(d, m.i);
        return d;
    }
    int degree_y() const
    {
        int d = -1;
        for (auto& [m, c] : terms_)
            d = std::max(d, m.j);
        return d;
    }

    bool is_homogeneous() const
    {
        if (terms_.empty())
            return true;
        int d = degree();
        for (auto& [m, c] : terms_)
            if (m.degree() != d)
                return false;
        return true;
    }

    K coeff(int i, int j) const
    {
        auto it = terms_.find(Mono{i, j});
        return it == terms_.end() ? K(0) : it->second;
    }

    /// Leading monomial in graded-lex order (zero polynomial: undefined).
    Mono leading_mono() const { return terms_.begin()->first; }
    const K& leading_coeff() const { return terms_.begin()->second; }

    void add_term(int i, int j, const K& c)
    {
        if (mkit::is_zero(c))
            return;
        auto [it, inserted] = terms_.emplace(Mono{i, j}, c);
        if (!inserted) {
            it->second += c;
            if (mkit::is_zero(it->second))
                terms_.erase(it);
        }
    }
    void set_coeff(int i, int j, const K& c)
    {
        terms_.erase(Mono{i, j});
        add_term(i, j, c);
    }

    BasicPoly operator-() const
    {
        BasicPoly r;
        for (auto& [m, c] : terms_)
            r.terms_.emplace(m, -c);
        return r;
    }
    BasicPoly& operator+=(const BasicPoly& o)
    {
        for (auto& [m, c] : o.terms_)
            add_term(m.i, m.j, c);
        return *this;
    }
    BasicPoly& operator-=(const BasicPoly& o)
    {
        for (auto& [m, c] : o.terms_)
            add_term(m.i, m.j, -c);
        return *this;
    }
    BasicPoly& operator*=(const K& s)
    {
        if (mkit::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= s;
            if (mkit::is_zero(it->second))
                it = terms_.erase(it);
            else
                ++it;
        }
        return *this;
    }
    BasicPoly& operator/=(const K& s)
    {
        for (auto& [m, c] : terms_)
            c /= s;
        return *this;
    }

    friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
    friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
    friend BasicPoly operator*(BasicPoly a, const K& s) { return a *= s; }
    friend BasicPoly operator*(const K& s, BasicPoly a) { return a *= s; }
    friend BasicPoly operator/(BasicPoly a, const K& s) { return a /= s; }
    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b)
    {
        BasicPoly r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_)
                r.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
        return r;
    }
    friend bool operator==(const BasicPoly& a, const BasicPoly& b)
    {
        if (a.terms_.size() != b.terms_.size())
            return false;
        auto ib = b.terms_.begin();
        for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
            if (!(ia->first == ib->first) || !(ia->second == ib->second))
                return false;
        return true;
    }
    friend bool operator!=(const BasicPoly& a, const BasicPoly& b) { return !(a == b); }

    BasicPoly dx() const
    {
        BasicPoly r;
        for (auto& [m, c] : terms_)
            if (m.i > 0)
                r.add_term(m.i - 1, m.j, c * K(m.i));
        return r;
    }
    BasicPoly dy() const
    {
        BasicPoly r;
        for (auto& [m, c] : terms_)
            if (m.j > 0)
                r.add_term(m.i, m.j - 1, c * K(m.j));
        return r;
    }

    BasicPoly homogeneous_part(int n) const
    {
        BasicPoly r;
        for (auto& [m, c] : terms_)
            if (m.degree() == n)
                r.terms_.emplace(m, c);
        return r;
    }

    /// Pieces of each degree present, ascending by degree.
    std::vector<std::pair<int, BasicPoly>> homogeneous_parts() const
    {
        std::vector<std::pair<int, BasicPoly>> out;
        for (int n = 0; n <= degree(); ++n) {
            BasicPoly h = homogeneous_part(n);
            if (!h.is_zero())
                out.emplace_back(n, std::move(h));
        }
        return out;
    }

    BasicPoly pow(int k) const
    {
        BasicPoly result(K(1)), base = *this;
        while (k > 0) {
            if (k & 1)
                result = result * base;
            k >>= 1;
            if (k)
                base = base * base;
        }
        return result;
    }

    /// Composition p(X, Y).
    BasicPoly compose(const BasicPoly& X, const BasicPoly& Y) const
    {
        if (terms_.empty())
            return {};
        std::vector<BasicPoly> xp{BasicPoly(K(1))}, yp{BasicPoly(K(1))};
        for (int k = 1; k <= degree_x(); ++k)
            xp.push_back(xp.back() * X);
        for (int k = 1; k <= degree_y(); ++k)
            yp.push_back(yp.back() * Y);
        BasicPoly r;
        for (auto& [m, c] : terms_)
            r += (xp[m.i] * yp[m.j]) * c;
        return r;
    }

    template <class F>
    auto map_coeffs(F&& fn) const
    {
        using R = decltype(fn(std::declval<const K&>()));
        BasicPoly<R> r;
        for (auto& [m, c] : terms_)
            r.add_term(m.i, m.j, fn(c));
        return r;
    }

private:
    Terms terms_;
};

template <class K>
struct BasicOneForm {
    BasicPoly<K> A;  // dx part
    BasicPoly<K> B;  // dy part

    int degree() const { return std::max(A.degree(), B.degree()); }
    bool is_zero() const { return A.is_zero() && B.is_zero(); }

    BasicOneForm operator-() const { return {-A, -B}; }
    BasicOneForm& operator+=(const BasicOneForm& o)
    {
        A += o.A;
        B += o.B;
        return *this;
    }
    BasicOneForm& operator-=(const BasicOneForm& o)
    {
        A -= o.A;
        B -= o.B;
        return *this;
    }
    friend BasicOneForm operator+(BasicOneForm a, const BasicOneForm& b) { return a += b; }
    friend BasicOneForm operator-(BasicOneForm a, const BasicOneForm& b) { return a -= b; }
    friend BasicOneForm operator*(const BasicPoly<K>& p, const BasicOneForm& w) { return {p * w.A, p * w.B}; }
    friend BasicOneForm operator*(const K& s, const BasicOneForm& w) { return {w.A * s, w.B * s}; }
    friend BasicOneForm operator/(const BasicOneForm& w, const K& s) { return {w.A / s, w.B / s}; }
    friend bool operator==(const BasicOneForm& a, const BasicOneForm& b) { return a.A == b.A && a.B == b.B; }
    friend bool operator!=(const BasicOneForm& a, const BasicOneForm& b) { return !(a == b); }

    /// Piece whose coefficients have total degree n.
    BasicOneForm homogeneous_part(int n) const { return {A.homogeneous_part(n), B.homogeneous_part(n)}; }

    std::vector<std::pair<int, BasicOneForm>> homogeneous_parts() const
    {
        std::vector<std::pair<int, BasicOneForm>> out;
        for (int n = 0; n <= degree(); ++n) {
            BasicOneForm h = homogeneous_part(n);
            if (!h.is_zero())
                out.emplace_back(n, std::move(h));
        }
        return out;
    }

    /// Pullback under x = X(u,v), y = Y(u,v); result is in (u,v) written as (x,y).
    BasicOneForm pullback(const BasicPoly<K>& X, const BasicPoly<K>& Y) const
    {
        BasicPoly<K> a = A.compose(X, Y), b = B.compose(X, Y);
        return {a * X.dx() + b * Y.dx(), a * X.dy() + b * Y.dy()};
    }
};

template <class K>
struct BasicTwoForm {
    BasicPoly<K> C;  // coefficient of dx^dy

    bool is_zero() const { return C.is_zero(); }
    BasicTwoForm operator-() const { return {-C}; }
    friend BasicTwoForm operator+(const BasicTwoForm& a, const BasicTwoForm& b) { return {a.C + b.C}; }
    friend BasicTwoForm operator-(const BasicTwoForm& a, const BasicTwoForm& b) { return {a.C - b.C}; }
    friend bool operator==(const BasicTwoForm& a, const BasicTwoForm& b) { return a.C == b.C; }
};

template <class K>
BasicOneForm<K> exterior_d(const BasicPoly<K>& g)
{
    return {g.dx(), g.dy()};
}

template <class K>
BasicTwoForm<K> exterior_d(const BasicOneForm<K>& w)
{
    return {w.B.dx() - w.A.dy()};
}

template <class K>
BasicTwoForm<K> wedge(const BasicOneForm<K>& a, const BasicOneForm<K>& b)
{
    return {a.A * b.B - b.A * a.B};
}

using BivarPoly = BasicPoly<Scalar>;
using OneForm = BasicOneForm<Scalar>;
using TwoForm = BasicTwoForm<Scalar>;

inline BasicPoly<cplx> to_float(const BivarPoly& p)
{
    return p.map_coeffs([](const Scalar& s) { return s.to_complex(); });
}
inline BasicOneForm<cplx> to_float(const OneForm& w) { return {to_float(w.A), to_float(w.B)}; }

/// a / b when b divides a exactly.
std::optional<BivarPoly> exact_divide(const BivarPoly& a, const BivarPoly& b);

/// Scalar multiple check: returns k with a == k*b if one exists (b nonzero).
std::optional<Scalar> proportionality(const OneForm& a, const OneForm& b);

}  // namespace mkit
