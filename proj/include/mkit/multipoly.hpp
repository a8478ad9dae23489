#pragma once

// Multivariate polynomials over Q(i) in named indeterminates; used as the
// coefficient ring of symbolic center-obstruction runs.

#include "mkit/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace mkit {

class MultiPoly {
public:
    using Exponents = std::vector<int>;  // trailing zeros trimmed

    MultiPoly() = default;
    MultiPoly(int c) : MultiPoly(Scalar(c)) {}
    MultiPoly(const Scalar& c)
    {
        if (!c.is_zero())
            terms_.emplace(Exponents{}, c);
    }
    static MultiPoly variable(int index);

    const std::map<Exponents, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    Scalar constant_value() const;
    int total_degree() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    /// Division by a nonzero constant polynomial only.
    MultiPoly& operator/=(const MultiPoly& o);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
    friend MultiPoly operator/(MultiPoly a, const MultiPoly& b) { return a /= b; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Substitutes exact values for every indeterminate.
    Scalar evaluate(const std::vector<Scalar>& values) const;

    /// Clears denominators and removes the integer content; the sign is
    /// normalized so the leading coefficient is positive (real part first).
    MultiPoly primitive_integer_form() const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    void add_term(const Exponents& e, const Scalar& c);
    std::map<Exponents, Scalar> terms_;
};

inline bool is_zero(const MultiPoly& p) { return p.is_zero(); }

}  // namespace mkit
