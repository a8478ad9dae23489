#pragma once

// Floating-point evaluation of exact polynomials and forms at points of C^2.

#include "mkit/poly.hpp"

#include <array>
#include <vector>

namespace mkit {

/// A point of C^2.
struct Point {
    cplx x;
    cplx y;

    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator*(cplx s) const { return {x * s, y * s}; }
    friend Point operator*(cplx s, const Point& p) { return {p.x * s, p.y * s}; }
    double norm() const { return std::sqrt(std::norm(x) + std::norm(y)); }
};

/// Hermitian pairing <a, b> = conj(a) . b
inline cplx hdot(const Point& a, const Point& b) { return std::conj(a.x) * b.x + std::conj(a.y) * b.y; }

class NumPoly {
public:
    NumPoly() = default;
    explicit NumPoly(const BivarPoly& p);
    explicit NumPoly(const BasicPoly<cplx>& p);

    cplx operator()(const Point& z) const;
    /// Value and gradient (d/dx, d/dy).
    void eval_grad(const Point& z, cplx& value, cplx& gx, cplx& gy) const;
    int degree() const { return degree_; }
    /// sum |c| |x|^i |y|^j, the magnitude that rounding errors scale with
    double abs_sum(const Point& z) const;
    /// Sum of |coefficients|, a crude scale.
    double coeff_norm() const;

private:
    struct Term {
        int i;
        int j;
        cplx c;
    };
    std::vector<Term> terms_;
    int max_i_ = 0;
    int max_j_ = 0;
    int degree_ = -1;
};

struct NumForm {
    NumForm() = default;
    explicit NumForm(const OneForm& w) : A(w.A), B(w.B) {}
    NumPoly A;
    NumPoly B;
    /// Pairing with a tangent vector.
    cplx operator()(const Point& z, const Point& v) const { return A(z) * v.x + B(z) * v.y; }
};

}  // namespace mkit
