#pragma once

// Exact univariate polynomials, resultant elimination, and numerical
// isolation of the common zeros of two bivariate polynomials.

#include "mkit/numeric.hpp"
#include "mkit/poly.hpp"

#include <vector>

namespace mkit {

/// Dense univariate polynomial, coefficients ascending by power.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Scalar>& coeffs() const { return c_; }
    const Scalar& operator[](int k) const { return c_[k]; }
    Scalar operator()(const Scalar& x) const;

    UPoly derivative() const;
    UPoly monic() const;
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    /// Euclidean division over Q(i).
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }
    std::vector<Scalar> c_;
};

UPoly gcd(UPoly a, UPoly b);
/// p / gcd(p, p').
UPoly squarefree_part(const UPoly& p);

/// Exact determinant by Gaussian elimination over Q(i).
Scalar determinant(std::vector<std::vector<Scalar>> m);

/// Res_y(P, Q) as a polynomial in x, computed exactly by evaluation at
/// integer abscissae and Newton interpolation.  Formal y-degrees are used
/// so specializations that lower the degree are handled correctly.
UPoly resultant_y(const BivarPoly& P, const BivarPoly& Q);

/// Complex roots via the companion matrix, each Newton-polished.
std::vector<cplx> complex_roots(const UPoly& p);
std::vector<cplx> complex_roots(const std::vector<cplx>& coeffs_ascending);

struct SolveOptions {
    double newton_tol = 1e-12;
    int newton_iters = 60;
    double accept_tol = 1e-7;  // relative residual accepted before polishing
    double dedupe_tol = 1e-7;
};

struct Solution {
    Point z;
    double residual = 0.0;
    bool converged = true;
};

/// All isolated common zeros of P and Q in C^2.
/// Throws Error("non-isolated") when the resultant vanishes identically.
std::vector<Solution> solve_system(const BivarPoly& P, const BivarPoly& Q, const SolveOptions& opt = {});

/// Newton iteration for the square system P = Q = 0.
Solution newton_polish(const NumPoly& P, const NumPoly& Q, Point z, const SolveOptions& opt);

}  // namespace mkit
