#pragma once

#include "mkit/poly.hpp"

#include <random>

namespace mkit::testing {

/// Random polynomial of total degree <= deg with small rational coefficients.
inline BivarPoly random_poly(std::mt19937& rng, int deg, double density = 0.7, bool complex_coeffs = false)
{
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    BivarPoly p;
    for (int n = 0; n <= deg; ++n)
        for (int i = n; i >= 0; --i) {
            if (keep(rng) > density)
                continue;
            Scalar c(Rational(num(rng), den(rng)));
            if (complex_coeffs)
                c += Scalar(Rational(0), Rational(num(rng), den(rng)));
            p.add_term(i, n - i, c);
        }
    return p;
}

inline OneForm random_form(std::mt19937& rng, int deg, double density = 0.7)
{
    return {random_poly(rng, deg, density), random_poly(rng, deg, density)};
}

}  // namespace mkit::testing
