#include "mkit/poly.hpp"

namespace mkit {

std::optional<BivarPoly> exact_divide(const BivarPoly& a, const BivarPoly& b)
{
    if (b.is_zero())
        return std::nullopt;
    BivarPoly q, r = a;
    const Mono lb = b.leading_mono();
    const Scalar cb = b.leading_coeff();
    while (!r.is_zero()) {
        const Mono lr = r.leading_mono();
        if (lr.i < lb.i || lr.j < lb.j)
            return std::nullopt;
        BivarPoly t = BivarPoly::monomial(lr.i - lb.i, lr.j - lb.j, r.leading_coeff() / cb);
        q += t;
        r -= t * b;
    }
    return q;
}

std::optional<Scalar> proportionality(const OneForm& a, const OneForm& b)
{
    if (b.is_zero())
        return std::nullopt;
    const auto& lead = b.A.is_zero() ? b.B : b.A;
    const auto& other = b.A.is_zero() ? a.B : a.A;
    Mono m = lead.leading_mono();
    Scalar k = other.coeff(m.i, m.j) / lead.leading_coeff();
    if (k * b == a)
        return k;
    return std::nullopt;
}

}  // namespace mkit
