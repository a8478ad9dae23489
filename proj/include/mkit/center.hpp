#pragma once

// Formal first integrals at a Morse singularity and the even-order
// obstructions P_4, P_6, ... to their existence.

#include "mkit/multipoly.hpp"
#include "mkit/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mkit {

/// A germ at the origin whose linear part is exactly d(xy).
template <class K>
struct BasicNormalizedGerm {
    BasicOneForm<K> omega;
    K k = K(1);  // the original linear part was k*d(uv)
    /// Linear substitution old = T * new: x = T[0][0] u + T[0][1] v, y = T[1][0] u + T[1][1] v.
    K T[2][2] = {{K(1), K(0)}, {K(0), K(1)}};
};

using NormalizedGerm = BasicNormalizedGerm<Scalar>;

template <class K>
struct BasicObstructionReport {
    int max_order = 0;
    std::vector<BasicPoly<K>> jets;  // f_3 .. f_N
    std::map<int, K> obstructions;   // n even -> P_n
    std::map<int, K> gauge;          // n even -> (xy)^{n/2} coefficient used in f_n
};

using ObstructionReport = BasicObstructionReport<Scalar>;

template <class K>
BasicTwoForm<K> s_apply(int n, const BasicPoly<K>& g)
{
    if (!g.is_homogeneous() || (!g.is_zero() && g.degree() != n))
        throw Error("precondition", "s_apply needs a homogeneous polynomial of degree " + std::to_string(n));
    BasicPoly<K> r;
    for (auto& [m, c] : g.terms())
        r.add_term(m.i, m.j, c * K(m.j - m.i));
    return {r};
}

template <class K>
std::pair<BasicPoly<K>, K> s_solve(int n, const BasicTwoForm<K>& rhs)
{
    if (!rhs.C.is_homogeneous() || (!rhs.C.is_zero() && rhs.C.degree() != n))
        throw Error("precondition", "s_solve needs a homogeneous right-hand side of degree " + std::to_string(n));
    BasicPoly<K> f;
    K obstruction(0);
    for (auto& [m, c] : rhs.C.terms()) {
        if (m.i == m.j)
            obstruction = c;
        else
            f.add_term(m.i, m.j, c / K(m.j - m.i));
    }
    return {f, obstruction};
}

/// Runs the triangular recursion for n = 3..N.  `gauge` optionally overrides
/// the kernel coefficient of f_n (default 0).
template <class K>
BasicObstructionReport<K> obstructions(const BasicOneForm<K>& omega, int N, const std::map<int, K>& gauge = {})
{
    const BasicPoly<K> xy = BasicPoly<K>::monomial(1, 1);
    if (omega.homogeneous_part(0).is_zero() == false || omega.homogeneous_part(1) != exterior_d(xy))
        throw Error("precondition", "germ is not normalized: linear part must equal d(xy)");
    const int top = omega.degree();
    std::vector<BasicOneForm<K>> parts(std::max(top, 1) + 1);
    for (int m = 0; m <= top; ++m)
        parts[m] = omega.homogeneous_part(m);

    BasicObstructionReport<K> rep;
    rep.max_order = N;
    std::vector<BasicOneForm<K>> df(N + 1);  // df[k] = d f_k
    df[2] = exterior_d(xy);
    for (int n = 3; n <= N; ++n) {
        BasicTwoForm<K> rhs;
        for (int m = 2; m <= n - 1 && m <= top; ++m) {
            const int k = n + 1 - m;
            rhs = rhs - wedge(parts[m], df[k]);
        }
        auto [fn, pn] = s_solve(n, rhs);
        if (n % 2 == 0) {
            rep.obstructions[n] = pn;
            K g(0);
            if (auto it = gauge.find(n); it != gauge.end())
                g = it->second;
            rep.gauge[n] = g;
            fn.add_term(n / 2, n / 2, g);
        }
        df[n] = exterior_d(fn);
        rep.jets.push_back(std::move(fn));
    }
    return rep;
}

/// Exact normalization of a germ at the origin with a non-degenerate
/// closed linear part.  Throws when the eigen-data leaves Q(i).
NormalizedGerm normalize_linear_part(const OneForm& omega);

/// Floating-point normalization (used for irrational eigen-data and for
/// singular points located numerically).
BasicNormalizedGerm<cplx> normalize_linear_part(const BasicOneForm<cplx>& omega);

/// Translates a form so that the given point becomes the origin.
OneForm translate(const OneForm& omega, const Scalar& px, const Scalar& py);
BasicOneForm<cplx> translate(const BasicOneForm<cplx>& omega, cplx px, cplx py);

/// Generic germ of a degree-d foliation with linear part d(xy): the middle
/// parts are free and the top part is h_d (x dy - y dx).
struct SymbolicGerm {
    BasicOneForm<MultiPoly> omega;
    std::vector<std::string> names;
};
SymbolicGerm generic_germ(int degree);

/// Values of the generic-germ indeterminates for a concrete normalized germ
/// of the same degree; nullopt if the germ's top part is not of the form h (x dy - y dx).
std::optional<std::vector<Scalar>> generic_germ_values(const OneForm& normalized, int degree);

struct CenterCaps {
    int numeric_max_order = 12;
    int symbolic_max_order = 8;
    int symbolic_max_unknowns = 12;
};

ObstructionReport center_obstructions(const NormalizedGerm& germ, int N, const CenterCaps& caps = {});

struct SymbolicReport {
    SymbolicGerm germ;
    BasicObstructionReport<MultiPoly> raw;
    std::map<int, MultiPoly> cleared;  // integer-coefficient primitive P_n
};
SymbolicReport symbolic_obstructions(int degree, int N, const CenterCaps& caps = {});

/// Float recursion on a germ at a numerically located point; coordinates
/// are rescaled so every higher coefficient has modulus at most 1.
/// Returns max |P_n| over even n <= N, or nullopt for a degenerate linear part.
std::optional<double> float_center_defect(const BasicOneForm<cplx>& omega_at_point, int N);

}  // namespace mkit
