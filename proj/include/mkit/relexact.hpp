#pragma once

// Relative exactness: omega = dg + p dH on the leaves of a pencil, decided by
// exact linear algebra and cross-checked with leafwise period integrals.

#include "mkit/abelian.hpp"
#include "mkit/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mkit {

/// Rational function num / den.
struct RationalFunction {
    BivarPoly num;
    BivarPoly den = BivarPoly(Scalar(1));
};

RationalForm operator+(const RationalForm& a, const RationalForm& b);
RationalForm operator-(const RationalForm& a);
RationalForm operator-(const RationalForm& a, const RationalForm& b);
RationalForm operator*(const RationalFunction& u, const RationalForm& w);
RationalForm exterior_d(const RationalFunction& u);
/// a == b as rational forms (cross-multiplied, exact).
bool equivalent(const RationalForm& a, const RationalForm& b);

enum class Normalization { df, dlogf };
std::string to_string(Normalization n);

/// The integrating factor 1/s, written as a rational function m with
/// omega_0 * m = dH: H = f for df, H = log f for dlogf.
struct LeafNormalization {
    Normalization kind = Normalization::df;
    RationalFunction m;
    RationalForm dH;  // omega_0 * m
};

/// df in the Hamiltonian case, dlogf for a genuine pencil.
Normalization default_normalization(const PencilSpec& spec);
LeafNormalization leaf_normalization(const PencilSpec& spec, Normalization kind);
RationalForm normalize(const LeafNormalization& n, const OneForm& w);

struct DecompositionBounds {
    int g_degree = -1;   // -1: chosen from the pole-order ledger
    int p_degree = -1;
    int max_growth = 3;  // extra rounds, each raising the pole order by one
    int cap = 24;        // hard limit on any ansatz degree
};

struct Decomposition {
    bool feasible = false;
    RationalFunction g;
    RationalFunction p;
    int g_degree = 0;  // degree bounds of the numerators actually used
    int p_degree = 0;
    int rounds = 0;
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    /// infeasible case: float relaxation residual and the exact cokernel size
    double least_squares_residual = 0.0;
    std::size_t certificate_size = 0;
};

/// Solves eta = dg + p dH for rational g, p with denominators F^a G^b.
/// In the Hamiltonian df case g and p are polynomials and the gauge
/// g -> g + u(F), p -> p - u'(F) is pinned by clearing the coefficient of the
/// leading monomial of every F^j in p, and the constant term of g.
Decomposition decompose(const RationalForm& eta, const PencilSpec& spec, const LeafNormalization& n,
                        const DecompositionBounds& bounds = {});

/// eta - dg - p dH == 0 exactly.
bool check_decomposition(const RationalForm& eta, const LeafNormalization& n, const Decomposition& d);

struct LeafIntegral {
    std::string kind;  // "vanishing" or "indeterminacy"
    int index = -1;
    cplx level = 0.0;
    IntegralValue integral;
    double scale = 0.0;  // integral of |integrand|, the yardstick for "vanishes"
};

struct RelExactReport {
    bool relatively_exact = false;
    double tol = 0.0;
    std::vector<LeafIntegral> evidence;
    int witness = -1;  // evidence index of the largest non-vanishing integral
    std::vector<std::string> warnings;
};

struct RelExactOptions {
    double tol = 1e-8;
    SeedOptions seed;
    QuadratureOptions quad;
    double residue_radius = 0.1;  // shrunk automatically when the local model is off
    bool check_connectivity = true;
};

RelExactReport is_relatively_exact(const RationalForm& eta, const PencilSpec& spec, const std::vector<cplx>& levels,
                                   const RelExactOptions& opt = {});

/// Heuristic: can the first vertices of the cycles be joined along the fiber?
bool fiber_connected(const Fibration& fib, const std::vector<Cycle>& cycles);

struct TangentWitness {
    BivarPoly P;
    BivarPoly Q;
};

struct TangentResult {
    std::optional<TangentWitness> witness;
    /// When there is no witness: y with y^T A = 0, y^T b = 1, as
    /// (component "dx"/"dy", monomial, weight) triples on the equations.
    struct Functional {
        std::string component;
        Mono mono;
        Scalar weight;
    };
    std::vector<Functional> certificate;
    std::size_t unknowns = 0;
};

/// pG dP - qP dG + pQ dF - qF dQ.
OneForm tangent_form(const PencilSpec& spec, const BivarPoly& P, const BivarPoly& Q);

/// Decides omega in { pG dP - qP dG + pQ dF - qF dQ : deg P <= deg F, deg Q <= deg G }.
TangentResult tangent_membership(const OneForm& omega, const PencilSpec& spec);

}  // namespace mkit
