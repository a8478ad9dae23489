#include "mkit/center.hpp"

#include <cmath>

namespace mkit {

namespace {

struct ExactOps {
    static bool zero(const Scalar& s) { return s.is_zero(); }
    static Scalar sqrt(const Scalar& s)
    {
        auto r = exact_sqrt(s);
        if (!r)
            throw Error("irrational", "normalizing change of coordinates is not defined over Q(i); use float mode");
        return *r;
    }
};

struct FloatOps {
    double tol;
    bool zero(const cplx& s) const { return std::abs(s) <= tol; }
    static cplx sqrt(const cplx& s) { return std::sqrt(s); }
};

template <class K, class Ops>
BasicNormalizedGerm<K> normalize_impl(const BasicOneForm<K>& omega, const Ops& ops)
{
    if (!ops.zero(omega.A.coeff(0, 0)) || !ops.zero(omega.B.coeff(0, 0)))
        throw Error("precondition", "the origin is not a singular point of the form");
    const K a = omega.A.coeff(1, 0), b = omega.A.coeff(0, 1);
    const K c = omega.B.coeff(1, 0), d = omega.B.coeff(0, 1);
    if (!ops.zero(b - c))
        throw Error("precondition", "linear part is not closed: eigenvalues are not of the form (l, -l)");
    const K qa = a / K(2), qb = (b + c) / K(2), qd = d / K(2);
    using P = BasicPoly<K>;
    const P u = P::x(), v = P::y();
    BasicNormalizedGerm<K> g;
    P X, Y;
    if (!ops.zero(qa)) {
        K disc = qb * qb - K(4) * qa * qd;
        if (ops.zero(disc))
            throw Error("degenerate", "degenerate linear part");
        K s = ops.sqrt(disc);
        K r1 = (-qb - s) / (K(2) * qa), r2 = (-qb + s) / (K(2) * qa);
        K w = K(1) / (r2 - r1);
        // y = (u - v) w, x = u + r1 y
        g.T[0][0] = K(1) + r1 * w;
        g.T[0][1] = -(r1 * w);
        g.T[1][0] = w;
        g.T[1][1] = -w;
        g.k = qa;
    } else if (!ops.zero(qd)) {
        if (ops.zero(qb))
            throw Error("degenerate", "degenerate linear part");
        // Q = y (qb x + qd y): u = y, v = qb x + qd y
        g.T[0][0] = -qd / qb;
        g.T[0][1] = K(1) / qb;
        g.T[1][0] = K(1);
        g.T[1][1] = K(0);
        g.k = K(1);
    } else {
        if (ops.zero(qb))
            throw Error("degenerate", "degenerate linear part");
        g.k = qb;
    }
    X = u * g.T[0][0] + v * g.T[0][1];
    Y = u * g.T[1][0] + v * g.T[1][1];
    g.omega = omega.pullback(X, Y) / g.k;
    return g;
}

}  // namespace

NormalizedGerm normalize_linear_part(const OneForm& omega)
{
    NormalizedGerm g = normalize_impl(omega, ExactOps{});
    if (g.omega.homogeneous_part(1) != exterior_d(BivarPoly::monomial(1, 1)))
        throw Error("numerics", "internal: exact normalization did not produce d(xy)");
    return g;
}

BasicNormalizedGerm<cplx> normalize_linear_part(const BasicOneForm<cplx>& omega)
{
    double scale = 0.0;
    const BasicOneForm<cplx> lin = omega.homogeneous_part(1);
    for (auto& [m, c] : lin.A.terms())
        scale = std::max(scale, std::abs(c));
    for (auto& [m, c] : lin.B.terms())
        scale = std::max(scale, std::abs(c));
    if (scale == 0.0)
        throw Error("degenerate", "degenerate linear part");
    BasicNormalizedGerm<cplx> g = normalize_impl(omega, FloatOps{1e-9 * scale});
    // replace the rounded linear part by d(xy) exactly
    using P = BasicPoly<cplx>;
    BasicOneForm<cplx> w = g.omega;
    w -= w.homogeneous_part(1);
    w.A += P::monomial(0, 1);
    w.B += P::monomial(1, 0);
    const BasicOneForm<cplx> constant = g.omega.homogeneous_part(0);
    for (auto& [m, c] : constant.A.terms())
        w.A.set_coeff(m.i, m.j, 0.0);
    for (auto& [m, c] : constant.B.terms())
        w.B.set_coeff(m.i, m.j, 0.0);
    g.omega = w;
    return g;
}

OneForm translate(const OneForm& omega, const Scalar& px, const Scalar& py)
{
    BivarPoly X = BivarPoly::x() + BivarPoly(px), Y = BivarPoly::y() + BivarPoly(py);
    return {omega.A.compose(X, Y), omega.B.compose(X, Y)};
}

BasicOneForm<cplx> translate(const BasicOneForm<cplx>& omega, cplx px, cplx py)
{
    using P = BasicPoly<cplx>;
    P X = P::x() + P(px), Y = P::y() + P(py);
    return {omega.A.compose(X, Y), omega.B.compose(X, Y)};
}

SymbolicGerm generic_germ(int degree)
{
    if (degree < 1)
        throw Error("precondition", "generic germ needs degree >= 1");
    SymbolicGerm g;
    using P = BasicPoly<MultiPoly>;
    auto fresh = [&](const std::string& name) {
        g.names.push_back(name);
        return MultiPoly::variable(static_cast<int>(g.names.size()) - 1);
    };
    g.omega.A = P::monomial(0, 1, MultiPoly(1));
    g.omega.B = P::monomial(1, 0, MultiPoly(1));
    for (int m = 2; m <= degree; ++m) {
        for (int i = m; i >= 0; --i)
            g.omega.A.add_term(i, m - i, fresh("a_" + std::to_string(i) + "_" + std::to_string(m - i)));
        for (int i = m; i >= 0; --i)
            g.omega.B.add_term(i, m - i, fresh("b_" + std::to_string(i) + "_" + std::to_string(m - i)));
    }
    for (int i = degree; i >= 0; --i) {
        MultiPoly h = fresh("h_" + std::to_string(i) + "_" + std::to_string(degree - i));
        g.omega.A.add_term(i, degree - i + 1, -h);
        g.omega.B.add_term(i + 1, degree - i, h);
    }
    return g;
}

std::optional<std::vector<Scalar>> generic_germ_values(const OneForm& w, int degree)
{
    if (w.degree() > degree + 1 || !w.homogeneous_part(0).is_zero())
        return std::nullopt;
    std::vector<Scalar> vals;
    for (int m = 2; m <= degree; ++m) {
        for (int i = m; i >= 0; --i)
            vals.push_back(w.A.coeff(i, m - i));
        for (int i = m; i >= 0; --i)
            vals.push_back(w.B.coeff(i, m - i));
    }
    OneForm top = w.homogeneous_part(degree + 1);
    BivarPoly h;
    for (int i = degree; i >= 0; --i) {
        Scalar c = top.B.coeff(i + 1, degree - i);
        vals.push_back(c);
        h.add_term(i, degree - i, c);
    }
    if (top.A != -(BivarPoly::y() * h) || top.B != BivarPoly::x() * h)
        return std::nullopt;
    return vals;
}

ObstructionReport center_obstructions(const NormalizedGerm& germ, int N, const CenterCaps& caps)
{
    if (N < 4 || N % 2 != 0)
        throw Error("precondition", "maximal order must be an even integer >= 4");
    if (N > caps.numeric_max_order)
        throw Error("cap", "maximal order exceeds the numeric cap " + std::to_string(caps.numeric_max_order));
    return obstructions(germ.omega, N);
}

SymbolicReport symbolic_obstructions(int degree, int N, const CenterCaps& caps)
{
    if (N < 4 || N % 2 != 0)
        throw Error("precondition", "maximal order must be an even integer >= 4");
    if (N > caps.symbolic_max_order)
        throw Error("cap", "maximal order exceeds the symbolic cap " + std::to_string(caps.symbolic_max_order));
    SymbolicReport rep;
    rep.germ = generic_germ(degree);
    if (static_cast<int>(rep.germ.names.size()) > caps.symbolic_max_unknowns)
        throw Error("cap", "generic degree-" + std::to_string(degree) + " germ has " + std::to_string(rep.germ.names.size()) +
                               " unknowns, above the cap " + std::to_string(caps.symbolic_max_unknowns));
    rep.raw = obstructions(rep.germ.omega, N);
    for (auto& [n, p] : rep.raw.obstructions)
        rep.cleared[n] = p.primitive_integer_form();
    return rep;
}

std::optional<double> float_center_defect(const BasicOneForm<cplx>& omega_at_point, int N)
{
    BasicNormalizedGerm<cplx> g;
    try {
        g = normalize_linear_part(omega_at_point);
    } catch (const Error&) {
        return std::nullopt;
    }
    double C = 0.0;
    for (auto& [n, part] : g.omega.homogeneous_parts()) {
        if (n < 2)
            continue;
        double mx = 0.0;
        for (auto& [m, c] : part.A.terms())
            mx = std::max(mx, std::abs(c));
        for (auto& [m, c] : part.B.terms())
            mx = std::max(mx, std::abs(c));
        C = std::max(C, std::pow(mx, 1.0 / (n - 1)));
    }
    BasicOneForm<cplx> w = g.omega;
    if (C > 0.0) {
        const double s = 1.0 / C;
        auto rescale = [&](const BasicPoly<cplx>& p) {
            BasicPoly<cplx> r;
            for (auto& [m, c] : p.terms())
                r.add_term(m.i, m.j, c * std::pow(s, m.degree() - 1));
            return r;
        };
        w = {rescale(w.A), rescale(w.B)};
    }
    auto rep = obstructions(w, N);
    double worst = 0.0;
    for (auto& [n, p] : rep.obstructions)
        worst = std::max(worst, std::abs(p));
    return worst;
}

}  // namespace mkit
