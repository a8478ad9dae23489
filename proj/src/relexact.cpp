#include "mkit/relexact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace mkit {

namespace {

OneForm scale(const BivarPoly& p, const OneForm& w) { return p * w; }

// Rows of a coefficient-matching system, keyed by (dx|dy, monomial).
class FormSystem {
public:
    explicit FormSystem(std::size_t columns) { sys_.columns = columns; }

    void add_column_image(std::size_t col, const OneForm& image)
    {
        put(0, image.A, col);
        put(1, image.B, col);
    }
    void set_rhs(const OneForm& rhs)
    {
        for (auto& [m, c] : rhs.A.terms())
            rhs_[{0, m.i, m.j}] = c;
        for (auto& [m, c] : rhs.B.terms())
            rhs_[{1, m.i, m.j}] = c;
    }
    LinearSystem build()
    {
        keys_.clear();
        for (auto& [k, v] : rhs_)
            rows_.try_emplace(k);
        for (auto& [k, row] : rows_) {
            auto it = rhs_.find(k);
            sys_.add_row(row, it == rhs_.end() ? Scalar(0) : it->second);
            keys_.push_back(k);
        }
        return sys_;
    }
    // component, x power, y power of a built row
    const std::array<int, 3>& key(std::size_t row) const { return keys_[row]; }

private:
    void put(int comp, const BivarPoly& p, std::size_t col)
    {
        for (auto& [m, c] : p.terms())
            rows_[{comp, m.i, m.j}][col] += c;
    }
    LinearSystem sys_;
    std::map<std::array<int, 3>, std::map<std::size_t, Scalar>> rows_;
    std::map<std::array<int, 3>, Scalar> rhs_;
    std::vector<std::array<int, 3>> keys_;
};

std::vector<Mono> monomials_up_to(int d)
{
    std::vector<Mono> out;
    for (int n = 0; n <= d; ++n)
        for (int i = n; i >= 0; --i)
            out.push_back({i, n - i});
    return out;
}

BivarPoly assemble(const std::vector<Mono>& basis, const std::vector<Scalar>& x, std::size_t offset)
{
    BivarPoly p;
    for (std::size_t k = 0; k < basis.size(); ++k)
        p.add_term(basis[k].i, basis[k].j, x[offset + k]);
    return p;
}

// Removes zero coefficients that the solver may carry as explicit entries.
void clean_rows(LinearSystem& sys)
{
    for (auto& row : sys.rows)
        for (auto it = row.begin(); it != row.end();)
            it = it->second.is_zero() ? row.erase(it) : std::next(it);
}

}  // namespace

RationalForm operator+(const RationalForm& a, const RationalForm& b)
{
    if (a.denominator == b.denominator)
        return {a.numerator + b.numerator, a.denominator};
    if (auto q = exact_divide(a.denominator, b.denominator))
        return {a.numerator + scale(*q, b.numerator), a.denominator};
    if (auto q = exact_divide(b.denominator, a.denominator))
        return {scale(*q, a.numerator) + b.numerator, b.denominator};
    return {scale(b.denominator, a.numerator) + scale(a.denominator, b.numerator), a.denominator * b.denominator};
}

RationalForm operator-(const RationalForm& a) { return {-a.numerator, a.denominator}; }
RationalForm operator-(const RationalForm& a, const RationalForm& b) { return a + (-b); }

RationalForm operator*(const RationalFunction& u, const RationalForm& w)
{
    return {scale(u.num, w.numerator), u.den * w.denominator};
}

RationalForm exterior_d(const RationalFunction& u)
{
    OneForm n = scale(u.den, exterior_d(u.num)) - scale(u.num, exterior_d(u.den));
    return {n, u.den * u.den};
}

bool equivalent(const RationalForm& a, const RationalForm& b)
{
    return scale(b.denominator, a.numerator) == scale(a.denominator, b.numerator);
}

std::string to_string(Normalization n) { return n == Normalization::df ? "df" : "dlogf"; }

Normalization default_normalization(const PencilSpec& spec)
{
    return spec.hamiltonian ? Normalization::df : Normalization::dlogf;
}

LeafNormalization leaf_normalization(const PencilSpec& spec, Normalization kind)
{
    LeafNormalization n;
    n.kind = kind;
    const BivarPoly one(Scalar(1));
    if (spec.hamiltonian)
        n.m = kind == Normalization::df ? RationalFunction{one, one} : RationalFunction{one, spec.F};
    else if (kind == Normalization::df)
        n.m = {spec.F.pow(spec.p - 1), spec.G.pow(spec.q + 1)};
    else
        n.m = {one, spec.F * spec.G};
    n.dH = {scale(n.m.num, spec.omega0), n.m.den};
    return n;
}

RationalForm normalize(const LeafNormalization& n, const OneForm& w) { return {scale(n.m.num, w), n.m.den}; }

bool check_decomposition(const RationalForm& eta, const LeafNormalization& n, const Decomposition& d)
{
    if (!d.feasible)
        return false;
    return equivalent(eta, exterior_d(d.g) + d.p * n.dH);
}

Decomposition decompose(const RationalForm& eta, const PencilSpec& spec, const LeafNormalization& n,
                        const DecompositionBounds& bounds)
{
    if (eta.denominator.is_zero())
        throw Error("precondition", "zero denominator");
    if (bounds.max_growth < 0 || bounds.cap < 0)
        throw Error("precondition", "decomposition bounds must be nonnegative");
    Decomposition out;
    if (eta.numerator.is_zero()) {
        out.feasible = true;
        return out;
    }
    const OneForm& N = eta.numerator;
    const BivarPoly& D = eta.denominator;
    const OneForm& W = n.dH.numerator;
    const BivarPoly& V = n.dH.denominator;
    const bool polynomial = spec.hamiltonian && n.kind == Normalization::df;
    const int dF = std::max(spec.F.degree(), 1);

    // net degrees: g behaves like a form of degree deg N + 1 - deg D
    const int nu = std::max(N.degree() + 1 - D.degree(), 0);
    const int nu_h = W.degree() + 1 - V.degree();
    int k0 = 1;
    while (k0 * dF < N.degree() + 1)
        ++k0;

    for (int round = 0; round <= bounds.max_growth; ++round) {
        BivarPoly E(Scalar(1));
        int gdeg, pdeg;
        if (polynomial) {
            gdeg = bounds.g_degree >= 0 ? bounds.g_degree + round * dF : (k0 + round) * dF;
            pdeg = bounds.p_degree >= 0 ? bounds.p_degree + round * dF : (k0 + round - 1) * dF;
        } else {
            const int a = round + 1;
            E = spec.hamiltonian ? spec.F.pow(a) : (spec.F * spec.G).pow(a);
            const int e = E.degree();
            gdeg = bounds.g_degree >= 0 ? bounds.g_degree + e : nu + e + round;
            pdeg = bounds.p_degree >= 0 ? bounds.p_degree + e : std::max(nu - nu_h, 0) + e + round;
        }
        if (gdeg > bounds.cap || pdeg > bounds.cap)
            break;
        pdeg = std::max(pdeg, 0);

        // N V E^2 = D V (E dG^ - G^ dE) + D E P^ W
        const BivarPoly DV = D * V, DVE = DV * E, DE = D * E;
        const OneForm DVdE = scale(DV, exterior_d(E)), DEW = scale(DE, W);
        const auto gb = monomials_up_to(gdeg), pb = monomials_up_to(pdeg);
        FormSystem fs(gb.size() + pb.size());
        for (std::size_t k = 0; k < gb.size(); ++k) {
            BivarPoly m = BivarPoly::monomial(gb[k].i, gb[k].j);
            fs.add_column_image(k, scale(DVE, exterior_d(m)) - scale(m, DVdE));
        }
        for (std::size_t k = 0; k < pb.size(); ++k)
            fs.add_column_image(gb.size() + k, scale(BivarPoly::monomial(pb[k].i, pb[k].j), DEW));
        fs.set_rhs(scale(V * E * E, N));
        LinearSystem sys = fs.build();
        clean_rows(sys);

        out.g_degree = gdeg;
        out.p_degree = pdeg;
        out.rounds = round + 1;
        out.unknowns = sys.columns;
        out.equations = sys.rows.size();
        ExactSolution sol = solve_exact(sys);
        if (!sol.feasible) {
            out.certificate_size = sol.cokernel.size();
            out.least_squares_residual = least_squares_residual(sys);
            continue;
        }
        BivarPoly g = assemble(gb, sol.x, 0), p = assemble(pb, sol.x, gb.size());
        if (polynomial) {
            // move every F^j component of p into g: clear the leading monomial of F^j in p
            for (int j = pdeg / dF; j >= 0; --j) {
                const BivarPoly Fj = spec.F.pow(j);
                const Mono lm = Fj.leading_mono();
                const Scalar c = p.coeff(lm.i, lm.j) / Fj.leading_coeff();
                if (c.is_zero())
                    continue;
                p -= Fj * c;
                g += (Fj * spec.F) * (c / Scalar(j + 1));
            }
            g.set_coeff(0, 0, Scalar(0));
        } else {
            // additive constants in g: clear the leading monomial of E
            const Mono lm = E.leading_mono();
            const Scalar c = g.coeff(lm.i, lm.j) / E.leading_coeff();
            if (!c.is_zero())
                g -= E * c;
        }
        out.feasible = true;
        out.g = {g, E};
        out.p = {p, E};
        out.least_squares_residual = 0.0;
        out.certificate_size = 0;
        if (!check_decomposition(eta, n, out))
            throw Error("numerics", "internal error: exact decomposition failed its residual check");
        return out;
    }
    out.feasible = false;
    return out;
}

bool fiber_connected(const Fibration& fib, const std::vector<Cycle>& cycles)
{
    if (cycles.size() < 2)
        return true;
    const Point a = cycles[0].vertices[0];
    const cplx t = cycles[0].level;
    for (std::size_t k = 1; k < cycles.size(); ++k) {
        const Point b = cycles[k].vertices[0];
        const double chord = (b - a).norm();
        bool reached = false;
        // two detours through C^2: straight, and bent by a fixed complex offset
        for (int attempt = 0; attempt < 3 && !reached; ++attempt) {
            const Point bend{cplx(0.0, 0.3 * attempt) * chord, cplx(0.2 * attempt, 0.0) * chord};
            Point z = a;
            bool ok = true;
            const int steps = 256;
            for (int s = 1; s <= steps && ok; ++s) {
                const double u = double(s) / steps;
                Point target = a + (b - a) * cplx(u) + bend * cplx(4.0 * u * (1.0 - u));
                Point prev = z;
                z = target;
                ok = fib.project(z, t, 1e-12, 60) && (z - prev).norm() < 0.5 * chord + 1e-12;
            }
            reached = ok && (z - b).norm() < 1e-6 * (1.0 + chord);
        }
        if (!reached)
            return false;
    }
    return true;
}

RelExactReport is_relatively_exact(const RationalForm& eta, const PencilSpec& spec, const std::vector<cplx>& levels,
                                   const RelExactOptions& opt)
{
    Fibration fib(spec);
    CriticalData data = critical_data(spec);
    RelExactReport rep;
    rep.tol = opt.tol;
    rep.warnings = data.warnings;
    const int dsum = spec.F.degree() + (spec.hamiltonian ? 0 : spec.G.degree());
    if (dsum <= 4)
        rep.warnings.push_back("deg F + deg G <= 4: simplicity of the vanishing cycles is not guaranteed");
    if (levels.empty())
        throw Error("precondition", "no levels given");
    NumForm num(eta.numerator);
    DenominatorEval den(spec, eta.denominator);
    const bool trivial = eta.denominator.degree() == 0;

    auto record = [&](const std::string& kind, int index, cplx t, const Cycle& c, double pole_tol) {
        const double floor = pole_tol * c.diameter();
        auto bundle = [&](const Point& z, const Point& dz, std::vector<cplx>& o) {
            const cplx d = den(z);
            if (!trivial && std::abs(d) < floor)
                throw Error("precondition", "a pole of the integrand comes too close to the cycle");
            o[0] = num(z, dz) / d;
            o[1] = std::abs(o[0]);
        };
        auto v = integrate_bundle(fib, c, 2, bundle, opt.quad);
        LeafIntegral li{kind, index, t, v[0], v[1].value.real()};
        rep.evidence.push_back(li);
    };

    bool warned_connectivity = false;
    for (cplx t : levels) {
        std::vector<Cycle> cycles;
        for (std::size_t i = 0; i < data.points.size(); ++i) {
            if (!data.points[i].nondegenerate) {
                rep.warnings.push_back("degenerate critical point skipped");
                continue;
            }
            if (std::abs(data.points[i].value - t) < 1e-12 * (1.0 + std::abs(t))) {
                rep.warnings.push_back("level coincides with a critical value; its vanishing cycle is skipped");
                continue;
            }
            cycles.push_back(seed_vanishing_cycle(fib, data, static_cast<int>(i), t, opt.seed));
            record("vanishing", static_cast<int>(i), t, cycles.back(), opt.quad.pole_tol);
        }
        for (std::size_t i = 0; i < data.indeterminacy.size(); ++i) {
            if (!data.indeterminacy[i].transversal) {
                rep.warnings.push_back("non-transversal indeterminacy point skipped");
                continue;
            }
            Cycle c = seed_indeterminacy_cycle(fib, data, static_cast<int>(i), t, opt.residue_radius);
            record("indeterminacy", static_cast<int>(i), t, c, 0.0);
        }
        if (opt.check_connectivity && !warned_connectivity && !fiber_connected(fib, cycles)) {
            rep.warnings.push_back("fiber connectivity heuristic failed: the fiber may be disconnected");
            warned_connectivity = true;
        }
    }

    rep.relatively_exact = true;
    double worst = -1.0;
    for (std::size_t k = 0; k < rep.evidence.size(); ++k) {
        const auto& e = rep.evidence[k];
        const double a = std::abs(e.integral.value);
        if (a > opt.tol * std::max(1.0, e.scale)) {
            rep.relatively_exact = false;
            if (a > worst) {
                worst = a;
                rep.witness = static_cast<int>(k);
            }
        }
    }
    // sort warnings for stable output, dropping repeats
    std::sort(rep.warnings.begin(), rep.warnings.end());
    rep.warnings.erase(std::unique(rep.warnings.begin(), rep.warnings.end()), rep.warnings.end());
    return rep;
}

OneForm tangent_form(const PencilSpec& spec, const BivarPoly& P, const BivarPoly& Q)
{
    const Scalar p(spec.p), q(spec.q);
    const OneForm dF = exterior_d(spec.F), dG = exterior_d(spec.G);
    return scale(spec.G * p, exterior_d(P)) - scale(P * q, dG) + scale(Q * p, dF) - scale(spec.F * q, exterior_d(Q));
}

TangentResult tangent_membership(const OneForm& omega, const PencilSpec& spec)
{
    const int a = spec.F.degree(), b = spec.hamiltonian ? 0 : spec.G.degree();
    const auto pb = monomials_up_to(a), qb = monomials_up_to(b);
    FormSystem fs(pb.size() + qb.size());
    for (std::size_t k = 0; k < pb.size(); ++k)
        fs.add_column_image(k, tangent_form(spec, BivarPoly::monomial(pb[k].i, pb[k].j), BivarPoly()));
    for (std::size_t k = 0; k < qb.size(); ++k)
        fs.add_column_image(pb.size() + k, tangent_form(spec, BivarPoly(), BivarPoly::monomial(qb[k].i, qb[k].j)));
    fs.set_rhs(omega);
    LinearSystem sys = fs.build();
    clean_rows(sys);
    TangentResult out;
    out.unknowns = sys.columns;
    ExactSolution sol = solve_exact(sys);
    if (!sol.feasible) {
        for (auto& [row, w] : sol.cokernel) {
            const auto& k = fs.key(row);
            out.certificate.push_back({k[0] == 0 ? "dx" : "dy", Mono{k[1], k[2]}, w});
        }
        return out;
    }
    BivarPoly P = assemble(pb, sol.x, 0), Q = assemble(qb, sol.x, pb.size());
    // kernel direction (F, -G): balance the leading coefficients of P / F and Q / G
    const Mono lf = spec.F.leading_mono(), lg = spec.G.leading_mono();
    const Scalar ca = P.coeff(lf.i, lf.j) / spec.F.leading_coeff(), cb = Q.coeff(lg.i, lg.j) / spec.G.leading_coeff();
    const Scalar lambda = (cb - ca) / Scalar(2);
    P += spec.F * lambda;
    Q -= spec.G * lambda;
    if (spec.hamiltonian)
        P.set_coeff(0, 0, Scalar(0));  // dG = 0 makes constants free
    if (tangent_form(spec, P, Q) != omega)
        throw Error("numerics", "internal error: tangent witness failed its residual check");
    out.witness = TangentWitness{P, Q};
    return out;
}

}  // namespace mkit
