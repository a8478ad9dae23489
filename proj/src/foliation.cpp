#include "mkit/foliation.hpp"

#include "mkit/center.hpp"
#include "mkit/univariate.hpp"

#include <functional>
#include <numeric>

namespace mkit {

namespace {

BivarPoly swap_xy(const BivarPoly& p)
{
    BivarPoly r;
    for (auto& [m, c] : p.terms())
        r.add_term(m.j, m.i, c);
    return r;
}

}  // namespace

bool share_factor(const BivarPoly& a, const BivarPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return true;
    if (a.degree() == 0 || b.degree() == 0)
        return false;
    return resultant_y(a, b).is_zero() || resultant_y(swap_xy(a), swap_xy(b)).is_zero();
}

PencilSpec pencil_form(const BivarPoly& F, const BivarPoly& G, int p, int q)
{
    if (p <= 0 || q <= 0)
        throw Error("precondition", "exponents p, q must be positive");
    if (std::gcd(p, q) != 1)
        throw Error("precondition", "gcd(p, q) must be 1");
    if (F.degree() < 1)
        throw Error("precondition", "F must be non-constant");
    if (G.is_zero())
        throw Error("precondition", "G must be nonzero");
    PencilSpec s;
    s.F = F;
    if (G.degree() == 0) {
        if (!(G == BivarPoly(Scalar(1))) || p != 1 || q != 1)
            s.warnings.push_back("constant G normalized to the Hamiltonian case G = 1, p = q = 1");
        s.G = BivarPoly(Scalar(1));
        s.p = s.q = 1;
        s.hamiltonian = true;
        s.omega0 = exterior_d(F);
        s.degree = F.degree() - 1;
        return s;
    }
    if (share_factor(F, G))
        throw Error("precondition", "F and G share a common factor");
    s.G = G;
    s.p = p;
    s.q = q;
    if (F.degree() * p != G.degree() * q)
        s.warnings.push_back("degree ratio deg F / deg G = " + std::to_string(F.degree()) + "/" + std::to_string(G.degree()) +
                             " differs from q/p = " + std::to_string(q) + "/" + std::to_string(p));
    const OneForm dF = exterior_d(F), dG = exterior_d(G);
    s.omega0 = (G * Scalar(p)) * dF - (F * Scalar(q)) * dG;
    s.degree = F.degree() + G.degree() - 2;
    return s;
}

FoliationForm foliation_form(const OneForm& omega, int degree)
{
    FoliationForm f{omega, degree, {}};
    if (omega.is_zero())
        throw Error("precondition", "the zero form does not define a foliation");
    if (omega.degree() > degree + 1)
        f.warnings.push_back("affine degree " + std::to_string(omega.degree()) + " exceeds declared degree + 1 = " +
                             std::to_string(degree + 1));
    return f;
}

FoliationForm foliation_form(const PencilSpec& pencil)
{
    FoliationForm f = foliation_form(pencil.omega0, pencil.degree);
    f.warnings.insert(f.warnings.end(), pencil.warnings.begin(), pencil.warnings.end());
    return f;
}

FoliationForm logarithmic_form(const std::vector<BivarPoly>& factors, const std::vector<Scalar>& lambdas)
{
    if (factors.size() != lambdas.size() || factors.size() < 2)
        throw Error("precondition", "need at least two factors and one exponent per factor");
    Scalar balance(0);
    int total = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() < 1)
            throw Error("precondition", "factors must be non-constant");
        balance += lambdas[i] * Scalar(factors[i].degree());
        total += factors[i].degree();
    }
    if (!balance.is_zero())
        throw Error("precondition", "side condition sum deg(f_i) lambda_i = 0 violated");
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            if (share_factor(factors[i], factors[j]))
                throw Error("precondition", "factors " + std::to_string(i) + " and " + std::to_string(j) + " are not relatively prime");
    OneForm omega;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        BivarPoly others(Scalar(1));
        for (std::size_t j = 0; j < factors.size(); ++j)
            if (j != i)
                others = others * factors[j];
        omega += (others * lambdas[i]) * exterior_d(factors[i]);
    }
    FoliationForm f = foliation_form(omega, total - 2);
    if (omega.degree() != total - 1)
        f.warnings.push_back("non-generic logarithmic form: affine degree " + std::to_string(omega.degree()) + " instead of " +
                             std::to_string(total - 1));
    return f;
}

int logarithmic_center_count(const std::vector<BivarPoly>& factors)
{
    int d = -2;
    for (auto& f : factors)
        d += f.degree();
    int cross = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            cross += factors[i].degree() * factors[j].degree();
    return d * d + d + 1 - cross;
}

std::string to_string(SingularKind k)
{
    switch (k) {
    case SingularKind::MorseCenterCandidate:
        return "morse-center-candidate";
    case SingularKind::NonDegenerateOther:
        return "non-degenerate-other";
    case SingularKind::Degenerate:
        return "degenerate";
    case SingularKind::Indeterminacy:
        return "indeterminacy";
    }
    return "unknown";
}

namespace {

std::vector<SingularPoint> locate(const OneForm& omega, const SingularOptions& opt,
                                  const std::function<bool(const Point&)>& is_indeterminacy)
{
    SolveOptions so;
    so.newton_tol = opt.newton_tol;
    so.newton_iters = opt.newton_iters;
    auto sols = solve_system(omega.A, omega.B, so);
    NumPoly Ax(omega.A.dx()), Ay(omega.A.dy()), Bx(omega.B.dx()), By(omega.B.dy());
    const BasicOneForm<cplx> wf = to_float(omega);
    std::vector<SingularPoint> out;
    for (auto& s : sols) {
        const Point& z = s.z;
        if (opt.box > 0.0 && (std::abs(z.x) > opt.box || std::abs(z.y) > opt.box))
            continue;
        if (opt.real_only && (std::abs(z.x.imag()) > opt.real_tol || std::abs(z.y.imag()) > opt.real_tol))
            continue;
        SingularPoint sp;
        sp.location = z;
        sp.residual = s.residual;
        sp.converged = s.converged;
        cplx ax = Ax(z), ay = Ay(z), bx = Bx(z), by = By(z);
        sp.trace = bx - ay;
        sp.determinant = -bx * ay + by * ax;
        double scale = std::max({std::abs(ax), std::abs(ay), std::abs(bx), std::abs(by)});
        if (is_indeterminacy && is_indeterminacy(z)) {
            sp.kind = SingularKind::Indeterminacy;
        } else if (scale == 0.0 || std::abs(sp.determinant) <= opt.degeneracy_tol * scale * scale) {
            sp.kind = SingularKind::Degenerate;
        } else if (std::abs(sp.trace) <= opt.trace_tol * scale) {
            auto defect = float_center_defect(translate(wf, z.x, z.y), opt.center_test_order);
            sp.center_defect = defect.value_or(-1.0);
            sp.kind = (defect && *defect <= opt.center_test_tol) ? SingularKind::MorseCenterCandidate
                                                                  : SingularKind::NonDegenerateOther;
        } else {
            sp.kind = SingularKind::NonDegenerateOther;
        }
        out.push_back(sp);
    }
    return out;
}

}  // namespace

std::vector<SingularPoint> singular_points(const FoliationForm& f, const SingularOptions& opt)
{
    return locate(f.omega, opt, {});
}

std::vector<SingularPoint> singular_points(const PencilSpec& pencil, const SingularOptions& opt)
{
    if (pencil.hamiltonian)
        return locate(pencil.omega0, opt, {});
    NumPoly F(pencil.F), G(pencil.G);
    const double sf = 1.0 + F.coeff_norm(), sg = 1.0 + G.coeff_norm();
    return locate(pencil.omega0, opt, [&](const Point& z) {
        const double w = 1.0 + std::pow(z.norm(), std::max(pencil.F.degree(), pencil.G.degree()));
        return std::abs(F(z)) <= opt.indeterminacy_tol * sf * w && std::abs(G(z)) <= opt.indeterminacy_tol * sg * w;
    });
}

}  // namespace mkit
