#include "mkit/abelian.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace mkit {

namespace {

struct Rule {
    std::vector<double> x, w;  // on [-1, 1]
    Rule()
    {
        using G = boost::math::quadrature::gauss<double, 10>;
        for (std::size_t k = 0; k < G::abscissa().size(); ++k) {
            const double a = G::abscissa()[k], wt = G::weights()[k];
            x.push_back(a);
            w.push_back(wt);
            if (a != 0.0) {
                x.push_back(-a);
                w.push_back(wt);
            }
        }
    }
};

const Rule& rule()
{
    static const Rule r;
    return r;
}

// One segment of a cycle, realized as a curve on the fiber: the chord from v0
// to v1 pushed along a fixed normal direction n until f = t.
class Segment {
public:
    Segment(const Fibration& fib, const Point& v0, const Point& v1, cplx t, double tol)
        : fib_(fib), v0_(v0), d_(v1 - v0), t_(t), tol_(tol)
    {
        Point g0, g1;
        fib.eval(v0, g0);
        fib.eval(v1, g1);
        Point g = g0 + g1;
        const double gn = g.norm();
        if (gn == 0.0 || !std::isfinite(gn))
            throw Error("numerics", "fiber is singular along the cycle");
        n_ = {std::conj(g.x) / gn, std::conj(g.y) / gn};
    }

    // point and tangent at parameter s in [0, 1]
    void at(double s, Point& z, Point& dz) const
    {
        const Point c = v0_ + d_ * cplx(s);
        cplx lambda = 0.0;
        Point g;
        for (int it = 0; it < 30; ++it) {
            z = c + n_ * lambda;
            const cplx h = fib_.eval(z, g) - t_;
            const cplx hp = g.x * n_.x + g.y * n_.y;
            if (std::abs(h) <= tol_ * (1.0 + std::abs(t_)) || std::abs(h) <= fib_.rounding(z))
                break;
            if (hp == 0.0)
                throw Error("numerics", "node projection onto the fiber failed");
            lambda -= h / hp;
            if (it == 29)
                throw Error("numerics", "node projection onto the fiber did not converge");
        }
        fib_.eval(z, g);
        const cplx lp = -(g.x * d_.x + g.y * d_.y) / (g.x * n_.x + g.y * n_.y);
        dz = d_ + n_ * lp;
    }

private:
    const Fibration& fib_;
    Point v0_, d_, n_;
    cplx t_;
    double tol_;
};

void gauss_leg(const Segment& seg, const FormBundle& f, double a, double b, std::size_t m, std::vector<cplx>& out,
               std::vector<cplx>& scratch)
{
    const Rule& r = rule();
    std::fill(out.begin(), out.end(), cplx(0.0));
    const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
    Point z, dz;
    for (std::size_t k = 0; k < r.x.size(); ++k) {
        seg.at(mid + h * r.x[k], z, dz);
        f(z, dz, scratch);
        for (std::size_t i = 0; i < m; ++i)
            out[i] += (r.w[k] * h) * scratch[i];
    }
}

struct Accumulator {
    std::vector<cplx> sum;
    std::vector<double> err;
    bool exhausted = false;
};

void adapt(const Segment& seg, const FormBundle& f, double a, double b, const std::vector<cplx>& coarse, int depth,
           const QuadratureOptions& opt, std::size_t m, Accumulator& acc, double parent = -1.0)
{
    std::vector<cplx> L(m), R(m), scratch(m);
    const double mid = 0.5 * (a + b);
    gauss_leg(seg, f, a, mid, m, L, scratch);
    gauss_leg(seg, f, mid, b, m, R, scratch);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        worst = std::max(worst, std::abs(L[i] + R[i] - coarse[i]) / std::max(1.0, std::abs(coarse[i])));
    // a smooth integrand gains about 2^20 per bisection; a stalled error is the
    // rounding floor of the fiber points, and is kept as the reported bound
    const bool stalled = parent >= 0.0 && worst > 0.25 * parent;
    if (worst <= opt.tol || depth >= opt.max_depth || stalled) {
        if (worst > opt.tol && !stalled)
            acc.exhausted = true;
        for (std::size_t i = 0; i < m; ++i) {
            acc.sum[i] += L[i] + R[i];
            acc.err[i] += std::abs(L[i] + R[i] - coarse[i]);
        }
        return;
    }
    adapt(seg, f, a, mid, L, depth + 1, opt, m, acc, worst);
    adapt(seg, f, mid, b, R, depth + 1, opt, m, acc, worst);
}

}  // namespace

DenominatorEval::DenominatorEval(const PencilSpec& spec, const BivarPoly& den)
{
    BivarPoly rest = den;
    auto strip = [&rest](const BivarPoly& f) {
        int k = 0;
        if (f.degree() < 1)
            return k;
        while (auto q = exact_divide(rest, f)) {
            rest = *q;
            ++k;
        }
        return k;
    };
    a_ = strip(spec.F);
    b_ = spec.hamiltonian ? 0 : strip(spec.G);
    F_ = NumPoly(spec.F);
    G_ = NumPoly(spec.G);
    rest_ = NumPoly(rest);
}

cplx DenominatorEval::operator()(const Point& z) const
{
    cplx v = rest_(z);
    if (a_ > 0)
        v *= std::pow(F_(z), a_);
    if (b_ > 0)
        v *= std::pow(G_(z), b_);
    return v;
}

std::vector<IntegralValue> integrate_bundle(const Fibration& fib, const Cycle& cycle, std::size_t m, const FormBundle& f,
                                            const QuadratureOptions& opt)
{
    const auto& v = cycle.vertices;
    if (v.size() < 3)
        throw Error("precondition", "cycle needs at least three vertices");
    Accumulator acc{std::vector<cplx>(m, 0.0), std::vector<double>(m, 0.0)};
    std::vector<cplx> coarse(m), scratch(m);
    for (std::size_t k = 0; k < v.size(); ++k) {
        Segment seg(fib, v[k], v[(k + 1) % v.size()], cycle.level, opt.fiber_tol);
        gauss_leg(seg, f, 0.0, 1.0, m, coarse, scratch);
        adapt(seg, f, 0.0, 1.0, coarse, 0, opt, m, acc);
    }
    std::vector<IntegralValue> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        out[i].value = acc.sum[i];
        // leaf differences overestimate the error of the finer rule; keep them as the bound
        out[i].error = acc.err[i] + 1e-15 * std::abs(acc.sum[i]);
    }
    if (acc.exhausted) {
        for (auto& o : out)
            if (o.error > 1e-6 * (1.0 + std::abs(o.value)))
                throw Error("numerics", "quadrature error estimate above tolerance after maximal refinement");
    }
    return out;
}

std::vector<IntegralValue> integrate(const Fibration& fib, const std::vector<RationalForm>& phis, const Cycle& cycle,
                                     const QuadratureOptions& opt)
{
    struct Num {
        NumForm w;
        DenominatorEval den;
        bool trivial;
    };
    std::vector<Num> nf;
    for (auto& p : phis) {
        if (p.denominator.is_zero())
            throw Error("precondition", "zero denominator");
        nf.push_back({NumForm(p.numerator), DenominatorEval(fib.spec(), p.denominator), p.denominator.degree() == 0});
    }
    const double floor = opt.pole_tol * cycle.diameter();
    auto bundle = [&](const Point& z, const Point& dz, std::vector<cplx>& out) {
        for (std::size_t i = 0; i < nf.size(); ++i) {
            const cplx den = nf[i].den(z);
            if (!nf[i].trivial && std::abs(den) < floor)
                throw Error("precondition", "a pole of the integrand comes too close to the cycle");
            out[i] = nf[i].w(z, dz) / den;
        }
    };
    return integrate_bundle(fib, cycle, phis.size(), bundle, opt);
}

IntegralValue integrate(const Fibration& fib, const RationalForm& phi, const Cycle& cycle, const QuadratureOptions& opt)
{
    return integrate(fib, std::vector<RationalForm>{phi}, cycle, opt)[0];
}

std::vector<OneForm> monomial_basis(int B, std::vector<std::string>* labels)
{
    std::vector<OneForm> out;
    auto mono = [](int i, int j) {
        std::string s;
        if (i > 0)
            s += i == 1 ? "x" : "x^" + std::to_string(i);
        if (j > 0)
            s += (s.empty() ? "" : "*") + (j == 1 ? std::string("y") : "y^" + std::to_string(j));
        return s.empty() ? std::string("1") : s;
    };
    for (int n = 0; n <= B; ++n)
        for (int which = 0; which < 2; ++which)
            for (int i = n; i >= 0; --i) {
                BivarPoly m = BivarPoly::monomial(i, n - i);
                out.push_back(which == 0 ? OneForm{m, {}} : OneForm{{}, m});
                if (labels)
                    labels->push_back((n == 0 ? std::string() : mono(i, n - i) + " ") + (which == 0 ? "dx" : "dy"));
            }
    return out;
}

PeriodVector periods(const Fibration& fib, const Cycle& cycle, int B, const QuadratureOptions& opt)
{
    if (B < 0)
        throw Error("precondition", "period basis bound must be >= 0");
    PeriodVector pv;
    pv.bound = B;
    pv.basis = monomial_basis(B, &pv.labels);
    const std::size_t m = pv.basis.size();
    // evaluate all monomials at once from powers of x and y
    auto bundle = [B, m](const Point& z, const Point& dz, std::vector<cplx>& out) {
        std::vector<cplx> xp(B + 1, 1.0), yp(B + 1, 1.0);
        for (int k = 1; k <= B; ++k) {
            xp[k] = xp[k - 1] * z.x;
            yp[k] = yp[k - 1] * z.y;
        }
        std::size_t idx = 0;
        for (int n = 0; n <= B; ++n)
            for (int which = 0; which < 2; ++which)
                for (int i = n; i >= 0; --i)
                    out[idx++] = xp[i] * yp[n - i] * (which == 0 ? dz.x : dz.y);
        (void)m;
    };
    pv.values = integrate_bundle(fib, cycle, m, bundle, opt);
    return pv;
}

std::vector<ResidueEntry> residue_vanishing(const Fibration& fib, const CriticalData& data, const RationalForm& phi, cplx t,
                                            double tol, double radius, const QuadratureOptions& opt)
{
    std::vector<ResidueEntry> out;
    for (std::size_t k = 0; k < data.indeterminacy.size(); ++k) {
        Cycle c = seed_indeterminacy_cycle(fib, data, static_cast<int>(k), t, radius);
        ResidueEntry e;
        e.location = data.indeterminacy[k].location;
        QuadratureOptions o = opt;
        o.pole_tol = 0.0;  // the loop encircles the pole by design; its distance is set by `radius`
        e.integral = integrate(fib, phi, c, o);
        e.vanishes = std::abs(e.integral.value) <= tol;
        out.push_back(e);
    }
    return out;
}

}  // namespace mkit
