#include "mkit/melnikov.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mkit {

OneForm DeformationSpec::form(int i) const
{
    if (i < 1)
        throw Error("precondition", "perturbation orders start at 1");
    return i <= static_cast<int>(forms.size()) ? forms[i - 1] : OneForm{};
}

RationalForm DeformationSpec::normalized(int i) const
{
    return normalize(leaf_normalization(base, normalization), form(i));
}

DeformationSpec deformation(const PencilSpec& base, std::vector<OneForm> forms, std::optional<Normalization> normalization)
{
    if (forms.empty())
        throw Error("precondition", "a deformation needs at least omega_1");
    DeformationSpec d;
    d.base = base;
    d.forms = std::move(forms);
    d.normalization = normalization.value_or(default_normalization(base));
    d.warnings = base.warnings;
    const int budget = base.omega0.degree();
    for (std::size_t i = 0; i < d.forms.size(); ++i)
        if (d.forms[i].degree() > budget)
            d.warnings.push_back("omega_" + std::to_string(i + 1) + " has degree " + std::to_string(d.forms[i].degree()) +
                                 " above that of omega_0 (" + std::to_string(budget) + "); the perturbed foliation has higher degree");
    if (!base.hamiltonian && std::gcd(base.p, base.q) > 1)
        d.warnings.push_back("gcd(p, q) > 1: fibers are not reduced, the holonomy need not be the identity");
    return d;
}

std::vector<Cycle> cycle_family(const Fibration& fib, const CriticalData& data, const CycleChoice& choice,
                                const std::vector<cplx>& levels, const SeedOptions& seed, double residue_radius)
{
    if (levels.empty())
        throw Error("precondition", "no levels given");
    std::vector<Cycle> out;
    std::vector<cplx> exempt;
    if (choice.kind == "critical") {
        out.push_back(seed_vanishing_cycle(fib, data, choice.index, levels[0], seed));
        exempt.push_back(data.points[choice.index].value);
    } else if (choice.kind == "indeterminacy") {
        out.push_back(seed_indeterminacy_cycle(fib, data, choice.index, levels[0], residue_radius));
    } else {
        throw Error("precondition", "cycle kind must be 'critical' or 'indeterminacy'");
    }
    TransportOptions topt = seed.transport;
    if (topt.avoid.empty()) {
        topt.avoid = forbidden_values(fib.spec(), data);
        topt.margin = safety_margin(topt.avoid);
    }
    for (std::size_t k = 1; k < levels.size(); ++k) {
        const Cycle& prev = out.back();
        Cycle next = transport(fib, prev, plan_path(prev.level, levels[k], topt.avoid, topt.margin, exempt), topt);
        next.level = levels[k];
        out.push_back(std::move(next));
    }
    return out;
}

std::vector<MelnikovSample> melnikov_samples(const Fibration& fib, const RationalForm& phi, const std::vector<Cycle>& cycles,
                                             const QuadratureOptions& quad)
{
    NumForm num(phi.numerator);
    DenominatorEval den(fib.spec(), phi.denominator);
    const bool trivial = phi.denominator.degree() == 0;
    std::vector<MelnikovSample> out;
    for (auto& c : cycles) {
        const double floor = c.provenance.kind == "indeterminacy" ? 0.0 : quad.pole_tol * c.diameter();
        auto bundle = [&](const Point& z, const Point& dz, std::vector<cplx>& o) {
            const cplx d = den(z);
            if (!trivial && std::abs(d) < floor)
                throw Error("precondition", "a pole of the integrand comes too close to the cycle");
            o[0] = num(z, dz) / d;
            o[1] = std::abs(o[0]);
        };
        auto v = integrate_bundle(fib, c, 2, bundle, quad);
        out.push_back({c.level, -v[0].value, v[0].error, v[1].value.real()});
    }
    return out;
}

namespace {

bool vanishes(const std::vector<MelnikovSample>& s, double tol)
{
    double scale = 1.0, worst = 0.0;
    for (auto& x : s) {
        scale = std::max(scale, x.scale);
        worst = std::max(worst, std::abs(x.value));
    }
    return worst <= tol * scale;
}

std::string convention_note(const DeformationSpec& def)
{
    std::string h = def.normalization == Normalization::df ? "f" : "log f";
    return "M_k(t) is the eps^k coefficient of H(return) - H(start) along the cycle orientation, H = " + h +
           "; the transverse section is parameterized by t = f";
}

}  // namespace

MelnikovResult first_melnikov(const DeformationSpec& def, const std::vector<Cycle>& cycles, const MelnikovOptions& opt)
{
    Fibration fib(def.base);
    MelnikovResult r;
    r.order = 1;
    r.normalization = def.normalization;
    r.zero_tol = opt.zero_tol;
    r.convention = convention_note(def);
    r.warnings = def.warnings;
    r.samples = melnikov_samples(fib, def.normalized(1), cycles, opt.quad);
    r.identically_zero = vanishes(r.samples, opt.zero_tol);
    return r;
}

MelnikovResult higher_melnikov(const DeformationSpec& def, const std::vector<Cycle>& cycles, int k_max, const MelnikovOptions& opt)
{
    if (k_max < 1)
        throw Error("precondition", "order must be >= 1");
    MelnikovResult r = first_melnikov(def, cycles, opt);
    const int dsum = def.base.F.degree() + (def.base.hamiltonian ? 0 : def.base.G.degree());
    if (k_max > 1 && dsum <= 4)
        r.warnings.push_back("deg F + deg G <= 4: the cycle need not be simple, the recursion may fail");
    if (!r.identically_zero || k_max == 1)
        return r;

    Fibration fib(def.base);
    const LeafNormalization n = leaf_normalization(def.base, def.normalization);
    std::vector<RationalFunction> p;  // p_1, p_2, ...
    for (int k = 1; k < k_max; ++k) {
        // eta_k + p_k dH + dg_k = -sum_{j<k} p_j eta_{k-j}
        RationalForm rhs = -def.normalized(k);
        for (int j = 1; j < k; ++j)
            rhs = rhs - p[j - 1] * def.normalized(k - j);
        ChainStep step;
        step.order = k;
        step.info = decompose(rhs, def.base, n, opt.bounds);
        if (!step.info.feasible)
            throw Error("infeasible", "no decomposition for step " + std::to_string(k) +
                                          " within the degree bounds: the cycle may not be simple, the fiber may be "
                                          "disconnected, or the bounds are too small (least-squares residual " +
                                          std::to_string(step.info.least_squares_residual) + ")");
        step.g = step.info.g;
        step.p = step.info.p;
        step.exact = check_decomposition(rhs, n, step.info);
        p.push_back(step.p);
        r.chain.push_back(step);

        // M_{k+1} = -int (sum_{i<=k} p_i eta_{k+1-i} + eta_{k+1})
        RationalForm phi = def.normalized(k + 1);
        for (int i = 1; i <= k; ++i)
            phi = phi + p[i - 1] * def.normalized(k + 1 - i);
        r.lower.push_back(std::move(r.samples));
        r.samples = melnikov_samples(fib, phi, cycles, opt.quad);
        r.order = k + 1;
        r.identically_zero = vanishes(r.samples, opt.zero_tol);
        if (!r.identically_zero)
            break;
    }
    return r;
}

ZeroReport count_zeros(const std::vector<MelnikovSample>& samples, double a, double b, std::optional<double> t0,
                       const ZeroOptions& opt)
{
    if (!(a < b))
        throw Error("precondition", "segment must satisfy a < b");
    ZeroReport rep;
    rep.a = a;
    rep.b = b;
    std::vector<std::pair<double, double>> pts;
    double scale = 1.0, worst = 0.0, imag = 0.0;
    for (auto& s : samples) {
        if (std::abs(s.t.imag()) > 1e-12 * (1.0 + std::abs(s.t)) || s.t.real() < a || s.t.real() > b)
            continue;
        pts.emplace_back(s.t.real(), s.value.real());
        scale = std::max(scale, s.scale);
        worst = std::max(worst, std::abs(s.value));
        imag = std::max(imag, std::abs(s.value.imag()));
    }
    std::sort(pts.begin(), pts.end());
    rep.samples_used = pts.size();
    if (pts.size() < 2)
        throw Error("precondition", "fewer than two real samples in the segment");
    if (imag > 1e-6 * std::max(worst, 1e-300))
        rep.warnings.push_back("samples have non-negligible imaginary parts; only the real part is used");
    rep.note = "predicted fixed points of the holonomy near each zero";
    if (worst <= opt.zero_tol * scale) {
        rep.identically_zero = true;
        rep.note = "M vanishes on all samples: no prediction, defer to the next order";
        return rep;
    }
    const double gap = opt.max_gap > 0.0 ? opt.max_gap : 0.25 * (b - a);
    const double ztol = opt.zero_tol * scale;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        auto [t1, m1] = pts[k];
        auto [t2, m2] = pts[k + 1];
        if (std::abs(m1) <= ztol && k > 0)
            continue;  // counted with the previous bracket
        bool change = (m1 < 0.0 && m2 > 0.0) || (m1 > 0.0 && m2 < 0.0) || std::abs(m2) <= ztol;
        if (!change)
            continue;
        if (t2 - t1 > gap)
            throw Error("precondition", "samples too sparse: a sign change is bracketed by a gap of " + std::to_string(t2 - t1));
        const double est = std::abs(m2) <= ztol ? t2 : t1 - m1 * (t2 - t1) / (m2 - m1);
        rep.zeros.push_back({t1, t2, est});
    }

    if (t0) {
        // least-squares fit of M in powers of (t - t0) over the nearest samples
        const int order = std::clamp(opt.fit_order, 1, 4);
        std::vector<std::pair<double, double>> near = pts;
        std::sort(near.begin(), near.end(),
                  [&](auto& u, auto& v) { return std::abs(u.first - *t0) < std::abs(v.first - *t0); });
        near.resize(std::min<std::size_t>(near.size(), 2 * order + 3));
        if (static_cast<int>(near.size()) < order + 1) {
            rep.warnings.push_back("not enough samples for the multiplicity fit");
        } else {
            double h = 0.0;
            for (auto& q : near)
                h = std::max(h, std::abs(q.first - *t0));
            h = h > 0.0 ? h : 1.0;
            Eigen::MatrixXd A(near.size(), order + 1);
            Eigen::VectorXd y(near.size());
            for (std::size_t i = 0; i < near.size(); ++i) {
                const double u = (near[i].first - *t0) / h;
                for (int k = 0; k <= order; ++k)
                    A(i, k) = std::pow(u, k);
                y(i) = near[i].second;
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const auto& sv = svd.singularValues();
            const double cond = sv(0) / sv(sv.size() - 1);
            if (!(cond <= opt.max_condition)) {
                rep.warnings.push_back("multiplicity fit is ill-conditioned; no multiplicity reported");
            } else {
                Eigen::VectorXd c = svd.solve(y);
                MultiplicityFit fit;
                fit.t0 = *t0;
                fit.condition = cond;
                double cmax = 0.0;
                for (int k = 0; k <= order; ++k)
                    cmax = std::max(cmax, std::abs(c(k)));
                fit.multiplicity = order + 1;
                for (int k = 0; k <= order; ++k) {
                    fit.coefficients.push_back(c(k) / std::pow(h, k));
                    if (fit.multiplicity == order + 1 && std::abs(c(k)) > opt.fit_tol * cmax)
                        fit.multiplicity = k;
                }
                rep.fit = fit;
            }
        }
    }
    return rep;
}

}  // namespace mkit
