#include "mkit/oracle.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace mkit {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 4>;

Point to_point(const State& s) { return {cplx(s[0], s[1]), cplx(s[2], s[3])}; }
State to_state(const Point& z) { return {z.x.real(), z.x.imag(), z.y.real(), z.y.imag()}; }

/// omega_0 + eps omega_1 + eps^2 omega_2 + ... evaluated numerically
class PerturbedForm {
public:
    PerturbedForm(const DeformationSpec& def, cplx eps) : base_(def.base.omega0)
    {
        cplx e = eps;
        for (auto& w : def.forms) {
            terms_.emplace_back(e, NumForm(w));
            e *= eps;
        }
    }

    /// kernel direction (B, -A) and |(A, B)|
    Point kernel(const Point& z, double& size) const
    {
        cplx a = base_.A(z), b = base_.B(z);
        for (auto& [e, w] : terms_) {
            if (e == cplx(0.0))
                continue;
            a += e * w.A(z);
            b += e * w.B(z);
        }
        size = std::sqrt(std::norm(a) + std::norm(b));
        return {b, -a};
    }

private:
    NumForm base_;
    std::vector<std::pair<cplx, NumForm>> terms_;
};

Cycle guide_at(const Fibration& fib, const Cycle& guide, cplx t, const CriticalData* data)
{
    if (std::abs(t - guide.level) <= 1e-14 * (1.0 + std::abs(t)))
        return guide;
    CriticalData local;
    if (!data) {
        local = critical_data(fib.spec());
        data = &local;
    }
    TransportOptions topt;
    topt.avoid = forbidden_values(fib.spec(), *data);
    topt.margin = safety_margin(topt.avoid);
    std::vector<cplx> exempt;
    if (guide.provenance.kind == "critical")
        exempt.push_back(guide.provenance.source_value);
    Cycle c = transport(fib, guide, plan_path(guide.level, t, topt.avoid, topt.margin, exempt), topt);
    c.level = t;
    return c;
}

HolonomySample follow(const DeformationSpec& def, const Fibration& fib, const Cycle& guide, cplx eps, const HolonomyOptions& opt)
{
    const auto& v = guide.vertices;
    const std::size_t n = v.size();
    if (n < 3)
        throw Error("precondition", "guide cycle has fewer than 3 vertices");
    const double diam = guide.diameter();
    PerturbedForm w(def, eps);

    HolonomySample out;
    out.t = guide.level;
    out.eps = eps;
    out.start = v[0];

    State x = to_state(v[0]);
    auto stepper = ode::make_controlled(opt.ode_tol, opt.ode_tol, ode::runge_kutta_fehlberg78<State>());
    for (std::size_t k = 0; k < n; ++k) {
        const Point p0 = v[k], d = v[(k + 1) % n] - v[k];
        auto rhs = [&](const State& s, State& ds, double tau) {
            const Point z = to_point(s);
            double size = 0.0;
            const Point X = w.kernel(z, size);
            const double xx = std::norm(X.x) + std::norm(X.y);
            if (!(xx > 0.0))
                throw Error("numeric", "leaf passes through a singular point of the perturbed foliation");
            const Point target = d + opt.pull * (p0 + tau * d - z);
            const Point dz = (hdot(X, target) / xx) * X;
            ds = to_state(dz);
        };
        double s = 0.0, ds = 0.25;
        while (s < 1.0) {
            ds = std::min(ds, 1.0 - s);
            if (out.steps + out.rejected >= opt.max_steps)
                throw Error("numeric", "no return to the transversal within the step budget");
            if (stepper.try_step(rhs, x, s, ds) == ode::fail) {
                ++out.rejected;
                if (ds < 1e-12)
                    throw Error("numeric", "leaf integration step underflow");
                continue;
            }
            ++out.steps;
            const Point z = to_point(x);
            out.tube_max = std::max(out.tube_max, (z - (p0 + s * d)).norm() / diam);
            if (out.tube_max > opt.tube)
                throw Error("tube", "leaf escapes the tube around the guide cycle (eps too large)");
            double size = 0.0;
            const Point X = w.kernel(z, size);
            // |omega(X)| for X = (B, -A) is rounding only; recorded as a sanity check
            const cplx pair = -X.y * X.x + X.x * X.y;
            if (size > 0.0)
                out.leaf_residual = std::max(out.leaf_residual, std::abs(pair) / (size * X.norm()));
        }
    }

    // back to the transversal v0 + s n, n = conj(grad f): move along the leaf in complex time
    Point grad;
    fib.eval(v[0], grad);
    const Point nvec{std::conj(grad.x), std::conj(grad.y)};
    const Point m{nvec.y, -nvec.x};
    auto crossing = [&](const Point& z) { return m.x * (z.x - v[0].x) + m.y * (z.y - v[0].y); };
    Point z = to_point(x);
    const double scale = (v[0].norm() + diam) * m.norm();
    double last = HUGE_VAL;
    for (int it = 0; it < 30; ++it) {
        double size = 0.0;
        Point X = w.kernel(z, size);
        const cplx mx = m.x * X.x + m.y * X.y;
        const cplx c = crossing(z);
        // quadratic convergence down to rounding, then stall
        if (std::abs(c) <= 1e-16 * scale || (std::abs(c) <= 1e-12 * scale && std::abs(c) > 0.25 * last))
            break;
        last = std::abs(c);
        const cplx delta = -c / mx;
        // RK4 along z' = delta X(z) over [0, 1]
        const int sub = 8;
        for (int q = 0; q < sub; ++q) {
            const cplx hh = delta / double(sub);
            auto F = [&](const Point& p) {
                double sz;
                return hh * w.kernel(p, sz);
            };
            const Point k1 = F(z), k2 = F(z + 0.5 * k1), k3 = F(z + 0.5 * k2), k4 = F(z + k3);
            z = z + (1.0 / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if (it == 29)
            throw Error("numeric", "return to the transversal did not converge");
    }
    if ((z - v[0]).norm() > opt.section * diam)
        throw Error("numeric", "leaf returns outside the transversal disc");
    out.end = z;
    out.h = fib.value(z);
    return out;
}

cplx displacement(const DeformationSpec& def, cplx h, cplx t)
{
    return def.normalization == Normalization::df ? h - t : std::log(h / t);
}

}  // namespace

HolonomySample holonomy(const DeformationSpec& def, const Cycle& guide, cplx t, cplx eps, const HolonomyOptions& opt)
{
    Fibration fib(def.base);
    return follow(def, fib, guide_at(fib, guide, t, nullptr), eps, opt);
}

FdEstimate melnikov_fd(const DeformationSpec& def, const Cycle& guide, cplx t, int k, const FdOptions& opt)
{
    if (k < 1)
        throw Error("precondition", "order must be >= 1");
    if (opt.grid < 2 || !(opt.ratio > 0.0 && opt.ratio < 1.0))
        throw Error("precondition", "eps grid needs at least 2 values and a ratio in (0, 1)");
    Fibration fib(def.base);
    const Cycle g = guide_at(fib, guide, t, nullptr);

    FdEstimate est;
    est.t = t;
    est.order = k;
    double e0 = opt.eps_max;
    HolonomySample plus, minus;
    for (int tries = 0;; ++tries) {
        try {
            plus = follow(def, fib, g, e0, opt.holonomy);
            minus = follow(def, fib, g, -e0, opt.holonomy);
            break;
        } catch (const Error& err) {
            if (err.kind() != "tube" || tries >= 30)
                throw;
            e0 *= 0.5;
        }
    }
    if (e0 < opt.eps_max)
        est.warnings.push_back("largest eps reduced to " + std::to_string(e0) + " to keep the leaf in the tube");

    std::vector<cplx> A;
    for (int j = 0; j < opt.grid; ++j) {
        const double e = e0 * std::pow(opt.ratio, j);
        if (j > 0) {
            plus = follow(def, fib, g, e, opt.holonomy);
            minus = follow(def, fib, g, -e, opt.holonomy);
        }
        const cplx dp = displacement(def, plus.h, t), dm = displacement(def, minus.h, t);
        // even or odd part in eps, which carries M_k at leading order
        cplx D = k % 2 ? 0.5 * (dp - dm) : 0.5 * (dp + dm);
        for (int i = k % 2 ? 1 : 2; i < k; i += 2)
            if (i <= static_cast<int>(opt.lower.size()))
                D -= opt.lower[i - 1] * std::pow(e, i);
        A.push_back(D / std::pow(e, k));
        est.eps.push_back(e);
        est.samples.push_back(plus);
        est.samples.push_back(minus);
    }

    // Richardson in powers of eps^2
    const double r2 = 1.0 / (opt.ratio * opt.ratio);
    std::vector<std::vector<cplx>> T(A.size());
    est.value = A.back();
    est.error = std::abs(A.back() - A[A.size() - 2]);
    for (std::size_t j = 0; j < A.size(); ++j) {
        T[j].push_back(A[j]);
        for (std::size_t m = 1; m <= j; ++m)
            T[j].push_back(T[j][m - 1] + (T[j][m - 1] - T[j - 1][m - 1]) / (std::pow(r2, double(m)) - 1.0));
        for (std::size_t m = 1; m <= j; ++m) {
            const double err = std::max(std::abs(T[j][m] - T[j][m - 1]), std::abs(T[j][m] - T[j - 1][m - 1]));
            if (err < est.error) {
                est.error = err;
                est.value = T[j][m];
            }
        }
    }
    est.converged = est.error <= std::max(1e-3 * std::abs(est.value), 1e-9);
    if (!est.converged)
        est.warnings.push_back("extrapolation did not converge: noise floor reached before order " + std::to_string(k));
    return est;
}

std::vector<FixedPoint> holonomy_fixed_points(const DeformationSpec& def, const Cycle& guide, double eps, double a, double b,
                                              int n, const HolonomyOptions& opt)
{
    if (!(a < b) || n < 2)
        throw Error("precondition", "need a < b and at least 2 scan levels");
    Fibration fib(def.base);
    const CriticalData data = critical_data(def.base);
    struct Scan {
        double t;
        double d;
        Cycle c;
    };
    auto eval = [&](const Cycle& from, double t) {
        Cycle c = guide_at(fib, from, t, &data);
        const double d = (follow(def, fib, c, eps, opt).h - t).real();
        return Scan{t, d, std::move(c)};
    };
    std::vector<FixedPoint> out;
    Scan prev = eval(guide, a);
    for (int k = 1; k < n; ++k) {
        Scan cur = eval(prev.c, a + (b - a) * k / (n - 1));
        if ((prev.d < 0.0) != (cur.d < 0.0) || cur.d == 0.0) {
            // Illinois regula falsi
            Scan lo = prev, hi = cur;
            Scan mid = std::abs(lo.d) < std::abs(hi.d) ? lo : hi;
            double flo = lo.d, fhi = hi.d;
            int side = 0;
            for (int it = 0; it < 60 && hi.t - lo.t > 1e-12 * (1.0 + std::abs(hi.t)) && mid.d != 0.0; ++it) {
                const double tm = (lo.t * fhi - hi.t * flo) / (fhi - flo);
                mid = eval(lo.c, tm);
                if ((mid.d < 0.0) == (lo.d < 0.0)) {
                    lo = mid;
                    flo = mid.d;
                    if (side == -1)
                        fhi *= 0.5;
                    side = -1;
                } else {
                    hi = mid;
                    fhi = mid.d;
                    if (side == 1)
                        flo *= 0.5;
                    side = 1;
                }
                if (std::abs(mid.d) <= 1e-14 * (1.0 + std::abs(tm)))
                    break;
            }
            out.push_back({mid.t, std::abs(mid.d)});
        }
        prev = std::move(cur);
    }
    return out;
}

}  // namespace mkit
