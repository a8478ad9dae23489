#include "mkit/fibration.hpp"

#include "mkit/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mkit {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// principal square root with -0 imaginary parts treated as +0, so that the
// square root of a negative real is always +i sqrt|.|
cplx csqrt(cplx z)
{
    if (z.imag() == 0.0)
        z = cplx(z.real(), 0.0);
    return std::sqrt(z);
}

bool close(cplx a, cplx b, double rel = 1e-9) { return std::abs(a - b) <= rel * (1.0 + std::abs(a) + std::abs(b)); }

double seg_point_distance(cplx a, cplx b, cplx c, double* param = nullptr)
{
    const cplx d = b - a;
    const double len2 = std::norm(d);
    double s = len2 == 0.0 ? 0.0 : std::clamp(std::real(std::conj(d) * (c - a)) / len2, 0.0, 1.0);
    if (param)
        *param = s;
    return std::abs(a + s * d - c);
}

double turn_angle(const Point& d1, const Point& d2)
{
    const double n = d1.norm() * d2.norm();
    if (n == 0.0)
        return 0.0;
    return std::acos(std::clamp(std::real(hdot(d1, d2)) / n, -1.0, 1.0));
}

}  // namespace

Fibration::Fibration(const PencilSpec& spec) : spec_(spec), F_(spec.F), G_(spec.G) {}

cplx Fibration::value(const Point& z) const
{
    if (spec_.hamiltonian)
        return F_(z);
    return std::pow(F_(z), spec_.p) / std::pow(G_(z), spec_.q);
}

cplx Fibration::eval(const Point& z, Point& grad) const
{
    cplx F, Fx, Fy;
    F_.eval_grad(z, F, Fx, Fy);
    if (spec_.hamiltonian) {
        grad = {Fx, Fy};
        return F;
    }
    cplx G, Gx, Gy;
    G_.eval_grad(z, G, Gx, Gy);
    const int p = spec_.p, q = spec_.q;
    const cplx mu = std::pow(F, p - 1) / std::pow(G, q + 1);
    grad = {mu * (double(p) * G * Fx - double(q) * F * Gx), mu * (double(p) * G * Fy - double(q) * F * Gy)};
    return std::pow(F, p) / std::pow(G, q);
}

double Fibration::rounding(const Point& z) const
{
    constexpr double eps = 4.0 * std::numeric_limits<double>::epsilon();
    if (spec_.hamiltonian)
        return eps * F_.abs_sum(z);
    const cplx F = F_(z), G = G_(z);
    const double f = std::abs(std::pow(F, spec_.p) / std::pow(G, spec_.q));
    return eps * f * (spec_.p * F_.abs_sum(z) / std::abs(F) + spec_.q * G_.abs_sum(z) / std::abs(G));
}

bool Fibration::on_fiber(const Point& z, cplx t, double tol) const
{
    const double r = std::abs(value(z) - t);
    return r <= tol * (1.0 + std::abs(t)) || r <= rounding(z);
}

double Fibration::newton_step(Point& z, cplx t) const
{
    Point g;
    const cplx r = eval(z, g) - t;
    const double g2 = std::norm(g.x) + std::norm(g.y);
    if (g2 == 0.0 || !std::isfinite(g2))
        return std::numeric_limits<double>::infinity();
    const Point dz{-r * std::conj(g.x) / g2, -r * std::conj(g.y) / g2};
    z = z + dz;
    return dz.norm();
}

bool Fibration::project(Point& z, cplx t, double tol, int iters) const
{
    for (int k = 0; k < iters; ++k) {
        if (on_fiber(z, t, tol))
            return true;
        if (!std::isfinite(newton_step(z, t)))
            return false;
    }
    return on_fiber(z, t, tol);
}

std::vector<cplx> CriticalData::values() const
{
    std::vector<cplx> v;
    for (auto& p : points)
        v.push_back(p.value);
    return v;
}

CriticalData critical_data(const PencilSpec& spec, const SingularOptions& opt)
{
    CriticalData data;
    const OneForm& w = spec.omega0;
    NumPoly Ax(w.A.dx()), Ay(w.A.dy()), Bx(w.B.dx()), By(w.B.dy());
    NumPoly F(spec.F), G(spec.G);
    const double fs = 1.0 + F.coeff_norm(), gs = 1.0 + G.coeff_norm();
    for (auto& s : singular_points(spec, opt)) {
        const Point& z = s.location;
        if (s.kind == SingularKind::Indeterminacy) {
            IndeterminacyPoint ip;
            ip.location = z;
            cplx f, fx, fy, g, gx, gy;
            F.eval_grad(z, f, fx, fy);
            G.eval_grad(z, g, gx, gy);
            ip.jacobian = fx * gy - fy * gx;
            const double nf = std::hypot(std::abs(fx), std::abs(fy)), ng = std::hypot(std::abs(gx), std::abs(gy));
            ip.transversal = std::abs(ip.jacobian) > 1e-8 * nf * ng && nf > 0.0 && ng > 0.0;
            if (!ip.transversal)
                data.warnings.push_back("{F=0} and {G=0} are not transversal at an indeterminacy point");
            data.indeterminacy.push_back(ip);
            continue;
        }
        if (!spec.hamiltonian) {
            const double w = 1.0 + std::pow(z.norm(), std::max(spec.F.degree(), spec.G.degree()));
            if (std::abs(F(z)) <= 1e-8 * fs * w || std::abs(G(z)) <= 1e-8 * gs * w) {
                data.warnings.push_back("a zero of the pencil form lies on {F=0} or {G=0}: that curve is singular there");
                continue;
            }
        }
        CriticalPoint cp;
        cp.location = z;
        cplx mu = 1.0;
        if (!spec.hamiltonian) {
            mu = std::pow(F(z), spec.p - 1) / std::pow(G(z), spec.q + 1);
            cp.value = std::pow(F(z), spec.p) / std::pow(G(z), spec.q);
        } else {
            cp.value = F(z);
        }
        const cplx ax = Ax(z), ay = Ay(z), bx = Bx(z), by = By(z);
        cp.hessian[0][0] = mu * ax;
        cp.hessian[0][1] = cp.hessian[1][0] = 0.5 * mu * (ay + bx);
        cp.hessian[1][1] = mu * by;
        const double scale = std::max({std::abs(ax), std::abs(ay), std::abs(bx), std::abs(by)});
        cp.nondegenerate = s.kind != SingularKind::Degenerate && scale > 0.0;
        if (!cp.nondegenerate)
            data.warnings.push_back("degenerate critical point");
        data.points.push_back(cp);
    }
    for (std::size_t i = 0; i < data.points.size(); ++i)
        for (std::size_t j = i + 1; j < data.points.size(); ++j)
            if (close(data.points[i].value, data.points[j].value))
                data.distinct_values = false;
    if (!data.distinct_values)
        data.warnings.push_back("critical values are not pairwise distinct");
    for (const BivarPoly* curve : {&spec.F, &spec.G}) {
        if (curve->degree() < 2)
            continue;
        try {
            NumPoly c(*curve);
            for (auto& s : solve_system(curve->dx(), curve->dy()))
                if (std::abs(c(s.z)) <= 1e-8 * (1.0 + c.coeff_norm())) {
                    data.warnings.push_back(std::string(curve == &spec.F ? "{F=0}" : "{G=0}") + " is singular");
                    break;
                }
        } catch (const Error&) {
            data.warnings.push_back(std::string(curve == &spec.F ? "{F=0}" : "{G=0}") + " has a non-isolated singular locus");
        }
    }
    if (spec.F.degree() + (spec.hamiltonian ? 0 : spec.G.degree()) <= 4)
        data.warnings.push_back("deg F + deg G <= 4: simplicity of the vanishing cycles is not guaranteed");
    return data;
}

double Cycle::diameter() const
{
    if (vertices.empty())
        return 0.0;
    Point c{0.0, 0.0};
    for (auto& v : vertices)
        c = c + v;
    c = c * cplx(1.0 / vertices.size());
    double r = 0.0;
    for (auto& v : vertices)
        r = std::max(r, (v - c).norm());
    return 2.0 * r;
}

Cycle Cycle::reversed() const
{
    Cycle r = *this;
    std::reverse(r.vertices.begin(), r.vertices.end());
    r.orientation = orientation == "reversed" ? "ccw-seed" : "reversed";
    return r;
}

double Cycle::fiber_residual(const Fibration& fib) const
{
    double r = 0.0;
    for (auto& v : vertices)
        r = std::max(r, std::abs(fib.value(v) - level));
    return r;
}

double safety_margin(const std::vector<cplx>& values)
{
    if (values.empty())
        return 0.05;
    if (values.size() == 1)
        return 0.05 * (1.0 + std::abs(values[0]));
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            double d = std::abs(values[i] - values[j]);
            if (d > 1e-9 * (1.0 + std::abs(values[i])))
                m = std::min(m, d);
        }
    if (!std::isfinite(m))
        return 0.05 * (1.0 + std::abs(values[0]));
    return 0.05 * m;
}

std::vector<cplx> forbidden_values(const PencilSpec& spec, const CriticalData& data)
{
    std::vector<cplx> out;
    auto add = [&](cplx v) {
        for (auto& o : out)
            if (close(o, v))
                return;
        out.push_back(v);
    };
    for (auto& p : data.points)
        add(p.value);
    if (!spec.hamiltonian)
        add(0.0);
    return out;
}

TPath plan_path(cplx a, cplx b, const std::vector<cplx>& avoid, double margin, const std::vector<cplx>& exempt)
{
    std::vector<cplx> active;
    for (auto& c : avoid) {
        bool skip = false;
        for (auto& e : exempt)
            skip = skip || close(c, e, 1e-12);
        if (!skip)
            active.push_back(c);
    }
    for (auto& c : active)
        if (std::abs(a - c) < margin || std::abs(b - c) < margin)
            throw Error("precondition", "path endpoint lies within the safety margin of a critical value");
    std::vector<cplx> pts{a, b};
    for (std::size_t k = 0; k + 1 < pts.size();) {
        const cplx p0 = pts[k], p1 = pts[k + 1];
        double best = 2.0;
        cplx hit = 0.0;
        for (auto& c : active) {
            double s;
            if (seg_point_distance(p0, p1, c, &s) < margin && s < best) {
                best = s;
                hit = c;
            }
        }
        if (best > 1.0) {
            ++k;
            continue;
        }
        if (pts.size() > 400)
            throw Error("numerics", "path planning did not terminate");
        const cplx u = (p1 - p0) / std::abs(p1 - p0), n = cplx(0.0, 1.0) * u;
        const double r = 2.0 * margin;
        pts.insert(pts.begin() + k + 1, {hit - r * u + r * n, hit + r * u + r * n});
    }
    return {pts};
}

TPath circle_path(cplx c, double radius, double arg0, int sides)
{
    TPath p;
    for (int k = 0; k <= sides; ++k)
        p.points.push_back(c + std::polar(radius, arg0 + two_pi * (k % sides) / sides));
    return p;
}

namespace {

// Drop vertices whose neighbors are already very close to each other.
void coarsen(std::vector<Point>& v, double min_len)
{
    if (v.size() <= 16)
        return;
    std::vector<Point> out;
    const std::size_t n = v.size();
    bool dropped_prev = false;
    for (std::size_t k = 0; k < n; ++k) {
        const bool drop = !dropped_prev && k > 0 && (v[(k + 1) % n] - out.back()).norm() < min_len;
        if (!drop)
            out.push_back(v[k]);
        dropped_prev = drop;
    }
    if (out.size() >= 16)
        v = std::move(out);
}

void refine(const Fibration& fib, Cycle& cyc, double max_len, double max_turn, double tol, int max_vertices)
{
    coarsen(cyc.vertices, 1e-2 * max_len);
    for (int pass = 0; pass < 8; ++pass) {
        auto& v = cyc.vertices;
        const std::size_t n = v.size();
        std::vector<char> split(n, 0);
        bool any = false;
        for (std::size_t k = 0; k < n; ++k) {
            const Point d = v[(k + 1) % n] - v[k];
            const Point prev = v[k] - v[(k + n - 1) % n], next = v[(k + 2) % n] - v[(k + 1) % n];
            // corners between fiber arcs are harmless; only resolve turning on segments of visible length
            const bool bend = d.norm() > 1e-2 * max_len && (turn_angle(prev, d) > max_turn || turn_angle(d, next) > max_turn);
            if (d.norm() > max_len || bend) {
                split[k] = 1;
                any = true;
            }
        }
        if (!any)
            return;
        std::vector<Point> out;
        for (std::size_t k = 0; k < n; ++k) {
            out.push_back(v[k]);
            if (split[k]) {
                Point m = (v[k] + v[(k + 1) % n]) * cplx(0.5);
                if (!fib.project(m, cyc.level, tol))
                    throw Error("numerics", "could not project an inserted vertex onto the fiber");
                out.push_back(m);
            }
        }
        v = std::move(out);
        if (static_cast<int>(v.size()) > max_vertices)
            throw Error("numerics", "vertex cap exceeded while refining a cycle");
    }
}

double perimeter(const std::vector<Point>& v)
{
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
        s += (v[(k + 1) % v.size()] - v[k]).norm();
    return s;
}

enum class Step { ok, too_far, corrector };

// Continue every vertex from level t0 to t1.  On `too_far`, `shrink` is the
// factor that would have brought the largest predictor move within bounds.
Step step_all(const Fibration& fib, std::vector<Point>& v, cplx t1, double tol, double& shrink)
{
    const std::size_t n = v.size();
    std::vector<double> room(n);
    double mean = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        mean += (v[(k + 1) % n] - v[k]).norm() / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k)
        room[k] = std::max(0.1 * mean, std::min((v[(k + 1) % n] - v[k]).norm(), (v[k] - v[(k + n - 1) % n]).norm()));
    std::vector<Point> out(n), pred(n);
    std::vector<double> move(n);
    shrink = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        Point g;
        const cplx r = fib.eval(v[k], g) - t1;
        const double g2 = std::norm(g.x) + std::norm(g.y);
        if (g2 == 0.0 || !std::isfinite(g2))
            return Step::corrector;
        pred[k] = v[k] - Point{r * std::conj(g.x) / g2, r * std::conj(g.y) / g2};
        move[k] = (pred[k] - v[k]).norm();
        if (move[k] > 0.5 * room[k])
            shrink = std::min(shrink, 0.5 * room[k] / move[k]);
    }
    if (shrink < 1.0)
        return Step::too_far;
    for (std::size_t k = 0; k < n; ++k) {
        Point c = pred[k];
        bool ok = false;
        for (int it = 0; it < 8; ++it) {
            if (fib.on_fiber(c, t1, tol)) {
                ok = true;
                break;
            }
            if (!std::isfinite(fib.newton_step(c, t1)))
                return Step::corrector;
        }
        if (!ok || (c - pred[k]).norm() > 0.25 * move[k] + 1e-14 * (1.0 + v[k].norm()))
            return Step::corrector;
        out[k] = c;
    }
    v = std::move(out);
    return Step::ok;
}

}  // namespace

Cycle transport(const Fibration& fib, const Cycle& cycle, const TPath& path, const TransportOptions& opt)
{
    if (path.points.empty() || !close(path.points.front(), cycle.level))
        throw Error("precondition", "transport path must start at the cycle's level");
    if (cycle.vertices.size() < 3)
        throw Error("precondition", "cycle needs at least three vertices");
    if (opt.margin > 0.0) {
        for (std::size_t k = 0; k + 1 < path.points.size(); ++k)
            for (auto& c : opt.avoid) {
                double s;
                const double dist = seg_point_distance(path.points[k], path.points[k + 1], c, &s);
                // a seed level inside the margin of its own critical value may leave it directly
                if (k == 0 && s == 0.0 && cycle.provenance.kind == "critical" && close(c, cycle.provenance.source_value, 1e-12))
                    continue;
                if (dist < opt.margin * (1.0 - 1e-9))
                    throw Error("precondition", "transport path violates the safety margin around a critical value");
            }
    }
    Cycle cur = cycle;
    const std::size_t n0 = cycle.vertices.size();
    cur.provenance.path.push_back(path.points.front());
    cur.level = path.points.front();
    for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
        const cplx ta = path.points[k], tb = path.points[k + 1];
        double s = 0.0, ds = opt.initial_step;
        int fails = 0;
        while (s < 1.0) {
            ds = std::min(ds, 1.0 - s);
            const cplx t1 = ta + (s + ds) * (tb - ta);
            std::vector<Point> trial = cur.vertices;
            double shrink = 1.0;
            const Step st = step_all(fib, trial, t1, opt.fiber_tol, shrink);
            if (st == Step::ok) {
                cur.vertices = std::move(trial);
                cur.level = t1;
                s = (ds >= 1.0 - s) ? 1.0 : s + ds;
                ds *= 1.5;
                fails = 0;
                const double max_len = opt.spacing_factor * perimeter(cur.vertices) / static_cast<double>(n0);
                refine(fib, cur, max_len, opt.max_turn, opt.fiber_tol, opt.max_vertices);
            } else if (st == Step::too_far) {
                // the predictor is linear in the level step, so rescale directly
                ds *= std::clamp(0.9 * shrink, 1e-3, 0.5);
                if (ds < 1e-14)
                    throw Error("numerics", "transport step underflow");
            } else {
                ds *= 0.5;
                if (++fails > opt.max_halvings)
                    throw Error("numerics", "transport corrector diverged (step halving exhausted)");
                // a failing corrector may be a spacing problem: refine at the current level first
                if (fails == 4 || fails == 8)
                    refine(fib, cur, 0.5 * perimeter(cur.vertices) / static_cast<double>(cur.vertices.size()), opt.max_turn,
                           opt.fiber_tol, opt.max_vertices);
            }
        }
        cur.level = tb;
        cur.provenance.path.push_back(tb);
    }
    return cur;
}

Cycle monodromy_loop(const Fibration& fib, const Cycle& cycle, const TPath& loop, const TransportOptions& opt)
{
    if (loop.points.size() < 3 || !close(loop.points.front(), loop.points.back()))
        throw Error("precondition", "monodromy loop must be closed");
    Cycle c = transport(fib, cycle, loop, opt);
    c.level = cycle.level;
    return c;
}

Cycle seed_vanishing_cycle(const Fibration& fib, const CriticalData& data, int index, cplx t, const SeedOptions& opt)
{
    if (index < 0 || index >= static_cast<int>(data.points.size()))
        throw Error("precondition", "critical point index out of range");
    const CriticalPoint& cp = data.points[index];
    if (!cp.nondegenerate)
        throw Error("degenerate", "cannot seed a vanishing cycle at a degenerate critical point");
    if (close(t, cp.value, 1e-14))
        throw Error("precondition", "level coincides with the critical value");

    // f ~ c + z^T S z with S = H/2; find L with (Lw)^T S (Lw) = w1^2 + w2^2
    const cplx a = 0.5 * cp.hessian[0][0], b = 0.5 * cp.hessian[0][1], d = 0.5 * cp.hessian[1][1];
    const cplx det = a * d - b * b;
    cplx L[2][2];
    if (std::abs(a) >= std::abs(d) && std::abs(a) > 1e-3 * std::abs(b)) {
        const cplx ra = csqrt(a), rb = csqrt(det / a);
        L[0][0] = 1.0 / ra;
        L[0][1] = -(b / a) / rb;
        L[1][0] = 0.0;
        L[1][1] = 1.0 / rb;
    } else if (std::abs(d) > 1e-3 * std::abs(b)) {
        const cplx rd = csqrt(d), rb = csqrt(det / d);
        L[0][0] = 1.0 / rb;
        L[0][1] = 0.0;
        L[1][0] = -(b / d) / rb;
        L[1][1] = 1.0 / rd;
    } else {
        // S ~ [[0, b], [b, 0]]: 2b xy = w1^2 + w2^2 with x, y = (w1 +- i w2) / sqrt(2b)
        const cplx r = 1.0 / csqrt(2.0 * b);
        const cplx I(0.0, 1.0);
        L[0][0] = r;
        L[0][1] = I * r;
        L[1][0] = r;
        L[1][1] = -I * r;
    }
    const int m = std::max(opt.vertices, 16);
    TransportOptions topt = opt.transport;
    if (topt.avoid.empty()) {
        topt.avoid = forbidden_values(fib.spec(), data);
        topt.margin = safety_margin(topt.avoid);
    }

    cplx t0 = t;
    Cycle cyc;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 60)
            throw Error("numerics", "Newton projection of the seeded cycle failed at every trial level");
        const cplx rho = csqrt(t0 - cp.value);
        cyc.vertices.clear();
        std::vector<Point> models;
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) {
            const double th = two_pi * k / m;
            const cplx w1 = rho * std::cos(th), w2 = rho * std::sin(th);
            const Point model{cp.location.x + L[0][0] * w1 + L[0][1] * w2, cp.location.y + L[1][0] * w1 + L[1][1] * w2};
            Point z = model;
            ok = fib.project(z, t0, topt.fiber_tol) && (z - model).norm() <= opt.model_tol * (model - cp.location).norm();
            cyc.vertices.push_back(z);
            models.push_back(model);
        }
        if (ok) {
            // consecutive vertices must not fold back: turns stay close to those of the model
            const std::size_t n = cyc.vertices.size();
            auto turn = [n](const std::vector<Point>& v, std::size_t k) {
                return turn_angle(v[(k + 1) % n] - v[k], v[(k + 2) % n] - v[(k + 1) % n]);
            };
            for (std::size_t k = 0; k < n && ok; ++k)
                ok = turn(cyc.vertices, k) < turn(models, k) + 2.0 * two_pi / m;
        }
        if (ok)
            break;
        t0 = cp.value + 0.25 * (t0 - cp.value);
    }
    cyc.level = t0;
    cyc.orientation = "ccw-seed";
    cyc.provenance.kind = "critical";
    cyc.provenance.index = index;
    cyc.provenance.source = cp.location;
    cyc.provenance.source_value = cp.value;
    if (t0 == t) {
        cyc.provenance.path = {t};
        return cyc;
    }
    TPath path = plan_path(t0, t, topt.avoid, topt.margin, {cp.value});
    return transport(fib, cyc, path, topt);
}

Cycle seed_indeterminacy_cycle(const Fibration& fib, const CriticalData& data, int index, cplx t, double radius, int vertices)
{
    if (index < 0 || index >= static_cast<int>(data.indeterminacy.size()))
        throw Error("precondition", "indeterminacy point index out of range");
    const IndeterminacyPoint& ip = data.indeterminacy[index];
    if (!ip.transversal)
        throw Error("precondition", "indeterminacy point is not a transversal intersection of {F=0} and {G=0}");
    if (std::abs(t) == 0.0)
        throw Error("precondition", "level 0 is not a regular fiber of the pencil");
    const int p = fib.spec().p, q = fib.spec().q;
    cplx f, fx, fy, g, gx, gy;
    fib.F().eval_grad(ip.location, f, fx, fy);
    fib.G().eval_grad(ip.location, g, gx, gy);
    const cplx det = fx * gy - fy * gx;
    // (F, G) = u, v with u^p = t v^q: u = s^q, v = t^{-1/q} s^p, s on a circle
    const cplx beta = std::pow(t, -1.0 / q);
    const int m = std::max(vertices, 16);
    Cycle cyc;
    cyc.level = t;
    // shrink the loop until the linear model of (F, G) is accurate on it
    for (int attempt = 0;; ++attempt) {
        if (attempt > 30)
            throw Error("numerics", "residue cycle radius too large for the local model");
        const double r = radius * std::pow(0.5, attempt);
        const double rho = std::min(std::pow(r, 1.0 / q), std::pow(r / std::abs(beta), 1.0 / p));
        cyc.vertices.clear();
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) {
            const cplx s = std::polar(rho, two_pi * k / m);
            const cplx u = std::pow(s, q), v = beta * std::pow(s, p);
            const Point dz{(gy * u - fy * v) / det, (-gx * u + fx * v) / det};
            Point z = ip.location + dz;
            const Point model = z;
            ok = fib.project(z, t) && (z - model).norm() <= 0.1 * dz.norm();
            cyc.vertices.push_back(z);
        }
        if (ok)
            break;
    }
    cyc.orientation = "ccw-seed";
    cyc.provenance.kind = "indeterminacy";
    cyc.provenance.index = index;
    cyc.provenance.source = ip.location;
    cyc.provenance.path = {t};
    return cyc;
}

}  // namespace mkit
