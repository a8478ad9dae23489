#include "mkit/univariate.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace mkit {

Scalar UPoly::operator()(const Scalar& x) const
{
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

UPoly UPoly::derivative() const
{
    std::vector<Scalar> d;
    for (std::size_t k = 1; k < c_.size(); ++k)
        d.push_back(c_[k] * Scalar(static_cast<long>(k)));
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const
{
    if (c_.empty())
        return {};
    std::vector<Scalar> d = c_;
    Scalar lead = d.back();
    for (auto& c : d)
        c /= lead;
    return UPoly(std::move(d));
}

UPoly operator*(const UPoly& a, const UPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b)
{
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        r[i] -= b.c_[i];
    return UPoly(std::move(r));
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r)
{
    if (b.is_zero())
        throw Error("arithmetic", "polynomial division by zero");
    std::vector<Scalar> rem = a.c_;
    int db = b.degree();
    std::vector<Scalar> quo(std::max(0, a.degree() - db + 1), Scalar(0));
    const Scalar& lead = b.c_.back();
    for (int k = a.degree(); k >= db; --k) {
        if (rem[k].is_zero())
            continue;
        Scalar f = rem[k] / lead;
        quo[k - db] = f;
        for (int j = 0; j <= db; ++j)
            rem[k - db + j] -= f * b.c_[j];
    }
    q = UPoly(std::move(quo));
    r = UPoly(std::move(rem));
}

UPoly gcd(UPoly a, UPoly b)
{
    while (!b.is_zero()) {
        UPoly q, r;
        UPoly::divmod(a, b, q, r);
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

UPoly squarefree_part(const UPoly& p)
{
    if (p.degree() <= 0)
        return p;
    UPoly g = gcd(p, p.derivative());
    UPoly q, r;
    UPoly::divmod(p, g, q, r);
    return q.monic();
}

Scalar determinant(std::vector<std::vector<Scalar>> m)
{
    const std::size_t n = m.size();
    Scalar det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero())
            ++piv;
        if (piv == n)
            return Scalar(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero())
                continue;
            Scalar f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

namespace {

/// Coefficients in y of P(a, y), ascending, padded to the formal degree.
std::vector<Scalar> specialize_x(const BivarPoly& P, const Scalar& a, int formal_deg)
{
    std::vector<Scalar> c(formal_deg + 1, Scalar(0));
    for (auto& [m, v] : P.terms()) {
        Scalar t = v;
        for (int k = 0; k < m.i; ++k)
            t *= a;
        c[m.j] += t;
    }
    return c;
}

Scalar sylvester_resultant(const std::vector<Scalar>& p, const std::vector<Scalar>& q)
{
    const int m = static_cast<int>(p.size()) - 1, n = static_cast<int>(q.size()) - 1;
    const int size = m + n;
    if (size == 0)
        return Scalar(1);
    std::vector<std::vector<Scalar>> s(size, std::vector<Scalar>(size, Scalar(0)));
    // rows hold descending powers
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            s[r][r + k] = p[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            s[n + r][r + k] = q[n - k];
    return determinant(std::move(s));
}

}  // namespace

UPoly resultant_y(const BivarPoly& P, const BivarPoly& Q)
{
    const int m = std::max(P.degree_y(), 0), n = std::max(Q.degree_y(), 0);
    const int bound = std::max(P.degree(), 0) * std::max(Q.degree(), 0);
    std::vector<Scalar> xs, ys;
    for (int k = 0; k <= bound; ++k) {
        Scalar a(k);
        xs.push_back(a);
        ys.push_back(sylvester_resultant(specialize_x(P, a, m), specialize_x(Q, a, n)));
    }
    // Newton divided differences
    const int N = static_cast<int>(xs.size());
    std::vector<Scalar> dd = ys;
    for (int level = 1; level < N; ++level)
        for (int k = N - 1; k >= level; --k)
            dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);
    UPoly result(std::vector<Scalar>{dd[N - 1]});
    for (int k = N - 2; k >= 0; --k) {
        result = result * UPoly(std::vector<Scalar>{-xs[k], Scalar(1)});
        result = result - UPoly(std::vector<Scalar>{-dd[k]});
    }
    return result;
}

std::vector<cplx> complex_roots(const std::vector<cplx>& coeffs)
{
    std::vector<cplx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0)
        c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1)
        return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k)
        comp(0, k) = -c[n - 1 - k] / c[n];
    for (int k = 1; k < n; ++k)
        comp(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<cplx> roots;
    for (int k = 0; k < n; ++k) {
        cplx r = es.eigenvalues()(k);
        for (int it = 0; it < 8; ++it) {
            cplx v = 0.0, d = 0.0;
            for (int j = n; j >= 0; --j) {
                d = d * r + v;
                v = v * r + c[j];
            }
            if (std::abs(d) == 0.0)
                break;
            cplx step = v / d;
            r -= step;
            if (std::abs(step) <= 1e-16 * (1.0 + std::abs(r)))
                break;
        }
        roots.push_back(r);
    }
    return roots;
}

std::vector<cplx> complex_roots(const UPoly& p)
{
    std::vector<cplx> c;
    for (auto& s : p.coeffs())
        c.push_back(s.to_complex());
    return complex_roots(c);
}

Solution newton_polish(const NumPoly& P, const NumPoly& Q, Point z, const SolveOptions& opt)
{
    Solution sol{z, 0.0, false};
    double scale = 1.0 + P.coeff_norm() + Q.coeff_norm();
    for (int it = 0; it < opt.newton_iters; ++it) {
        cplx p, px, py, q, qx, qy;
        P.eval_grad(z, p, px, py);
        Q.eval_grad(z, q, qx, qy);
        cplx det = px * qy - py * qx;
        if (std::abs(det) == 0.0)
            break;
        cplx dx = (p * qy - q * py) / det;
        cplx dy = (q * px - p * qx) / det;
        z.x -= dx;
        z.y -= dy;
        double step = std::sqrt(std::norm(dx) + std::norm(dy));
        if (step <= opt.newton_tol * (1.0 + z.norm())) {
            sol.converged = true;
            break;
        }
    }
    sol.z = z;
    sol.residual = (std::abs(P(z)) + std::abs(Q(z))) / scale;
    if (sol.residual <= opt.newton_tol)
        sol.converged = true;
    return sol;
}

std::vector<Solution> solve_system(const BivarPoly& P, const BivarPoly& Q, const SolveOptions& opt)
{
    if (P.is_zero() || Q.is_zero())
        throw Error("non-isolated", "one of the equations is identically zero");
    UPoly res = resultant_y(P, Q);
    if (res.is_zero())
        throw Error("non-isolated", "resultant vanishes identically: common factor or non-isolated zeros");
    // a common factor free of y leaves Res_y nonzero but kills Res_x
    auto swap_xy = [](const BivarPoly& F) {
        BivarPoly r;
        for (auto& [m, c] : F.terms())
            r.add_term(m.j, m.i, c);
        return r;
    };
    if (P.degree_x() > 0 && Q.degree_x() > 0 && resultant_y(swap_xy(P), swap_xy(Q)).is_zero())
        throw Error("non-isolated", "resultant vanishes identically: common factor or non-isolated zeros");
    UPoly sq = squarefree_part(res);
    std::vector<cplx> xroots = complex_roots(sq);

    NumPoly nP(P), nQ(Q);
    const double scale = 1.0 + nP.coeff_norm() + nQ.coeff_norm();
    std::vector<Solution> out;
    auto y_coeffs = [](const BivarPoly& F, cplx x) {
        std::vector<cplx> c(std::max(F.degree_y(), 0) + 1, 0.0);
        for (auto& [m, v] : F.terms())
            c[m.j] += v.to_complex() * std::pow(x, m.i);
        return c;
    };
    for (cplx x : xroots) {
        std::vector<cplx> cand;
        for (const BivarPoly* F : {&P, &Q}) {
            auto c = y_coeffs(*F, x);
            double mag = 0.0;
            for (auto& v : c)
                mag = std::max(mag, std::abs(v));
            if (mag <= 1e-10 * scale)
                continue;  // F(x, .) vanishes identically at this x
            for (auto& v : c)
                if (std::abs(v) <= 1e-14 * mag)
                    v = 0.0;
            for (cplx y : complex_roots(c))
                cand.push_back(y);
        }
        for (cplx y : cand) {
            Point z{x, y};
            double r = (std::abs(nP(z)) + std::abs(nQ(z))) / (scale * (1.0 + std::pow(z.norm(), std::max(P.degree(), Q.degree()))));
            if (r > opt.accept_tol)
                continue;
            Solution s = newton_polish(nP, nQ, z, opt);
            bool dup = false;
            for (auto& o : out)
                if ((o.z - s.z).norm() <= opt.dedupe_tol * (1.0 + s.z.norm()))
                    dup = true;
            if (!dup)
                out.push_back(s);
        }
    }
    auto key = [](const Point& z) {
        auto r = [](double v) { return std::round(v * 1e8) / 1e8; };
        return std::array<double, 4>{r(z.x.real()), r(z.x.imag()), r(z.y.real()), r(z.y.imag())};
    };
    std::sort(out.begin(), out.end(), [&](const Solution& a, const Solution& b) { return key(a.z) < key(b.z); });
    return out;
}

}  // namespace mkit
