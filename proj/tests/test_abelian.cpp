#include "doctest.h"

#include "mkit/abelian.hpp"
#include "mkit/parse.hpp"
#include "random_poly.hpp"

#include <numbers>

using namespace mkit;

namespace {

BivarPoly P(const char* s) { return parse_poly(s); }

PencilSpec hamiltonian(const char* F) { return pencil_form(P(F), P("1"), 1, 1); }

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

double max_diff(const PeriodVector& a, const PeriodVector& b)
{
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        m = std::max(m, std::abs(a.values[k].value - b.values[k].value));
    return m;
}

// Test fibers: the exact xy fiber, a Hamiltonian oval, and a genuine pencil.
struct Fixture {
    PencilSpec spec;
    Fibration fib;
    CriticalData data;
    Cycle cycle;
    Fixture(const PencilSpec& s, int index, cplx t) : spec(s), fib(s), data(critical_data(s)), cycle(seed_vanishing_cycle(fib, data, index, t)) {}
};

std::vector<Fixture> fixtures()
{
    std::vector<Fixture> f;
    f.emplace_back(hamiltonian("x*y"), 0, cplx(0.4, 0.2));
    f.emplace_back(hamiltonian("x^3 - 3*x + y^2"), 1, cplx(0.0));
    f.emplace_back(hamiltonian("x^3 - 3*x + y^2"), 0, cplx(0.0));
    f.emplace_back(pencil_form(P("x^2 + y^2 - 1"), P("y - 2"), 1, 2), 0, cplx(-0.25));
    return f;
}

}  // namespace

TEST_CASE("periods on the xy fiber")
{
    Fixture fx(hamiltonian("x*y"), 0, cplx(0.3, -0.2));
    const cplx t = fx.cycle.level;
    PeriodVector pv = periods(fx.fib, fx.cycle, 1);
    REQUIRE(pv.labels.size() == 6);
    CHECK(pv.labels[0] == "dx");
    CHECK(pv.labels[1] == "dy");
    CHECK(pv.labels[2] == "x dx");
    CHECK(pv.labels[3] == "y dx");
    CHECK(pv.labels[4] == "x dy");
    CHECK(pv.labels[5] == "y dy");
    CHECK(std::abs(pv.values[0].value) < 1e-12);
    CHECK(std::abs(pv.values[1].value) < 1e-12);
    CHECK(std::abs(pv.values[3].value - 2.0 * pi * I * t) < 1e-11);
    CHECK(std::abs(pv.values[4].value + 2.0 * pi * I * t) < 1e-11);
    CHECK(pv.values[4].error < 1e-10);
    // single integral agrees with the bundled one
    auto one = integrate(fx.fib, RationalForm{OneForm{{}, P("x")}}, fx.cycle);
    CHECK(std::abs(one.value - pv.values[4].value) < 1e-13);
}

TEST_CASE("exact forms, orientation and linearity")
{
    std::mt19937 rng(17);
    for (auto& fx : fixtures()) {
        CHECK(fx.cycle.fiber_residual(fx.fib) < 1e-10);
        for (int k = 0; k < 5; ++k) {
            BivarPoly g = testing::random_poly(rng, 6, 0.6);
            auto ex = integrate(fx.fib, RationalForm{exterior_d(g)}, fx.cycle);
            CHECK(std::abs(ex.value) < 1e-9);
        }
        OneForm a = testing::random_form(rng, 3), b = testing::random_form(rng, 3);
        auto ia = integrate(fx.fib, RationalForm{a}, fx.cycle), ib = integrate(fx.fib, RationalForm{b}, fx.cycle);
        auto rev = integrate(fx.fib, RationalForm{a}, fx.cycle.reversed());
        CHECK(std::abs(rev.value + ia.value) < 1e-12 * (1.0 + std::abs(ia.value)));
        const Scalar sa(Rational(3, 2), Rational(-1)), sb(Rational(-2, 7));
        auto lin = integrate(fx.fib, RationalForm{sa * a + sb * b}, fx.cycle);
        const cplx expect = sa.to_complex() * ia.value + sb.to_complex() * ib.value;
        CHECK(std::abs(lin.value - expect) < 1e-12 * (1.0 + std::abs(ia.value) + std::abs(ib.value)));
    }
}

TEST_CASE("refinement and fiberwise-constant rescaling")
{
    PencilSpec s = hamiltonian("x^3 - 3*x + y^2");
    Fibration fib(s);
    auto d = critical_data(s);
    SeedOptions o64, o128;
    o128.vertices = 128;
    Cycle c64 = seed_vanishing_cycle(fib, d, 1, cplx(0.5, 0.3), o64);
    Cycle c128 = seed_vanishing_cycle(fib, d, 1, cplx(0.5, 0.3), o128);
    CHECK(max_diff(periods(fib, c64, 3), periods(fib, c128, 3)) < 1e-8);

    // u(f) phi with u = f^2 - 3 f + 1
    OneForm phi{P("x*y + 1"), P("x^2")};
    BivarPoly F = s.F;
    BivarPoly u = F * F - F * Scalar(3) + BivarPoly(Scalar(1));
    auto plain = integrate(fib, RationalForm{phi}, c64);
    auto scaled = integrate(fib, RationalForm{u * phi}, c64);
    const cplx t = c64.level, ut = t * t - 3.0 * t + 1.0;
    CHECK(std::abs(scaled.value - ut * plain.value) < 1e-8 * std::abs(ut * plain.value));

    // rational integrand: (x dy) / F equals (x dy) / t on the fiber
    auto rat = integrate(fib, RationalForm{OneForm{{}, P("x")}, F}, c64);
    auto pol = integrate(fib, RationalForm{OneForm{{}, P("x")}}, c64);
    CHECK(std::abs(rat.value - pol.value / t) < 1e-10 * std::abs(pol.value / t));
}

TEST_CASE("transport leaves periods invariant")
{
    PencilSpec s = hamiltonian("x^3 - 3*x + y^2");
    Fibration fib(s);
    auto d = critical_data(s);
    Cycle c = seed_vanishing_cycle(fib, d, 1, 0.0);
    PeriodVector base = periods(fib, c, 3);
    SUBCASE("there and back")
    {
        Cycle there = transport(fib, c, TPath{{0.0, cplx(1.0, 1.0), cplx(1.5, -0.5)}});
        Cycle back = transport(fib, there, TPath{{cplx(1.5, -0.5), cplx(1.0, 1.0), 0.0}});
        CHECK(max_diff(periods(fib, back, 3), base) < 1e-8);
    }
    SUBCASE("contractible loop")
    {
        Cycle loop = monodromy_loop(fib, c, circle_path(0.5, 0.5, std::numbers::pi));
        CHECK(max_diff(periods(fib, loop, 3), base) < 1e-8);
    }
    SUBCASE("loop around the own critical value")
    {
        // in a curve a vanishing cycle has self-intersection 0, so it is fixed
        Cycle loop = monodromy_loop(fib, c, circle_path(-2.0, 2.0));
        CHECK(max_diff(periods(fib, loop, 3), base) < 1e-8);
    }
}

TEST_CASE("Picard-Lefschetz on y^2 + x^3 - 3x")
{
    PencilSpec s = hamiltonian("x^3 - 3*x + y^2");
    Fibration fib(s);
    auto d = critical_data(s);
    Cycle d1 = seed_vanishing_cycle(fib, d, 1, 0.0);  // vanishes at -2
    Cycle d2 = seed_vanishing_cycle(fib, d, 0, 0.0);  // vanishes at +2
    PeriodVector p1 = periods(fib, d1, 2), p2 = periods(fib, d2, 2);
    Cycle moved = monodromy_loop(fib, d2, circle_path(-2.0, 2.0));
    PeriodVector pm = periods(fib, moved, 2);
    // T(d2) = d2 +- d1 since the two cycles meet once
    double plus = 0.0, minus = 0.0;
    for (std::size_t k = 0; k < pm.values.size(); ++k) {
        plus = std::max(plus, std::abs(pm.values[k].value - p2.values[k].value - p1.values[k].value));
        minus = std::max(minus, std::abs(pm.values[k].value - p2.values[k].value + p1.values[k].value));
    }
    CHECK(std::min(plus, minus) < 1e-8);
    CHECK(std::max(plus, minus) > 1e-2);
}

TEST_CASE("periods vanish at the critical value")
{
    PencilSpec s = hamiltonian("x^3 - 3*x + y^2");
    Fibration fib(s);
    auto d = critical_data(s);
    std::vector<double> norms;
    for (double e : {1.0, 0.5, 0.25, 0.125}) {
        Cycle c = seed_vanishing_cycle(fib, d, 0, 2.0 + cplx(0.0, e));
        double n = 0.0;
        for (auto& v : periods(fib, c, 2).values)
            n = std::max(n, std::abs(v.value));
        norms.push_back(n);
    }
    for (std::size_t k = 1; k < norms.size(); ++k)
        CHECK(norms[k] < norms[k - 1]);
}

TEST_CASE("residue cycles")
{
    PencilSpec s = pencil_form(P("x"), P("y"), 1, 1);
    Fibration fib(s);
    auto d = critical_data(s);
    REQUIRE(d.indeterminacy.size() == 1);
    const cplx t(0.7, 0.2);
    Cycle c = seed_indeterminacy_cycle(fib, d, 0, t, 0.1);
    // local model loop: x = eps e^{i theta}, y = x / t
    for (auto& v : c.vertices)
        CHECK(std::abs(v.y - v.x / t) < 1e-12);
    CHECK(std::abs(c.vertices[1].x / c.vertices[0].x - std::polar(1.0, 2.0 * pi / c.vertices.size())) < 1e-12);
    const RationalForm dlogx{OneForm{P("1"), {}}, P("x")};
    auto r = integrate(fib, dlogx, c);
    CHECK(std::abs(r.value - 2.0 * pi * I) < 1e-10);
    // trivial monodromy of the residue cycle, also around the special value 0
    for (const TPath& loop : {circle_path(t + 0.3, 0.3, std::numbers::pi), circle_path(0.0, std::abs(t), std::arg(t))}) {
        Cycle m = monodromy_loop(fib, c, loop);
        CHECK(std::abs(integrate(fib, dlogx, m).value - 2.0 * pi * I) < 1e-9);
    }
    auto res = residue_vanishing(fib, d, dlogx, t);
    REQUIRE(res.size() == 1);
    CHECK_FALSE(res[0].vanishes);
    auto none = residue_vanishing(fib, d, RationalForm{OneForm{P("y"), P("x^2")}}, t);
    CHECK(none[0].vanishes);

    SUBCASE("non-transversal point")
    {
        PencilSpec tang = pencil_form(P("y - x^2"), P("y"), 1, 2);
        auto dt = critical_data(tang);
        REQUIRE(dt.indeterminacy.size() >= 1);
        CHECK_FALSE(dt.indeterminacy[0].transversal);
        CHECK_THROWS_AS(seed_indeterminacy_cycle(Fibration(tang), dt, 0, 0.5), Error);
    }
}

TEST_CASE("pole proximity is reported")
{
    PencilSpec s = hamiltonian("x^2 + y^2");
    Fibration fib(s);
    Cycle c = seed_vanishing_cycle(fib, critical_data(s), 0, 1.0);
    CHECK_THROWS_AS(integrate(fib, RationalForm{OneForm{P("1"), {}}, P("x - 1")}, c), Error);
}
