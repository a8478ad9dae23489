#include "doctest.h"

#include "mkit/abelian.hpp"
#include "mkit/fibration.hpp"
#include "mkit/parse.hpp"

#include <numbers>

using namespace mkit;

namespace {

BivarPoly P(const char* s) { return parse_poly(s); }

PencilSpec hamiltonian(const char* F) { return pencil_form(P(F), P("1"), 1, 1); }

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("critical data")
{
    SUBCASE("xy")
    {
        auto d = critical_data(hamiltonian("x*y"));
        REQUIRE(d.points.size() == 1);
        CHECK(std::abs(d.points[0].value) < 1e-15);
        CHECK(d.points[0].nondegenerate);
        CHECK(d.indeterminacy.empty());
    }
    SUBCASE("x^3 - 3x + y^2")
    {
        auto d = critical_data(hamiltonian("x^3 - 3*x + y^2"));
        REQUIRE(d.points.size() == 2);
        CHECK(std::abs(d.points[0].location.x + 1.0) < 1e-12);
        CHECK(std::abs(d.points[0].value - 2.0) < 1e-12);
        CHECK(std::abs(d.points[1].value + 2.0) < 1e-12);
        CHECK(d.distinct_values);
        // Hessian of f at (1, 0) is diag(6, 2)
        CHECK(std::abs(d.points[1].hessian[0][0] - 6.0) < 1e-12);
        CHECK(std::abs(d.points[1].hessian[1][1] - 2.0) < 1e-12);
        CHECK(std::abs(d.points[1].hessian[0][1]) < 1e-12);
    }
    SUBCASE("circle over a line")
    {
        auto d = critical_data(pencil_form(P("x^2 + y^2 - 1"), P("y - 2"), 1, 2));
        REQUIRE(d.indeterminacy.size() == 2);
        for (auto& q : d.indeterminacy) {
            CHECK(std::abs(std::abs(q.location.x.imag()) - std::sqrt(3.0)) < 1e-10);
            CHECK(std::abs(q.location.y - 2.0) < 1e-10);
            CHECK(q.transversal);
        }
        REQUIRE(d.points.size() == 1);
        // f = (x^2 + y^2 - 1) / (y - 2)^2 at (0, 1/2)
        CHECK(std::abs(d.points[0].value - (-0.75 / 2.25)) < 1e-12);
    }
    SUBCASE("simplicity warning")
    {
        auto warned = [](const CriticalData& d) {
            bool found = false;
            for (auto& w : d.warnings)
                found = found || w.find("simplicity") != std::string::npos;
            return found;
        };
        CHECK_FALSE(warned(critical_data(pencil_form(P("x^3 + y^3 - 1 + x*y"), P("x^2 + y - 3"), 2, 3))));
        CHECK(warned(critical_data(pencil_form(P("x^2 + y^2 - 1"), P("y - 2"), 1, 2))));
        CHECK(warned(critical_data(pencil_form(P("x^3 - 3*x + y^2"), P("1"), 1, 1))));
    }
}

TEST_CASE("seeded cycles match the exact fiber parametrizations")
{
    SUBCASE("xy")
    {
        PencilSpec s = hamiltonian("x*y");
        Fibration fib(s);
        auto d = critical_data(s);
        const cplx t(0.3, 0.1);
        Cycle c = seed_vanishing_cycle(fib, d, 0, t);
        REQUIRE(c.vertices.size() == 64);
        const cplx r = std::sqrt(t);
        for (std::size_t k = 0; k < c.vertices.size(); ++k) {
            const double th = 2.0 * pi * k / 64.0;
            CHECK(std::abs(c.vertices[k].x - r * std::polar(1.0, th)) < 1e-10);
            CHECK(std::abs(c.vertices[k].y - r * std::polar(1.0, -th)) < 1e-10);
        }
        CHECK(c.fiber_residual(fib) < 1e-10);
    }
    SUBCASE("x^2 + y^2, counterclockwise real circle")
    {
        PencilSpec s = hamiltonian("x^2 + y^2");
        Fibration fib(s);
        Cycle c = seed_vanishing_cycle(fib, critical_data(s), 0, 0.25);
        for (std::size_t k = 0; k < c.vertices.size(); ++k) {
            const double th = 2.0 * pi * k / c.vertices.size();
            CHECK(std::abs(c.vertices[k].x - 0.5 * std::cos(th)) < 1e-10);
            CHECK(std::abs(c.vertices[k].y - 0.5 * std::sin(th)) < 1e-10);
        }
    }
    SUBCASE("degenerate critical point")
    {
        PencilSpec s = hamiltonian("x^3 + y^2");
        auto d = critical_data(s);
        REQUIRE(d.points.size() == 1);
        CHECK_FALSE(d.points[0].nondegenerate);
        CHECK_THROWS_AS(seed_vanishing_cycle(Fibration(s), d, 0, 0.1), Error);
    }
}

TEST_CASE("transport")
{
    PencilSpec s = hamiltonian("x*y");
    Fibration fib(s);
    auto d = critical_data(s);
    Cycle c = seed_vanishing_cycle(fib, d, 0, 0.01);

    SUBCASE("constant path")
    {
        Cycle same = transport(fib, c, TPath{{0.01, 0.01}});
        REQUIRE(same.vertices.size() == c.vertices.size());
        for (std::size_t k = 0; k < c.vertices.size(); ++k)
            CHECK((same.vertices[k] - c.vertices[k]).norm() < 1e-12);
    }
    SUBCASE("to a distant level")
    {
        const cplx t1(1.0, 0.5);
        Cycle far = transport(fib, c, TPath{{0.01, t1}});
        CHECK(far.level == t1);
        CHECK(far.fiber_residual(fib) < 1e-10);
        const double r = std::sqrt(std::abs(t1));
        for (auto& v : far.vertices) {
            CHECK(std::abs(std::abs(v.x) - r) < 1e-10);
            CHECK(std::abs(std::abs(v.y) - r) < 1e-10);
        }
        auto I = integrate(fib, RationalForm{OneForm{{}, P("x")}}, far);
        CHECK(std::abs(I.value - cplx(0, -2.0 * pi) * t1) < 1e-10);
    }
    SUBCASE("shrinking towards the critical value")
    {
        PencilSpec h = hamiltonian("x^3 - 3*x + y^2");
        Fibration fh(h);
        auto dh = critical_data(h);
        double prev = 1e300;
        for (double e : {0.8, 0.2, 0.05, 0.0125}) {
            Cycle k = seed_vanishing_cycle(fh, dh, 1, -2.0 + e);
            const double diam = k.diameter();
            CHECK(diam < prev);
            // Morse model: diameter ~ 2 sqrt(e / lambda) with lambda the smaller eigenvalue 1
            if (e < 0.1)
                CHECK(std::abs(diam / std::sqrt(e) - 2.0) < 0.1);
            prev = diam;
        }
    }
    SUBCASE("path through a forbidden value is rejected")
    {
        TransportOptions o;
        o.avoid = {0.0};
        o.margin = 0.05;
        Cycle k = seed_vanishing_cycle(fib, d, 0, 0.5);
        CHECK_THROWS_AS(transport(fib, k, TPath{{0.5, -0.5}}, o), Error);
    }
}

TEST_CASE("path planning")
{
    TPath p = plan_path(-1.0, 1.0, {0.0}, 0.1);
    REQUIRE(p.points.size() == 4);
    for (std::size_t k = 0; k + 1 < p.points.size(); ++k) {
        const cplx a = p.points[k], b = p.points[k + 1];
        for (int j = 0; j <= 100; ++j)
            CHECK(std::abs(a + (b - a) * (j / 100.0)) >= 0.1);
    }
    CHECK(p.points[1].imag() > 0.0);  // detour on the left
    CHECK(plan_path(-1.0, 1.0, {0.0}, 0.1, {0.0}).points.size() == 2);
    CHECK_THROWS_AS(plan_path(0.05, 1.0, {0.0}, 0.1), Error);
    CHECK(std::abs(safety_margin({-2.0, 2.0, 0.5}) - 0.075) < 1e-15);
    TPath c = circle_path(1.0, 0.5);
    CHECK(std::abs(c.points.front() - c.points.back()) == 0.0);
}
