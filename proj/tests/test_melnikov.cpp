#include "doctest.h"

#include "mkit/melnikov.hpp"
#include "mkit/parse.hpp"
#include "random_poly.hpp"

#include <numbers>

using namespace mkit;

namespace {

BivarPoly P(const char* s) { return parse_poly(s); }
OneForm dx(const char* s) { return {P(s), {}}; }
OneForm dy(const char* s) { return {{}, P(s)}; }

constexpr double pi = std::numbers::pi;

PencilSpec circles() { return pencil_form(P("1/2*x^2 + 1/2*y^2"), P("1"), 1, 1); }
PencilSpec cubic_conic() { return pencil_form(P("x^3 + 2*y^3 - x*y - 1"), P("x^2 + 3*y^2 + x - 2"), 2, 3); }

std::vector<cplx> real_levels(double a, double b, int n)
{
    std::vector<cplx> t;
    for (int k = 0; k < n; ++k)
        t.emplace_back(a + (b - a) * k / (n - 1));
    return t;
}

std::vector<Cycle> circle_family(const std::vector<cplx>& levels)
{
    PencilSpec s = circles();
    Fibration fib(s);
    return cycle_family(fib, critical_data(s), {"critical", 0}, levels);
}

}  // namespace

TEST_CASE("van der Pol first Melnikov function")
{
    auto levels = real_levels(0.1, 2.5, 24);
    auto cycles = circle_family(levels);
    auto def = deformation(circles(), {dx("x^2*y - y")});
    auto r = first_melnikov(def, cycles);
    REQUIRE(r.samples.size() == 24);
    CHECK_FALSE(r.identically_zero);
    for (auto& s : r.samples) {
        const double r2 = 2.0 * s.t.real();
        CHECK(std::abs(s.value - cplx(-pi * r2 * (1.0 - r2 / 4.0))) < 1e-6);
    }

    auto z = count_zeros(r.samples, 0.1, 2.5, 2.0);
    REQUIRE(z.zeros.size() == 1);
    CHECK(z.zeros[0].lo <= 2.0);
    CHECK(z.zeros[0].hi >= 2.0);
    CHECK(std::abs(z.zeros[0].estimate - 2.0) < 0.05);
    REQUIRE(z.fit);
    CHECK(z.fit->multiplicity == 1);
    CHECK(std::abs(z.fit->coefficients[1] - (-pi * 2.0 * (1.0 - 2.0))) < 1e-4);  // dM/dt = -2 pi (1 - t)

    auto none = count_zeros(r.samples, 0.1, 1.5);
    CHECK(none.zeros.empty());
    CHECK_FALSE(none.identically_zero);

    std::vector<MelnikovSample> sparse{r.samples.front(), r.samples.back()};
    CHECK_THROWS_AS(count_zeros(sparse, 0.1, 2.5), Error);
}

TEST_CASE("exact perturbations have vanishing M1")
{
    auto cycles = circle_family({cplx(0.3), cplx(0.7, 0.2), cplx(1.4)});
    auto r = first_melnikov(deformation(circles(), {exterior_d(P("x^3*y - 2*y^2 + x"))}), cycles);
    CHECK(r.identically_zero);
    auto z = count_zeros(r.samples, 0.0, 2.0);
    CHECK(z.identically_zero);
}

TEST_CASE("M1 is linear in omega_1")
{
    auto cycles = circle_family({cplx(0.5), cplx(0.9, -0.3)});
    OneForm a = dx("x^2*y + y^3"), b = dy("x*y^2 - x");
    auto ma = first_melnikov(deformation(circles(), {a}), cycles).samples;
    auto mb = first_melnikov(deformation(circles(), {b}), cycles).samples;
    auto mab = first_melnikov(deformation(circles(), {Scalar(3) * a + Scalar(-2) * b}), cycles).samples;
    for (std::size_t k = 0; k < cycles.size(); ++k)
        CHECK(std::abs(mab[k].value - (3.0 * ma[k].value - 2.0 * mb[k].value)) < 1e-10);
}

TEST_CASE("higher order chain")
{
    auto cycles = circle_family({cplx(0.4), cplx(1.1), cplx(0.8, 0.5)});
    SUBCASE("exact omega_1: M2 is minus the integral of omega_2")
    {
        auto def = deformation(circles(), {exterior_d(P("x*y^2")), dx("y")});
        auto r = higher_melnikov(def, cycles, 3);
        CHECK(r.order == 2);
        REQUIRE(r.chain.size() == 1);
        CHECK(r.chain[0].exact);
        CHECK(r.chain[0].p.num.is_zero());
        // -integral of y dx over a counterclockwise circle is its area pi r^2 = 2 pi t
        for (auto& m : r.samples)
            CHECK(std::abs(m.value - 2.0 * pi * m.t) < 1e-8);
    }
    SUBCASE("omega_1 = x df + dy")
    {
        PencilSpec s = circles();
        auto def = deformation(s, {P("x") * exterior_d(s.F) + exterior_d(P("y"))});
        auto r = higher_melnikov(def, cycles, 2);
        CHECK(r.order == 2);
        REQUIRE(r.chain.size() == 1);
        CHECK(r.chain[0].p.num == -P("x"));
        // M2 = integral of x dy = pi r^2 = 2 pi t (holomorphic in t)
        for (auto& m : r.samples)
            CHECK(std::abs(m.value - 2.0 * pi * m.t) < 1e-8);
    }
    SUBCASE("two vanishing orders reach M3")
    {
        PencilSpec s = circles();
        OneForm w1 = P("x") * exterior_d(s.F) + exterior_d(P("y"));
        OneForm w2 = dy("x") + exterior_d(P("x*y"));
        auto def = deformation(s, {w1, w2, dx("y")});
        auto r = higher_melnikov(def, cycles, 3);
        CHECK(r.order == 3);
        CHECK(r.lower.size() == 2);
        REQUIRE(r.chain.size() == 2);
        CHECK(r.chain[1].p.num == P("-y^2"));  // x^2 reduced modulo f
        // M3 = integral of x d(xy) - integral of y dx = 0 + 2 pi t
        for (auto& m : r.samples)
            CHECK(std::abs(m.value - 2.0 * pi * m.t) < 1e-8);
    }
}

TEST_CASE("pencil perturbations")
{
    PencilSpec s = cubic_conic();
    Fibration fib(s);
    auto data = critical_data(s);
    const std::vector<cplx> levels{cplx(0.3, 0.4), cplx(0.35, 0.5), cplx(0.25, 0.45)};
    auto cycles = cycle_family(fib, data, {"critical", 0}, levels);

    SUBCASE("tangent forms give M1 = 0")
    {
        std::mt19937 rng(31);
        OneForm w = tangent_form(s, testing::random_poly(rng, 3), testing::random_poly(rng, 2));
        auto r = first_melnikov(deformation(s, {w}, Normalization::dlogf), cycles);
        for (auto& m : r.samples)
            CHECK(std::abs(m.value) < 1e-7);
        CHECK(r.identically_zero);
    }
    SUBCASE("normalizations differ by the level")
    {
        std::mt19937 rng(32);
        OneForm w = testing::random_form(rng, 4, 0.8);
        auto a = first_melnikov(deformation(s, {w}, Normalization::df), cycles).samples;
        auto b = first_melnikov(deformation(s, {w}, Normalization::dlogf), cycles).samples;
        for (std::size_t k = 0; k < levels.size(); ++k) {
            CHECK(std::abs(a[k].value) > 1e-6);
            CHECK(std::abs(a[k].value - levels[k] * b[k].value) < 1e-8 * std::max(1.0, a[k].scale));
        }
    }
}
