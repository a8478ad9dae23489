#include "doctest.h"

#include "mkit/oracle.hpp"
#include "mkit/parse.hpp"
#include "random_poly.hpp"

#include <numbers>

using namespace mkit;

namespace {

BivarPoly P(const char* s) { return parse_poly(s); }

constexpr double pi = std::numbers::pi;

PencilSpec circles() { return pencil_form(P("1/2*x^2 + 1/2*y^2"), P("1"), 1, 1); }
PencilSpec cubic_conic() { return pencil_form(P("x^3 + 2*y^3 - x*y - 1"), P("x^2 + 3*y^2 + x - 2"), 2, 3); }

Cycle circle_at(cplx t)
{
    PencilSpec s = circles();
    return seed_vanishing_cycle(Fibration(s), critical_data(s), 0, t);
}

DeformationSpec van_der_pol() { return deformation(circles(), {OneForm{P("x^2*y - y"), {}}}); }

double closed_form(double t) { return -2.0 * pi * t * (1.0 - t / 2.0); }

}  // namespace

TEST_CASE("unperturbed holonomy is the identity")
{
    auto def = van_der_pol();
    for (cplx t : {cplx(0.5), cplx(1.2, 0.3)}) {
        auto h = holonomy(def, circle_at(t), t, 0.0);
        CHECK(std::abs(h.h - t) < 1e-9);
        CHECK(h.leaf_residual < 1e-12);
        CHECK(h.tube_max < 1e-2);  // chord sagitta of the polygon
    }
    PencilSpec s = cubic_conic();
    const cplx t(0.3, 0.4);
    Cycle c = seed_vanishing_cycle(Fibration(s), critical_data(s), 0, t);
    auto h = holonomy(deformation(s, {OneForm{P("y"), {}}}), c, t, 0.0);
    CHECK(std::abs(h.h - t) < 1e-9);
}

TEST_CASE("guide transport to another level")
{
    auto def = van_der_pol();
    auto h = holonomy(def, circle_at(0.5), 0.8, 0.0);
    CHECK(std::abs(h.h - 0.8) < 1e-9);
}

TEST_CASE("van der Pol holonomy against the closed form")
{
    auto def = van_der_pol();
    for (double t : {0.5, 1.0, 1.7}) {
        Cycle g = circle_at(t);
        auto est = melnikov_fd(def, g, t, 1);
        CHECK(est.converged);
        CHECK(std::abs(est.value - closed_form(t)) < 1e-4 * std::abs(closed_form(t)));
        CHECK(est.error < 1e-4 * std::abs(closed_form(t)));

        // odd part flips with eps
        auto hp = holonomy(def, g, t, 1e-4), hm = holonomy(def, g, t, -1e-4);
        CHECK(std::abs((hp.h - t) + (hm.h - t)) < 1e-6);
        CHECK(std::abs((hp.h - t) / 1e-4 - closed_form(t)) < 1e-3 * std::abs(closed_form(t)) + 1e-3);

        // a tighter integrator changes h by less than the difference scale we rely on
        HolonomyOptions tight;
        tight.ode_tol = 0.5e-13;
        CHECK(std::abs(holonomy(def, g, t, 1e-2, tight).h - holonomy(def, g, t, 1e-2).h) < 1e-10);
    }
}

TEST_CASE("limit cycle as a fixed point of the holonomy")
{
    auto fp = holonomy_fixed_points(van_der_pol(), circle_at(1.5), 0.01, 1.5, 2.5, 6);
    REQUIRE(fp.size() == 1);
    CHECK(std::abs(fp[0].t - 2.0) < 0.02);
    CHECK(fp[0].displacement < 1e-10);
}

TEST_CASE("second order from finite differences")
{
    // omega_1 exact: M_2 = -integral of y dx = 2 pi t
    auto def = deformation(circles(), {exterior_d(P("x*y^2")), OneForm{P("y"), {}}});
    for (cplx t : {cplx(0.6), cplx(1.1, 0.4)}) {
        Cycle g = circle_at(t);
        auto m1 = melnikov_fd(def, g, t, 1);
        CHECK(std::abs(m1.value) < 1e-6);
        auto m2 = melnikov_fd(def, g, t, 2);
        CHECK(std::abs(m2.value - 2.0 * pi * t) < 1e-3 * std::abs(2.0 * pi * t));
        auto r = higher_melnikov(def, {g}, 2);
        REQUIRE(r.order == 2);
        CHECK(std::abs(m2.value - r.samples[0].value) < 1e-3 * std::abs(r.samples[0].value));
    }
}

TEST_CASE("tangent deformations of a pencil have no first order displacement")
{
    PencilSpec s = cubic_conic();
    const cplx t(0.3, 0.4);
    Cycle c = seed_vanishing_cycle(Fibration(s), critical_data(s), 0, t);
    std::mt19937 rng(41);
    OneForm w = tangent_form(s, testing::random_poly(rng, 2), testing::random_poly(rng, 1));
    auto def = deformation(s, {w}, Normalization::dlogf);
    auto est = melnikov_fd(def, c, t, 1);
    CHECK(std::abs(est.value) < 1e-6);

    OneForm generic = testing::random_form(rng, 2, 1.0);
    auto gdef = deformation(s, {generic}, Normalization::dlogf);
    auto g1 = melnikov_fd(gdef, c, t, 1);
    auto m1 = first_melnikov(gdef, {c});
    CHECK(std::abs(g1.value - m1.samples[0].value) < 1e-3 * std::abs(m1.samples[0].value));
}
