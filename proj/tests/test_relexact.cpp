#include "doctest.h"

#include "mkit/parse.hpp"
#include "mkit/relexact.hpp"
#include "random_poly.hpp"

#include <numbers>

using namespace mkit;

namespace {

BivarPoly P(const char* s) { return parse_poly(s); }

PencilSpec hamiltonian(const BivarPoly& F) { return pencil_form(F, P("1"), 1, 1); }

constexpr double pi = std::numbers::pi;

PencilSpec cubic_conic() { return pencil_form(P("x^3 + 2*y^3 - x*y - 1"), P("x^2 + 3*y^2 + x - 2"), 2, 3); }

// Value of a functional sum w_k [form]_{comp_k, mono_k}
Scalar pair(const std::vector<TangentResult::Functional>& y, const OneForm& w)
{
    Scalar s(0);
    for (auto& f : y)
        s += f.weight * (f.component == "dx" ? w.A : w.B).coeff(f.mono.i, f.mono.j);
    return s;
}

}  // namespace

TEST_CASE("rational form arithmetic")
{
    RationalForm a{OneForm{P("1"), {}}, P("x")}, b{OneForm{{}, P("1")}, P("x*y")};
    RationalForm s = a + b;
    CHECK(s.denominator == P("x*y"));
    CHECK(equivalent(s, RationalForm{OneForm{P("y"), P("1")}, P("x*y")}));
    CHECK(equivalent(s - b, a));
    // d(y/x) = (x dy - y dx) / x^2
    CHECK(equivalent(exterior_d(RationalFunction{P("y"), P("x")}), RationalForm{OneForm{-P("y"), P("x")}, P("x^2")}));
}

TEST_CASE("normalizations reproduce df and dlog f")
{
    PencilSpec s = cubic_conic();
    auto df = leaf_normalization(s, Normalization::df);
    auto dl = leaf_normalization(s, Normalization::dlogf);
    // df = d(F^2 / G^3)
    CHECK(equivalent(df.dH, exterior_d(RationalFunction{s.F.pow(2), s.G.pow(3)})));
    // dlog f = 2 dF / F - 3 dG / G
    RationalForm log = RationalForm{Scalar(2) * exterior_d(s.F), s.F} - RationalForm{Scalar(3) * exterior_d(s.G), s.G};
    CHECK(equivalent(dl.dH, log));
    CHECK(default_normalization(s) == Normalization::dlogf);
    CHECK(default_normalization(hamiltonian(P("x*y"))) == Normalization::df);
}

TEST_CASE("decompositions on the xy fibration")
{
    PencilSpec s = hamiltonian(P("x*y"));
    auto n = leaf_normalization(s, Normalization::df);
    SUBCASE("d(x^2 y) + x d(xy)")
    {
        OneForm w = exterior_d(P("x^2*y")) + P("x") * exterior_d(P("x*y"));
        auto d = decompose(RationalForm{w}, s, n);
        REQUIRE(d.feasible);
        CHECK(check_decomposition(RationalForm{w}, n, d));
        CHECK(d.g.num == P("x^2*y"));
        CHECK(d.p.num == P("x"));
    }
    SUBCASE("y dx + x dy")
    {
        auto d = decompose(RationalForm{OneForm{P("y"), P("x")}}, s, n);
        REQUIRE(d.feasible);
        CHECK(d.g.num == P("x*y"));
        CHECK(d.p.num.is_zero());
    }
    SUBCASE("y dx has a period")
    {
        DecompositionBounds b;
        b.max_growth = 4;
        auto d = decompose(RationalForm{OneForm{P("y"), {}}}, s, n, b);
        CHECK_FALSE(d.feasible);
        CHECK(d.least_squares_residual > 1e-3);
        CHECK(d.certificate_size > 0);
        CHECK(d.rounds == 5);

        const cplx t(0.6, 0.3);
        auto rep = is_relatively_exact(RationalForm{OneForm{P("y"), {}}}, s, {t});
        CHECK_FALSE(rep.relatively_exact);
        REQUIRE(rep.witness >= 0);
        CHECK(std::abs(std::abs(rep.evidence[rep.witness].integral.value) - 2.0 * pi * std::abs(t)) < 1e-8);
        bool warned = false;
        for (auto& w : rep.warnings)
            warned = warned || w.find("deg F + deg G <= 4") != std::string::npos;
        CHECK(warned);
    }
}

TEST_CASE("constructed Hamiltonian decompositions round trip")
{
    std::mt19937 rng(2024);
    for (int k = 0; k < 12; ++k) {
        const int deg = 2 + k % 3;
        BivarPoly F = testing::random_poly(rng, deg, 0.8);
        if (F.degree() < 2)
            continue;
        PencilSpec s = hamiltonian(F);
        auto n = leaf_normalization(s, Normalization::df);
        BivarPoly g = testing::random_poly(rng, 4, 0.6), p = testing::random_poly(rng, 2, 0.6);
        OneForm w = exterior_d(g) + p * exterior_d(F);
        auto d = decompose(RationalForm{w}, s, n);
        REQUIRE(d.feasible);
        CHECK(check_decomposition(RationalForm{w}, n, d));
        // same form, same pinned answer regardless of how it was built
        BivarPoly u = F * F * Scalar(2) - F;
        OneForm w2 = exterior_d(g + u) + (p - (F * Scalar(4) - BivarPoly(Scalar(1)))) * exterior_d(F);
        REQUIRE(w2 == w);
        auto d2 = decompose(RationalForm{w2}, s, n);
        CHECK(d2.g.num == d.g.num);
        CHECK(d2.p.num == d.p.num);
    }
}

TEST_CASE("logarithmic normalization of a Hamiltonian")
{
    PencilSpec s = hamiltonian(P("x^2 + y^2 - x^3"));
    auto n = leaf_normalization(s, Normalization::dlogf);
    OneForm w = exterior_d(P("x*y^2")) + P("y - 1") * exterior_d(s.F);
    RationalForm eta = normalize(n, w);
    auto d = decompose(eta, s, n);
    REQUIRE(d.feasible);
    CHECK(check_decomposition(eta, n, d));
}

TEST_CASE("integral test agrees with the decomposition")
{
    PencilSpec s = hamiltonian(P("x^3 - 3*x + y^2"));
    std::mt19937 rng(5);
    OneForm w = exterior_d(testing::random_poly(rng, 4)) + testing::random_poly(rng, 2) * exterior_d(s.F);
    auto rep = is_relatively_exact(RationalForm{w}, s, {cplx(0.5, 0.2), cplx(-1.0)});
    CHECK(rep.relatively_exact);
    CHECK(rep.evidence.size() == 4);
    for (auto& e : rep.evidence)
        CHECK(e.integral.error < 1e-8);
}

TEST_CASE("tangent membership")
{
    PencilSpec s = cubic_conic();
    SUBCASE("scaling direction")
    {
        auto r = tangent_membership(Scalar(2) * s.omega0, s);
        REQUIRE(r.witness);
        CHECK(r.witness->P == s.F);
        CHECK(r.witness->Q == s.G);
    }
    SUBCASE("constant P")
    {
        auto r = tangent_membership(Scalar(-s.q) * exterior_d(s.G), s);
        REQUIRE(r.witness);
        CHECK(r.witness->P == P("1"));
        CHECK(r.witness->Q.is_zero());
    }
    SUBCASE("random tangent forms")
    {
        std::mt19937 rng(8);
        for (int k = 0; k < 10; ++k) {
            BivarPoly a = testing::random_poly(rng, 3), b = testing::random_poly(rng, 2);
            OneForm w = tangent_form(s, a, b);
            auto r = tangent_membership(w, s);
            REQUIRE(r.witness);
            CHECK(tangent_form(s, r.witness->P, r.witness->Q) == w);
        }
    }
    SUBCASE("generic forms carry a certificate")
    {
        std::mt19937 rng(9);
        OneForm w = testing::random_form(rng, 4, 0.9);
        auto r = tangent_membership(w, s);
        REQUIRE_FALSE(r.witness);
        REQUIRE_FALSE(r.certificate.empty());
        CHECK(pair(r.certificate, w) == Scalar(1));
        for (int n = 0; n <= 3; ++n)
            for (int i = n; i >= 0; --i) {
                CHECK(pair(r.certificate, tangent_form(s, BivarPoly::monomial(i, n - i), {})).is_zero());
                if (n <= 2)
                    CHECK(pair(r.certificate, tangent_form(s, {}, BivarPoly::monomial(i, n - i))).is_zero());
            }
    }
}

TEST_CASE("tangent forms over FG are relatively exact")
{
    PencilSpec s = cubic_conic();
    auto n = leaf_normalization(s, Normalization::dlogf);
    std::mt19937 rng(12);
    OneForm w = tangent_form(s, testing::random_poly(rng, 3), testing::random_poly(rng, 2));
    RationalForm eta = normalize(n, w);
    auto d = decompose(eta, s, n);
    REQUIRE(d.feasible);
    CHECK(check_decomposition(eta, n, d));

    const std::vector<cplx> levels{cplx(0.3, 0.4)};
    auto rep = is_relatively_exact(eta, s, levels);
    CHECK(rep.relatively_exact);
    CHECK_FALSE(rep.evidence.empty());

    OneForm generic = testing::random_form(rng, 4, 0.9);
    REQUIRE_FALSE(tangent_membership(generic, s).witness);
    CHECK_FALSE(is_relatively_exact(normalize(n, generic), s, levels).relatively_exact);
}
