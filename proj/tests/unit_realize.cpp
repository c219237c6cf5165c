#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "waki/golden.hpp"
#include "waki/realize.hpp"

using namespace waki;

namespace {

std::shared_ptr<const Algebra> alg(const char* s) { return std::make_shared<const Algebra>(Algebra::build(s)); }

Monomial mono(std::initializer_list<Var> vs) {
    Monomial m(vs);
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

TEST_CASE("finite sl2: D, -2XD, -X^2 D") {
    auto g = alg("A1");
    RealizationConfig cfg(g, 1);
    int E = g->index("E"), F = g->index("F"), H = g->index("H");
    Var x = make_var(E, 0);
    Derivation dE = rho(GenIndex{E, 0}, cfg), dH = rho(GenIndex{H, 0}, cfg), dF = rho(GenIndex{F, 0}, cfg);
    CHECK(dE.components().size() == 1);
    CHECK(dE.component(x) == RPoly::constant(1));
    CHECK(dH.component(x) == RPoly::variable(x, Rational(-2)));
    CHECK(dF.component(x) == RPoly::monomial(mono({x, x}), Rational(-1)));
}

TEST_CASE("coordinate order: positive roots at loop 0, then neg, cart, pos per loop") {
    auto g = alg("A2");
    RealizationConfig cfg(g, 2);
    auto c = cfg.coordinates();
    REQUIRE(c.size() == 3 + 8);
    CHECK(c[0].n == 0);
    CHECK(g->is_positive(c[0].a));
    CHECK(g->is_negative(c[3].a));
    CHECK(g->is_cartan(c[6].a));
    CHECK(g->is_positive(c[10].a));
    CHECK_THROWS(RealizationConfig(g, 2, "neg,pos").coordinates());
}

TEST_CASE("homomorphism on all A1 pairs with |n| <= 1") {
    auto g = alg("A1");
    const int K = 4, N = 1;
    RealizationConfig cfg(g, K + 2 * N);
    for (int n = -N; n <= N; ++n)
        for (int m = -N; m <= N; ++m)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    AffineElement br = affine_bracket(*g, AffineElement::generator(a, n), AffineElement::generator(b, m));
                    Derivation lhs = derivation_commutator(rho(GenIndex{a, n}, cfg), rho(GenIndex{b, m}, cfg));
                    CHECK(lhs.truncated(K) == rho(br, cfg).truncated(K));
                }
}

TEST_CASE("the derivation acts by loop degree") {
    auto g = alg("A2");
    RealizationConfig cfg(g, 5);
    for (int n = -2; n <= 2; ++n) {
        GenIndex J{g->index("a1+a2"), n};
        Derivation lhs = derivation_commutator(rho_d(cfg), rho(J, cfg));
        CHECK(lhs == Rational(n) * rho(J, cfg));
    }
}

TEST_CASE("golden realization data reproduces") {
    auto g = alg("A2");
    GoldenFile gf = load_golden(*g, std::string(WAKI_DATA_DIR) + "/golden/rho_a2.json");
    REQUIRE(gf.entries.size() == 4);
    int checked = 0;
    for (const GoldenEntry& e : gf.entries) {
        RealizationConfig cfg(g, e.cutoff, gf.coordinate_order);
        GoldenReport r = diff_golden(*g, e, rho(e.J, cfg));
        CAPTURE(generator_name(*g, e.J));
        CHECK(r.ok());
        checked += r.checked;
    }
    CHECK(checked >= 300);
}

TEST_CASE("remainders have widening gaps") {
    auto g = alg("A1");
    RealizationConfig cfg(g, 8);
    for (int n = -2; n <= 2; ++n)
        for (int a = 0; a < 3; ++a) CHECK(widening_remainder(GenIndex{a, n}, cfg).cert.widening);
}

TEST_CASE("A2 remainder monomials at target (a1,7)") {
    auto g = alg("A2");
    RealizationConfig cfg(g, 8);
    int a1 = g->index("a1"), a12 = g->index("a1+a2"), ma1 = g->index("-a1"), ma2 = g->index("-a2"), h = g->index("1");
    Remainder r = widening_remainder(GenIndex{a1, 0}, cfg);
    const RPoly& P = r.R.component(make_var(a1, 7));
    CHECK(P.coefficient(mono({make_var(ma2, 2), make_var(ma1, 2), make_var(a12, 3)})) == 1);
    CHECK(P.coefficient(mono({make_var(h, 3), make_var(h, 2), make_var(h, 2)})) == 4);
    CHECK(r.cert.widening);
    CHECK(r.cert.offset == 0);
}

TEST_CASE("nu is the linear part for non-positive loop degree") {
    auto g = alg("A1");
    RealizationConfig cfg(g, 6);
    for (int n = -2; n <= 0; ++n)
        for (int a = 0; a < 3; ++a) {
            Derivation rh = rho(GenIndex{a, n}, cfg), nv = nu(GenIndex{a, n}, cfg);
            for (const auto& [t, p] : nv.components())
                for (const auto& [m, c] : p.terms()) {
                    REQUIRE(m.size() == 1);
                    CHECK(rh.component(t).coefficient(m) == c);
                }
        }
}

TEST_CASE("compensating terms for J_{E,1}") {
    auto g = alg("A1");
    RealizationConfig cfg(g, 6);
    int E = g->index("E"), F = g->index("F"), H = g->index("H");
    Derivation want(6, 1);
    for (int k = 0; k <= 2; ++k) {
        want.add_term(make_var(H, k), Monomial{make_var(F, k - 1)}, -1);
        want.add_term(make_var(E, k), Monomial{make_var(H, k - 1)}, 2);
    }
    CHECK(compensating_terms(GenIndex{E, 1}, cfg) == want);
}

TEST_CASE("exchange map is an involution") {
    auto g = alg("A2");
    RealizationConfig cfg(g, 4);
    Derivation d = rho(GenIndex{g->index("a2"), 1}, cfg);
    CHECK(tau(*g, tau(*g, d)) == d);
}
