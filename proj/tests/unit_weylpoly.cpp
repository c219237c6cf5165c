#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "waki/weylpoly.hpp"

#include <random>

using namespace waki;

namespace {

std::vector<Var> test_vars() {
    return {make_var(0, 0), make_var(1, 1), make_var(2, 1), make_var(0, 2), make_var(1, 3)};
}

RPoly random_poly(std::mt19937& rng, int terms, int max_deg) {
    auto vars = test_vars();
    std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
    std::uniform_int_distribution<int> c(-3, 3), d(0, max_deg);
    RPoly p;
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int deg = d(rng);
        for (int i = 0; i < deg; ++i) m.push_back(vars[pick(rng)]);
        std::sort(m.begin(), m.end());
        p.add(m, Rational(c(rng)));
    }
    return p;
}

Derivation random_derivation(std::mt19937& rng) {
    Derivation d(10, 0);
    auto vars = test_vars();
    for (Var v : vars) d.add(v, random_poly(rng, 2, 2));
    return d;
}

}  // namespace

TEST_CASE("variable encoding round-trips negative loops") {
    for (int a : {0, 3, 7})
        for (int n : {-12, -1, 0, 5, 40}) {
            Var v = make_var(a, n);
            CHECK(var_index(v) == a);
            CHECK(var_loop(v) == n);
        }
    CHECK(ceil_half(3) == 2);
    CHECK(ceil_half(-3) == -1);
    CHECK(ceil_half(0) == 0);
}

TEST_CASE("polynomial ring laws and derivatives") {
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        RPoly p = random_poly(rng, 3, 3), q = random_poly(rng, 3, 3), r = random_poly(rng, 2, 2);
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
        for (Var v : test_vars()) CHECK((p * q).derivative(v) == p.derivative(v) * q + p * q.derivative(v));
    }
    RPoly x = RPoly::variable(make_var(0, 0));
    CHECK((x * x * x).derivative(make_var(0, 0)) == Rational(3) * x * x);
    CHECK((x * x).max_loop() == 0);
    CHECK(RPoly::constant(2).max_loop() == INT_MIN);
}

TEST_CASE("derivation commutator acts as the operator commutator") {
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        Derivation a = random_derivation(rng), b = random_derivation(rng);
        Derivation c = derivation_commutator(a, b);
        RPoly f = random_poly(rng, 3, 3);
        CHECK(c.apply(f) == a.apply(b.apply(f)) - b.apply(a.apply(f)));
    }
}

TEST_CASE("gap profile of a widening derivation") {
    Derivation d(8, 0);
    // target loop m uses variables up to loop ceil(m/2)
    for (int m = 1; m < 8; ++m) d.add_term(make_var(0, m), Monomial{make_var(1, ceil_half(m))}, 1);
    GapCertificate c = gap_profile(d, 0);
    CHECK(c.widening);
    CHECK(c.offset == 0);
    CHECK(c.window == 8);
    d.add_term(make_var(0, 6), Monomial{make_var(1, 5)}, 1);
    GapCertificate bad = gap_profile(d, 0);
    CHECK_FALSE(bad.widening);
    CHECK(bad.offset == 2);
    CHECK(gap_profile(d, 2).widening);
}

TEST_CASE("truncation keeps targets below the cutoff") {
    Derivation d(10, 0);
    d.add_term(make_var(0, 2), Monomial{}, 1);
    d.add_term(make_var(0, 7), Monomial{}, 1);
    d.add_term(make_var(0, -7), Monomial{}, 1);
    CHECK(d.truncated(5).components().size() == 2);
    CHECK(d.truncated(5, true).components().size() == 1);
}
