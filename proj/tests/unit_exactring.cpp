#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "waki/exactring.hpp"

#include <random>

using namespace waki;

namespace {

// Taylor coefficients at z = 0 by long division; needs den(0) != 0.
std::vector<Rational> taylor(const RationalFunction& f, int n) {
    const Poly& a = f.numer();
    const Poly& b = f.denom();
    REQUIRE(b.coeff(0) != 0);
    std::vector<Rational> c(n, Rational(0));
    for (int k = 0; k < n; ++k) {
        Rational s = a.coeff(k);
        for (int j = 1; j <= k; ++j) s -= b.coeff(j) * c[k - j];
        c[k] = s / b.coeff(0);
    }
    return c;
}

Rational ipow(long k, int p) {
    Rational r = 1;
    for (int i = 0; i < p; ++i) r *= k;
    return r;
}

Rational binom(int n, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Bernoulli numbers from sum_{j<=m} C(m+1,j) B_j = 0, B_1 = -1/2.
std::vector<Rational> bernoulli_table(int n) {
    std::vector<Rational> B(n + 1);
    B[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Rational s = 0;
        for (int j = 0; j < m; ++j) s += binom(m + 1, j) * B[j];
        B[m] = -s / (m + 1);
    }
    return B;
}

// Hurwitz zeta at -p: -B_{p+1}(a)/(p+1)
Rational hurwitz_neg(int p, long a) {
    auto B = bernoulli_table(p + 1);
    Rational s = 0;
    for (int j = 0; j <= p + 1; ++j) s += binom(p + 1, j) * B[j] * ipow(a, p + 1 - j);
    return -s / (p + 1);
}

}  // namespace

TEST_CASE("rational parsing and polynomial arithmetic") {
    CHECK(parse_rational(" -6/4 ") == Rational(-3, 2));
    CHECK_THROWS(parse_rational("x"));
    Poly p(std::vector<Rational>{1, 2, 1});
    Poly q(std::vector<Rational>{1, 1});
    Poly quo, rem;
    Poly::divmod(p, q, quo, rem);
    CHECK(quo == q);
    CHECK(rem.is_zero());
    CHECK(Poly::gcd(p, q * Poly(std::vector<Rational>{-1, 1})).monic() == q);
    CHECK(p.eval(3) == 16);
    CHECK(p.derivative() == Poly(std::vector<Rational>{2, 2}));
}

TEST_CASE("rational functions are kept in lowest terms") {
    RationalFunction f(Poly(std::vector<Rational>{-1, 0, 1}), Poly(std::vector<Rational>{-2, 2}));
    CHECK(f.denom() == Poly::constant(1));
    CHECK(f.numer() == Poly(std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
    CHECK(RationalFunction::z_power(-2) * RationalFunction::z_power(2) == RationalFunction(1));
    RationalFunction g = RationalFunction::parse("(z^2) / (1 - z^2)");
    CHECK(g == RationalFunction(Poly::monomial(1, 2), Poly(std::vector<Rational>{1, 0, -1})));
    CHECK(RationalFunction::parse(g.str()) == g);
    CHECK(RationalFunction::parse("3*z^2 - z + 1/2").eval(2) == Rational(21, 2));
}

TEST_CASE("bernoulli numbers") {
    auto B = bernoulli_table(12);
    for (int k = 0; k <= 12; ++k) CHECK(bernoulli(k) == B[k]);
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
}

TEST_CASE("reg of the basic geometric sums") {
    Poly den(std::vector<Rational>{1, 0, -1});
    CHECK(reg(RationalFunction(Poly::monomial(1, 2), den)) == Rational(-1, 2));
    CHECK(reg(RationalFunction(Poly::monomial(1, 3), den)) == -1);
    CHECK(reg(RationalFunction(Poly::monomial(1, 5), den)) == -2);
    CHECK(reg(RationalFunction(7)) == 7);
    CHECK(pole_order_at_one(RationalFunction(Poly::constant(1), den * den)) == 2);
}

TEST_CASE("reg of power-weighted geometric sums equals Hurwitz zeta values") {
    for (int p = 0; p <= 3; ++p)
        for (long k0 = -3; k0 <= 4; ++k0) {
            RationalFunction f = power_geometric(k0, 1, 0, p);
            CAPTURE(p);
            CAPTURE(k0);
            CHECK(reg(f) == hurwitz_neg(p, k0));
        }
}

TEST_CASE("closed forms match brute-force coefficients") {
    const int L = 40;
    for (int step : {1, 2, 3})
        for (long k0 : {0L, 1L, 3L})
            for (long shift : {0L, 2L})
                for (int p : {0, 1, 2}) {
                    auto c = taylor(power_geometric(k0, step, shift, p), L);
                    std::vector<Rational> want(L, Rational(0));
                    for (long k = k0; step * k + shift < L; ++k) want[step * k + shift] += ipow(k, p);
                    CHECK(c == want);
                }
    for (int p : {0, 1, 3}) {
        RationalFunction f = finite_power_sum(-2, 4, 2, 6, p);
        RationalFunction want;
        for (long k = -2; k <= 4; ++k) want += RationalFunction::z_power(static_cast<int>(2 * k + 6), ipow(k, p));
        CHECK(f == want);
    }
    CHECK(finite_power_sum(3, 2, 1, 0, 0).is_zero());
    CHECK(finite_power_sum(1, -1, 1, 0, 0) == -RationalFunction(1));
}

TEST_CASE("sums bounded above are inverted sums bounded below") {
    for (int p = 0; p <= 2; ++p) {
        RationalFunction below = power_geometric_below(-2, 2, 1, p);
        RationalFunction want = RationalFunction::z_power(1) *
                                invert_z(power_geometric(2, 2, 0, p)) * RationalFunction(p % 2 ? -1 : 1);
        CHECK(below == want);
    }
}

TEST_CASE("regularization is invariant under z -> 1/z") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(-4, 4), deg(0, 5), mult(1, 4);
    for (int t = 0; t < 100; ++t) {
        std::vector<Rational> v(deg(rng) + 1);
        for (auto& x : v) x = c(rng);
        Poly num(v);
        if (num.is_zero()) num = Poly::constant(1);
        Poly den = Poly::constant(1);
        int m = mult(rng);
        for (int i = 0; i < m; ++i) den = den * Poly(std::vector<Rational>{-1, 1});
        den = den * Poly(std::vector<Rational>{3, 0, 1});
        RationalFunction f(num, den);
        CHECK(reg(f) == reg(invert_z(f)));
    }
}

TEST_CASE("Laurent expansion at z = 1") {
    // 1/(1 - e^y) = -1/y + 1/2 - y/12 + ...
    TruncatedLaurent t = expand_at_one(RationalFunction(Poly::constant(1), Poly(std::vector<Rational>{1, -1})), 2);
    CHECK(t.coefficient(-1) == -1);
    CHECK(t.coefficient(0) == Rational(1, 2));
    CHECK(t.coefficient(1) == Rational(-1, 12));
    CHECK(t.coefficient(2) == 0);
}
