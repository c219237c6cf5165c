#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "waki/fockreg.hpp"
#include "waki/suites.hpp"

#include <random>

using namespace waki;

namespace {

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

// Leading coefficients of f around z = 0 (or z = infinity) vanish.
bool vanishes_to_order(const RationalFunction& f, int order, bool at_infinity) {
    RationalFunction g = at_infinity ? invert_z(f) : f;
    g = g * RationalFunction::z_power(12);
    for (const Rational& c : taylor(g, order + 12))
        if (c != 0) return false;
    return true;
}

std::set<long> k_window(const KRange& r, long width) {
    std::set<long> ks;
    long lo = r.lo ? *r.lo : -width, hi = r.hi ? *r.hi : width;
    for (long k = lo; k <= hi; ++k) ks.insert(k);
    return ks;
}

QuadSum quad(int a, int b, int n, int alpha, KRange range, Poly weight = Poly::constant(1), Rational c = 1) {
    QuadSum q;
    q.coeff = RationalFunction(c);
    q.a = a;
    q.b = b;
    q.n = n;
    q.alpha = alpha;
    q.range = range;
    q.weight = weight;
    return q;
}

struct Sl2 {
    Algebra g = Algebra::build("A1");
    int E = g.index("E"), F = g.index("F"), H = g.index("H");
};

}  // namespace

TEST_CASE("z-weighted contractions") {
    Sl2 s;
    CHECK(contract(make_var(s.E, 3), 0, make_var(s.E, 3), 0) == RationalFunction::z_power(3));
    CHECK(contract(make_var(s.E, 3), 1, make_var(s.F, 2), -1).is_zero());
    CHECK(contract(make_var(s.E, 3), 1, make_var(s.E, 3), -1) == RationalFunction::z_power(3));
    CHECK(contract(make_var(s.E, 3), 1, make_var(s.E, 3), 0).is_zero());
}

TEST_CASE("closed-form first products of quadratic sums match truncated sums") {
    Sl2 s;
    const long W = 40;
    Poly lin(std::vector<Rational>{0, 1});
    struct Case {
        QuadSum x, y;
        bool negative;
    };
    std::vector<Case> cases = {
        {quad(s.F, s.H, 2, 1, KRange::positive(3)), quad(s.H, s.F, -2, 2, KRange::positive(1)), false},
        {quad(s.F, s.H, 2, 0, KRange::positive(2)), quad(s.H, s.F, -2, 0, KRange::positive(1)), false},
        {quad(s.E, s.E, 0, 1, KRange::positive(1), lin), quad(s.E, s.E, 0, 0, KRange::positive(0)), false},
        {quad(s.H, s.E, -1, 0, KRange::positive(0), lin * lin), quad(s.E, s.H, 1, 3, KRange::positive(2), lin), false},
        {quad(s.F, s.H, 2, 0, KRange::negative(-2)), quad(s.H, s.F, -2, 1, KRange::negative(0)), true},
        {quad(s.E, s.E, 0, 0, KRange::negative(-1), lin), quad(s.E, s.E, 0, 0, KRange::negative(-1)), true},
    };
    for (const Case& c : cases) {
        FockState x = FockState::quad_state(c.x), y = FockState::quad_state(c.y);
        RationalFunction closed = product1(x, y).scalar;
        CHECK_FALSE(closed.is_zero());
        FockState xb = materialize(x, k_window(c.x.range, W)), yb = materialize(y, k_window(c.y.range, W));
        if (c.negative) {
            xb = materialize(x, k_window(KRange::finite(-W, *c.x.range.hi), W));
            yb = materialize(y, k_window(KRange::finite(-W, *c.y.range.hi), W));
        }
        RationalFunction brute = product1(xb, yb).scalar;
        CAPTURE(closed.str());
        CAPTURE(brute.str());
        CHECK(vanishes_to_order(closed - brute, 30, c.negative));
        CHECK(product1(y, x).scalar == closed);
    }
}

TEST_CASE("quadratic sums with no matching indices do not contract") {
    Sl2 s;
    FockState x = FockState::quad_state(quad(s.F, s.H, 2, 0, KRange::positive(2)));
    FockState y = FockState::quad_state(quad(s.H, s.F, -1, 0, KRange::positive(1)));
    CHECK(product1(x, y).scalar.is_zero());
}

TEST_CASE("vacuum and creation axioms") {
    Sl2 s;
    FockState x = sl2_example_x(s.g);
    CHECK(product1(x, FockState::vacuum()).is_zero());
    CHECK(product0(FockState::vacuum(), x).is_zero());
    FockState a = FockState::gamma0(make_var(s.E, 1)), b = FockState::gamma0(make_var(s.F, 2));
    CHECK(product0(a, b).is_zero());
}

TEST_CASE("the sl2 pair written out in closed form") {
    Sl2 s;
    FockState x = sl2_example_x(s.g), y = sl2_example_y(s.g);
    FockState p = product1(x, y);
    CHECK(p.scalar == sl2_example_scalar());
    CHECK(reg(p.scalar) == 0);
    CHECK(p.exact);
    CHECK(product1(y, x).scalar == p.scalar);
}

TEST_CASE("translation") {
    Sl2 s;
    Translated t0 = translate(FockState::vacuum());
    CHECK(t0.depth1.is_zero());
    Translated t1 = translate(FockState::gamma0(make_var(s.E, 1)));
    REQUIRE(t1.depth1.oneform.size() == 1);
    CHECK(t1.depth1.oneform.begin()->first == make_var(s.E, 1));
    CHECK(t1.depth1.oneform.begin()->second == ZPoly::constant(1));
    CHECK_FALSE(t1.outside_depth1);
    Translated t2 = translate(FockState::beta_state(make_var(s.E, 1)));
    CHECK(t2.outside_depth1);
    CHECK(t2.beta_minus2.count(make_var(s.E, 1)) == 1);
}

TEST_CASE("S-generator brackets") {
    Sl2 s;
    SState lhs = s_bracket(SState::S(s.E, s.F, 1), SState::S(s.F, s.E, -1));
    SState rhs = SState::S(s.E, s.E, 0);
    rhs += SState::S(s.F, s.F, 0, -1);
    CHECK(lhs == rhs);
    CHECK(s_bracket(SState::D(), SState::S(s.E, s.H, 3)) == SState::S(s.E, s.H, 3, 3));
    CHECK(s_bracket(SState::D(), SState::S(s.E, s.H, 0)).is_zero());
}

TEST_CASE("adjoint map preserves brackets with the centre dropped") {
    Algebra g = Algebra::build("A2");
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> idx(0, g.dim() - 1), loop(-3, 3), c(-2, 2);
    auto rnd = [&]() {
        AffineElement x;
        for (int i = 0; i < 2; ++i) x.add({idx(rng), loop(rng)}, Rational(c(rng)));
        x.d = c(rng);
        x.k = c(rng);
        return x;
    };
    for (int t = 0; t < 100; ++t) {
        AffineElement x = rnd(), y = rnd();
        CHECK(s_bracket(lad_map(g, x), lad_map(g, y)) == lad_map(g, affine_bracket(g, x, y)));
    }
}

TEST_CASE("embedding of S generators as doubly infinite sums") {
    Sl2 s;
    FockState p = p_embed(s.g, SState::S(s.E, s.F, 2));
    REQUIRE(p.quads.size() == 1);
    const QuadSum& q = p.quads[0];
    CHECK(q.a == s.E);
    CHECK(q.b == s.F);
    CHECK(q.n == 2);
    CHECK(q.alpha == 0);
    CHECK(q.sector() == Sector::Full);
    CHECK(q.coeff == RationalFunction(1));
    FockState v = p_embed(s.g, SState::vacuum());
    CHECK(v.scalar == RationalFunction(1));
    CHECK(v.quads.empty());
}

TEST_CASE("sector split bounds and reassembly") {
    Sl2 s;
    for (int n : {-3, -1, 0, 1, 2, 4}) {
        FockState p = p_embed(s.g, SState::S(s.E, s.H, n));
        Sectors sec = split_sectors(p);
        REQUIRE(sec.positive.quads.size() == 1);
        REQUIRE(sec.negative.quads.size() == 1);
        int M = std::max(0, n);
        if (n == 0) {
            CHECK(sec.positive.quads[0].range == KRange::positive(1));
            CHECK(sec.negative.quads[0].range == KRange::negative(-1));
        } else {
            CHECK(sec.positive.quads[0].range == KRange::positive(M));
            CHECK(sec.negative.quads[0].range == KRange::negative(-M));
        }
        if (n == 2) {
            REQUIRE(sec.middle.quads.size() == 1);
            CHECK(sec.middle.quads[0].range == KRange::finite(-1, 1));
        }
        std::set<long> ks;
        for (long k = -8; k <= 8; ++k) ks.insert(k);
        auto whole = vector_part_at_one(materialize(p, ks), -20, 20);
        FockState sum = materialize(sec.positive, k_window(KRange::finite(M, 8), 8));
        sum += materialize(sec.negative, k_window(KRange::finite(-8, -M), 8));
        sum += materialize(sec.middle, k_window(sec.middle.quads.empty() ? KRange::finite(1, 0) : sec.middle.quads[0].range, 8));
        CAPTURE(n);
        CHECK(vector_part_at_one(sum, -20, 20) == whole);
    }
}

TEST_CASE("split first product of opposite S generators vanishes") {
    Sl2 s;
    for (int n = -3; n <= 3; ++n) {
        FockState x = p_embed(s.g, SState::S(s.E, s.H, n)), y = p_embed(s.g, SState::S(s.H, s.E, -n));
        LempiResult r = lempi_product(x, y);
        CAPTURE(n);
        CHECK(r.total() == 0);
        CHECK(r.depth0.is_zero());
        CHECK(r.exact);
        int M = std::max(0, n);
        Rational mid = 2 * M - 1;
        CHECK(abs(r.middle) == abs(mid));
    }
    CHECK(lempi_product(FockState::vacuum(), p_embed(s.g, SState::S(s.E, s.H, 1))).total() == 0);
}

TEST_CASE("state json round trip") {
    Sl2 s;
    FockState x = sl2_example_x(s.g);
    FockState y = fock_from_json(s.g, x.to_json(s.g));
    CHECK(y.str(s.g) == x.str(s.g));
    CHECK(product1(y, sl2_example_y(s.g)).scalar == sl2_example_scalar());
}
