#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "waki/liealg.hpp"

#include <random>

using namespace waki;

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Matrix mul(const Matrix& a, const Matrix& b) {
    std::size_t n = a.size();
    Matrix c(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

Matrix lincomb(const Algebra& g, const std::vector<std::pair<int, Rational>>& terms) {
    std::size_t n = g.matrix(0).size();
    Matrix c(n, std::vector<Rational>(n, Rational(0)));
    for (const auto& [a, v] : terms) {
        Matrix m = g.matrix(a);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += v * m[i][j];
    }
    return c;
}

Rational trace(const Matrix& m) {
    Rational t = 0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

}  // namespace

TEST_CASE("A1 labels and dimensions") {
    Algebra g = Algebra::build("A1");
    CHECK(g.dim() == 3);
    CHECK(g.index("E") == g.index("a1"));
    CHECK(g.index("F") == g.index("-a1"));
    CHECK(g.index("H") == g.index("1"));
    CHECK(g.is_positive(g.index("E")));
    CHECK(g.is_cartan(g.index("H")));
    CHECK(g.eta(g.index("E")) == 0);
    CHECK(g.eta(g.index("F")) == 1);
    CHECK(g.mirror(g.index("E")) == g.index("F"));
    Algebra g3 = Algebra::build("A2");
    CHECK(g3.dim() == 8);
    CHECK(g3.height(g3.index("a1+a2")) == 2);
    CHECK(g3.height(g3.index("-a1-a2")) == -2);
}

TEST_CASE("structure constants reproduce matrix commutators") {
    for (const char* s : {"A1", "A2", "A3"}) {
        Algebra g = Algebra::build(s);
        for (int a = 0; a < g.dim(); ++a)
            for (int b = 0; b < g.dim(); ++b) {
                Matrix ab = mul(g.matrix(a), g.matrix(b)), ba = mul(g.matrix(b), g.matrix(a));
                for (std::size_t i = 0; i < ab.size(); ++i)
                    for (std::size_t j = 0; j < ab.size(); ++j) ab[i][j] -= ba[i][j];
                CHECK(ab == lincomb(g, g.f(a, b)));
            }
    }
}

TEST_CASE("trace form is the matrix trace pairing") {
    Algebra g = Algebra::build("A2");
    for (int a = 0; a < g.dim(); ++a)
        for (int b = 0; b < g.dim(); ++b) CHECK(g.kappa(a, b) == trace(mul(g.matrix(a), g.matrix(b))));
}

TEST_CASE("affine bracket: antisymmetry and Jacobi on random elements") {
    Algebra g = Algebra::build("A2");
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> idx(0, g.dim() - 1), loop(-3, 3), c(-2, 2);
    auto rnd = [&]() {
        AffineElement x;
        for (int i = 0; i < 3; ++i) x.add({idx(rng), loop(rng)}, Rational(c(rng)));
        x.d = c(rng);
        x.k = c(rng);
        return x;
    };
    for (int t = 0; t < 40; ++t) {
        AffineElement x = rnd(), y = rnd(), z = rnd();
        CHECK(affine_bracket(g, x, y) + affine_bracket(g, y, x) == AffineElement());
        AffineElement jac = affine_bracket(g, x, affine_bracket(g, y, z)) + affine_bracket(g, y, affine_bracket(g, z, x)) +
                            affine_bracket(g, z, affine_bracket(g, x, y));
        CHECK(jac == AffineElement());
    }
}

TEST_CASE("affine bracket: loop, central and derivation parts") {
    Algebra g = Algebra::build("A1");
    int E = g.index("E"), F = g.index("F"), H = g.index("H");
    AffineElement r = affine_bracket(g, AffineElement::generator(E, 2), AffineElement::generator(F, -2));
    CHECK(r.loop.size() == 1);
    CHECK(r.loop.at({H, 0}) == 1);
    CHECK(r.k == 2 * g.kappa(E, F));
    AffineElement s = affine_bracket(g, AffineElement::derivation(), AffineElement::generator(E, 3));
    CHECK(s == AffineElement::generator(E, 3, 3));
}

TEST_CASE("positive part membership and generator parsing") {
    Algebra g = Algebra::build("A1");
    int E = g.index("E"), F = g.index("F"), H = g.index("H");
    CHECK(in_plus(g, E, 0));
    CHECK_FALSE(in_plus(g, F, 0));
    CHECK_FALSE(in_plus(g, H, 0));
    CHECK(in_plus(g, F, 1));
    CHECK(in_minus(g, F, 0));
    CHECK(in_minus(g, E, -1));
    GeneratorSpec s = parse_generator(g, "J_{F,-2}");
    CHECK(s.kind == GeneratorSpec::Loop);
    CHECK(s.j == GenIndex{F, -2});
    CHECK(parse_generator(g, "d").kind == GeneratorSpec::Derivation);
    CHECK(parse_generator(g, "k").kind == GeneratorSpec::Central);
    CHECK_THROWS(parse_generator(g, "E"));
    CHECK(n_plus_basis(g, 2).size() == 4);
}

TEST_CASE("Cartan involution exchanges the two halves") {
    Algebra g = Algebra::build("A2");
    int a1 = g.index("a1"), h = g.index("1");
    CHECK(cartan_involution(g, AffineElement::generator(a1, 3)) == AffineElement::generator(g.index("-a1"), -3));
    CHECK(cartan_involution(g, AffineElement::generator(h, 2)) == AffineElement::generator(h, -2, -1));
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> idx(0, g.dim() - 1), loop(-3, 3), c(-2, 2);
    for (int t = 0; t < 20; ++t) {
        AffineElement x;
        for (int i = 0; i < 3; ++i) x.add({idx(rng), loop(rng)}, Rational(c(rng)));
        CHECK(cartan_involution(g, cartan_involution(g, x)) == x);
    }
}

TEST_CASE("sl2 Cartan involution preserves loop brackets") {
    Algebra g = Algebra::build("A1");
    for (int a = 0; a < g.dim(); ++a)
        for (int b = 0; b < g.dim(); ++b) {
            AffineElement x = AffineElement::generator(a, 1), y = AffineElement::generator(b, 2);
            AffineElement lhs = cartan_involution(g, affine_bracket(g, x, y));
            AffineElement rhs = affine_bracket(g, cartan_involution(g, x), cartan_involution(g, y));
            CHECK(lhs.loop == rhs.loop);
        }
}
