#include "waki/golden.hpp"
#include "waki/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace waki;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = budget_s <= 0 || s <= budget_s;
    bool ok = o.pass && in_time;
    if (!ok) ++failures;
    std::printf("%s %2d %s (%.3f s%s)%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), s,
                in_time ? "" : ", over time budget", o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
}

Outcome from_suite(const SuiteReport& r) {
    std::string d = std::to_string(r.cases.size() - r.failures()) + "/" + std::to_string(r.cases.size()) + " cases";
    for (const auto& c : r.cases)
        if (!c.pass) {
            d += "; first failure " + c.inputs + " " + c.detail;
            break;
        }
    return {r.pass(), d};
}

std::shared_ptr<const Algebra> alg(const char* s) { return std::make_shared<const Algebra>(Algebra::build(s)); }

// Scalar outputs of a suite keyed by case inputs.
std::map<std::string, std::string> scalars(const SuiteReport& r) {
    std::map<std::string, std::string> m;
    for (const auto& c : r.cases)
        m[c.inputs] = c.raw_scalar.empty() ? std::string(c.pass ? "ok" : "fail") : c.raw_scalar + " -> " + c.regularized;
    return m;
}

Outcome same_scalars(const SuiteReport& a, const SuiteReport& b) {
    if (!a.pass() || !b.pass()) return {false, "suite failed at one of the cutoffs"};
    auto x = scalars(a), y = scalars(b);
    int diff = 0;
    for (const auto& [k, v] : x) {
        auto it = y.find(k);
        if (it != y.end() && it->second != v) ++diff;
    }
    return {diff == 0, std::to_string(x.size()) + " outputs compared, " + std::to_string(diff) + " changed"};
}

}  // namespace

int main() {
    criterion(1, "reg unit values", 0.001, [] {
        Poly den(std::vector<Rational>{1, 0, -1});
        Rational a = reg(RationalFunction(Poly::monomial(1, 2), den));
        Rational b = reg(RationalFunction(Poly::monomial(1, 3), den));
        return Outcome{a == Rational(-1, 2) && b == -1, "reg z^2/(1-z^2) = " + a.get_str() + ", reg z^3/(1-z^2) = " + b.get_str()};
    });

    criterion(2, "inversion invariance on 100 random functions", 1.0, [] {
        std::mt19937 rng(2024);
        std::uniform_int_distribution<int> c(-5, 5), deg(0, 6), mult(1, 4), extra(0, 2);
        int bad = 0;
        for (int t = 0; t < 100; ++t) {
            std::vector<Rational> v(deg(rng) + 1);
            for (auto& x : v) x = c(rng);
            Poly num(v);
            if (num.is_zero()) num = Poly::constant(1);
            Poly den = Poly::constant(1);
            for (int i = 0, m = mult(rng); i < m; ++i) den = den * Poly(std::vector<Rational>{1, -1});
            for (int i = 0, m = extra(rng); i < m; ++i) den = den * Poly(std::vector<Rational>{2 + i, 0, 1});
            RationalFunction f = RationalFunction(num, den) * RationalFunction::z_power(c(rng));
            if (reg(f) != reg(invert_z(f))) ++bad;
        }
        return Outcome{bad == 0, std::to_string(100 - bad) + "/100 invariant"};
    });

    criterion(3, "finite sl2 realization", 0, [] {
        auto g = alg("A1");
        RealizationConfig cfg(g, 1);
        Var x = make_var(g->index("E"), 0);
        bool ok = rho(GenIndex{g->index("E"), 0}, cfg).component(x) == RPoly::constant(1) &&
                  rho(GenIndex{g->index("H"), 0}, cfg).component(x) == RPoly::variable(x, Rational(-2)) &&
                  rho(GenIndex{g->index("F"), 0}, cfg).component(x) == RPoly::monomial(Monomial{x, x}, Rational(-1));
        return Outcome{ok, ok ? "(D, -2XD, -X^2 D)" : "mismatch"};
    });

    criterion(4, "A2 golden reproduction", 300, [] {
        auto g = alg("A2");
        GoldenFile gf = load_golden(*g, std::string(WAKI_DATA_DIR) + "/golden/rho_a2.json");
        int checked = 0, bad = 0;
        for (const GoldenEntry& e : gf.entries) {
            RealizationConfig cfg(g, e.cutoff, gf.coordinate_order);
            GoldenReport r = diff_golden(*g, e, rho(e.J, cfg));
            checked += r.checked;
            bad += static_cast<int>(r.mismatches.size());
        }
        clear_realization_cache();
        auto t0 = std::chrono::steady_clock::now();
        RealizationConfig k5(g, 5, gf.coordinate_order);
        rho(GenIndex{g->index("a1"), 0}, k5);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[64];
        std::snprintf(buf, sizeof buf, ", A2 K=5 in %.2f s", s);
        return Outcome{bad == 0 && checked > 0 && gf.entries.size() == 4,
                       std::to_string(gf.entries.size()) + " generators, " + std::to_string(checked) + " monomials, " +
                           std::to_string(bad) + " mismatches" + buf};
    });

    criterion(5, "homomorphism property (A1, A2; K=4, |n|<=2)", 600, [] {
        Outcome o{true, ""};
        for (const char* s : {"A1", "A2"}) {
            SuiteConfig c;
            c.series = s;
            c.cutoff = 4;
            c.range = 2;
            c.samples = 50;
            Outcome r = from_suite(suite_homomorphism(c));
            o.pass = o.pass && r.pass;
            o.detail += std::string(o.detail.empty() ? "" : "; ") + s + " " + r.detail;
        }
        return o;
    });

    criterion(6, "widening-gap certificates and the (a1,7) remainder", 0, [] {
        Outcome o{true, ""};
        for (const char* s : {"A1", "A2"}) {
            SuiteConfig c;
            c.series = s;
            Outcome r = from_suite(suite_widening_gap(c));
            o.pass = o.pass && r.pass;
            o.detail += std::string(o.detail.empty() ? "" : "; ") + s + " " + r.detail;
        }
        return o;
    });

    criterion(7, "three-sector cancellation of S-generator products", 10, [] {
        SuiteConfig c;
        c.range = 5;
        return from_suite(suite_lempi(c));
    });

    criterion(8, "zeroth products (A1, K=6, 50 pairs, residual 0)", 0, [] {
        SuiteConfig c;
        c.cutoff = 6;
        c.range = 2;
        c.samples = 50;
        return from_suite(suite_zeroth_lemma(c));
    });

    criterion(9, "first products regularize to zero (A1, |n|<=2, K>=8)", 0, [] {
        SuiteConfig c;
        c.cutoff = 8;
        c.range = 2;
        SuiteReport r = suite_theorem(c);
        Outcome o = from_suite(r);
        for (const auto& n : r.notes) o.detail += "; " + n;
        SuiteConfig a2;
        a2.series = "A2";
        a2.cutoff = 6;
        a2.range = 1;
        Outcome s = from_suite(suite_theorem(a2));
        o.detail += "; A2 N=1 stretch " + std::string(s.pass ? "pass " : "FAIL ") + s.detail;
        return o;
    });

    criterion(10, "scalar outputs stable under K -> K+2", 0, [] {
        Outcome o{true, ""};
        auto run = [&](const std::string& name, const std::function<SuiteReport(int)>& f, int K) {
            Outcome r = same_scalars(f(K), f(K + 2));
            o.pass = o.pass && r.pass;
            o.detail += std::string(o.detail.empty() ? "" : "; ") + name + " " + r.detail;
        };
        run("lempi", [](int K) {
            SuiteConfig c;
            c.range = 5;
            c.cutoff = K;
            return suite_lempi(c);
        }, 8);
        run("zeroth", [](int K) {
            SuiteConfig c;
            c.cutoff = K;
            c.range = 2;
            c.samples = 50;
            return suite_zeroth_lemma(c);
        }, 6);
        run("theorem", [](int K) {
            SuiteConfig c;
            c.cutoff = K;
            c.range = 2;
            return suite_theorem(c);
        }, 10);
        return o;
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
