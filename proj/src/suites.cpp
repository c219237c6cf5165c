#include "waki/suites.hpp"

#include "json.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace waki {

bool SuiteReport::pass() const { return failures() == 0; }

int SuiteReport::failures() const {
    int n = 0;
    for (const auto& c : cases) n += c.pass ? 0 : 1;
    return n;
}

std::string SuiteReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["config"] = {{"series", series}, {"cutoff", cutoff}, {"range", range}, {"seed", seed}};
    j["cases"] = nlohmann::json::array();
    for (const auto& c : cases) {
        nlohmann::json e = {{"inputs", c.inputs}, {"raw_scalar", c.raw_scalar}, {"regularized", c.regularized}, {"pass", c.pass}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        j["cases"].push_back(e);
    }
    j["notes"] = notes;
    j["pass"] = pass();
    return j.dump(2);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"homomorphism", "widening-gap", "vertex-lie-axioms", "lemma-prop1",
                                                   "lempi",        "theorem",      "reg-unit"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "homomorphism") return suite_homomorphism(cfg);
    if (name == "widening-gap") return suite_widening_gap(cfg);
    if (name == "vertex-lie-axioms") return suite_vertex_lie_axioms(cfg);
    if (name == "lemma-prop1") return suite_zeroth_lemma(cfg);
    if (name == "lempi") return suite_lempi(cfg);
    if (name == "theorem") return suite_theorem(cfg);
    if (name == "reg-unit") return suite_reg_unit(cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

RationalFunction sl2_example_scalar() {
    return RationalFunction::z_power(2, -14) +
           RationalFunction(Poly::monomial(-4, 8), Poly(std::vector<Rational>{1, 0, -1}));
}

namespace {

std::shared_ptr<const Algebra> algebra(const SuiteConfig& cfg) {
    return std::make_shared<const Algebra>(Algebra::build(cfg.series));
}

SuiteReport start(const std::string& name, const SuiteConfig& cfg, int K, int N) {
    SuiteReport r;
    r.suite = name;
    r.series = cfg.series;
    r.cutoff = K;
    r.range = N;
    r.seed = cfg.seed;
    return r;
}

std::vector<GenIndex> generators(const Algebra& g, int N) {
    std::vector<GenIndex> out;
    for (int n = -N; n <= N; ++n)
        for (int a = 0; a < g.dim(); ++a) out.push_back({a, n});
    return out;
}

std::string gname(const Algebra& g, const GenIndex& J) { return generator_name(g, J); }

std::string pair_name(const Algebra& g, const GenIndex& A, const GenIndex& B) {
    return gname(g, A) + " x " + gname(g, B);
}

AffineElement loop_bracket(const Algebra& g, const GenIndex& A, const GenIndex& B) {
    AffineElement r;
    for (const auto& [c, v] : g.f(A.a, B.a)) r.add({c, A.n + B.n}, v);
    return r;
}

PhiSolution obtain_phi(const SuiteConfig& cfg, int N, const RealizationConfig& rc) {
    if (cfg.phi_path) {
        std::ifstream in(*cfg.phi_path);
        if (!in) throw std::runtime_error("cannot read " + *cfg.phi_path);
        std::stringstream ss;
        ss << in.rdbuf();
        return phi_from_json(*rc.alg, ss.str());
    }
    return solve_phi(N, rc);
}

SuiteCase phi_case(const PhiSolution& phi, int N, const RealizationConfig& rc) {
    SuiteCase c;
    PhiResidual res = phi_residual(phi, N, rc);
    c.inputs = "phi residual, N=" + std::to_string(N) + ", K=" + std::to_string(rc.K);
    c.raw_scalar = res.max_abs.get_str();
    c.regularized = res.max_abs.get_str();
    c.pass = phi.consistent && res.failures == 0;
    std::ostringstream d;
    d << phi.unknowns << " unknowns, rank " << phi.rank << ", gauge " << phi.gauge << ", " << res.pairs << " pairs";
    if (!phi.consistent) d << ", inconsistent at " << phi.violated;
    if (res.failures) d << ", " << res.failures << " failing, first " << res.first_failure;
    c.detail = d.str();
    return c;
}

// Random finite depth-1 state with small support.
FockState random_state(const Algebra& g, std::mt19937& rng) {
    std::vector<Var> vars;
    for (int l = 0; l <= 2; ++l)
        for (int a = 0; a < g.dim(); ++a)
            if (in_plus(g, a, l)) vars.push_back(make_var(a, l));
    std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3), small(0, 2);
    auto poly = [&](int min_deg) {
        ZPoly p;
        int terms = 1 + small(rng);
        for (int t = 0; t < terms; ++t) {
            Monomial m;
            int deg = min_deg + small(rng);
            for (int i = 0; i < deg; ++i) m.push_back(vars[pick(rng)]);
            std::sort(m.begin(), m.end());
            int c = coeff(rng);
            p.add(m, RationalFunction(c == 0 ? 1 : c));
        }
        return p;
    };
    FockState s;
    int nb = 1 + small(rng) % 2;
    for (int i = 0; i < nb; ++i) s.add_beta(vars[pick(rng)], poly(0));
    if (small(rng) > 0) s.add_oneform(vars[pick(rng)], poly(0));
    if (small(rng) > 0) s.add_depth0(poly(1));
    return s;
}

SState random_s(const Algebra& g, std::mt19937& rng, bool allow_d) {
    std::uniform_int_distribution<int> idx(0, g.dim() - 1), loop(-3, 3), coeff(-2, 2), terms(1, 2), coin(0, 3);
    SState s;
    int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        int c = coeff(rng);
        s += SState::S(idx(rng), idx(rng), loop(rng), RationalFunction(c == 0 ? 1 : c));
    }
    if (allow_d && coin(rng) == 0) s += SState::D(RationalFunction(coeff(rng)));
    return s;
}

AffineElement random_affine(const Algebra& g, std::mt19937& rng) {
    std::uniform_int_distribution<int> idx(0, g.dim() - 1), loop(-3, 3), coeff(-2, 2), coin(0, 3);
    AffineElement x;
    for (int i = 0; i < 2; ++i) x.add({idx(rng), loop(rng)}, Rational(coeff(rng)));
    if (coin(rng) == 0) x.k = coeff(rng);
    if (coin(rng) == 0) x.d = coeff(rng);
    return x;
}

std::map<Var, ZPoly> exterior_derivative(const ZPoly& f) {
    std::map<Var, ZPoly> out;
    for (Var v : f.variables()) {
        ZPoly d = f.derivative(v);
        if (!d.is_zero()) out.emplace(v, d);
    }
    return out;
}

}  // namespace

// --------------------------------------------------------------- suites

SuiteReport suite_homomorphism(const SuiteConfig& cfg) {
    auto g = algebra(cfg);
    int K = cfg.cutoff.value_or(4), N = cfg.range.value_or(2);
    SuiteReport rep = start("homomorphism", cfg, K, N);
    // variables of rho(J_{a,n}) at target m reach loop m - n, so the inner cutoff is K + 2N
    RealizationConfig rc(g, K + 2 * N, cfg.order);
    rep.notes.push_back("computed at inner cutoff " + std::to_string(rc.K) + ", compared on targets below " +
                        std::to_string(K));
    std::vector<GenIndex> G = generators(*g, N);
    std::mt19937 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick(0, G.size() - 1);
    for (int s = 0; s < cfg.samples; ++s) {
        GenIndex A = G[pick(rng)], B = G[pick(rng)];
        Derivation lhs = derivation_commutator(rho(A, rc), rho(B, rc)).truncated(K);
        Derivation rhs = rho(loop_bracket(*g, A, B), rc).truncated(K);
        SuiteCase c;
        c.inputs = pair_name(*g, A, B);
        c.pass = lhs == rhs;
        if (!c.pass) c.detail = "difference: " + (lhs - rhs).str(*g);
        rep.cases.push_back(c);
    }
    return rep;
}

SuiteReport suite_widening_gap(const SuiteConfig& cfg) {
    auto g = algebra(cfg);
    int K = cfg.cutoff.value_or(g->rank() == 1 ? 8 : 6), N = cfg.range.value_or(2);
    SuiteReport rep = start("widening-gap", cfg, K, N);
    RealizationConfig rc(g, K, cfg.order);
    for (const GenIndex& J : generators(*g, N)) {
        Remainder r = widening_remainder(J, rc);
        SuiteCase c;
        c.inputs = gname(*g, J);
        c.pass = r.cert.widening;
        c.detail = r.cert.verdict() + ", offset " + std::to_string(r.cert.offset == INT_MIN ? 0 : r.cert.offset) +
                   ", window " + std::to_string(r.cert.window);
        rep.cases.push_back(c);
    }
    if (g->series() == "A2") {
        RealizationConfig r8(g, 8, cfg.order);
        int a1 = g->index("a1"), a2 = g->index("a2"), a12 = g->index("a1+a2");
        int ma1 = g->index("-a1"), ma2 = g->index("-a2"), h1 = g->index("1");
        Remainder r = widening_remainder({a1, 0}, r8);
        const RPoly& P = r.R.component(make_var(a1, 7));
        Monomial m1{make_var(ma2, 2), make_var(ma1, 2), make_var(a12, 3)};
        Monomial m2{make_var(h1, 3), make_var(h1, 2), make_var(h1, 2)};
        std::sort(m1.begin(), m1.end());
        std::sort(m2.begin(), m2.end());
        SuiteCase c;
        c.inputs = "J_{a1,0} remainder at target (a1,7), K=8";
        Rational c1 = P.coefficient(m1), c2 = P.coefficient(m2);
        c.pass = c1 == 1 && c2 == 4 && r.cert.widening;
        c.detail = "coefficients " + c1.get_str() + " and " + c2.get_str() + ", " + r.cert.verdict();
        rep.cases.push_back(c);
    }
    return rep;
}

SuiteReport suite_vertex_lie_axioms(const SuiteConfig& cfg) {
    auto g = algebra(cfg);
    SuiteReport rep = start("vertex-lie-axioms", cfg, 0, 0);
    std::mt19937 rng(cfg.seed);
    FockState vac = FockState::vacuum();

    int skew_bad = 0, sym_bad = 0, creation_bad = 0;
    for (int s = 0; s < cfg.samples; ++s) {
        FockState x = random_state(*g, rng), y = random_state(*g, rng);
        FockState sum = product0(x, y) + product0(y, x);
        FockState p1 = product1(x, y);
        bool skew = sum.beta.empty() && sum.quads.empty() && sum.scalar.is_zero() && sum.depth0.is_zero() &&
                    sum.oneform == exterior_derivative(p1.depth0);
        skew_bad += skew ? 0 : 1;
        FockState q1 = product1(y, x);
        sym_bad += (p1.scalar == q1.scalar && p1.depth0 == q1.depth0) ? 0 : 1;
        creation_bad += (product0(x, vac).is_zero() && product1(x, vac).is_zero()) ? 0 : 1;
    }
    rep.cases.push_back({"zeroth-product skew on random finite states", "", "", skew_bad == 0,
                         std::to_string(skew_bad) + " failures"});
    rep.cases.push_back({"first-product symmetry on random finite states", "", "", sym_bad == 0,
                         std::to_string(sym_bad) + " failures"});
    rep.cases.push_back({"vacuum products vanish", "", "", creation_bad == 0, std::to_string(creation_bad) + " failures"});

    int borch_bad = 0;
    std::uniform_int_distribution<int> idx(0, g->dim() - 1), loop(-2, 2), lo(0, 3);
    for (int s = 0; s < cfg.samples; ++s) {
        auto rq = [&]() {
            QuadSum q;
            q.a = idx(rng);
            q.b = idx(rng);
            q.n = loop(rng);
            q.range = KRange::positive(lo(rng));
            return FockState::quad_state(q);
        };
        FockState u = rq(), v = rq(), w = rq();
        bool ok = product1(u, product1(v, w)).is_zero() && product1(v, product1(u, w)).is_zero() &&
                  product1(product1(u, v), w).is_zero();
        borch_bad += ok ? 0 : 1;
    }
    rep.cases.push_back({"first-product Borcherds identity on quadratic sums", "", "", borch_bad == 0,
                         std::to_string(borch_bad) + " failures"});

    int dbl_bad = 0;
    for (int s = 0; s < cfg.samples; ++s) {
        SState a = random_s(*g, rng, true), b = random_s(*g, rng, true);
        auto lhs = quads_at_one(product0(p_embed(*g, a), p_embed(*g, b)));
        auto rhs = quads_at_one(p_embed(*g, s_bracket(a, b)));
        dbl_bad += lhs == rhs ? 0 : 1;
    }
    rep.cases.push_back({"doubled zeroth products match the S bracket at z=1", "", "", dbl_bad == 0,
                         std::to_string(dbl_bad) + " failures"});

    int lad_bad = 0;
    for (int s = 0; s < 2 * cfg.samples; ++s) {
        AffineElement x = random_affine(*g, rng), y = random_affine(*g, rng);
        lad_bad += s_bracket(lad_map(*g, x), lad_map(*g, y)) == lad_map(*g, affine_bracket(*g, x, y)) ? 0 : 1;
    }
    rep.cases.push_back({"adjoint map into S generators preserves brackets", "", "", lad_bad == 0,
                         std::to_string(lad_bad) + " failures"});
    return rep;
}

SuiteReport suite_zeroth_lemma(const SuiteConfig& cfg) {
    auto g = algebra(cfg);
    int K = cfg.cutoff.value_or(6), N = cfg.range.value_or(2);
    SuiteReport rep = start("lemma-prop1", cfg, K, N);
    // brackets of generators with |n| <= N reach loop -2N, so phi is solved over [-2N, 2N]
    RealizationConfig rc(g, K + 2 * N, cfg.order);
    PhiSolution phi = obtain_phi(cfg, 2 * N, rc);
    rep.cases.push_back(phi_case(phi, 2 * N, rc));
    rep.notes.push_back("computed at inner cutoff " + std::to_string(rc.K) + ", explicit parts compared below " +
                        std::to_string(K));
    std::vector<GenIndex> G = generators(*g, N);
    std::mt19937 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick(0, G.size() - 1);
    for (int s = 0; s < cfg.samples; ++s) {
        GenIndex A = G[pick(rng)], B = G[pick(rng)];
        ZerothReport z = zeroth_pair(A, B, phi, rc, K);
        rep.cases.push_back({pair_name(*g, A, B), "", "", z.pass, z.detail});
    }
    return rep;
}

SuiteReport suite_lempi(const SuiteConfig& cfg) {
    auto g = algebra(cfg);
    int N = cfg.range.value_or(5);
    SuiteReport rep = start("lempi", cfg, 0, N);
    int D = g->dim();
    for (int n = -N; n <= N; ++n)
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b)
                for (int c = 0; c < D; ++c)
                    for (int d = 0; d < D; ++d) {
                        FockState x = p_embed(*g, SState::S(a, b, n)), y = p_embed(*g, SState::S(c, d, -n));
                        LempiResult r = lempi_product(x, y);
                        // n != 0 splits at +-max(0,n) and carries the product's -delta prefactor;
                        // the n = 0 split (k > 0, k < 0, k = 0) reproduces the values with sign +delta
                        Rational delta = (a == d && b == c) ? (n == 0 ? 1 : -1) : 0;
                        int M = std::max(0, n);
                        Rational ep = delta * Rational(1 + n - 2 * M) / 2;
                        Rational en = delta * Rational(1 - n - 2 * M) / 2;
                        Rational em = delta * Rational(2 * M - 1);
                        SuiteCase sc;
                        sc.inputs = "S^{" + g->name(a) + "}_{" + g->name(b) + "," + std::to_string(n) + "} x S^{" +
                                    g->name(c) + "}_{" + g->name(d) + "," + std::to_string(-n) + "}";
                        sc.raw_scalar = r.positive.get_str() + " | " + r.negative.get_str() + " | " + r.middle.get_str();
                        sc.regularized = r.total().get_str();
                        sc.pass = r.exact && r.depth0.is_zero() && r.total() == 0 && r.positive == ep &&
                                  r.negative == en && r.middle == em;
                        Sectors s = split_sectors(x);
                        long count = 0;
                        for (const QuadSum& q : s.middle.quads) {
                            count += *q.range.hi - *q.range.lo + 1;
                        }
                        sc.detail = "middle terms " + std::to_string(count);
                        if (count != std::abs(2 * M - 1)) sc.pass = false;
                        rep.cases.push_back(sc);
                    }
    return rep;
}

SuiteReport suite_theorem(const SuiteConfig& cfg) {
    auto g = algebra(cfg);
    int K = cfg.cutoff.value_or(8), N = cfg.range.value_or(g->rank() == 1 ? 2 : 1);
    SuiteReport rep = start("theorem", cfg, K, N);
    RealizationConfig rc(g, K, cfg.order);
    PhiSolution phi = obtain_phi(cfg, N, rc);
    int Kc = theorem_cutoff(N, rc, phi);
    if (Kc != K) {
        rc = rc.with_cutoff(Kc);
        if (!cfg.phi_path) phi = solve_phi(N, rc);
        rep.notes.push_back("exactness window requires inner cutoff " + std::to_string(Kc));
    }
    rep.cases.push_back(phi_case(phi, N, rc));
    std::vector<GenIndex> G = generators(*g, N);
    for (const GenIndex& A : G)
        for (const GenIndex& B : G) {
            PairReport p = theorem_pair(A, B, phi, rc);
            SuiteCase c;
            c.inputs = pair_name(*g, A, B);
            c.raw_scalar = p.raw_scalar.str();
            c.regularized = p.regularized.get_str();
            c.pass = p.pass();
            if (!p.exact) c.detail = "exactness flag cleared; raise the cutoff";
            if (!p.remainder.is_zero()) c.detail += "non-scalar remainder " + poly_str(*g, p.remainder);
            rep.cases.push_back(c);
        }
    if (g->rank() == 1) {
        FockState p = product1(sl2_example_x(*g), sl2_example_y(*g));
        SuiteCase c;
        c.inputs = "closed-form states for J_{E,2} and J_{F,-2}";
        c.raw_scalar = p.scalar.str();
        c.regularized = reg(p.scalar).get_str();
        c.pass = p.scalar == sl2_example_scalar() && reg(p.scalar) == 0 && p.depth0.is_zero();
        rep.cases.push_back(c);
        int E = g->index("E"), F = g->index("F");
        if (N >= 2) {
            const OneForm& w = phi.at({F, -2});
            auto it = w.find(make_var(E, 2));
            Rational v = it == w.end() ? Rational(0) : it->second.constant_term();
            rep.cases.push_back({"phi(J_{F,-2}) coefficient of dX^{E,2}", v.get_str(), v.get_str(), v == -14, ""});
            PairReport pr = theorem_pair({E, 2}, {F, -2}, phi, rc);
            rep.cases.push_back({"computed J_{E,2} x J_{F,-2} scalar equals the closed form", pr.raw_scalar.str(),
                                 pr.regularized.get_str(), pr.raw_scalar == sl2_example_scalar(), ""});
        }
    }
    return rep;
}

SuiteReport suite_reg_unit(const SuiteConfig& cfg) {
    SuiteReport rep = start("reg-unit", cfg, 0, 0);
    Poly den(std::vector<Rational>{1, 0, -1});
    RationalFunction f2(Poly::monomial(1, 2), den), f3(Poly::monomial(1, 3), den);
    Rational r2 = reg(f2), r3 = reg(f3);
    rep.cases.push_back({"z^2/(1-z^2)", f2.str(), r2.get_str(), r2 == Rational(-1, 2), ""});
    rep.cases.push_back({"z^3/(1-z^2)", f3.str(), r3.get_str(), r3 == -1, ""});
    return rep;
}

}  // namespace waki
