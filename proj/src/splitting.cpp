#include "waki/splitting.hpp"

#include "json.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace waki {

namespace {

int worker_count(std::size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("WAKICTL_THREADS")) n = static_cast<unsigned>(std::max(1, std::atoi(env)));
    n = std::max(1u, n);
    return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    int workers = worker_count(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < jobs; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

std::vector<GenIndex> generators(const Algebra& g, int nmin, int nmax) {
    std::vector<GenIndex> out;
    for (int n = nmin; n <= nmax; ++n)
        for (int a = 0; a < g.dim(); ++a) out.push_back({a, n});
    return out;
}

AffineElement loop_bracket(const Algebra& g, const GenIndex& A, const GenIndex& B) {
    AffineElement r;
    for (const auto& [c, v] : g.f(A.a, B.a)) r.add({c, A.n + B.n}, v);
    return r;
}

std::string gen_str(const Algebra& g, const GenIndex& j) { return g.name(j.a) + "," + std::to_string(j.n); }

}  // namespace

// -------------------------------------------------------------- one-forms

void add_oneform(OneForm& w, Var k, const RPoly& p) {
    if (p.is_zero()) return;
    auto& slot = w[k];
    slot += p;
    if (slot.is_zero()) w.erase(k);
}

OneForm scaled(const OneForm& w, const Rational& s) {
    OneForm r;
    if (s == 0) return r;
    for (const auto& [k, p] : w) r.emplace(k, s * p);
    return r;
}

OneForm anomaly(const Derivation& PA, const Derivation& PB) {
    OneForm out;
    for (const auto& [i, Pi] : PA.components())
        for (Var j : Pi.variables()) {
            const RPoly& Qj = PB.component(j);
            if (Qj.is_zero()) continue;
            RPoly dQ = Qj.derivative(i);
            if (dQ.is_zero()) continue;
            RPoly dP = Pi.derivative(j);
            for (Var k : dP.variables()) add_oneform(out, k, -(dQ * dP.derivative(k)));
        }
    return out;
}

OneForm anomaly(const GenIndex& A, const GenIndex& B, const RealizationConfig& cfg) {
    return anomaly(rho(A, cfg), rho(B, cfg));
}

OneForm lie_derivative(const Derivation& xi, const OneForm& w) {
    OneForm out;
    for (const auto& [k, wk] : w)
        for (Var i : wk.variables()) {
            const RPoly& Pi = xi.component(i);
            if (!Pi.is_zero()) add_oneform(out, k, Pi * wk.derivative(i));
        }
    for (const auto& [i, wi] : w) {
        const RPoly& Pi = xi.component(i);
        for (Var k : Pi.variables()) add_oneform(out, k, wi * Pi.derivative(k));
    }
    return out;
}

OneForm iota_d(const Derivation& xi, const OneForm& w) {
    OneForm out;
    for (const auto& [k, wk] : w)
        for (Var i : wk.variables()) {
            const RPoly& Pi = xi.component(i);
            if (!Pi.is_zero()) add_oneform(out, k, Pi * wk.derivative(i));
        }
    for (const auto& [i, wi] : w) {
        const RPoly& Pi = xi.component(i);
        if (Pi.is_zero()) continue;
        for (Var k : wi.variables()) add_oneform(out, k, -(Pi * wi.derivative(k)));
    }
    return out;
}

// ------------------------------------------------------------- PhiSolution

const OneForm& PhiSolution::at(const GenIndex& J) const {
    static const OneForm empty;
    auto it = phi.find(J);
    return it == phi.end() ? empty : it->second;
}

std::string PhiSolution::to_json(const Algebra& g) const {
    nlohmann::json j;
    j["series"] = series;
    j["N"] = N;
    j["K"] = K;
    j["gauge"] = gauge;
    j["unknowns"] = unknowns;
    j["equations"] = equations;
    j["rank"] = rank;
    j["consistent"] = consistent;
    j["residual_max"] = residual_max.get_str();
    j["phi"] = nlohmann::json::array();
    for (const auto& [J, w] : phi) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [k, p] : w)
            for (const auto& [m, c] : p.terms()) {
                nlohmann::json mono = nlohmann::json::array();
                for (Var v : m) mono.push_back({g.name(var_index(v)), var_loop(v)});
                terms.push_back({{"index", {g.name(var_index(k)), var_loop(k)}}, {"coeff", c.get_str()}, {"monomial", mono}});
            }
        j["phi"].push_back({{"J", {g.name(J.a), J.n}}, {"terms", terms}});
    }
    return j.dump(2);
}

PhiSolution phi_from_json(const Algebra& g, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PhiSolution s;
    s.series = j.value("series", g.series());
    s.N = j.value("N", 0);
    s.K = j.value("K", 0);
    s.gauge = j.value("gauge", std::string("pinned"));
    s.unknowns = j.value("unknowns", 0);
    s.equations = j.value("equations", 0);
    s.rank = j.value("rank", 0);
    s.consistent = j.value("consistent", true);
    s.residual_max = parse_rational(j.value("residual_max", std::string("0")));
    for (const auto& e : j.at("phi")) {
        GenIndex J{g.index(e["J"][0].get<std::string>()), e["J"][1].get<int>()};
        OneForm& w = s.phi[J];
        for (const auto& t : e["terms"]) {
            Monomial m;
            for (const auto& v : t["monomial"]) m.push_back(make_var(g.index(v[0].get<std::string>()), v[1].get<int>()));
            std::sort(m.begin(), m.end());
            Var k = make_var(g.index(t["index"][0].get<std::string>()), t["index"][1].get<int>());
            add_oneform(w, k, RPoly::monomial(m, parse_rational(t["coeff"].get<std::string>())));
        }
    }
    return s;
}

// ----------------------------------------------------------------- basis

std::vector<Monomial> weight_monomials(const Algebra& g, int loop, const std::vector<int>& root) {
    std::vector<Monomial> out;
    if (loop < 0) return out;
    std::vector<Var> vars;
    int hmax = 1;
    for (int l = 0; l <= loop; ++l)
        for (int a = 0; a < g.dim(); ++a)
            if (in_plus(g, a, l)) {
                vars.push_back(make_var(a, l));
                hmax = std::max(hmax, std::abs(g.height(a)));
            }
    int target_height = 0;
    for (int x : root) target_height += x;
    // loop-0 factors are positive roots; their number is bounded by the height balance
    int max_deg = loop + std::max(0, target_height + loop * hmax);

    std::vector<Var> cur;
    std::vector<int> rt(root.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int lp) {
        if (lp == loop && rt == root) out.push_back(cur);
        if (static_cast<int>(cur.size()) >= max_deg) return;
        for (std::size_t t = start; t < vars.size(); ++t) {
            int l = var_loop(vars[t]);
            if (lp + l > loop) continue;
            const auto& rv = g.root_vector(var_index(vars[t]));
            for (std::size_t r = 0; r < rt.size(); ++r) rt[r] += rv[r];
            cur.push_back(vars[t]);
            rec(t, lp + l);
            cur.pop_back();
            for (std::size_t r = 0; r < rt.size(); ++r) rt[r] -= rv[r];
        }
    };
    rec(0, 0);
    for (auto& m : out) std::sort(m.begin(), m.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<Var, Monomial>> phi_basis(const Algebra& g, const GenIndex& J) {
    std::vector<std::pair<Var, Monomial>> out;
    if (J.n > 0) return out;
    const auto& ra = g.root_vector(J.a);
    for (int c = 0; c < g.dim(); ++c)
        for (int m = 0; m <= -J.n; ++m) {
            if (!in_plus(g, c, m)) continue;
            const auto& rc = g.root_vector(c);
            std::vector<int> tgt(ra.size());
            for (std::size_t r = 0; r < ra.size(); ++r) tgt[r] = -ra[r] - rc[r];
            for (auto& mono : weight_monomials(g, -J.n - m, tgt)) out.emplace_back(make_var(c, m), mono);
        }
    return out;
}

// ------------------------------------------------------------------ solver

namespace {

using SparseRow = std::map<int, Rational>;

struct Equation {
    SparseRow row;
    Rational rhs;
    std::string tag;
};

void row_axpy(SparseRow& row, const SparseRow& other, const Rational& s) {
    for (const auto& [c, v] : other) {
        auto it = row.find(c);
        if (it == row.end()) {
            row.emplace(c, -s * v);
        } else {
            it->second -= s * v;
            if (it->second == 0) row.erase(it);
        }
    }
}

struct EquationKey {
    Var k;
    Monomial m;
    friend bool operator<(const EquationKey& x, const EquationKey& y) { return std::tie(x.k, x.m) < std::tie(y.k, y.m); }
};

OneForm unit_form(Var k, const Monomial& m) {
    OneForm w;
    w.emplace(k, RPoly::monomial(m, Rational(1)));
    return w;
}

}  // namespace

PhiSolution solve_phi(int N, const RealizationConfig& cfg) {
    const Algebra& g = *cfg.alg;
    PhiSolution sol;
    sol.N = N;
    sol.K = cfg.K;
    sol.series = g.series();

    std::map<std::tuple<GenIndex, Var, Monomial>, int> unk;
    std::vector<std::tuple<GenIndex, Var, Monomial>> cols;
    std::map<GenIndex, std::vector<std::pair<Var, Monomial>>> bases;
    for (const GenIndex& J : generators(g, -N, 0)) {
        bases[J] = phi_basis(g, J);
        for (const auto& [k, m] : bases[J]) {
            unk.emplace(std::make_tuple(J, k, m), static_cast<int>(cols.size()));
            cols.emplace_back(J, k, m);
        }
    }
    sol.unknowns = static_cast<int>(cols.size());

    std::vector<GenIndex> G = generators(g, -N, N);
    std::vector<std::pair<GenIndex, GenIndex>> pairs;
    for (const GenIndex& A : G)
        for (const GenIndex& B : G) {
            int s = A.n + B.n;
            if (s > 0 || s < -N) continue;
            if (B < A) continue;
            pairs.emplace_back(A, B);
        }
    for (const GenIndex& J : G) rho(J, cfg);

    std::vector<std::vector<Equation>> per_pair(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t idx) {
        const auto& [A, B] = pairs[idx];
        Derivation PA = rho(A, cfg), PB = rho(B, cfg);
        std::map<EquationKey, SparseRow> eq;
        auto addf = [&](const OneForm& form, int col, const Rational& s) {
            for (const auto& [k, p] : form)
                for (const auto& [m, c] : p.terms()) {
                    SparseRow& r = eq[{k, m}];
                    Rational& slot = r[col];
                    slot += s * c;
                    if (slot == 0) r.erase(col);
                }
        };
        AffineElement br = loop_bracket(g, A, B);
        for (const auto& [C, v] : br.loop) {
            auto bt = bases.find(C);
            if (bt == bases.end()) continue;
            for (const auto& [k, m] : bt->second) addf(unit_form(k, m), unk.at({C, k, m}), v);
        }
        if (B.n <= 0)
            for (const auto& [k, m] : bases.at(B)) addf(lie_derivative(PA, unit_form(k, m)), unk.at({B, k, m}), -1);
        if (A.n <= 0)
            for (const auto& [k, m] : bases.at(A)) addf(iota_d(PB, unit_form(k, m)), unk.at({A, k, m}), 1);
        OneForm an = anomaly(PA, PB);
        std::set<EquationKey> keys;
        for (const auto& [key, r] : eq) keys.insert(key);
        for (const auto& [k, p] : an)
            for (const auto& [m, c] : p.terms()) keys.insert({k, m});
        for (const EquationKey& key : keys) {
            Equation e;
            auto it = eq.find(key);
            if (it != eq.end()) e.row = it->second;
            e.rhs = an.count(key.k) ? an.at(key.k).coefficient(key.m) : Rational(0);
            std::ostringstream tag;
            tag << "(" << gen_str(g, A) << ") x (" << gen_str(g, B) << ") at dX^{" << g.name(var_index(key.k)) << ","
                << var_loop(key.k) << "} " << monomial_str(g, key.m);
            e.tag = tag.str();
            per_pair[idx].push_back(std::move(e));
        }
    });

    // exact elimination; pivots on the largest column, free unknowns are zero
    std::map<int, std::pair<SparseRow, Rational>> piv;
    for (auto& eqs : per_pair)
        for (Equation& e : eqs) {
            ++sol.equations;
            SparseRow row = std::move(e.row);
            Rational rhs = e.rhs;
            for (;;) {
                auto hit = std::find_if(row.begin(), row.end(), [&](const auto& kv) { return piv.count(kv.first) > 0; });
                if (hit == row.end()) break;
                int c = hit->first;
                Rational v = hit->second;
                const auto& [pr, prhs] = piv.at(c);
                row_axpy(row, pr, v);
                rhs -= v * prhs;
            }
            if (row.empty()) {
                if (rhs != 0 && sol.consistent) {
                    sol.consistent = false;
                    sol.violated = e.tag;
                }
                continue;
            }
            int c = row.rbegin()->first;
            Rational v = row.rbegin()->second;
            for (auto& [cc, vv] : row) vv /= v;
            rhs /= v;
            for (auto& [c2, pr] : piv) {
                auto it = pr.first.find(c);
                if (it == pr.first.end()) continue;
                Rational wv = it->second;
                row_axpy(pr.first, row, wv);
                pr.second -= wv * rhs;
            }
            piv.emplace(c, std::make_pair(std::move(row), rhs));
        }
    sol.rank = static_cast<int>(piv.size());
    sol.gauge = sol.rank == sol.unknowns ? "unique" : "free-unknowns-zero";

    for (const auto& [J, b] : bases) sol.phi[J];
    for (const auto& [c, pr] : piv) {
        if (pr.second == 0) continue;
        const auto& [J, k, m] = cols[c];
        add_oneform(sol.phi[J], k, RPoly::monomial(m, pr.second));
    }
    PhiResidual res = phi_residual(sol, N, cfg);
    sol.residual_max = res.max_abs;
    return sol;
}

PhiResidual phi_residual(const PhiSolution& phi, int N, const RealizationConfig& cfg) {
    const Algebra& g = *cfg.alg;
    PhiResidual out;
    std::vector<GenIndex> G = generators(g, -N, N);
    for (const GenIndex& A : G)
        for (const GenIndex& B : G) {
            int s = A.n + B.n;
            if (s > 0 || s < -N) continue;
            ++out.pairs;
            Derivation PA = rho(A, cfg), PB = rho(B, cfg);
            OneForm r;
            for (const auto& [C, v] : loop_bracket(g, A, B).loop)
                for (const auto& [k, p] : phi.at(C)) add_oneform(r, k, v * p);
            for (const auto& [k, p] : lie_derivative(PA, phi.at(B))) add_oneform(r, k, -p);
            for (const auto& [k, p] : iota_d(PB, phi.at(A))) add_oneform(r, k, p);
            for (const auto& [k, p] : anomaly(PA, PB)) add_oneform(r, k, -p);
            for (const auto& [k, p] : r)
                for (const auto& [m, c] : p.terms()) out.max_abs = std::max(out.max_abs, Rational(abs(c)));
            if (!r.empty()) {
                if (out.failures == 0) out.first_failure = "(" + gen_str(g, A) + ") x (" + gen_str(g, B) + ")";
                ++out.failures;
            }
        }
    return out;
}

// ------------------------------------------------------------------ theta

FockState embed_theta(const GenIndex& J, const PhiSolution& phi, const RealizationConfig& cfg) {
    const Algebra& g = *cfg.alg;
    if (phi.K != 0 && !phi.phi.empty() && J.n < 0 && J.n < -phi.N)
        throw std::invalid_argument("phi was not solved for " + generator_name(g, J));
    FockState s;
    s.K = cfg.K;
    for (int b = 0; b < g.dim(); ++b)
        for (const auto& [c, v] : g.f(b, J.a)) s.add_quad(QuadSum::standard(g, b, c, J.n, v));
    Remainder r = widening_remainder(J, cfg);
    for (const auto& [t, p] : r.R.components()) s.add_beta(t, lift(p));
    int offset = r.cert.offset == INT_MIN ? 0 : r.cert.offset;
    s.gap_offset = offset;
    // remainder components below the cutoff are complete only if their variables stay inside it
    s.exact = r.cert.widening && ceil_half(cfg.K - 1) + offset + std::max(0, -J.n) < cfg.K;
    for (const auto& [k, p] : phi.at(J)) s.add_oneform(k, lift(p));
    return s;
}

FockState embed_theta(const AffineElement& x, const PhiSolution& phi, const RealizationConfig& cfg) {
    FockState s;
    s.K = cfg.K;
    for (const auto& [J, c] : x.loop) s += embed_theta(J, phi, cfg).scaled(RationalFunction(c));
    return s;
}

PairReport theorem_pair(const GenIndex& A, const GenIndex& B, const PhiSolution& phi, const RealizationConfig& cfg) {
    PairReport rep;
    rep.A = A;
    rep.B = B;
    FockState x = embed_theta(A, phi, cfg), y = embed_theta(B, phi, cfg);
    FockState p = product1(x, y);
    rep.raw_scalar = p.scalar;
    rep.regularized = reg(p.scalar);
    for (const auto& [m, c] : p.depth0.terms()) rep.remainder.add(m, reg(c));
    rep.exact = p.exact;
    return rep;
}

int theorem_cutoff(int N, const RealizationConfig& cfg, const PhiSolution& phi) {
    const Algebra& g = *cfg.alg;
    std::vector<GenIndex> G = generators(g, -N, N);
    for (int K = cfg.K;; ++K) {
        RealizationConfig c = cfg.with_cutoff(K);
        std::vector<FockState> th;
        bool ok = true;
        for (const GenIndex& J : G) {
            th.push_back(embed_theta(J, phi, c));
            ok = ok && th.back().exact;
        }
        for (std::size_t i = 0; ok && i < th.size(); ++i)
            for (std::size_t j = 0; ok && j < th.size(); ++j) ok = product1_certified(th[i], th[j]);
        if (ok) return K;
        if (K > cfg.K + 8 * (N + 2)) throw std::runtime_error("no certified cutoff found");
    }
}

FockState sl2_example_x(const Algebra& g) {
    if (g.rank() != 1) throw std::invalid_argument("the sl2 example needs series A1");
    int E = g.index("E"), F = g.index("F"), H = g.index("H");
    FockState s = FockState::beta_state(make_var(E, 2));
    QuadSum q1;
    q1.coeff = -1;
    q1.a = F;
    q1.b = H;
    q1.n = 2;
    q1.range = KRange::positive(5);
    QuadSum q2 = q1;
    q2.coeff = 2;
    q2.a = H;
    q2.b = E;
    s.add_quad(q1);
    s.add_quad(q2);
    return s;
}

FockState sl2_example_y(const Algebra& g) {
    if (g.rank() != 1) throw std::invalid_argument("the sl2 example needs series A1");
    int E = g.index("E"), F = g.index("F"), H = g.index("H");
    FockState s = FockState::oneform_state(make_var(E, 2), ZPoly::constant(-14));
    QuadSum q1;
    q1.coeff = 1;
    q1.a = E;
    q1.b = H;
    q1.n = -2;
    q1.range = KRange::positive(1);
    QuadSum q2 = q1;
    q2.coeff = -2;
    q2.a = H;
    q2.b = F;
    s.add_quad(q1);
    s.add_quad(q2);
    return s;
}

// --------------------------------------------------------- zeroth products

namespace {

// (a, b, n) -> sum of coefficient * weight at z = 1 over sums unbounded above
std::map<std::tuple<int, int, int>, Poly> quad_tails(const FockState& x) {
    std::map<std::tuple<int, int, int>, Poly> out;
    for (const QuadSum& q : x.quads) {
        if (q.range.hi) continue;
        Poly& slot = out[{q.a, q.b, q.n}];
        slot = slot + q.coeff.eval(1) * q.weight;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

std::map<Var, RPoly> oneform_at_one(const FockState& x, int below) {
    std::map<Var, RPoly> out;
    for (const auto& [k, p] : x.oneform) {
        if (var_loop(k) >= below) continue;
        RPoly q = p.mapped<Rational>([](const RationalFunction& c) { return c.eval(1); });
        if (!q.is_zero()) out.emplace(k, q);
    }
    return out;
}

}  // namespace

ZerothReport zeroth_pair(const GenIndex& A, const GenIndex& B, const PhiSolution& phi, const RealizationConfig& cfg,
                         int compare_below) {
    const Algebra& g = *cfg.alg;
    ZerothReport rep;
    rep.A = A;
    rep.B = B;
    FockState lhs = product0(embed_theta(A, phi, cfg), embed_theta(B, phi, cfg));
    FockState rhs = embed_theta(loop_bracket(g, A, B), phi, cfg);
    std::ostringstream why;
    if (!lhs.scalar.is_zero() || !lhs.depth0.is_zero()) why << "depth-0 output; ";
    if (vector_part_at_one(lhs, 0, compare_below - 1) != vector_part_at_one(rhs, 0, compare_below - 1))
        why << "vector part differs; ";
    if (oneform_at_one(lhs, compare_below) != oneform_at_one(rhs, compare_below)) why << "one-form part differs; ";
    if (quad_tails(lhs) != quad_tails(rhs)) why << "quadratic tails differ; ";
    rep.detail = why.str();
    rep.pass = rep.detail.empty();
    return rep;
}

}  // namespace waki
