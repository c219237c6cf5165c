#include "waki/realize.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace waki {

std::vector<GenIndex> RealizationConfig::coordinates() const {
    const Algebra& g = *alg;
    std::vector<std::string> classes;
    std::stringstream ss(order);
    for (std::string item; std::getline(ss, item, ',');) classes.push_back(item);
    std::vector<std::string> sorted_classes = classes;
    std::sort(sorted_classes.begin(), sorted_classes.end());
    if (sorted_classes != std::vector<std::string>{"cart", "neg", "pos"})
        throw std::invalid_argument("coordinate order must permute neg,cart,pos: " + order);

    auto members = [&](const std::string& cls) {
        std::vector<int> ids;
        for (int a = 0; a < g.dim(); ++a) {
            if (cls == "pos" && g.is_positive(a)) ids.push_back(a);
            if (cls == "neg" && g.is_negative(a)) ids.push_back(a);
            if (cls == "cart" && g.is_cartan(a)) ids.push_back(a);
        }
        std::stable_sort(ids.begin(), ids.end(),
                         [&](int x, int y) { return std::abs(g.height(x)) < std::abs(g.height(y)); });
        return ids;
    };

    std::vector<GenIndex> out;
    for (int a : members("pos")) out.push_back({a, 0});
    for (int n = 1; n < K; ++n)
        for (const auto& cls : classes)
            for (int a : members(cls)) out.push_back({a, n});
    return out;
}

namespace {

void add_to(PolyElement& el, Var key, const RPoly& p) {
    if (p.is_zero()) return;
    auto& slot = el[key];
    slot += p;
    if (slot.is_zero()) el.erase(key);
}

// [J, el] with heights >= K dropped; the central part is discarded.
PolyElement ad(const Algebra& g, const GenIndex& J, const PolyElement& el, int K) {
    PolyElement out;
    for (const auto& [key, p] : el) {
        int m = var_loop(key);
        if (J.n + m >= K) continue;
        for (const auto& [c, v] : g.f(J.a, var_index(key))) add_to(out, make_var(c, J.n + m), v * p);
    }
    return out;
}

// exp(sign * x * ad J) el
PolyElement ad_exp(const Algebra& g, const GenIndex& J, Var x, int sign, const PolyElement& el, int K) {
    PolyElement res = el;
    PolyElement term = el;
    for (int k = 1;; ++k) {
        PolyElement t = ad(g, J, term, K);
        if (t.empty()) break;
        Rational s(sign, k);
        term.clear();
        Monomial mx{x};
        for (const auto& [key, p] : t) {
            RPoly q;
            q.add_product(p, mx, s);
            term.emplace(key, q);
        }
        for (const auto& [key, p] : term) add_to(res, key, p);
    }
    return res;
}

void keep_n_plus(const Algebra& g, PolyElement& el, int K) {
    for (auto it = el.begin(); it != el.end();) {
        int a = var_index(it->first), n = var_loop(it->first);
        it = (in_plus(g, a, n) && n < K) ? std::next(it) : el.erase(it);
    }
}

using CacheKey = std::tuple<std::string, int, std::string, int, int>;
std::mutex cache_mu;
std::map<CacheKey, Derivation> cache;

Derivation compute_rho(const GenIndex& J, const RealizationConfig& cfg) {
    const Algebra& g = *cfg.alg;
    std::vector<GenIndex> coords = cfg.coordinates();
    PolyElement el;
    el.emplace(make_var(J), RPoly::constant(1));
    for (auto it = coords.rbegin(); it != coords.rend(); ++it) el = ad_exp(g, *it, make_var(*it), 1, el, cfg.K);
    keep_n_plus(g, el, cfg.K);

    Derivation d(cfg.K, J.n);
    for (const GenIndex& c : coords) {
        Var v = make_var(c);
        auto it = el.find(v);
        if (it != el.end()) {
            d.add(v, it->second);
            el.erase(it);
        }
        if (el.empty()) break;
        el = ad_exp(g, c, v, -1, el, cfg.K);
        keep_n_plus(g, el, cfg.K);
    }
    return d;
}

}  // namespace

PolyElement ad_u(const AffineElement& A, const RealizationConfig& cfg) {
    const Algebra& g = *cfg.alg;
    PolyElement el;
    for (const auto& [j, c] : A.loop)
        if (j.n < cfg.K) add_to(el, make_var(j), RPoly::constant(c));
    std::vector<GenIndex> coords = cfg.coordinates();
    for (auto it = coords.rbegin(); it != coords.rend(); ++it) el = ad_exp(g, *it, make_var(*it), 1, el, cfg.K);
    return el;
}

Derivation rho(const GenIndex& J, const RealizationConfig& cfg) {
    if (cfg.K < 1) throw std::invalid_argument("cutoff must be positive");
    CacheKey key{cfg.alg->series(), cfg.K, cfg.order, J.a, J.n};
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Derivation d = compute_rho(J, cfg);
    std::lock_guard<std::mutex> lock(cache_mu);
    cache.emplace(key, d);
    return d;
}

Derivation rho_d(const RealizationConfig& cfg) {
    Derivation d(cfg.K, 0);
    for (const GenIndex& c : cfg.coordinates())
        if (c.n != 0) d.add_term(make_var(c), Monomial{make_var(c)}, Rational(-c.n));
    return d;
}

Derivation rho(const AffineElement& A, const RealizationConfig& cfg) {
    Derivation d(cfg.K, 0);
    bool first = true;
    for (const auto& [j, c] : A.loop) {
        d += c * rho(j, cfg);
        if (first) d.set_degree(j.n);
        first = false;
    }
    if (A.d != 0) d += A.d * rho_d(cfg);
    return d;
}

Derivation rho(const GeneratorSpec& J, const RealizationConfig& cfg) {
    switch (J.kind) {
        case GeneratorSpec::Central:
            return Derivation(cfg.K, 0);
        case GeneratorSpec::Derivation:
            return rho_d(cfg);
        default:
            return rho(J.j, cfg);
    }
}

Derivation nu(const GenIndex& J, const RealizationConfig& cfg) {
    const Algebra& g = *cfg.alg;
    Derivation d(cfg.K, J.n);
    for (int b = 0; b < g.dim(); ++b)
        for (const auto& [c, v] : g.f(b, J.a))
            for (int k = std::max(g.eta(c), J.n + g.eta(b)); k < cfg.K; ++k) {
                if (k - J.n >= cfg.K) continue;
                d.add_term(make_var(c, k), Monomial{make_var(b, k - J.n)}, v);
            }
    return d;
}

Remainder widening_remainder(const GenIndex& J, const RealizationConfig& cfg) {
    Remainder r;
    r.R = rho(J, cfg) - nu(J, cfg);
    r.R.set_degree(J.n);
    r.cert = gap_profile(r.R, std::max(0, -J.n));
    return r;
}

namespace {

std::pair<Var, int> tau_var(const Algebra& g, Var v) {
    int a = var_index(v);
    return {make_var(g.mirror(a), -var_loop(v)), g.mirror_sign(a)};
}

}  // namespace

Derivation tau(const Algebra& g, const Derivation& d) {
    Derivation r(d.cutoff(), -d.degree());
    for (const auto& [t, p] : d.components()) {
        auto [nt, sign] = tau_var(g, t);
        RPoly q = p.substituted([&](Var v) { return tau_var(g, v); });
        r.add(nt, sign < 0 ? -q : q);
    }
    return r;
}

Derivation rho_doubled(const GenIndex& J, const RealizationConfig& cfg) {
    const Algebra& g = *cfg.alg;
    GenIndex s{g.mirror(J.a), -J.n};
    Derivation d = rho(J, cfg);
    d += Rational(g.mirror_sign(J.a)) * tau(g, rho(s, cfg));
    d.set_degree(J.n);
    return d;
}

Derivation full_quadratic_sum(const GenIndex& J, const RealizationConfig& cfg) {
    const Algebra& g = *cfg.alg;
    Derivation d(cfg.K, J.n);
    for (int b = 0; b < g.dim(); ++b)
        for (const auto& [c, v] : g.f(b, J.a))
            for (int k = -cfg.K + 1; k < cfg.K; ++k) {
                if (std::abs(k - J.n) >= cfg.K) continue;
                d.add_term(make_var(c, k), Monomial{make_var(b, k - J.n)}, v);
            }
    return d;
}

Derivation compensating_terms(const GenIndex& J, const RealizationConfig& cfg) {
    Derivation full = full_quadratic_sum(J, cfg);
    Derivation dbl = rho_doubled(J, cfg);
    Derivation r(cfg.K, J.n);
    for (const auto& [t, p] : full.components())
        for (const auto& [m, c] : p.terms()) r.add_term(t, m, c - dbl.component(t).coefficient(m));
    return r;
}

void clear_realization_cache() {
    std::lock_guard<std::mutex> lock(cache_mu);
    cache.clear();
}

}  // namespace waki
