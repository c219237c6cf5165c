#include "waki/fockreg.hpp"

#include "json.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace waki {

// ---------------------------------------------------------------- ranges

KRange KRange::intersect(const KRange& o) const {
    KRange r;
    if (lo && o.lo)
        r.lo = std::max(*lo, *o.lo);
    else
        r.lo = lo ? lo : o.lo;
    if (hi && o.hi)
        r.hi = std::min(*hi, *o.hi);
    else
        r.hi = hi ? hi : o.hi;
    return r;
}

KRange KRange::shifted(long s) const {
    KRange r = *this;
    if (r.lo) *r.lo += s;
    if (r.hi) *r.hi += s;
    return r;
}

std::string KRange::str() const {
    if (lo && hi) return *lo == *hi ? "k=" + std::to_string(*lo) : std::to_string(*lo) + "<=k<=" + std::to_string(*hi);
    if (lo) return "k>=" + std::to_string(*lo);
    if (hi) return "k<=" + std::to_string(*hi);
    return "k in Z";
}

namespace {

RationalFunction w(Var v) { return RationalFunction::z_power(var_loop(v)); }

// p(k + s)
Poly shift_arg(const Poly& p, long s) {
    Poly lin(std::vector<Rational>{Rational(s), Rational(1)});
    Poly r;
    for (int i = p.degree(); i >= 0; --i) r = r * lin + Poly::constant(p.coeff(i));
    return r;
}

// sum_{k in r} wt(k) z^{step k + shift}
RationalFunction range_sum(const KRange& r, const Poly& wt, int step, long shift) {
    RationalFunction s;
    if (r.empty()) return s;
    for (int p = 0; p <= wt.degree(); ++p) {
        const Rational& c = wt.coeff(p);
        if (c == 0) continue;
        RationalFunction t;
        if (r.bounded())
            t = finite_power_sum(*r.lo, *r.hi, step, shift, p);
        else if (r.lo)
            t = power_geometric(*r.lo, step, shift, p);
        else if (r.hi)
            t = power_geometric_below(*r.hi, step, shift, p);
        else
            throw std::domain_error("first product over a full-Z range; split the sectors first");
        s += RationalFunction(c) * t;
    }
    return s;
}

void add_poly(std::map<Var, ZPoly>& m, Var t, const ZPoly& p) {
    if (p.is_zero()) return;
    auto& slot = m[t];
    slot += p;
    if (slot.is_zero()) m.erase(t);
}

RPoly eval_one(const ZPoly& p) {
    return p.mapped<Rational>([](const RationalFunction& c) { return c.eval(1); });
}

std::set<long> index_loops(const FockState& x) {
    std::set<long> L;
    auto vars = [&](const ZPoly& p) {
        for (Var v : p.variables()) L.insert(var_loop(v));
    };
    vars(x.depth0);
    for (const auto& [t, p] : x.beta) {
        L.insert(var_loop(t));
        vars(p);
    }
    for (const auto& [t, p] : x.oneform) {
        L.insert(var_loop(t));
        vars(p);
    }
    return L;
}

bool has_finite(const FockState& x) { return !x.depth0.is_zero() || !x.beta.empty() || !x.oneform.empty(); }

FockState finite_part(const FockState& x) {
    FockState r;
    r.scalar = x.scalar;
    r.depth0 = x.depth0;
    r.beta = x.beta;
    r.oneform = x.oneform;
    r.K = x.K;
    r.exact = x.exact;
    r.gap_offset = x.gap_offset;
    return r;
}

// Quad terms of q whose index k is in ks.
void materialize_quad(const QuadSum& q, const std::set<long>& ks, std::map<Var, ZPoly>& beta) {
    for (long k : ks) {
        if (!q.range.contains(k)) continue;
        RationalFunction c = q.term_coeff(k);
        if (c.is_zero()) continue;
        add_poly(beta, make_var(q.b, static_cast<int>(k)),
                 ZPoly::variable(make_var(q.a, static_cast<int>(k - q.n)), c));
    }
}

std::set<long> relevant_ks(const QuadSum& q, const std::set<long>& L) {
    std::set<long> ks;
    for (long l : L) {
        ks.insert(l);
        ks.insert(l + q.n);
    }
    return ks;
}

// Zeroth product of finite parts.
void finite_product0(const FockState& x, const FockState& y, FockState& out) {
    // vector part: [w_i P^i d_i Q^j - w_i Q^i d_i P^j] beta_j
    for (const auto& [j, Q] : y.beta)
        for (Var i : Q.variables()) {
            auto it = x.beta.find(i);
            if (it != x.beta.end()) out.add_beta(j, w(i) * (it->second * Q.derivative(i)));
        }
    for (const auto& [j, P] : x.beta)
        for (Var i : P.variables()) {
            auto it = y.beta.find(i);
            if (it != y.beta.end()) out.add_beta(j, -(w(i) * (it->second * P.derivative(i))));
        }
    // double contraction: -w_i w_j d_i Q^j d_j d_k P^i gamma^k[-1]
    for (const auto& [i, P] : x.beta)
        for (Var j : P.variables()) {
            auto it = y.beta.find(j);
            if (it == y.beta.end()) continue;
            ZPoly dQ = it->second.derivative(i);
            if (dQ.is_zero()) continue;
            ZPoly dP = P.derivative(j);
            RationalFunction ww = -(w(i) * w(j));
            for (Var k : dP.variables()) out.add_oneform(k, ww * (dQ * dP.derivative(k)));
        }
    // xi_(0) omega = w_i P^i d_i Q_k gamma^k + w_i Q_i d_l P^i gamma^l
    for (const auto& [k, Qk] : y.oneform)
        for (Var i : Qk.variables()) {
            auto it = x.beta.find(i);
            if (it != x.beta.end()) out.add_oneform(k, w(i) * (it->second * Qk.derivative(i)));
        }
    for (const auto& [i, Qi] : y.oneform) {
        auto it = x.beta.find(i);
        if (it == x.beta.end()) continue;
        for (Var l : it->second.variables()) out.add_oneform(l, w(i) * (Qi * it->second.derivative(l)));
    }
    // omega_(0) xi = w_k P^k d_l Q_k gamma^l - w_l P^l d_l Q_k gamma^k
    for (const auto& [k, Qk] : x.oneform) {
        auto it = y.beta.find(k);
        if (it != y.beta.end())
            for (Var l : Qk.variables()) out.add_oneform(l, w(k) * (it->second * Qk.derivative(l)));
        for (Var l : Qk.variables()) {
            auto jt = y.beta.find(l);
            if (jt != y.beta.end()) out.add_oneform(k, -(w(l) * (jt->second * Qk.derivative(l))));
        }
    }
    // depth 0: f_(0) P beta_j = -w_j d_j f P^j ; P beta_j _(0) f = w_j P^j d_j f
    for (Var j : x.depth0.variables()) {
        auto it = y.beta.find(j);
        if (it != y.beta.end()) out.add_depth0(-(w(j) * (x.depth0.derivative(j) * it->second)));
    }
    for (Var j : y.depth0.variables()) {
        auto it = x.beta.find(j);
        if (it != x.beta.end()) out.add_depth0(w(j) * (it->second * y.depth0.derivative(j)));
    }
}

// First product of finite parts (depth-0 output).
void finite_product1(const FockState& x, const FockState& y, FockState& out) {
    for (const auto& [i, P] : x.beta)
        for (Var j : P.variables()) {
            auto it = y.beta.find(j);
            if (it == y.beta.end()) continue;
            ZPoly dQ = it->second.derivative(i);
            if (dQ.is_zero()) continue;
            out.add_depth0(-(w(i) * w(j)) * (P.derivative(j) * dQ));
        }
    for (const auto& [i, Q] : y.oneform) {
        auto it = x.beta.find(i);
        if (it != x.beta.end()) out.add_depth0(w(i) * (it->second * Q));
    }
    for (const auto& [i, Q] : x.oneform) {
        auto it = y.beta.find(i);
        if (it != y.beta.end()) out.add_depth0(w(i) * (it->second * Q));
    }
}

void quad_product0(const QuadSum& x, const QuadSum& y, FockState& out) {
    // x = p sum_{k in I} gamma^{a,k-n} beta_{b,k}, y = q sum_{l in J} gamma^{c,l-m} beta_{d,l}
    if (x.b == y.a) {
        QuadSum r;
        r.a = x.a;
        r.b = y.b;
        r.n = x.n + y.n;
        r.alpha = x.alpha + y.alpha + 1;
        r.coeff = x.coeff * y.coeff * RationalFunction::z_power(-(x.alpha + 1) * y.n);
        r.range = y.range.intersect(x.range.shifted(y.n));
        r.weight = shift_arg(x.weight, -y.n) * y.weight;
        out.add_quad(r);
    }
    if (x.a == y.b) {
        QuadSum r;
        r.a = y.a;
        r.b = x.b;
        r.n = x.n + y.n;
        r.alpha = x.alpha + y.alpha + 1;
        r.coeff = -(x.coeff * y.coeff * RationalFunction::z_power(-(y.alpha + 1) * x.n));
        r.range = x.range.intersect(y.range.shifted(x.n));
        r.weight = x.weight * shift_arg(y.weight, -x.n);
        out.add_quad(r);
    }
}

RationalFunction quad_product1(const QuadSum& x, const QuadSum& y) {
    if (x.a != y.b || x.b != y.a || x.n + y.n != 0) return RationalFunction();
    KRange r = x.range.intersect(y.range.shifted(x.n));
    Poly wt = x.weight * shift_arg(y.weight, -x.n);
    RationalFunction s = range_sum(r, wt, x.alpha + y.alpha + 2, -static_cast<long>(y.alpha + 1) * x.n);
    return -(x.coeff * y.coeff * s);
}

// max k with k <= ceil((k - n)/2) + c
int self_bound(int n, int c) {
    int hi = 4 * (std::abs(n) + std::abs(c)) + 16;
    for (int k = hi; k >= -hi; --k)
        if (k <= ceil_half(k - n) + c) return k;
    return -hi;
}

// max target loops (m_i, m_j) with var j in P^i and var i in Q^j
std::pair<int, int> mutual_bound(int cx, int cy) {
    int hi = 4 * (std::abs(cx) + std::abs(cy)) + 16;
    for (int mi = hi; mi >= 0; --mi)
        if (mi <= ceil_half(ceil_half(mi) + cx) + cy) return {mi, ceil_half(mi) + cx};
    return {-1, -1};
}

int max_index_loop(const FockState& x) {
    std::set<long> L = index_loops(x);
    return L.empty() ? INT_MIN : static_cast<int>(*L.rbegin());
}

int max_oneform_loop(const FockState& x) {
    int m = INT_MIN;
    for (const auto& [t, p] : x.oneform) m = std::max(m, var_loop(t));
    return m;
}

bool window_exact(const FockState& x, const FockState& y) {
    if (x.truncated()) {
        for (const QuadSum& q : y.quads)
            if (self_bound(q.n, *x.gap_offset) - q.n >= x.K) return false;
        if (max_oneform_loop(y) >= x.K) return false;
        if (!y.truncated() && max_index_loop(y) >= x.K) return false;
    }
    if (y.truncated()) {
        for (const QuadSum& q : x.quads)
            if (self_bound(q.n, *y.gap_offset) - q.n >= y.K) return false;
        if (max_oneform_loop(x) >= y.K) return false;
        if (!x.truncated() && max_index_loop(x) >= y.K) return false;
    }
    if (x.truncated() && y.truncated() && !x.beta.empty() && !y.beta.empty()) {
        auto [mi, mj] = mutual_bound(*x.gap_offset, *y.gap_offset);
        if (mi >= x.K || mj >= y.K) return false;
        auto [mj2, mi2] = mutual_bound(*y.gap_offset, *x.gap_offset);
        if (mi2 >= x.K || mj2 >= y.K) return false;
    }
    return true;
}

template <class Fn>
void for_each_mixed(const FockState& x, const FockState& y, Fn fn) {
    // quads of x against finite parts of y, then finite parts of x against quads of y
    if (has_finite(y)) {
        std::set<long> L = index_loops(y);
        FockState fy = finite_part(y);
        for (const QuadSum& q : x.quads) {
            FockState mx;
            materialize_quad(q, relevant_ks(q, L), mx.beta);
            fn(mx, fy);
        }
    }
    if (has_finite(x)) {
        std::set<long> L = index_loops(x);
        FockState fx = finite_part(x);
        for (const QuadSum& q : y.quads) {
            FockState my;
            materialize_quad(q, relevant_ks(q, L), my.beta);
            fn(fx, my);
        }
    }
}

}  // namespace

// ----------------------------------------------------------------- QuadSum

Sector QuadSum::sector() const {
    if (range.bounded()) return Sector::Finite;
    if (range.lo) return Sector::Positive;
    if (range.hi) return Sector::Negative;
    return Sector::Full;
}

QuadSum QuadSum::standard(const Algebra& g, int a, int b, int n, const RationalFunction& c) {
    QuadSum q;
    q.coeff = c;
    q.a = a;
    q.b = b;
    q.n = n;
    q.range = KRange::positive(std::max(g.eta(b), n + g.eta(a)));
    return q;
}

RationalFunction QuadSum::term_coeff(long k) const {
    Rational wk = weight.eval(Rational(k));
    if (wk == 0) return RationalFunction();
    return coeff * RationalFunction::z_power(static_cast<int>(alpha * k), wk);
}

std::string QuadSum::str(const Algebra& g) const {
    std::ostringstream os;
    os << "[" << coeff.str() << "]*sum_{" << range.str() << "}";
    if (!(weight == Poly::constant(1))) os << " (" << weight.str("k") << ")";
    if (alpha != 0) os << " z^{" << alpha << "k}";
    os << " gamma^{" << g.name(a) << ",k" << (n >= 0 ? "-" : "+") << std::abs(n) << "}[0]beta_{" << g.name(b)
       << ",k}[-1]|0>";
    return os.str();
}

// --------------------------------------------------------------- FockState

FockState FockState::vacuum(const RationalFunction& c) {
    FockState s;
    s.scalar = c;
    return s;
}

FockState FockState::gamma0(Var v, const RationalFunction& c) {
    FockState s;
    s.add_depth0(ZPoly::variable(v, c));
    return s;
}

FockState FockState::beta_state(Var t, const ZPoly& p) {
    FockState s;
    s.add_beta(t, p);
    return s;
}

FockState FockState::oneform_state(Var t, const ZPoly& p) {
    FockState s;
    s.add_oneform(t, p);
    return s;
}

FockState FockState::quad_state(const QuadSum& q) {
    FockState s;
    s.add_quad(q);
    return s;
}

bool FockState::is_zero() const {
    return scalar.is_zero() && depth0.is_zero() && beta.empty() && oneform.empty() && quads.empty();
}

void FockState::add_depth0(const ZPoly& p) {
    for (const auto& [m, c] : p.terms()) {
        if (m.empty())
            scalar += c;
        else
            depth0.add(m, c);
    }
}

void FockState::add_beta(Var t, const ZPoly& p) {
    if (var_loop(t) >= K) return;
    add_poly(beta, t, p);
}

void FockState::add_oneform(Var t, const ZPoly& p) { add_poly(oneform, t, p); }

void FockState::add_quad(const QuadSum& q) {
    if (q.coeff.is_zero() || q.range.empty() || q.weight.is_zero()) return;
    for (QuadSum& e : quads)
        if (e.a == q.a && e.b == q.b && e.n == q.n && e.alpha == q.alpha && e.range == q.range &&
            e.weight == q.weight) {
            e.coeff += q.coeff;
            normalize();
            return;
        }
    quads.push_back(q);
}

FockState& FockState::operator+=(const FockState& o) {
    K = std::min(K, o.K);
    scalar += o.scalar;
    depth0 += o.depth0;
    for (const auto& [t, p] : o.beta) add_beta(t, p);
    for (const auto& [t, p] : o.oneform) add_oneform(t, p);
    for (const auto& q : o.quads) add_quad(q);
    exact = exact && o.exact;
    if (o.gap_offset) gap_offset = gap_offset ? std::max(*gap_offset, *o.gap_offset) : *o.gap_offset;
    return *this;
}

FockState FockState::scaled(const RationalFunction& s) const {
    FockState r;
    r.K = K;
    r.exact = exact;
    r.gap_offset = gap_offset;
    if (s.is_zero()) return r;
    r.scalar = s * scalar;
    r.depth0 = s * depth0;
    for (const auto& [t, p] : beta) r.beta.emplace(t, s * p);
    for (const auto& [t, p] : oneform) r.oneform.emplace(t, s * p);
    for (QuadSum q : quads) {
        q.coeff *= s;
        r.quads.push_back(q);
    }
    return r;
}

void FockState::normalize() {
    quads.erase(std::remove_if(quads.begin(), quads.end(),
                               [](const QuadSum& q) { return q.coeff.is_zero() || q.range.empty(); }),
                quads.end());
}

std::string FockState::str(const Algebra& g) const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        os << (first ? "" : "\n+ ");
        first = false;
    };
    if (!scalar.is_zero()) {
        sep();
        os << "[" << scalar.str() << "]|0>";
    }
    if (!depth0.is_zero()) {
        sep();
        os << "(" << poly_str(g, depth0, "gamma") << ")|0>";
    }
    for (const auto& [t, p] : beta) {
        sep();
        os << "(" << poly_str(g, p, "gamma") << ")beta_{" << g.name(var_index(t)) << "," << var_loop(t) << "}[-1]|0>";
    }
    for (const auto& [t, p] : oneform) {
        sep();
        os << "(" << poly_str(g, p, "gamma") << ")gamma^{" << g.name(var_index(t)) << "," << var_loop(t)
           << "}[-1]|0>";
    }
    for (const auto& q : quads) {
        sep();
        os << q.str(g);
    }
    if (first) os << "0";
    return os.str();
}

namespace {

nlohmann::json poly_json(const Algebra& g, const ZPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json mono = nlohmann::json::array();
        for (Var v : m) mono.push_back({g.name(var_index(v)), var_loop(v)});
        arr.push_back({c.str(), mono});
    }
    return arr;
}

ZPoly poly_from_json(const Algebra& g, const nlohmann::json& arr) {
    ZPoly p;
    for (const auto& term : arr) {
        Monomial m;
        for (const auto& v : term[1]) m.push_back(make_var(g.index(v[0].get<std::string>()), v[1].get<int>()));
        std::sort(m.begin(), m.end());
        p.add(m, RationalFunction::parse(term[0].get<std::string>()));
    }
    return p;
}

nlohmann::json range_json(const KRange& r) {
    nlohmann::json j;
    j["lo"] = r.lo ? nlohmann::json(*r.lo) : nlohmann::json(nullptr);
    j["hi"] = r.hi ? nlohmann::json(*r.hi) : nlohmann::json(nullptr);
    return j;
}

}  // namespace

std::string FockState::to_json(const Algebra& g) const {
    nlohmann::json j;
    j["scalar"] = scalar.str();
    j["depth0"] = poly_json(g, depth0);
    j["beta"] = nlohmann::json::array();
    for (const auto& [t, p] : beta)
        j["beta"].push_back({{"target", {g.name(var_index(t)), var_loop(t)}}, {"poly", poly_json(g, p)}});
    j["oneform"] = nlohmann::json::array();
    for (const auto& [t, p] : oneform)
        j["oneform"].push_back({{"index", {g.name(var_index(t)), var_loop(t)}}, {"poly", poly_json(g, p)}});
    j["quads"] = nlohmann::json::array();
    for (const auto& q : quads) {
        nlohmann::json e = range_json(q.range);
        e["coeff"] = q.coeff.str();
        e["a"] = g.name(q.a);
        e["b"] = g.name(q.b);
        e["n"] = q.n;
        e["alpha"] = q.alpha;
        std::vector<std::string> wt;
        for (const auto& c : q.weight.coeffs()) wt.push_back(c.get_str());
        e["weight"] = wt;
        j["quads"].push_back(e);
    }
    j["exact"] = exact;
    return j.dump(2);
}

FockState fock_from_json(const Algebra& g, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FockState s;
    if (j.contains("scalar")) s.scalar = RationalFunction::parse(j["scalar"].get<std::string>());
    if (j.contains("depth0")) s.add_depth0(poly_from_json(g, j["depth0"]));
    for (const auto& e : j.value("beta", nlohmann::json::array()))
        s.add_beta(make_var(g.index(e["target"][0].get<std::string>()), e["target"][1].get<int>()),
                   poly_from_json(g, e["poly"]));
    for (const auto& e : j.value("oneform", nlohmann::json::array()))
        s.add_oneform(make_var(g.index(e["index"][0].get<std::string>()), e["index"][1].get<int>()),
                      poly_from_json(g, e["poly"]));
    for (const auto& e : j.value("quads", nlohmann::json::array())) {
        QuadSum q;
        q.coeff = RationalFunction::parse(e.value("coeff", std::string("1")));
        q.a = g.index(e["a"].get<std::string>());
        q.b = g.index(e["b"].get<std::string>());
        q.n = e["n"].get<int>();
        q.alpha = e.value("alpha", 0);
        q.range = KRange::full();
        if (e.contains("lo") && !e["lo"].is_null()) q.range.lo = e["lo"].get<long>();
        if (e.contains("hi") && !e["hi"].is_null()) q.range.hi = e["hi"].get<long>();
        if (e.contains("weight")) {
            std::vector<Rational> wt;
            for (const auto& c : e["weight"]) wt.push_back(parse_rational(c.get<std::string>()));
            q.weight = Poly(wt);
        }
        s.add_quad(q);
    }
    return s;
}

// ---------------------------------------------------------------- products

RationalFunction contract(Var beta_mode, int beta_N, Var gamma_mode, int gamma_N) {
    if (beta_mode != gamma_mode || beta_N + gamma_N != 0) return RationalFunction();
    return RationalFunction::z_power(var_loop(beta_mode));
}

FockState product0(const FockState& x, const FockState& y) {
    FockState out;
    out.K = std::min(x.K, y.K);
    out.exact = x.exact && y.exact;
    for (const QuadSum& qx : x.quads)
        for (const QuadSum& qy : y.quads) quad_product0(qx, qy, out);
    for_each_mixed(x, y, [&](const FockState& a, const FockState& b) { finite_product0(a, b, out); });
    finite_product0(x, y, out);
    out.normalize();
    return out;
}

FockState product1(const FockState& x, const FockState& y) {
    FockState out;
    out.K = std::min(x.K, y.K);
    out.exact = x.exact && y.exact && window_exact(x, y);
    for (const QuadSum& qx : x.quads)
        for (const QuadSum& qy : y.quads) out.scalar += quad_product1(qx, qy);
    for_each_mixed(x, y, [&](const FockState& a, const FockState& b) { finite_product1(a, b, out); });
    finite_product1(x, y, out);
    return out;
}

bool product1_certified(const FockState& x, const FockState& y) { return window_exact(x, y); }

FockState materialize(const FockState& x, const std::set<long>& ks) {
    FockState r = finite_part(x);
    r.K = INT_MAX / 4;
    r.exact = x.exact;
    for (const QuadSum& q : x.quads) {
        std::map<Var, ZPoly> b;
        materialize_quad(q, ks, b);
        for (const auto& [t, p] : b) r.add_beta(t, p);
    }
    r.K = x.K;
    return r;
}

std::map<Var, RPoly> vector_part_at_one(const FockState& x, int lo, int hi) {
    std::map<Var, RPoly> out;
    auto add = [&](Var t, const RPoly& p) {
        if (p.is_zero()) return;
        auto& slot = out[t];
        slot += p;
        if (slot.is_zero()) out.erase(t);
    };
    for (const auto& [t, p] : x.beta)
        if (var_loop(t) >= lo && var_loop(t) <= hi) add(t, eval_one(p));
    std::set<long> ks;
    for (long k = lo; k <= hi; ++k) ks.insert(k);
    for (const QuadSum& q : x.quads) {
        std::map<Var, ZPoly> b;
        materialize_quad(q, ks, b);
        for (const auto& [t, p] : b) add(t, eval_one(p));
    }
    return out;
}

std::map<std::tuple<int, int, int, KRange>, Poly> quads_at_one(const FockState& x) {
    std::map<std::tuple<int, int, int, KRange>, Poly> out;
    for (const QuadSum& q : x.quads) {
        auto key = std::make_tuple(q.a, q.b, q.n, q.range);
        Poly p = q.coeff.eval(1) * q.weight;
        auto it = out.find(key);
        if (it == out.end())
            out.emplace(key, p);
        else
            it->second = it->second + p;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

Translated translate(const FockState& x) {
    if (!x.quads.empty()) throw std::domain_error("translation of quadratic sums is not represented");
    Translated t;
    for (Var i : x.depth0.variables()) t.depth1.add_oneform(i, x.depth0.derivative(i));
    for (const auto& [j, P] : x.beta) {
        t.outside_depth1 = true;
        t.beta_minus2[j] += P;
        for (Var i : P.variables()) t.gamma_beta[{i, j}] += P.derivative(i);
    }
    for (const auto& [j, Q] : x.oneform) {
        t.outside_depth1 = true;
        t.gamma_minus2[j] += Q;
        for (Var i : Q.variables()) t.gamma_gamma[{std::min(i, j), std::max(i, j)}] += Q.derivative(i);
    }
    return t;
}

// -------------------------------------------------------------- S-algebra

SState SState::S(int a, int b, int n, const RationalFunction& c) {
    SState s;
    s.add({SKey::S, a, b, n}, c);
    return s;
}

SState SState::D(const RationalFunction& c) {
    SState s;
    s.add({SKey::D, 0, 0, 0}, c);
    return s;
}

SState SState::vacuum(const RationalFunction& c) {
    SState s;
    s.add({SKey::Vacuum, 0, 0, 0}, c);
    return s;
}

void SState::add(const SKey& k, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

SState& SState::operator+=(const SState& o) {
    for (const auto& [k, c] : o.terms) add(k, c);
    return *this;
}

std::string SState::str(const Algebra& g) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        os << (first ? "" : " + ") << "[" << c.str() << "]";
        first = false;
        if (k.kind == SKey::S)
            os << "S^{" << g.name(k.a) << "}_{" << g.name(k.b) << "," << k.n << "}";
        else if (k.kind == SKey::D)
            os << "D";
        else
            os << "|0>";
    }
    return os.str();
}

SState s_bracket(const SState& x, const SState& y) {
    SState r;
    for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms) {
            RationalFunction c = cx * cy;
            if (kx.kind == SKey::S && ky.kind == SKey::S) {
                if (kx.b == ky.a) r.add({SKey::S, kx.a, ky.b, kx.n + ky.n}, c);
                if (ky.b == kx.a) r.add({SKey::S, ky.a, kx.b, kx.n + ky.n}, -c);
            } else if (kx.kind == SKey::D && ky.kind == SKey::S) {
                r.add(ky, c * RationalFunction(ky.n));
            } else if (kx.kind == SKey::S && ky.kind == SKey::D) {
                r.add(kx, -c * RationalFunction(kx.n));
            }
        }
    return r;
}

SState lad_map(const Algebra& g, const AffineElement& x) {
    SState r;
    for (const auto& [j, c] : x.loop)
        for (int b = 0; b < g.dim(); ++b)
            for (const auto& [cc, v] : g.f(b, j.a)) r.add({SKey::S, b, cc, j.n}, RationalFunction(Rational(c * v)));
    if (x.d != 0) r.add({SKey::D, 0, 0, 0}, RationalFunction(x.d));
    return r;
}

FockState p_embed(const Algebra& g, const SState& x) {
    FockState s;
    for (const auto& [k, c] : x.terms) {
        if (k.kind == SKey::Vacuum) {
            s.scalar += c;
        } else if (k.kind == SKey::S) {
            QuadSum q;
            q.coeff = c;
            q.a = k.a;
            q.b = k.b;
            q.n = k.n;
            q.range = KRange::full();
            s.add_quad(q);
        } else {
            // D -> -sum_a sum_k k gamma^{a,k} beta_{a,k}
            for (int a = 0; a < g.dim(); ++a) {
                QuadSum q;
                q.coeff = -c;
                q.a = a;
                q.b = a;
                q.n = 0;
                q.range = KRange::full();
                q.weight = Poly::monomial(1, 1);
                s.add_quad(q);
            }
        }
    }
    return s;
}

Sectors split_sectors(const FockState& x) {
    Sectors s;
    s.middle = finite_part(x);
    s.positive.K = s.negative.K = x.K;
    for (const QuadSum& q : x.quads) {
        switch (q.sector()) {
            case Sector::Positive:
                s.positive.add_quad(q);
                continue;
            case Sector::Negative:
                s.negative.add_quad(q);
                continue;
            case Sector::Finite:
                s.middle.add_quad(q);
                continue;
            case Sector::Full:
                break;
        }
        QuadSum p = q, m = q, c = q;
        if (q.n == 0) {
            p.range = KRange::positive(1);
            m.range = KRange::negative(-1);
            c.range = KRange::finite(0, 0);
        } else {
            long M = std::max(0, q.n);
            p.range = KRange::positive(M);
            m.range = KRange::negative(-M);
            if (M >= 1) {
                c.range = KRange::finite(-M + 1, M - 1);
            } else {
                // signed sum from 1 to -1 is minus the k = 0 term
                c.range = KRange::finite(0, 0);
                c.coeff = -q.coeff;
            }
        }
        s.positive.add_quad(p);
        s.negative.add_quad(m);
        s.middle.add_quad(c);
    }
    return s;
}

LempiResult lempi_product(const FockState& x, const FockState& y) {
    LempiResult r;
    Sectors s = split_sectors(x);
    FockState pos = product1(s.positive, y);
    FockState neg = product1(s.negative, y);
    FockState mid = product1(s.middle, y);
    r.exact = pos.exact && neg.exact && mid.exact;
    r.positive = reg(pos.scalar);
    r.negative = reg(invert_z(neg.scalar));
    r.middle = mid.scalar.is_zero() ? Rational(0) : mid.scalar.eval(1);
    for (const auto& [m, c] : pos.depth0.terms()) r.depth0.add(m, reg(c));
    for (const auto& [m, c] : neg.depth0.terms()) r.depth0.add(m, reg(invert_z(c)));
    for (const auto& [m, c] : mid.depth0.terms()) r.depth0.add(m, c.eval(1));
    return r;
}

}  // namespace waki
