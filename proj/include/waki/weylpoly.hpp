#pragma once

#include "waki/exactring.hpp"
#include "waki/liealg.hpp"

#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace waki {

// Variable X^{a,n} packed as ((n + bias) << 8) | a; sorting codes orders by (n, a).
using Var = std::uint32_t;
constexpr int kLoopBias = 1 << 15;

inline Var make_var(int a, int n) { return (static_cast<Var>(n + kLoopBias) << 8) | static_cast<Var>(a); }
inline Var make_var(const GenIndex& j) { return make_var(j.a, j.n); }
inline int var_index(Var v) { return static_cast<int>(v & 0xffu); }
inline int var_loop(Var v) { return static_cast<int>(v >> 8) - kLoopBias; }
inline GenIndex var_gen(Var v) { return {var_index(v), var_loop(v)}; }

using Monomial = std::vector<Var>;  // sorted multiset

Monomial mono_mul(const Monomial& a, const Monomial& b);
std::string var_str(const Algebra& g, Var v, const char* letter = "X");
std::string monomial_str(const Algebra& g, const Monomial& m, const char* letter = "X");
std::string monomial_latex(const Algebra& g, const Monomial& m, const char* letter = "X");

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const RationalFunction& c) { return c.is_zero(); }

template <class C>
class LoopPoly {
public:
    using Map = std::map<Monomial, C>;

    LoopPoly() = default;
    static LoopPoly constant(const C& c) {
        LoopPoly p;
        p.add(Monomial{}, c);
        return p;
    }
    static LoopPoly variable(Var v, const C& c = C(1)) {
        LoopPoly p;
        p.add(Monomial{v}, c);
        return p;
    }
    static LoopPoly monomial(const Monomial& m, const C& c) {
        LoopPoly p;
        p.add(m, c);
        return p;
    }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    C coefficient(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? C(0) : it->second;
    }
    C constant_term() const { return coefficient(Monomial{}); }

    void add(const Monomial& m, const C& c) {
        if (coeff_is_zero(c)) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
            return;
        }
        it->second += c;
        if (coeff_is_zero(it->second)) t_.erase(it);
    }
    void add_scaled(const LoopPoly& o, const C& s) {
        if (coeff_is_zero(s)) return;
        for (const auto& [m, c] : o.t_) add(m, s * c);
    }
    // this += s * m * o
    void add_product(const LoopPoly& o, const Monomial& m, const C& s) {
        for (const auto& [mo, c] : o.t_) add(mono_mul(mo, m), s * c);
    }

    LoopPoly& operator+=(const LoopPoly& o) {
        for (const auto& [m, c] : o.t_) add(m, c);
        return *this;
    }
    LoopPoly& operator-=(const LoopPoly& o) {
        for (const auto& [m, c] : o.t_) add(m, -c);
        return *this;
    }
    friend LoopPoly operator+(LoopPoly a, const LoopPoly& b) { return a += b; }
    friend LoopPoly operator-(LoopPoly a, const LoopPoly& b) { return a -= b; }
    LoopPoly operator-() const {
        LoopPoly r;
        for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
        return r;
    }
    friend LoopPoly operator*(const LoopPoly& a, const LoopPoly& b) {
        LoopPoly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r.add(mono_mul(ma, mb), ca * cb);
        return r;
    }
    friend LoopPoly operator*(const C& s, const LoopPoly& a) {
        LoopPoly r;
        r.add_scaled(a, s);
        return r;
    }
    friend bool operator==(const LoopPoly& a, const LoopPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const LoopPoly& a, const LoopPoly& b) { return !(a == b); }

    LoopPoly derivative(Var v) const {
        LoopPoly r;
        for (const auto& [m, c] : t_) {
            auto lo = std::lower_bound(m.begin(), m.end(), v);
            if (lo == m.end() || *lo != v) continue;
            auto hi = std::upper_bound(lo, m.end(), v);
            Monomial rest(m.begin(), lo);
            rest.insert(rest.end(), lo + 1, m.end());
            r.add(rest, C(static_cast<long>(hi - lo)) * c);
        }
        return r;
    }

    std::set<Var> variables() const {
        std::set<Var> s;
        for (const auto& [m, c] : t_) s.insert(m.begin(), m.end());
        return s;
    }
    // Largest variable loop index, INT_MIN when no variable occurs.
    int max_loop() const {
        int mx = INT_MIN;
        for (const auto& [m, c] : t_)
            for (Var v : m) mx = std::max(mx, var_loop(v));
        return mx;
    }
    int max_abs_loop() const {
        int mx = INT_MIN;
        for (const auto& [m, c] : t_)
            for (Var v : m) mx = std::max(mx, std::abs(var_loop(v)));
        return mx;
    }

    template <class F>
    LoopPoly filtered(F keep) const {
        LoopPoly r;
        for (const auto& [m, c] : t_)
            if (keep(m)) r.t_.emplace(m, c);
        return r;
    }
    template <class D, class F>
    LoopPoly<D> mapped(F conv) const {
        LoopPoly<D> r;
        for (const auto& [m, c] : t_) r.add(m, conv(c));
        return r;
    }
    template <class F>
    LoopPoly substituted(F var_map) const {
        // var_map(v) returns (new var, sign)
        LoopPoly r;
        for (const auto& [m, c] : t_) {
            Monomial nm;
            C s = c;
            for (Var v : m) {
                auto [nv, sign] = var_map(v);
                nm.push_back(nv);
                if (sign < 0) s = -s;
            }
            std::sort(nm.begin(), nm.end());
            r.add(nm, s);
        }
        return r;
    }

private:
    Map t_;
};

using RPoly = LoopPoly<Rational>;
using ZPoly = LoopPoly<RationalFunction>;

inline ZPoly lift(const RPoly& p) {
    return p.mapped<RationalFunction>([](const Rational& c) { return RationalFunction(c); });
}

std::string poly_str(const Algebra& g, const RPoly& p, const char* letter = "X");
std::string poly_str(const Algebra& g, const ZPoly& p, const char* letter = "X");
std::string poly_latex(const Algebra& g, const RPoly& p, const char* letter = "X");

struct GapCertificate {
    int window = 0;                // cutoff K the profile was computed at
    int slack = 0;                 // max(0, -n) for a derivation of loop degree n
    std::map<int, int> profile;    // target loop m -> max variable loop (INT_MIN: constants only)
    int offset = 0;                // max_m (profile(m) - ceil(m/2))
    bool widening = true;

    std::string verdict() const { return widening ? "widening" : "not-proven"; }
};

// Truncated element of Der O(n_+): sum over targets (b,m) of P^{b,m}(X) D_{b,m}.
class Derivation {
public:
    Derivation() = default;
    explicit Derivation(int K, int degree = 0) : K_(K), degree_(degree) {}

    int cutoff() const { return K_; }
    int degree() const { return degree_; }
    void set_degree(int n) { degree_ = n; }

    const std::map<Var, RPoly>& components() const { return c_; }
    const RPoly& component(Var target) const;
    void add(Var target, const RPoly& p);
    void add_term(Var target, const Monomial& m, const Rational& c);
    bool is_zero() const { return c_.empty(); }

    // Sum_i P^i d_i f
    RPoly apply(const RPoly& f) const;

    Derivation operator-() const;
    Derivation& operator+=(const Derivation& o);
    Derivation& operator-=(const Derivation& o);
    friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
    friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
    friend Derivation operator*(const Rational& s, const Derivation& d);
    friend bool operator==(const Derivation& a, const Derivation& b) { return a.c_ == b.c_; }

    // Keep targets with loop < K (and > -K when doubled).
    Derivation truncated(int K, bool doubled = false) const;

    std::string str(const Algebra& g) const;
    std::string latex(const Algebra& g) const;
    std::string to_json(const Algebra& g) const;

private:
    int K_ = 0;
    int degree_ = 0;
    std::map<Var, RPoly> c_;
};

Derivation derivation_commutator(const Derivation& a, const Derivation& b);

// Widening iff profile(m) <= ceil(m/2) + slack for every target m < K.
GapCertificate gap_profile(const Derivation& d, int slack);
GapCertificate gap_profile(const Derivation& d);  // slack = max(0, -degree)
// Mirrored variant for derivations on the doubled variable set: uses |m| and |loop|.
GapCertificate gap_profile_doubled(const Derivation& d, int slack);

inline int ceil_half(int m) { return m >= 0 ? (m + 1) / 2 : -((-m) / 2); }

}  // namespace waki
