#pragma once

#include "waki/exactring.hpp"
#include "waki/liealg.hpp"
#include "waki/weylpoly.hpp"

#include <climits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace waki {

// Integer interval; a missing bound is infinite.
struct KRange {
    std::optional<long> lo, hi;

    static KRange positive(long lo) { return {lo, std::nullopt}; }
    static KRange negative(long hi) { return {std::nullopt, hi}; }
    static KRange full() { return {std::nullopt, std::nullopt}; }
    static KRange finite(long lo, long hi) { return {lo, hi}; }

    bool contains(long k) const { return (!lo || k >= *lo) && (!hi || k <= *hi); }
    bool empty() const { return lo && hi && *lo > *hi; }
    bool bounded() const { return lo && hi; }
    KRange intersect(const KRange& o) const;
    KRange shifted(long s) const;
    friend bool operator<(const KRange& a, const KRange& b) { return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi); }
    friend bool operator==(const KRange& a, const KRange& b) { return a.lo == b.lo && a.hi == b.hi; }
    std::string str() const;
};

enum class Sector { Positive, Negative, Full, Finite };

// coeff * sum_{k in range} weight(k) z^{alpha k} gamma^{a,k-n}[0] beta_{b,k}[-1] |0>
struct QuadSum {
    RationalFunction coeff = 1;
    int a = 0, b = 0;
    int n = 0;
    int alpha = 0;
    KRange range = KRange::positive(0);
    Poly weight = Poly::constant(1);

    Sector sector() const;
    // Default lower bound max(eta(b), n + eta(a)).
    static QuadSum standard(const Algebra& g, int a, int b, int n, const RationalFunction& c);
    RationalFunction term_coeff(long k) const;  // coeff * weight(k) * z^{alpha k}
    std::string str(const Algebra& g) const;
};

// Element of the regulated Fock space of depth <= 1.
struct FockState {
    RationalFunction scalar;
    ZPoly depth0;                   // f(gamma[0])|0>, no constant term
    std::map<Var, ZPoly> beta;      // P(gamma[0]) beta_t[-1]|0>
    std::map<Var, ZPoly> oneform;   // Q(gamma[0]) gamma^t[-1]|0>
    std::vector<QuadSum> quads;
    int K = INT_MAX / 4;            // beta targets stored below K
    bool exact = true;
    std::optional<int> gap_offset;  // set when the beta part is a cutoff truncation

    static FockState vacuum(const RationalFunction& c = 1);
    static FockState gamma0(Var v, const RationalFunction& c = 1);
    static FockState beta_state(Var t, const ZPoly& p = ZPoly::constant(1));
    static FockState oneform_state(Var t, const ZPoly& p = ZPoly::constant(1));
    static FockState quad_state(const QuadSum& q);

    bool truncated() const { return gap_offset.has_value(); }
    bool is_zero() const;
    void add_depth0(const ZPoly& p);
    void add_beta(Var t, const ZPoly& p);
    void add_oneform(Var t, const ZPoly& p);
    void add_quad(const QuadSum& q);
    FockState& operator+=(const FockState& o);
    friend FockState operator+(FockState a, const FockState& b) { return a += b; }
    FockState scaled(const RationalFunction& s) const;
    // Merges quads that differ only in coefficient and drops zero ones.
    void normalize();
    std::string str(const Algebra& g) const;
    std::string to_json(const Algebra& g) const;
};

RationalFunction contract(Var beta_mode, int beta_N, Var gamma_mode, int gamma_N);

FockState product0(const FockState& x, const FockState& y);
FockState product1(const FockState& x, const FockState& y);
// True when every contraction partner of a truncated beta part lies inside its window.
bool product1_certified(const FockState& x, const FockState& y);

// Finite parts of x plus quad terms for the given k values, at coefficient level.
FockState materialize(const FockState& x, const std::set<long>& ks);
// Everything with beta target loop in [lo, hi] as explicit terms, evaluated at z = 1.
std::map<Var, RPoly> vector_part_at_one(const FockState& x, int lo, int hi);

// Translation: depth-0 part maps to its differential; beta terms leave the depth-1 model.
struct Translated {
    FockState depth1;                               // T(f|0>) = sum d_i f gamma^i[-1]|0>
    std::map<Var, ZPoly> beta_minus2;               // P beta_t[-2]|0>
    std::map<std::pair<Var, Var>, ZPoly> gamma_beta;  // coefficient of gamma^i[-1] beta_t[-1]|0>
    std::map<Var, ZPoly> gamma_minus2;              // Q gamma^t[-2]|0>
    std::map<std::pair<Var, Var>, ZPoly> gamma_gamma;  // coefficient of gamma^i[-1] gamma^t[-1]|0>
    bool outside_depth1 = false;
};
Translated translate(const FockState& x);

// Abstract S-generator module: S^a_{b,n}[-1]|0>, D[-1]|0>, |0>.
struct SKey {
    enum Kind { Vacuum, D, S } kind = Vacuum;
    int a = 0, b = 0, n = 0;
    friend bool operator<(const SKey& x, const SKey& y) {
        return std::tie(x.kind, x.n, x.a, x.b) < std::tie(y.kind, y.n, y.a, y.b);
    }
    friend bool operator==(const SKey& x, const SKey& y) {
        return x.kind == y.kind && x.a == y.a && x.b == y.b && x.n == y.n;
    }
};

struct SState {
    std::map<SKey, RationalFunction> terms;
    static SState S(int a, int b, int n, const RationalFunction& c = 1);
    static SState D(const RationalFunction& c = 1);
    static SState vacuum(const RationalFunction& c = 1);
    void add(const SKey& k, const RationalFunction& c);
    SState& operator+=(const SState& o);
    friend SState operator+(SState a, const SState& b) { return a += b; }
    friend bool operator==(const SState& a, const SState& b) { return a.terms == b.terms; }
    bool is_zero() const { return terms.empty(); }
    std::string str(const Algebra& g) const;
};

SState s_bracket(const SState& x, const SState& y);
// J_{a,n} -> sum f_{ba}^c S^b_{c,n}, d -> D, k -> 0
SState lad_map(const Algebra& g, const AffineElement& x);
FockState p_embed(const Algebra& g, const SState& x);

struct Sectors {
    FockState positive, negative, middle;
};
Sectors split_sectors(const FockState& x);

struct LempiResult {
    Rational positive, negative, middle;
    RPoly depth0;  // non-scalar remainder, all sectors, at z = 1
    bool exact = true;
    Rational total() const { return positive + negative + middle; }
};
LempiResult lempi_product(const FockState& x, const FockState& y);

FockState fock_from_json(const Algebra& g, const std::string& text);
// Quad parts at z = 1 keyed by (a, b, n, range), weights summed.
std::map<std::tuple<int, int, int, KRange>, Poly> quads_at_one(const FockState& x);

}  // namespace waki
