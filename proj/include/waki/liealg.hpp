#pragma once

#include "waki/exactring.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace waki {

// Finite-type sl_{r+1} tables generated from the e_ij matrix representation.
// Index ids: positive roots (by height), Cartan labels 1..r, negative roots.
class Algebra {
public:
    static Algebra build(const std::string& series);  // "A1", "A2", "Ar" style
    static Algebra build_rank(int rank);

    int rank() const { return rank_; }
    int dim() const { return static_cast<int>(names_.size()); }
    const std::string& series() const { return series_; }

    const std::string& name(int a) const { return names_.at(a); }
    int index(const std::string& name) const;  // also accepts E, F, H for A1

    bool is_root(int a) const { return kind_[a] != 0; }
    bool is_positive(int a) const { return kind_[a] > 0; }
    bool is_negative(int a) const { return kind_[a] < 0; }
    bool is_cartan(int a) const { return kind_[a] == 0; }
    int height(int a) const { return height_[a]; }  // signed; 0 for Cartan labels
    int eta(int a) const { return is_positive(a) ? 0 : 1; }
    // Coordinates in the simple-root basis, zero for Cartan labels.
    const std::vector<int>& root_vector(int a) const { return rootvec_[a]; }
    // sigma(J_a) = sign * J_{mirror}
    int mirror(int a) const { return mirror_[a]; }
    int mirror_sign(int a) const { return is_cartan(a) ? -1 : 1; }

    // [J_a, J_b] = sum_c f(a,b)[c] J_c
    const std::vector<std::pair<int, Rational>>& f(int a, int b) const { return f_[a * dim() + b]; }
    Rational f(int a, int b, int c) const;
    const Rational& kappa(int a, int b) const { return kappa_[a * dim() + b]; }

    std::vector<std::vector<Rational>> matrix(int a) const;
    std::string to_json() const;

private:
    int rank_ = 0;
    std::string series_;
    std::vector<std::string> names_;
    std::vector<int> kind_, height_, mirror_;
    std::vector<std::pair<int, int>> ij_;  // e_ij position of a root, (i,i) for H_i
    std::vector<std::vector<int>> rootvec_;
    std::vector<std::vector<std::pair<int, Rational>>> f_;
    std::vector<Rational> kappa_;
};

struct GenIndex {
    int a = 0;
    int n = 0;
    friend bool operator<(const GenIndex& x, const GenIndex& y) { return std::pair(x.n, x.a) < std::pair(y.n, y.a); }
    friend bool operator==(const GenIndex& x, const GenIndex& y) { return x.a == y.a && x.n == y.n; }
};

enum class Membership { Plus, Minus, Neither };

bool in_plus(const Algebra& g, int a, int n);
bool in_minus(const Algebra& g, int a, int n);
Membership membership(const Algebra& g, int a, int n);

// Parses "a1+a2,3", "E,-2", "(F,1)", "k", "d".
struct GeneratorSpec {
    enum Kind { Loop, Central, Derivation } kind = Loop;
    GenIndex j;
};
GeneratorSpec parse_generator(const Algebra& g, const std::string& s);
std::string generator_name(const Algebra& g, const GenIndex& j);

struct AffineElement {
    std::map<GenIndex, Rational> loop;
    Rational k = 0;
    Rational d = 0;

    static AffineElement generator(int a, int n, const Rational& c = 1);
    static AffineElement central(const Rational& c = 1);
    static AffineElement derivation(const Rational& c = 1);

    bool is_zero() const;
    void add(const GenIndex& j, const Rational& c);
    AffineElement& operator+=(const AffineElement& o);
    friend AffineElement operator+(AffineElement a, const AffineElement& b) { return a += b; }
    friend AffineElement operator*(const Rational& s, const AffineElement& a);
    friend bool operator==(const AffineElement& a, const AffineElement& b) {
        return a.loop == b.loop && a.k == b.k && a.d == b.d;
    }
    std::string str(const Algebra& g) const;
};

AffineElement affine_bracket(const Algebra& g, const AffineElement& x, const AffineElement& y);
AffineElement cartan_involution(const Algebra& g, const AffineElement& x);
AffineElement height_filter(const AffineElement& x, int K);

// Basis of n_+ modulo heights >= K, in (n, id) order.
std::vector<GenIndex> n_plus_basis(const Algebra& g, int K);

}  // namespace waki
