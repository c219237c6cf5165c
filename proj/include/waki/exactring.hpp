#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace waki {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

// Dense univariate polynomial in z, coefficient of z^i at index i.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> c);
    static Poly constant(const Rational& c);
    static Poly monomial(const Rational& c, int degree);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& coeff(int i) const;
    const Rational& lead() const { return c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    int low_degree() const;
    bool is_monomial() const;

    Rational eval(const Rational& x) const;
    Poly derivative() const;
    Poly shifted(int k) const;   // multiply by z^k, k >= -low_degree()
    Poly reversed() const;       // z^deg * p(1/z)
    Poly monic() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    static Poly gcd(Poly a, Poly b);

    std::string str(const char* var = "z") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Element of Q(z) in canonical form: gcd(num, den) = 1 and den monic.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Poly::constant(1)) {}
    RationalFunction(const Rational& c);  // NOLINT implicit
    RationalFunction(int c) : RationalFunction(Rational(c)) {}  // NOLINT
    RationalFunction(Poly num, Poly den);

    static RationalFunction z_power(int k, const Rational& c = 1);
    static RationalFunction parse(const std::string& s);

    const Poly& numer() const { return num_; }
    const Poly& denom() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return den_.degree() == 0 && num_.degree() <= 0; }
    Rational constant_value() const;
    bool regular_at_one() const;
    Rational eval(const Rational& x) const;
    RationalFunction derivative() const;

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    // Text form "N / D" with integer coefficients.
    std::string str() const;
    std::string latex() const;

private:
    void canonicalize();
    Poly num_;
    Poly den_;
};

struct TruncatedLaurent {
    int min_degree = 0;
    int order = 0;
    std::vector<Rational> coeffs;  // y^min_degree .. y^order

    Rational coefficient(int k) const;
    TruncatedLaurent operator*(const TruncatedLaurent& o) const;
    std::string str() const;
};

Rational bernoulli(int k);

// Laurent expansion of f(e^y) about y = 0 through y^order.
TruncatedLaurent expand_at_one(const RationalFunction& f, int order);
int pole_order_at_one(const RationalFunction& f);

Rational reg(const RationalFunction& f);
RationalFunction invert_z(const RationalFunction& f);

// sum_{k >= k0} z^(step*k + shift)
RationalFunction geometric_resum(long k0, int step, long shift);
// sum_{k >= k0} k^p z^(step*k + shift)
RationalFunction power_geometric(long k0, int step, long shift, int p);
// sum_{k <= hi} k^p z^(step*k + shift)
RationalFunction power_geometric_below(long hi, int step, long shift, int p);
// sum_{k=a}^{b} k^p z^(step*k + shift); for a > b + 1 the signed
// convention sum_a^b = -sum_{b+1}^{a-1} applies.
RationalFunction finite_power_sum(long a, long b, int step, long shift, int p);

}  // namespace waki
