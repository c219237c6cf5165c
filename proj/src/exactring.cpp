#include "waki/exactring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace waki {

Rational parse_rational(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    Rational q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, int degree) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Poly::coeff(int i) const {
    static const Rational zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

int Poly::low_degree() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return -1;
}

bool Poly::is_monomial() const { return !c_.empty() && low_degree() == degree(); }

Rational Poly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(v));
}

Poly Poly::shifted(int k) const {
    if (is_zero()) return Poly();
    if (k >= 0) {
        std::vector<Rational> v(k, Rational(0));
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(std::move(v));
    }
    if (-k > low_degree()) throw std::invalid_argument("shift below zero degree");
    return Poly(std::vector<Rational>(c_.begin() - k, c_.end()));
}

Poly Poly::reversed() const {
    std::vector<Rational> v(c_.rbegin(), c_.rend());
    return Poly(std::move(v));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Rational l = lead();
    std::vector<Rational> v(c_);
    for (auto& x : v) x /= l;
    return Poly(std::move(v));
}

Poly Poly::operator-() const {
    std::vector<Rational> v(c_);
    for (auto& x : v) x = -x;
    return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
}

Poly operator*(const Rational& s, const Poly& a) {
    std::vector<Rational> v(a.c_);
    for (auto& x : v) x *= s;
    return Poly(std::move(v));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem(a.c_);
    int db = b.degree();
    int dq = a.degree() - db;
    std::vector<Rational> quo(dq >= 0 ? dq + 1 : 0);
    const Rational& lb = b.lead();
    for (int i = dq; i >= 0; --i) {
        Rational t = rem[i + db] / lb;
        quo[i] = t;
        if (t == 0) continue;
        for (int j = 0; j <= db; ++j) rem[i + j] -= t * b.c_[j];
    }
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

std::string Poly::str(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[i];
        if (c == 0) continue;
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = (a == 1);
        if (!unit || i == 0) os << a.get_str();
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(const Rational& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    canonicalize();
}

RationalFunction RationalFunction::z_power(int k, const Rational& c) {
    if (k >= 0) return RationalFunction(Poly::monomial(c, k), Poly::constant(1));
    return RationalFunction(Poly::constant(c), Poly::monomial(1, -k));
}

void RationalFunction::canonicalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(1);
        return;
    }
    if (den_.is_monomial()) {
        int t = std::min(num_.low_degree(), den_.degree());
        if (t > 0) {
            num_ = num_.shifted(-t);
            den_ = den_.shifted(-t);
        }
    } else {
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            Poly q, r;
            Poly::divmod(num_, g, q, r);
            num_ = q;
            Poly::divmod(den_, g, q, r);
            den_ = q;
        }
    }
    Rational l = den_.lead();
    if (l != 1) {
        Rational inv = 1 / l;
        num_ = inv * num_;
        den_ = inv * den_;
    }
}

Rational RationalFunction::constant_value() const {
    if (!is_constant()) throw std::domain_error("not a constant");
    return num_.coeff(0);
}

bool RationalFunction::regular_at_one() const { return den_.eval(1) != 0; }

Rational RationalFunction::eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (d == 0) throw std::domain_error("pole at evaluation point");
    return num_.eval(x) / d;
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ = num_ + o.num_;
    } else if (den_.is_monomial() && o.den_.is_monomial()) {
        int da = den_.degree(), db = o.den_.degree();
        int d = std::max(da, db);
        num_ = num_.shifted(d - da) + o.num_.shifted(d - db);
        den_ = Poly::monomial(1, d);
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    canonicalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (is_zero() || o.is_zero()) return *this = RationalFunction();
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    canonicalize();
    return *this;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

namespace {

mpz_class denominators_lcm(const Poly& p, mpz_class acc) {
    for (const auto& c : p.coeffs()) mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), c.get_den_mpz_t());
    return acc;
}

}  // namespace

std::string RationalFunction::str() const {
    mpz_class l = denominators_lcm(den_, denominators_lcm(num_, 1));
    Rational s(l);
    return "(" + (s * num_).str() + ") / (" + (s * den_).str() + ")";
}

std::string RationalFunction::latex() const {
    if (den_.degree() == 0) return num_.str();
    return "\\frac{" + num_.str() + "}{" + den_.str() + "}";
}

namespace {

Poly parse_poly(const std::string& src) {
    std::string s;
    for (char ch : src)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '(' && ch != ')') s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    std::map<int, Rational> terms;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        std::string coef;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) coef += s[i++];
        Rational c = coef.empty() ? Rational(1) : parse_rational(coef);
        if (i < s.size() && s[i] == '*') ++i;
        int deg = 0;
        if (i < s.size() && s[i] == 'z') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
                if (e.empty()) throw std::invalid_argument("bad exponent in " + src);
                deg = std::stoi(e);
            }
        } else if (coef.empty()) {
            throw std::invalid_argument("bad polynomial term in " + src);
        }
        terms[deg] += sign * c;
        if (i < s.size() && s[i] != '+' && s[i] != '-') throw std::invalid_argument("bad polynomial: " + src);
    }
    int top = terms.rbegin()->first;
    std::vector<Rational> v(top + 1);
    for (auto& [d, c] : terms) v[d] = c;
    return Poly(std::move(v));
}

}  // namespace

RationalFunction RationalFunction::parse(const std::string& s) {
    size_t pos = s.find(" / ");
    if (pos == std::string::npos) pos = s.find(")/(");
    if (pos == std::string::npos) return RationalFunction(parse_poly(s), Poly::constant(1));
    size_t cut = s[pos] == ' ' ? pos + 3 : pos + 2;
    size_t end_num = s[pos] == ' ' ? pos : pos + 1;
    return RationalFunction(parse_poly(s.substr(0, end_num)), parse_poly(s.substr(cut)));
}

// ------------------------------------------------------------ Laurent

Rational TruncatedLaurent::coefficient(int k) const {
    if (k > order) throw std::out_of_range("coefficient beyond truncation order");
    if (k < min_degree) return 0;
    return coeffs[k - min_degree];
}

TruncatedLaurent TruncatedLaurent::operator*(const TruncatedLaurent& o) const {
    TruncatedLaurent r;
    r.min_degree = min_degree + o.min_degree;
    r.order = std::min(order + o.min_degree, o.order + min_degree);
    r.coeffs.assign(std::max(0, r.order - r.min_degree + 1), Rational(0));
    for (int i = min_degree; i <= order; ++i)
        for (int j = o.min_degree; j <= o.order; ++j)
            if (i + j <= r.order) r.coeffs[i + j - r.min_degree] += coefficient(i) * o.coefficient(j);
    return r;
}

std::string TruncatedLaurent::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = min_degree; k <= order; ++k) {
        Rational c = coefficient(k);
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.get_str() << ")";
        if (k != 0) os << "*y^" << k;
    }
    if (first) os << "0";
    os << " + O(y^" << order + 1 << ")";
    return os.str();
}

Rational bernoulli(int k) {
    if (k < 0) throw std::invalid_argument("negative Bernoulli index");
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= k) {
        int m = static_cast<int>(cache.size());
        Rational s = 0;
        mpz_class binom = 1;  // C(m+1, j)
        for (int j = 0; j < m; ++j) {
            s += Rational(binom) * cache[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        cache.push_back(-s / (m + 1));
    }
    return cache[k];
}

namespace {

// Coefficients of p(e^y) through y^len-1.
std::vector<Rational> exp_series(const Poly& p, int len) {
    std::vector<Rational> out(len, Rational(0));
    Rational fact = 1;
    for (int k = 0; k < len; ++k) {
        if (k > 0) fact *= k;
        Rational s = 0;
        for (int j = 0; j <= p.degree(); ++j) {
            if (p.coeff(j) == 0) continue;
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(k));
            s += p.coeff(j) * Rational(pw);
        }
        out[k] = s / fact;
    }
    return out;
}

int root_multiplicity_at_one(Poly p) {
    int m = 0;
    Poly lin(std::vector<Rational>{Rational(-1), Rational(1)});
    while (!p.is_zero() && p.eval(1) == 0) {
        Poly q, r;
        Poly::divmod(p, lin, q, r);
        p = q;
        ++m;
    }
    return m;
}

}  // namespace

int pole_order_at_one(const RationalFunction& f) { return root_multiplicity_at_one(f.denom()); }

TruncatedLaurent expand_at_one(const RationalFunction& f, int order) {
    if (f.is_zero()) throw std::invalid_argument("expansion of zero");
    int mu = root_multiplicity_at_one(f.denom());
    int nu = root_multiplicity_at_one(f.numer());
    if (order < nu - mu) order = nu - mu;
    int need = order - (nu - mu) + 1;  // number of quotient coefficients
    std::vector<Rational> ns = exp_series(f.numer(), nu + need);
    std::vector<Rational> ds = exp_series(f.denom(), mu + need);
    std::vector<Rational> a(ns.begin() + nu, ns.end());
    std::vector<Rational> b(ds.begin() + mu, ds.end());
    std::vector<Rational> q(need);
    for (int k = 0; k < need; ++k) {
        Rational s = a[k];
        for (int j = 1; j <= k; ++j) s -= b[j] * q[k - j];
        q[k] = s / b[0];
    }
    TruncatedLaurent t;
    t.min_degree = nu - mu;
    t.order = order;
    t.coeffs = std::move(q);
    return t;
}

Rational reg(const RationalFunction& f) {
    if (f.is_zero()) return 0;
    if (f.regular_at_one()) return f.eval(1);
    int mu = pole_order_at_one(f);
    return expand_at_one(f, mu + 2).coefficient(0);
}

RationalFunction invert_z(const RationalFunction& f) {
    if (f.is_zero()) return f;
    int dn = f.numer().degree(), dd = f.denom().degree();
    Poly n = f.numer().reversed(), d = f.denom().reversed();
    // f(1/z) = z^(dd - dn) * rev(n) / rev(d)
    if (dd >= dn) return RationalFunction(n.shifted(dd - dn), d);
    return RationalFunction(n, d.shifted(dn - dd));
}

RationalFunction geometric_resum(long k0, int step, long shift) { return power_geometric(k0, step, shift, 0); }

RationalFunction power_geometric(long k0, int step, long shift, int p) {
    if (step < 1) throw std::invalid_argument("step must be positive");
    if (p < 0) throw std::invalid_argument("negative power");
    // T_0 = z^(step*k0) / (1 - z^step); T_{p+1} = (z/step) T_p'
    Poly one_minus = Poly::constant(1) - Poly::monomial(1, step);
    RationalFunction t = RationalFunction::z_power(static_cast<int>(step * k0)) * RationalFunction(Poly::constant(1), one_minus);
    RationalFunction zs = RationalFunction(Poly::monomial(Rational(1, step), 1), Poly::constant(1));
    for (int i = 0; i < p; ++i) t = zs * t.derivative();
    return t * RationalFunction::z_power(static_cast<int>(shift));
}

RationalFunction power_geometric_below(long hi, int step, long shift, int p) {
    // sum_{k<=hi} k^p z^(s k) = (-1)^p [sum_{j>=-hi} j^p w^(s j)]_{w=1/z}
    RationalFunction t = invert_z(power_geometric(-hi, step, 0, p));
    if (p % 2) t = -t;
    return t * RationalFunction::z_power(static_cast<int>(shift));
}

RationalFunction finite_power_sum(long a, long b, int step, long shift, int p) {
    if (a > b + 1) return -finite_power_sum(b + 1, a - 1, step, shift, p);
    RationalFunction s;
    for (long k = a; k <= b; ++k) {
        mpz_class kp;
        mpz_class kk(static_cast<long>(k));
        mpz_pow_ui(kp.get_mpz_t(), kk.get_mpz_t(), static_cast<unsigned long>(p));
        s += RationalFunction::z_power(static_cast<int>(step * k + shift), Rational(kp));
    }
    return s;
}

}  // namespace waki
