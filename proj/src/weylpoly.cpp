#include "waki/weylpoly.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace waki {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

std::string var_str(const Algebra& g, Var v, const char* letter) {
    return std::string(letter) + "^{" + g.name(var_index(v)) + "," + std::to_string(var_loop(v)) + "}";
}

namespace {

template <class Emit>
void for_each_power(const Monomial& m, Emit emit) {
    for (std::size_t i = 0; i < m.size();) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        emit(m[i], static_cast<int>(j - i));
        i = j;
    }
}

template <class C, class CoefStr>
std::string poly_to_str(const Algebra& g, const LoopPoly<C>& p, const char* letter, CoefStr cs) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        os << (first ? "" : " + ");
        first = false;
        std::string co = cs(c);
        if (m.empty()) {
            os << co;
        } else {
            if (co != "1") os << (co == "-1" ? "-" : co);
            os << monomial_str(g, m, letter);
        }
    }
    return os.str();
}

}  // namespace

std::string monomial_str(const Algebra& g, const Monomial& m, const char* letter) {
    if (m.empty()) return "1";
    std::string s;
    for_each_power(m, [&](Var v, int k) {
        if (k == 1)
            s += var_str(g, v, letter);
        else
            s += "(" + var_str(g, v, letter) + ")^" + std::to_string(k);
    });
    return s;
}

std::string monomial_latex(const Algebra& g, const Monomial& m, const char* letter) {
    if (m.empty()) return "";
    std::string s;
    for_each_power(m, [&](Var v, int k) {
        std::string name = g.name(var_index(v));
        std::string label;
        for (std::size_t i = 0; i < name.size(); ++i) {
            if (name[i] == 'a' && i + 1 < name.size() && std::isdigit(static_cast<unsigned char>(name[i + 1])))
                label += "\\alpha_";
            else
                label += name[i];
        }
        std::string base = std::string(letter) + "^{" + label + "," + std::to_string(var_loop(v)) + "}";
        s += k == 1 ? base : "(" + base + ")^{" + std::to_string(k) + "}";
    });
    return s;
}

std::string poly_str(const Algebra& g, const RPoly& p, const char* letter) {
    return poly_to_str(g, p, letter, [](const Rational& c) {
        std::string s = c.get_str();
        return c.get_den() == 1 ? s : "(" + s + ")";
    });
}

std::string poly_str(const Algebra& g, const ZPoly& p, const char* letter) {
    return poly_to_str(g, p, letter, [](const RationalFunction& c) {
        if (c.is_constant()) {
            Rational v = c.constant_value();
            std::string s = v.get_str();
            return v.get_den() == 1 ? s : "(" + s + ")";
        }
        return "[" + c.str() + "]";
    });
}

std::string poly_latex(const Algebra& g, const RPoly& p, const char* letter) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = abs(c);
        os << (c < 0 ? "-" : (first ? "" : "+"));
        first = false;
        if (a != 1 || m.empty()) {
            if (a.get_den() == 1)
                os << a.get_num().get_str();
            else
                os << "\\frac{" << a.get_num().get_str() << "}{" << a.get_den().get_str() << "}";
        }
        os << monomial_latex(g, m, letter);
    }
    return os.str();
}

// ------------------------------------------------------------ Derivation

const RPoly& Derivation::component(Var target) const {
    static const RPoly zero;
    auto it = c_.find(target);
    return it == c_.end() ? zero : it->second;
}

void Derivation::add(Var target, const RPoly& p) {
    if (p.is_zero()) return;
    auto& slot = c_[target];
    slot += p;
    if (slot.is_zero()) c_.erase(target);
}

void Derivation::add_term(Var target, const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto& slot = c_[target];
    slot.add(m, c);
    if (slot.is_zero()) c_.erase(target);
}

RPoly Derivation::apply(const RPoly& f) const {
    RPoly r;
    for (Var v : f.variables()) {
        auto it = c_.find(v);
        if (it == c_.end()) continue;
        r += it->second * f.derivative(v);
    }
    return r;
}

Derivation Derivation::operator-() const {
    Derivation r(K_, degree_);
    for (const auto& [t, p] : c_) r.c_.emplace(t, -p);
    return r;
}

Derivation& Derivation::operator+=(const Derivation& o) {
    for (const auto& [t, p] : o.c_) add(t, p);
    return *this;
}

Derivation& Derivation::operator-=(const Derivation& o) {
    for (const auto& [t, p] : o.c_) add(t, -p);
    return *this;
}

Derivation operator*(const Rational& s, const Derivation& d) {
    Derivation r(d.K_, d.degree_);
    if (s == 0) return r;
    for (const auto& [t, p] : d.c_) r.c_.emplace(t, s * p);
    return r;
}

Derivation Derivation::truncated(int K, bool doubled) const {
    Derivation r(K, degree_);
    for (const auto& [t, p] : c_) {
        int m = var_loop(t);
        if (m >= K || (doubled && m <= -K)) continue;
        r.c_.emplace(t, p);
    }
    return r;
}

std::string Derivation::str(const Algebra& g) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, p] : c_) {
        os << (first ? "" : "\n") << "D_{" << g.name(var_index(t)) << ","
           << var_loop(t) << "}: " << poly_str(g, p);
        first = false;
    }
    return os.str();
}

std::string Derivation::latex(const Algebra& g) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    for (const auto& [t, p] : c_) {
        std::string name = g.name(var_index(t));
        std::string label;
        for (std::size_t i = 0; i < name.size(); ++i)
            label += (name[i] == 'a' && i + 1 < name.size()) ? std::string("\\alpha_") : std::string(1, name[i]);
        os << "&+\\Big(" << poly_latex(g, p) << "\\Big)D_{" << label << "," << var_loop(t) << "}\\nonumber\\\\\n";
    }
    return os.str();
}

std::string Derivation::to_json(const Algebra& g) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [t, p] : c_) {
        nlohmann::json e;
        e["target"] = {g.name(var_index(t)), var_loop(t)};
        nlohmann::json poly = nlohmann::json::array();
        for (const auto& [m, c] : p.terms()) {
            nlohmann::json mono = nlohmann::json::array();
            for (Var v : m) mono.push_back({g.name(var_index(v)), var_loop(v)});
            poly.push_back({c.get_str(), mono});
        }
        e["poly"] = poly;
        arr.push_back(e);
    }
    return arr.dump(2);
}

Derivation derivation_commutator(const Derivation& a, const Derivation& b) {
    if (a.cutoff() != b.cutoff()) throw std::invalid_argument("cutoff mismatch in derivation commutator");
    Derivation r(a.cutoff(), a.degree() + b.degree());
    // [P, Q]^j = P^i d_i Q^j - Q^i d_i P^j
    for (const auto& [j, q] : b.components()) r.add(j, a.apply(q));
    for (const auto& [j, p] : a.components()) r.add(j, -b.apply(p));
    return r;
}

namespace {

GapCertificate build_certificate(const Derivation& d, int slack, bool doubled) {
    GapCertificate cert;
    cert.window = d.cutoff();
    cert.slack = slack;
    cert.offset = INT_MIN;
    for (const auto& [t, p] : d.components()) {
        int m = var_loop(t);
        int key = doubled ? std::abs(m) : m;
        int mx = doubled ? p.max_abs_loop() : p.max_loop();
        auto it = cert.profile.find(key);
        if (it == cert.profile.end())
            cert.profile.emplace(key, mx);
        else
            it->second = std::max(it->second, mx);
    }
    for (const auto& [m, mx] : cert.profile) {
        if (mx == INT_MIN) continue;
        cert.offset = std::max(cert.offset, mx - ceil_half(m));
        if (m < d.cutoff() && mx > ceil_half(m) + slack) cert.widening = false;
    }
    if (cert.offset == INT_MIN) cert.offset = 0;
    return cert;
}

}  // namespace

GapCertificate gap_profile(const Derivation& d, int slack) { return build_certificate(d, slack, false); }

GapCertificate gap_profile(const Derivation& d) { return build_certificate(d, std::max(0, -d.degree()), false); }

GapCertificate gap_profile_doubled(const Derivation& d, int slack) { return build_certificate(d, slack, true); }

}  // namespace waki
