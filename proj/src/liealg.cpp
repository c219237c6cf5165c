#include "waki/liealg.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace waki {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Matrix zero_matrix(int N) { return Matrix(N, std::vector<Rational>(N, Rational(0))); }

Matrix commutator(const Matrix& A, const Matrix& B) {
    int N = static_cast<int>(A.size());
    Matrix C = zero_matrix(N);
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
            if (A[i][k] != 0)
                for (int j = 0; j < N; ++j) C[i][j] += A[i][k] * B[k][j];
            if (B[i][k] != 0)
                for (int j = 0; j < N; ++j) C[i][j] -= B[i][k] * A[k][j];
        }
    return C;
}

std::string root_name(int i, int j) {
    std::ostringstream os;
    if (i < j) {
        for (int k = i; k < j; ++k) os << (k > i ? "+" : "") << "a" << k + 1;
    } else {
        for (int k = j; k < i; ++k) os << "-a" << k + 1;
    }
    return os.str();
}

}  // namespace

Algebra Algebra::build(const std::string& series) {
    if (series.size() < 2 || (series[0] != 'A' && series[0] != 'a'))
        throw std::invalid_argument("unsupported series: " + series);
    std::string digits = series.substr(1);
    if (!digits.empty() && digits.front() == '(' && digits.back() == ')') digits = digits.substr(1, digits.size() - 2);
    for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw std::invalid_argument("unsupported series: " + series);
    return build_rank(std::stoi(digits));
}

Algebra Algebra::build_rank(int r) {
    if (r < 1) throw std::invalid_argument("rank must be positive");
    Algebra g;
    g.rank_ = r;
    g.series_ = "A" + std::to_string(r);
    int N = r + 1;

    std::vector<std::pair<int, int>> pos, neg;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i < j) pos.emplace_back(i, j);
            if (i > j) neg.emplace_back(i, j);
        }
    auto by_height = [](const std::pair<int, int>& x, const std::pair<int, int>& y) {
        int hx = std::abs(x.second - x.first), hy = std::abs(y.second - y.first);
        if (hx != hy) return hx < hy;
        return std::min(x.first, x.second) < std::min(y.first, y.second);
    };
    std::sort(pos.begin(), pos.end(), by_height);
    std::sort(neg.begin(), neg.end(), by_height);

    auto push_root = [&](int i, int j) {
        g.names_.push_back(root_name(i, j));
        g.kind_.push_back(i < j ? 1 : -1);
        g.height_.push_back(j - i);
        g.ij_.emplace_back(i, j);
        std::vector<int> v(r, 0);
        for (int k = std::min(i, j); k < std::max(i, j); ++k) v[k] = i < j ? 1 : -1;
        g.rootvec_.push_back(v);
    };
    for (auto [i, j] : pos) push_root(i, j);
    for (int i = 1; i <= r; ++i) {
        g.names_.push_back(std::to_string(i));
        g.kind_.push_back(0);
        g.height_.push_back(0);
        g.ij_.emplace_back(i - 1, i - 1);
        g.rootvec_.emplace_back(r, 0);
    }
    for (auto [i, j] : neg) push_root(i, j);

    int D = g.dim();
    g.mirror_.resize(D);
    for (int a = 0; a < D; ++a) {
        if (g.is_cartan(a)) {
            g.mirror_[a] = a;
            continue;
        }
        auto [i, j] = g.ij_[a];
        for (int b = 0; b < D; ++b)
            if (g.is_root(b) && g.ij_[b] == std::make_pair(j, i)) g.mirror_[a] = b;
    }

    std::vector<Matrix> mats;
    for (int a = 0; a < D; ++a) mats.push_back(g.matrix(a));

    // Traceless diagonal diag(d_1..d_N) = sum_i c_i H_i with c_i = d_1 + ... + d_i.
    auto decompose = [&](const Matrix& M) {
        std::vector<std::pair<int, Rational>> out;
        for (int a = 0; a < D; ++a) {
            if (!g.is_root(a)) continue;
            auto [i, j] = g.ij_[a];
            if (M[i][j] != 0) out.emplace_back(a, M[i][j]);
        }
        Rational c = 0;
        for (int i = 1; i <= r; ++i) {
            c += M[i - 1][i - 1];
            if (c != 0) out.emplace_back(static_cast<int>(pos.size()) + i - 1, c);
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    g.f_.assign(D * D, {});
    g.kappa_.assign(D * D, Rational(0));
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            g.f_[a * D + b] = decompose(commutator(mats[a], mats[b]));
            Rational t = 0;
            for (int i = 0; i < N; ++i)
                for (int k = 0; k < N; ++k) t += mats[a][i][k] * mats[b][k][i];
            g.kappa_[a * D + b] = t;
        }
    return g;
}

int Algebra::index(const std::string& raw) const {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (rank_ == 1) {
        if (s == "E" || s == "a" || s == "alpha") return index("a1");
        if (s == "F" || s == "-a" || s == "-alpha") return index("-a1");
        if (s == "H" || s == "h") return index("1");
    }
    for (int a = 0; a < dim(); ++a)
        if (names_[a] == s) return a;
    throw std::invalid_argument("unknown index: " + raw);
}

Rational Algebra::f(int a, int b, int c) const {
    for (const auto& [cc, v] : f(a, b))
        if (cc == c) return v;
    return 0;
}

std::vector<std::vector<Rational>> Algebra::matrix(int a) const {
    int N = rank_ + 1;
    Matrix M = zero_matrix(N);
    auto [i, j] = ij_.at(a);
    if (is_root(a)) {
        M[i][j] = 1;
    } else {
        M[i][i] = 1;
        M[i + 1][i + 1] = -1;
    }
    return M;
}

std::string Algebra::to_json() const {
    nlohmann::json j;
    j["series"] = series_;
    j["rank"] = rank_;
    for (int a = 0; a < dim(); ++a) {
        nlohmann::json e;
        e["name"] = names_[a];
        e["kind"] = is_cartan(a) ? "cartan" : (is_positive(a) ? "positive" : "negative");
        e["height"] = height_[a];
        e["eta"] = eta(a);
        e["root"] = rootvec_[a];
        j["indices"].push_back(e);
    }
    for (int a = 0; a < dim(); ++a)
        for (int b = 0; b < dim(); ++b) {
            for (const auto& [c, v] : f(a, b))
                j["structure_constants"].push_back({names_[a], names_[b], names_[c], v.get_str()});
            if (kappa(a, b) != 0) j["kappa"].push_back({names_[a], names_[b], kappa(a, b).get_str()});
        }
    return j.dump(2);
}

bool in_plus(const Algebra& g, int a, int n) { return n >= 1 || (n == 0 && g.is_positive(a)); }
bool in_minus(const Algebra& g, int a, int n) { return n <= -1 || (n == 0 && g.is_negative(a)); }

Membership membership(const Algebra& g, int a, int n) {
    if (in_plus(g, a, n)) return Membership::Plus;
    if (in_minus(g, a, n)) return Membership::Minus;
    return Membership::Neither;
}

GeneratorSpec parse_generator(const Algebra& g, const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '(' && ch != ')' && ch != 'J' && ch != '_' &&
            ch != '{' && ch != '}')
            s += ch;
    GeneratorSpec spec;
    if (s == "k") {
        spec.kind = GeneratorSpec::Central;
        return spec;
    }
    if (s == "d") {
        spec.kind = GeneratorSpec::Derivation;
        return spec;
    }
    auto comma = s.rfind(',');
    if (comma == std::string::npos) throw std::invalid_argument("generator needs the form label,n: " + raw);
    spec.j.a = g.index(s.substr(0, comma));
    spec.j.n = std::stoi(s.substr(comma + 1));
    return spec;
}

std::string generator_name(const Algebra& g, const GenIndex& j) {
    return "J_{" + g.name(j.a) + "," + std::to_string(j.n) + "}";
}

AffineElement AffineElement::generator(int a, int n, const Rational& c) {
    AffineElement x;
    x.add({a, n}, c);
    return x;
}

AffineElement AffineElement::central(const Rational& c) {
    AffineElement x;
    x.k = c;
    return x;
}

AffineElement AffineElement::derivation(const Rational& c) {
    AffineElement x;
    x.d = c;
    return x;
}

bool AffineElement::is_zero() const { return loop.empty() && k == 0 && d == 0; }

void AffineElement::add(const GenIndex& j, const Rational& c) {
    if (c == 0) return;
    auto it = loop.find(j);
    if (it == loop.end()) {
        loop.emplace(j, c);
        return;
    }
    it->second += c;
    if (it->second == 0) loop.erase(it);
}

AffineElement& AffineElement::operator+=(const AffineElement& o) {
    for (const auto& [j, c] : o.loop) add(j, c);
    k += o.k;
    d += o.d;
    return *this;
}

AffineElement operator*(const Rational& s, const AffineElement& a) {
    AffineElement r;
    if (s == 0) return r;
    for (const auto& [j, c] : a.loop) r.loop.emplace(j, s * c);
    r.k = s * a.k;
    r.d = s * a.d;
    return r;
}

std::string AffineElement::str(const Algebra& g) const {
    std::ostringstream os;
    bool first = true;
    auto term = [&](const Rational& c, const std::string& label) {
        os << (first ? "" : " + ") << "(" << c.get_str() << ")" << label;
        first = false;
    };
    for (const auto& [j, c] : loop) term(c, generator_name(g, j));
    if (k != 0) term(k, "k");
    if (d != 0) term(d, "d");
    if (first) os << "0";
    return os.str();
}

AffineElement affine_bracket(const Algebra& g, const AffineElement& x, const AffineElement& y) {
    AffineElement r;
    for (const auto& [jx, cx] : x.loop)
        for (const auto& [jy, cy] : y.loop) {
            Rational c = cx * cy;
            for (const auto& [cc, v] : g.f(jx.a, jy.a)) r.add({cc, jx.n + jy.n}, c * v);
            if (jx.n + jy.n == 0) r.k += c * jx.n * g.kappa(jx.a, jy.a);
        }
    if (x.d != 0)
        for (const auto& [j, c] : y.loop) r.add(j, x.d * c * j.n);
    if (y.d != 0)
        for (const auto& [j, c] : x.loop) r.add(j, -y.d * c * j.n);
    return r;
}

AffineElement cartan_involution(const Algebra& g, const AffineElement& x) {
    AffineElement r;
    for (const auto& [j, c] : x.loop) r.add({g.mirror(j.a), -j.n}, c * g.mirror_sign(j.a));
    r.k = x.k;
    r.d = x.d;
    return r;
}

AffineElement height_filter(const AffineElement& x, int K) {
    if (K < 1) throw std::invalid_argument("cutoff must be positive");
    AffineElement r = x;
    for (auto it = r.loop.begin(); it != r.loop.end();)
        it = it->first.n >= K ? r.loop.erase(it) : std::next(it);
    return r;
}

std::vector<GenIndex> n_plus_basis(const Algebra& g, int K) {
    std::vector<GenIndex> out;
    for (int n = 0; n < K; ++n)
        for (int a = 0; a < g.dim(); ++a)
            if (in_plus(g, a, n)) out.push_back({a, n});
    return out;
}

}  // namespace waki
