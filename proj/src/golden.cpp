#include "waki/golden.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace waki {

namespace {

Monomial parse_monomial(const Algebra& g, const nlohmann::json& arr) {
    Monomial m;
    for (const auto& v : arr) m.push_back(make_var(g.index(v[0].get<std::string>()), v[1].get<int>()));
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

GoldenFile load_golden(const Algebra& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    GoldenFile f;
    f.series = j.value("series", "");
    f.coordinate_order = j.value("coordinate_order", "neg,cart,pos");
    f.rejected = static_cast<int>(j.value("rejected", nlohmann::json::array()).size());
    for (const auto& gen : j["generators"]) {
        GoldenEntry e;
        e.J = {g.index(gen["J"][0].get<std::string>()), gen["J"][1].get<int>()};
        e.cutoff = gen["cutoff"].get<int>();
        for (const auto& t : gen["targets"]) {
            Var target = make_var(g.index(t["target"][0].get<std::string>()), t["target"][1].get<int>());
            for (const auto& term : t["terms"])
                e.items.push_back({target, parse_monomial(g, term["monomial"]),
                                   parse_rational(term["coeff"].get<std::string>())});
        }
        // sum_{k >= from} coeff X^{var,k+shift} D_{target,k}, expanded inside the cutoff
        for (const auto& l : gen["leading"]) {
            int shift = l["shift"].get<int>();
            int a = g.index(l["target"].get<std::string>()), b = g.index(l["var"].get<std::string>());
            Rational c = parse_rational(l["coeff"].get<std::string>());
            for (int k = l["from"].get<int>(); k < e.cutoff && k + shift < e.cutoff; ++k)
                e.items.push_back({make_var(a, k), Monomial{make_var(b, k + shift)}, c});
        }
        f.entries.push_back(std::move(e));
    }
    return f;
}

GoldenReport diff_golden(const Algebra&, const GoldenEntry& e, const Derivation& d) {
    GoldenReport r;
    r.J = e.J;
    for (const auto& item : e.items) {
        ++r.checked;
        Rational c = d.component(item.target).coefficient(item.monomial);
        if (c != item.coeff) r.mismatches.push_back({item, c});
    }
    return r;
}

}  // namespace waki
