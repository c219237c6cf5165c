#include "waki/golden.hpp"
#include "waki/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace waki;

namespace {

std::shared_ptr<const Algebra> algebra(const std::string& series) {
    return std::make_shared<const Algebra>(Algebra::build(series));
}

GeneratorSpec generator_arg(const Algebra& g, std::string s) {
    if (s != "k" && s != "d" && s.find(',') == std::string::npos) s += ",0";
    return parse_generator(g, s);
}

GenIndex loop_generator(const Algebra& g, const std::string& s) {
    GeneratorSpec spec = generator_arg(g, s);
    if (spec.kind != GeneratorSpec::Loop) throw std::invalid_argument("expected a loop generator: " + s);
    return spec.j;
}

py::dict reg_value(const std::string& expr, bool invert) {
    RationalFunction f = RationalFunction::parse(expr);
    if (invert) f = invert_z(f);
    py::dict d;
    d["function"] = f.str();
    d["pole_order"] = pole_order_at_one(f);
    d["reg"] = reg(f).get_str();
    return d;
}

std::string realize(const std::string& series, const std::string& generator, int cutoff, const std::string& order,
                    bool doubled) {
    auto g = algebra(series);
    RealizationConfig cfg(g, cutoff, order);
    GeneratorSpec s = generator_arg(*g, generator);
    Derivation d = doubled && s.kind == GeneratorSpec::Loop ? rho_doubled(s.j, cfg) : rho(s, cfg);
    return d.to_json(*g);
}

py::dict certificate(const std::string& series, const std::string& generator, int cutoff) {
    auto g = algebra(series);
    RealizationConfig cfg(g, cutoff);
    Remainder r = widening_remainder(loop_generator(*g, generator), cfg);
    py::dict d;
    d["verdict"] = r.cert.verdict();
    d["widening"] = r.cert.widening;
    d["offset"] = r.cert.offset == INT_MIN ? 0 : r.cert.offset;
    d["slack"] = r.cert.slack;
    d["window"] = r.cert.window;
    d["profile"] = r.cert.profile;
    return d;
}

std::string phi(const std::string& series, int range, int cutoff) {
    auto g = algebra(series);
    return solve_phi(range, RealizationConfig(g, cutoff)).to_json(*g);
}

py::dict first_product(const std::string& series, const std::string& a, const std::string& b, int cutoff, int range) {
    auto g = algebra(series);
    RealizationConfig cfg(g, cutoff);
    PhiSolution s = solve_phi(range, cfg);
    PairReport r = theorem_pair(loop_generator(*g, a), loop_generator(*g, b), s, cfg);
    py::dict d;
    d["raw_scalar"] = r.raw_scalar.str();
    d["regularized"] = r.regularized.get_str();
    d["exact"] = r.exact;
    d["remainder"] = poly_str(*g, r.remainder);
    d["pass"] = r.pass();
    return d;
}

py::dict sl2_example() {
    Algebra g = Algebra::build("A1");
    FockState p = product1(sl2_example_x(g), sl2_example_y(g));
    py::dict d;
    d["raw_scalar"] = p.scalar.str();
    d["regularized"] = reg(p.scalar).get_str();
    d["matches_closed_form"] = p.scalar == sl2_example_scalar();
    return d;
}

py::dict lempi(const std::string& series, const std::string& a, const std::string& b, const std::string& c,
               const std::string& d, int n) {
    auto g = algebra(series);
    FockState x = p_embed(*g, SState::S(g->index(a), g->index(b), n));
    FockState y = p_embed(*g, SState::S(g->index(c), g->index(d), -n));
    LempiResult r = lempi_product(x, y);
    py::dict out;
    out["positive"] = r.positive.get_str();
    out["negative"] = r.negative.get_str();
    out["middle"] = r.middle.get_str();
    out["total"] = r.total().get_str();
    out["exact"] = r.exact;
    return out;
}

std::string suite(const std::string& name, const std::string& series, std::optional<int> cutoff,
                  std::optional<int> range, unsigned seed, int samples) {
    SuiteConfig cfg;
    cfg.series = series;
    cfg.cutoff = cutoff;
    cfg.range = range;
    cfg.seed = seed;
    cfg.samples = samples;
    return run_suite(name, cfg).to_json();
}

py::list golden(const std::string& path, const std::string& series) {
    auto g = algebra(series);
    GoldenFile gf = load_golden(*g, path);
    py::list out;
    for (const GoldenEntry& e : gf.entries) {
        RealizationConfig cfg(g, e.cutoff, gf.coordinate_order);
        GoldenReport r = diff_golden(*g, e, rho(e.J, cfg));
        py::dict d;
        d["generator"] = generator_name(*g, e.J);
        d["cutoff"] = e.cutoff;
        d["checked"] = r.checked;
        d["mismatches"] = r.mismatches.size();
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_waki, m) {
    m.doc() = "Truncated free-field realizations and regularized vertex products";
    m.def("reg", &reg_value, py::arg("expr"), py::arg("invert") = false);
    m.def("realize", &realize, py::arg("series"), py::arg("generator"), py::arg("cutoff") = 4,
          py::arg("order") = "neg,cart,pos", py::arg("doubled") = false);
    m.def("certificate", &certificate, py::arg("series"), py::arg("generator"), py::arg("cutoff") = 8);
    m.def("solve_phi", &phi, py::arg("series") = "A1", py::arg("range") = 2, py::arg("cutoff") = 10);
    m.def("first_product", &first_product, py::arg("series"), py::arg("a"), py::arg("b"), py::arg("cutoff") = 10,
          py::arg("range") = 2);
    m.def("sl2_example", &sl2_example);
    m.def("lempi", &lempi, py::arg("series"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("n"));
    m.def("suite", &suite, py::arg("name"), py::arg("series") = "A1", py::arg("cutoff") = py::none(),
          py::arg("range") = py::none(), py::arg("seed") = 0, py::arg("samples") = 50);
    m.def("suite_names", &suite_names);
    m.def("golden", &golden, py::arg("path"), py::arg("series") = "A2");
}
