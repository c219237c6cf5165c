#include "waki/golden.hpp"
#include "waki/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace waki;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text << "\n";
}

GeneratorSpec generator_arg(const Algebra& g, std::string s) {
    if (s != "k" && s != "d" && s.find(',') == std::string::npos) s += ",0";
    return parse_generator(g, s);
}

std::string spec_name(const Algebra& g, const GeneratorSpec& s) {
    if (s.kind == GeneratorSpec::Central) return "k";
    if (s.kind == GeneratorSpec::Derivation) return "d";
    return generator_name(g, s.j);
}

struct RealizeOpts {
    std::string series = "A2";
    std::string generator;
    int cutoff = 4;
    std::string order = "neg,cart,pos";
    std::string golden, json, latex;
    bool doubled = false;
};

int cmd_realize(const RealizeOpts& o) {
    auto g = std::make_shared<const Algebra>(Algebra::build(o.series));
    if (!o.golden.empty()) {
        GoldenFile gf = load_golden(*g, o.golden);
        std::string order = o.order != "neg,cart,pos" || gf.coordinate_order.empty() ? o.order : gf.coordinate_order;
        std::optional<GenIndex> only;
        if (!o.generator.empty()) only = generator_arg(*g, o.generator).j;
        int bad = 0, seen = 0;
        for (const GoldenEntry& e : gf.entries) {
            if (only && !(e.J == *only)) continue;
            ++seen;
            RealizationConfig cfg(g, e.cutoff, order);
            GoldenReport r = diff_golden(*g, e, rho(e.J, cfg));
            std::cout << generator_name(*g, e.J) << " K=" << e.cutoff << ": " << r.checked << " monomials checked, "
                      << r.mismatches.size() << " mismatches\n";
            for (const auto& m : r.mismatches) {
                std::cout << "  target (" << g->name(var_index(m.item.target)) << "," << var_loop(m.item.target)
                          << ") " << monomial_str(*g, m.item.monomial) << ": expected " << m.item.coeff << ", computed "
                          << m.computed << "\n";
            }
            bad += r.ok() ? 0 : 1;
        }
        if (seen == 0) {
            std::cerr << "no golden entry for " << o.generator << "\n";
            return 2;
        }
        return bad == 0 ? 0 : 1;
    }
    if (o.generator.empty()) throw std::invalid_argument("--generator is required without --golden");
    RealizationConfig cfg(g, o.cutoff, o.order);
    GeneratorSpec s = generator_arg(*g, o.generator);
    Derivation d = o.doubled && s.kind == GeneratorSpec::Loop ? rho_doubled(s.j, cfg) : rho(s, cfg);
    std::cout << "rho(" << spec_name(*g, s) << ") at K=" << o.cutoff << ":\n" << d.str(*g) << "\n";
    if (s.kind == GeneratorSpec::Loop && !o.doubled) {
        Remainder r = widening_remainder(s.j, cfg);
        std::cout << "remainder certificate: " << r.cert.verdict() << ", offset "
                  << (r.cert.offset == INT_MIN ? 0 : r.cert.offset) << ", window " << r.cert.window << "\n";
    }
    if (!o.json.empty()) write_file(o.json, d.to_json(*g));
    if (!o.latex.empty()) write_file(o.latex, d.latex(*g));
    return 0;
}

struct VerifyOpts {
    std::string suite;
    SuiteConfig cfg;
    int cutoff = -1, range = -1;
    std::string json, phi;
};

int cmd_verify(VerifyOpts o) {
    if (o.cutoff >= 0) o.cfg.cutoff = o.cutoff;
    if (o.range >= 0) o.cfg.range = o.range;
    if (!o.phi.empty()) o.cfg.phi_path = o.phi;
    std::vector<std::string> suites;
    if (o.suite == "all")
        suites = suite_names();
    else
        suites.push_back(o.suite);
    bool ok = true;
    std::vector<std::string> reports;
    for (const auto& name : suites) {
        SuiteReport r = run_suite(name, o.cfg);
        std::cout << "== " << r.suite << " (" << r.series << ", K=" << r.cutoff << ", N=" << r.range << ", seed "
                  << r.seed << ")\n";
        for (const auto& n : r.notes) std::cout << "   note: " << n << "\n";
        for (const auto& c : r.cases) {
            std::cout << (c.pass ? "   ok   " : "   FAIL ") << c.inputs;
            if (!c.raw_scalar.empty()) std::cout << "  raw " << c.raw_scalar;
            if (!c.regularized.empty()) std::cout << "  reg " << c.regularized;
            if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
            std::cout << "\n";
        }
        std::cout << r.suite << ": " << (r.pass() ? "pass" : "FAIL") << " (" << r.cases.size() - r.failures() << "/"
                  << r.cases.size() << ")\n";
        ok = ok && r.pass();
        reports.push_back(r.to_json());
    }
    if (!o.json.empty()) {
        std::string text = reports.size() == 1 ? reports[0] : "[";
        for (std::size_t i = 0; reports.size() > 1 && i < reports.size(); ++i) text += (i ? "," : "") + reports[i];
        if (reports.size() > 1) text += "]";
        write_file(o.json, text);
    }
    return ok ? 0 : 1;
}

struct ProductOpts {
    std::string series = "A1";
    std::string x, y;
    int n = 1;
    bool sl2_example = false;
};

int cmd_products(const ProductOpts& o) {
    auto g = std::make_shared<const Algebra>(Algebra::build(o.series));
    FockState x, y;
    if (o.sl2_example) {
        x = sl2_example_x(*g);
        y = sl2_example_y(*g);
    } else {
        if (o.x.empty() || o.y.empty()) throw std::invalid_argument("--x and --y are required");
        x = fock_from_json(*g, read_file(o.x));
        y = fock_from_json(*g, read_file(o.y));
    }
    if (o.n != 0 && o.n != 1) throw std::invalid_argument("only the 0th and 1st products exist at depth 1");
    FockState p = o.n == 0 ? product0(x, y) : product1(x, y);
    std::cout << "x = " << x.str(*g) << "\n\ny = " << y.str(*g) << "\n\nx_(" << o.n << ") y = " << p.str(*g) << "\n\n";
    std::cout << "scalar: " << p.scalar.str() << "\n";
    std::cout << "regularized: " << reg(p.scalar) << "\n";
    std::cout << "exact: " << (p.exact ? "yes" : "no") << "\n";
    return 0;
}

struct PhiOpts {
    std::string series = "A1";
    int cutoff = 8, range = 2;
    std::string json;
};

int cmd_phi(const PhiOpts& o) {
    auto g = std::make_shared<const Algebra>(Algebra::build(o.series));
    RealizationConfig cfg(g, o.cutoff);
    PhiSolution phi = solve_phi(o.range, cfg);
    std::cout << phi.unknowns << " unknowns, " << phi.equations << " equations, rank " << phi.rank << ", gauge "
              << phi.gauge << ", residual " << phi.residual_max << (phi.consistent ? "" : ", INCONSISTENT at " + phi.violated)
              << "\n";
    for (const auto& [J, w] : phi.phi) {
        if (w.empty()) continue;
        std::cout << "phi(" << generator_name(*g, J) << ") =";
        for (const auto& [k, p] : w)
            std::cout << " + (" << poly_str(*g, p) << ") dX^{" << g->name(var_index(k)) << "," << var_loop(k) << "}";
        std::cout << "\n";
    }
    if (!o.json.empty()) write_file(o.json, phi.to_json(*g));
    return phi.consistent && phi.residual_max == 0 ? 0 : 1;
}

int cmd_reg(const std::string& expr, bool invert) {
    RationalFunction f = RationalFunction::parse(expr);
    if (invert) f = invert_z(f);
    std::cout << "f = " << f.str() << "\n";
    std::cout << "pole order at z=1: " << pole_order_at_one(f) << "\n";
    std::cout << "reg = " << reg(f) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wakictl: truncated free-field realizations and regularized vertex products"};
    app.require_subcommand(1);

    RealizeOpts ro;
    auto* realize = app.add_subcommand("realize", "Print the realization of a generator or diff it against golden data");
    realize->add_option("--series", ro.series, "A1, A2, ...")->capture_default_str();
    realize->add_option("--generator", ro.generator, "label,n (e.g. a1,0 or E,-2), k or d");
    realize->add_option("--cutoff", ro.cutoff, "truncation order K")->capture_default_str();
    realize->add_option("--order", ro.order, "class order inside each loop level")->capture_default_str();
    realize->add_option("--golden", ro.golden, "golden JSON to diff against");
    realize->add_option("--json", ro.json, "write the derivation as JSON");
    realize->add_option("--latex", ro.latex, "write the derivation as LaTeX");
    realize->add_flag("--doubled", ro.doubled, "realization on the doubled variable set");

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", vo.suite, "suite name or 'all'")
        ->required()
        ->check(CLI::IsMember([] {
            auto v = suite_names();
            v.push_back("all");
            return v;
        }()));
    verify->add_option("--series", vo.cfg.series)->capture_default_str();
    verify->add_option("--cutoff", vo.cutoff, "cutoff K (suite default if omitted)");
    verify->add_option("--range", vo.range, "generator range N (suite default if omitted)");
    verify->add_option("--seed", vo.cfg.seed)->capture_default_str();
    verify->add_option("--samples", vo.cfg.samples, "sampled pairs per suite")->capture_default_str();
    verify->add_option("--order", vo.cfg.order)->capture_default_str();
    verify->add_option("--phi", vo.phi, "pinned phi JSON instead of solving");
    verify->add_option("--json", vo.json, "write the JSON report");

    ProductOpts po;
    auto* products = app.add_subcommand("products", "Compute the 0th or 1st product of two states");
    products->add_option("--series", po.series)->capture_default_str();
    products->add_option("--x", po.x, "left state JSON");
    products->add_option("--y", po.y, "right state JSON");
    products->add_option("--n", po.n, "product index 0 or 1")->capture_default_str();
    products->add_flag("--sl2-example", po.sl2_example, "use the closed-form sl2 states for J_{E,2} and J_{F,-2}");

    PhiOpts fo;
    auto* phi = app.add_subcommand("phi", "Solve for the one-form corrections and print them");
    phi->add_option("--series", fo.series)->capture_default_str();
    phi->add_option("--cutoff", fo.cutoff)->capture_default_str();
    phi->add_option("--range", fo.range)->capture_default_str();
    phi->add_option("--json", fo.json, "write the solution as JSON");

    std::string expr;
    bool invert = false;
    auto* regc = app.add_subcommand("reg", "Regularized value at z=1 of a rational function");
    regc->add_option("expr", expr, "e.g. \"(z^2) / (1 - z^2)\"")->required();
    regc->add_flag("--invert", invert, "apply z -> 1/z first");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*realize) return cmd_realize(ro);
        if (*verify) return cmd_verify(vo);
        if (*products) return cmd_products(po);
        if (*phi) return cmd_phi(fo);
        if (*regc) return cmd_reg(expr, invert);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
