#pragma once

#include "waki/splitting.hpp"

#include <optional>
#include <string>
#include <vector>

namespace waki {

struct SuiteConfig {
    std::string series = "A1";
    std::optional<int> cutoff;  // suite default when unset
    std::optional<int> range;   // suite default when unset
    unsigned seed = 0;
    int samples = 50;
    std::string order = "neg,cart,pos";
    std::optional<std::string> phi_path;  // pinned phi instead of solving
};

struct SuiteCase {
    std::string inputs;
    std::string raw_scalar;
    std::string regularized;
    bool pass = true;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::string series;
    int cutoff = 0;
    int range = 0;
    unsigned seed = 0;
    std::vector<SuiteCase> cases;
    std::vector<std::string> notes;

    bool pass() const;
    int failures() const;
    std::string to_json() const;
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

SuiteReport suite_homomorphism(const SuiteConfig& cfg);
SuiteReport suite_widening_gap(const SuiteConfig& cfg);
SuiteReport suite_vertex_lie_axioms(const SuiteConfig& cfg);
SuiteReport suite_zeroth_lemma(const SuiteConfig& cfg);
SuiteReport suite_lempi(const SuiteConfig& cfg);
SuiteReport suite_theorem(const SuiteConfig& cfg);
SuiteReport suite_reg_unit(const SuiteConfig& cfg);

// The (E,2),(F,-2) scalar -14 z^2 - 4 z^8 / (1 - z^2).
RationalFunction sl2_example_scalar();

}  // namespace waki
