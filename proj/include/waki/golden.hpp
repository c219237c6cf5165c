#pragma once

#include "waki/realize.hpp"

#include <string>
#include <vector>

namespace waki {

struct GoldenItem {
    Var target;
    Monomial monomial;
    Rational coeff;
};

struct GoldenEntry {
    GenIndex J;
    int cutoff = 0;
    std::vector<GoldenItem> items;  // displayed monomials plus expanded leading sums
};

struct GoldenMismatch {
    GoldenItem item;
    Rational computed;
};

struct GoldenReport {
    GenIndex J;
    int checked = 0;
    std::vector<GoldenMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

struct GoldenFile {
    std::string series;
    std::string coordinate_order;
    std::vector<GoldenEntry> entries;
    int rejected = 0;
};

GoldenFile load_golden(const Algebra& g, const std::string& path);
// Compares only the monomials listed in the entry.
GoldenReport diff_golden(const Algebra& g, const GoldenEntry& e, const Derivation& d);

}  // namespace waki
