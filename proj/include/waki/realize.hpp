#pragma once

#include "waki/liealg.hpp"
#include "waki/weylpoly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace waki {

struct RealizationConfig {
    std::shared_ptr<const Algebra> alg;
    int K = 4;
    // Class order inside each loop level n >= 1 (loop 0 holds positive roots only).
    std::string order = "neg,cart,pos";

    RealizationConfig() = default;
    RealizationConfig(std::shared_ptr<const Algebra> g, int cutoff, std::string ord = "neg,cart,pos")
        : alg(std::move(g)), K(cutoff), order(std::move(ord)) {}
    RealizationConfig with_cutoff(int cutoff) const { return RealizationConfig(alg, cutoff, order); }

    // Ordered coordinates (a,n) of the product of one-parameter subgroups.
    std::vector<GenIndex> coordinates() const;
};

// Affine element with polynomial coefficients, keyed by make_var(a,n).
using PolyElement = std::map<Var, RPoly>;

PolyElement ad_u(const AffineElement& A, const RealizationConfig& cfg);

Derivation rho(const GenIndex& J, const RealizationConfig& cfg);
Derivation rho(const AffineElement& A, const RealizationConfig& cfg);
Derivation rho(const GeneratorSpec& J, const RealizationConfig& cfg);
Derivation rho_d(const RealizationConfig& cfg);

Derivation nu(const GenIndex& J, const RealizationConfig& cfg);

struct Remainder {
    Derivation R;
    GapCertificate cert;
};
Remainder widening_remainder(const GenIndex& J, const RealizationConfig& cfg);

// Exchange map on the doubled variable set.
Derivation tau(const Algebra& g, const Derivation& d);
Derivation rho_doubled(const GenIndex& J, const RealizationConfig& cfg);
// sum_{k in Z} f_{ba}^c X^{b,k-n} D_{c,k} restricted to |k|, |k-n| < K.
Derivation full_quadratic_sum(const GenIndex& J, const RealizationConfig& cfg);
// full_quadratic_sum - rho_doubled restricted to its quadratic monomials X^{b,k-n}.
Derivation compensating_terms(const GenIndex& J, const RealizationConfig& cfg);

void clear_realization_cache();

}  // namespace waki
