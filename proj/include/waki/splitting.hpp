#pragma once

#include "waki/fockreg.hpp"
#include "waki/realize.hpp"

#include <map>
#include <string>
#include <vector>

namespace waki {

// sum_k Q_k(X) dX^k, keyed by the index k.
using OneForm = std::map<Var, RPoly>;

void add_oneform(OneForm& w, Var k, const RPoly& p);
OneForm scaled(const OneForm& w, const Rational& s);

// gamma[-1]-valued part of the double contraction of two realized derivations:
// -sum d_i Q^j d_j d_k P^i dX^k
OneForm anomaly(const Derivation& PA, const Derivation& PB);
OneForm anomaly(const GenIndex& A, const GenIndex& B, const RealizationConfig& cfg);
// Lie derivative L_xi w
OneForm lie_derivative(const Derivation& xi, const OneForm& w);
// iota_xi dw
OneForm iota_d(const Derivation& xi, const OneForm& w);

struct PhiSolution {
    std::map<GenIndex, OneForm> phi;
    int N = 0;
    int K = 0;
    std::string series;
    int unknowns = 0;
    int equations = 0;
    int rank = 0;
    bool consistent = true;
    std::string violated;   // pair and key of the first inconsistent row
    Rational residual_max;  // max |residual| over all constraint equations
    std::string gauge;      // "unique" when the system has full column rank

    const OneForm& at(const GenIndex& J) const;
    std::string to_json(const Algebra& g) const;
};

PhiSolution phi_from_json(const Algebra& g, const std::string& text);

// Multisets of n_+ variables with the given loop sum and root sum.
std::vector<Monomial> weight_monomials(const Algebra& g, int loop, const std::vector<int>& root);

// One-form unknowns of phi(J): index (c,m) with 0 <= m <= -n and a monomial of matching weight.
std::vector<std::pair<Var, Monomial>> phi_basis(const Algebra& g, const GenIndex& J);

// Solves phi([A,B]) - L_{rho A} phi(B) + iota_d(rho B, phi(A)) = anomaly(A,B)
// over all pairs with |n| <= N and n_A + n_B in [-N, 0].
PhiSolution solve_phi(int N, const RealizationConfig& cfg);

// Residuals of the constraint equations for a given phi at cfg.
struct PhiResidual {
    int pairs = 0;
    int failures = 0;
    Rational max_abs;  // largest |coefficient| over all residual one-forms
    std::string first_failure;
};
PhiResidual phi_residual(const PhiSolution& phi, int N, const RealizationConfig& cfg);

// theta(J) = j(rho(J) + phi(J)): nu -> quadratic sums, remainder -> beta part, phi -> one-form part.
FockState embed_theta(const GenIndex& J, const PhiSolution& phi, const RealizationConfig& cfg);
FockState embed_theta(const AffineElement& x, const PhiSolution& phi, const RealizationConfig& cfg);

struct PairReport {
    GenIndex A, B;
    RationalFunction raw_scalar;
    Rational regularized;
    RPoly remainder;  // regularized non-scalar depth-0 part
    bool exact = true;
    bool pass() const { return exact && regularized == 0 && remainder.is_zero(); }
};
PairReport theorem_pair(const GenIndex& A, const GenIndex& B, const PhiSolution& phi, const RealizationConfig& cfg);

// Smallest cutoff at which every first product among generators with |n| <= N is certified exact.
int theorem_cutoff(int N, const RealizationConfig& cfg, const PhiSolution& phi);

// The two sl2-hat states written out in closed form (A1 only).
FockState sl2_example_x(const Algebra& g);
FockState sl2_example_y(const Algebra& g);

struct ZerothReport {
    GenIndex A, B;
    bool pass = true;
    std::string detail;
};
// Compares theta(A)_(0) theta(B) with theta([A,B]) at z = 1: explicit parts on targets < K,
// one-form parts, and the tails of the quadratic sums.
ZerothReport zeroth_pair(const GenIndex& A, const GenIndex& B, const PhiSolution& phi, const RealizationConfig& cfg,
                         int compare_below);

}  // namespace waki
