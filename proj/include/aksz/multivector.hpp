#pragma once

#include "aksz/functional.hpp"

namespace aksz {

// Evolutionary vector field of a functional univector/multivector through
// the extended bracket:
//   X_F z^a_{(mu)}  = -d_{(mu)} (deltaR f / delta pi_a),
//   X_F pi_a^{(mu)} = -(-1)^{|a|} d_{(mu)} (deltaR f / delta z^a),
// with f the density of F. The skew variant flips the swap sign with the
// antifield parity; both are fixed here and locked by the bracket axioms.
Derivation hamiltonian_field(const JetContext& ctx, const LocalFunctional& f);

// {F, G}_E: the field of F applied to the density of G, as a representative
// modulo d_H.
LocalFunctional extended_bracket(const JetContext& ctx, const LocalFunctional& f,
                                 const LocalFunctional& g);

// Omega_0 = -int sum (s z^alpha) pi_alpha over all formfield components.
LocalFunctional omega0(const JetContext& ctx, const AkszBrst& brst);

// s_E F = {Omega_0, F}_E.
LocalFunctional s_extended(const JetContext& ctx, const LocalFunctional& omega_0,
                           const LocalFunctional& f);

// Derived bracket: V(F_1,...,F_k) = (1/k!) {...{{V,F_1},F_2},...,F_k} for
// pi-independent arguments.
LocalFunctional derived_bracket(const JetContext& ctx, const LocalFunctional& v,
                                const std::vector<LocalFunctional>& args);

int momentum_degree(const JetContext& ctx, const Monomial& m);
// Homogeneous pi-degree of a functional integrand; throws when mixed.
int momentum_degree(const JetContext& ctx, const LocalFunctional& f);

// Lagrange structure candidate Omega = Omega_0 + Omega_1 + ...; omegas[k]
// holds Omega_{k+1}, homogeneous of pi-degree k+2, ghost 1.
struct LagrangeStructureCandidate {
    std::vector<LocalFunctional> omegas;

    const LocalFunctional& omega(int k) const;  // Omega_k for k >= 1, zero if absent
};

LagrangeStructureCandidate make_candidate(const JetContext& ctx,
                                          std::vector<LocalFunctional> omegas);

struct LagrangeResidualReport {
    std::vector<LocalFunctional> residuals;  // r_1 ... r_order
    std::vector<bool> vanishes;              // via functional_equal against zero
    bool pass = true;
};

// r_1 = s_E Omega_1, r_2 = 1/2 {Omega_1,Omega_1} + s_E Omega_2,
// r_3 = {Omega_1,Omega_2} + s_E Omega_3, ... up to the requested order.
LagrangeResidualReport check_lagrange_structure(const JetContext& ctx,
                                                const LocalFunctional& omega_0,
                                                const LagrangeStructureCandidate& cand,
                                                int order);

// Equivalence twist by Xi = sum Xi_k: Omega' = exp(ad_Xi) Omega expanded to
// the requested pi-order, with ad_Xi Y = {Y, Xi}_E; the first-order shift is
// Omega_1' = Omega_1 + s_E Xi_1.
LagrangeStructureCandidate apply_equivalence(const JetContext& ctx,
                                             const LocalFunctional& omega_0,
                                             const LagrangeStructureCandidate& cand,
                                             const std::vector<LocalFunctional>& xis,
                                             int order);

// Jet realization of the target-space bracket on functionals of the
// non-extended complex: superfield variational derivatives (Levi-Civita
// weighted ladders of Euler-Lagrange derivatives) contracted through
// E^{AB}(Psi~).
LocalFunctional functional_field_bracket(const JetContext& ctx, const LocalFunctional& f,
                                         const LocalFunctional& g,
                                         const BracketSpec& target_bracket);

}  // namespace aksz
