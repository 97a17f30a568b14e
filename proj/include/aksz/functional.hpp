#pragma once

#include <optional>

#include "aksz/jet.hpp"

namespace aksz {

// Equivalence class of top horizontal forms modulo d_H-exact forms,
// represented by one integrand. Equality is decided by Euler-Lagrange
// derivatives, never by integrand comparison.
struct LocalFunctional {
    Polynomial integrand;  // every term carries form degree n

    bool operator==(const LocalFunctional&) const = default;
};

LocalFunctional make_functional(const JetContext& ctx, Polynomial integrand);

// Ghost number of the functional: ghost + form degree of the integrand
// minus n. Throws on inhomogeneous integrands; zero reports fallback.
int functional_ghost(const JetContext& ctx, const LocalFunctional& f, int fallback = 0);

// Top form <-> density translation: omega = Theta * f with Theta the
// canonical theta block; densities are theta-free.
Polynomial density_of(const JetContext& ctx, const Polynomial& top_form);
Polynomial top_form_of(const JetContext& ctx, const Polynomial& density);

// All Euler-Lagrange derivatives (dynamical variables with a nonzero
// variation only).
std::map<VarId, Polynomial> euler_lagrange_all(const JetContext& ctx, const Polynomial& omega);

// int omega = 0 iff all Euler-Lagrange derivatives vanish.
bool functional_is_zero(const JetContext& ctx, const LocalFunctional& f);
bool functional_equal(const JetContext& ctx, const LocalFunctional& f, const LocalFunctional& g);

// I(f): integrand = f(Psi~)|_n, the top-form part of the ladder pullback.
LocalFunctional pullback(const JetContext& ctx, const Polynomial& target_function);

// I_E(f_E) for functions on the lifted target (cotangent_lift of the same
// target at the base dimension): target coordinates map to ladders, lifted
// momenta to momentum ladders.
LocalFunctional extended_pullback(const JetContext& ctx, const QManifoldSpec& lifted,
                                  const Polynomial& f_e);

struct DescentLadder {
    std::vector<Polynomial> forms;  // f(Psi~)|_k for k = 0..n
};

// Requires Q f = 0 and no field-independent term; verifies every rung
// identity s(forms[k]) + d_H(forms[k-1]) = 0.
DescentLadder descent_ladder(const JetContext& ctx, const AkszBrst& brst,
                             const Polynomial& target_cocycle);

// [(-d_H Psi~^A) V_A(Psi~) + S(Psi~)]|_n; requires the symplectic potential
// and the master function on the target.
LocalFunctional build_master_action(const JetContext& ctx);

// Search eta in the block with EL(omega - s eta) = 0, i.e. a witness that
// [omega] is s-exact modulo d_H within the truncation.
std::optional<Polynomial> functional_exactness_witness(const JetContext& ctx,
                                                       const Derivation& s,
                                                       const Polynomial& omega,
                                                       const BlockSelector& eta_block);

struct FunctionalCohomology {
    int ghost = 0;
    int dim = 0;             // cocycles modulo coboundaries, within truncation
    int dim_cocycles = 0;    // functional classes with EL(s omega) = 0
    int dim_coboundaries = 0;
};

// H^g(s, F^) within the truncated block family: top forms at functional
// ghost g bounded by the selector template (its ghost/form fields are
// overwritten).
FunctionalCohomology local_functional_cohomology(const JetContext& ctx, const Derivation& s,
                                                 int ghost, BlockSelector window);

}  // namespace aksz
