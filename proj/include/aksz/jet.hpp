#pragma once

#include <map>
#include <optional>
#include <vector>

#include "aksz/cohomology.hpp"
#include "aksz/derivation.hpp"
#include "aksz/qtarget.hpp"

namespace aksz {

enum class MomentumVariant { Symmetric, Skew };

// Strictly increasing index lists of size k over 0..n-1.
std::vector<std::vector<int>> increasing_lists(int n, int k);
// Sorted multisets of size k over 0..n-1.
std::vector<std::vector<int>> index_multisets(int n, int k);

// Jet-space field content for an AKSZ model: base coordinates x^mu, thetas,
// formfields Psi^A_{mu1...muk} for every strictly increasing index list,
// their jets up to the truncation order, and (once extended) the conjugate
// momenta or antifields with their jets. The universe extends the target's,
// so target polynomials can be substituted with ladders directly.
struct JetContext {
    Universe universe;
    QManifoldSpec target;
    int n = 1;
    int jet_order = 0;

    std::vector<VarId> base;
    std::vector<VarId> thetas;

    // Order-0 dynamical variables: formfields, then momenta when extended.
    std::vector<VarId> dyn;
    // (dyn variable index, sorted multiset) -> jet variable; the empty
    // multiset maps to the variable itself.
    std::map<std::pair<uint32_t, std::vector<int>>, VarId> jets;
    // (target coordinate index, increasing index list) -> component.
    std::map<std::pair<uint32_t, std::vector<int>>, VarId> formfield_by;
    std::map<std::pair<uint32_t, std::vector<int>>, VarId> momentum_by;
    std::optional<MomentumVariant> variant;

    // x, theta, dynamical variables and jets: everything a block ranges over.
    std::vector<VarId> block_vars;

    std::vector<Derivation> dmu;  // total derivatives, one per base index
    Derivation dH;                // theta^mu d_mu

    VarId formfield(VarId target_coord, const std::vector<int>& list) const;
    VarId momentum(VarId target_coord, const std::vector<int>& list) const;
    VarId jet_of(VarId dyn_var, const std::vector<int>& multiset) const;
    VarId field(const std::string& name) const;  // by display name, dyn and jets only

    bool is_extended() const { return variant.has_value(); }
    Monomial theta_top() const;  // theta^0 ... theta^{n-1}
};

JetContext build_jet_context(int n, const QManifoldSpec& target, int jet_order);
JetContext extend_jet_context(const JetContext& ctx, MomentumVariant variant);

// Complete ladder field: Psi~^A = sum_k Psi^A_{mu1...muk} theta^{mu1}...theta^{muk}
// over increasing lists.
Polynomial ladder(const JetContext& ctx, VarId target_coord);

// Momentum ladder, Levi-Civita weighted:
//   Pi~_A = sum_k (-)^{n + k(|A|+1)} eps_{list,comp} pi_A^{list} theta^{comp}.
Polynomial momentum_ladder(const JetContext& ctx, VarId target_coord);

// d_mu p; rejects polynomials containing jets of the truncation order.
Polynomial total_derivative(const JetContext& ctx, int mu, const Polynomial& p);
Polynomial horizontal_differential(const JetContext& ctx, const Polynomial& p);

// Evolutionary prolongation of an action table on order-0 dynamical
// variables: jets act by d_{(mu)} S. Jets whose prolonged action would
// exceed the truncation are marked undefined.
Derivation prolong(const JetContext& ctx, const std::map<VarId, Polynomial>& table);

struct AkszBrst {
    Derivation s;         // full differential
    Derivation s_minus1;  // spacetime part, from -d_H Psi~
    Derivation s_zero;    // target part, from Q(Psi~)
};

// The AKSZ BRST differential through s Psi~^A = -d_H Psi~^A + Q^A(Psi~),
// expanded component-wise by form degree and prolonged.
AkszBrst aksz_brst(const JetContext& ctx);

// Decomposition by the degree counting form indices minus thetas.
std::map<int, Polynomial> grading_N(const JetContext& ctx, const Polynomial& p);
int n_weight(const JetContext& ctx, const Monomial& m);

// delta omega / delta z = sum_{(mu)} (-)^{|mu|} d_{(mu)} (d omega / d z_{(mu)}),
// left derivatives throughout. z must be an order-0 dynamical variable.
Polynomial euler_lagrange(const JetContext& ctx, const Polynomial& omega, VarId z);

// Right-variational version, d^R omega / d z_{(mu)} termwise.
Polynomial euler_lagrange_right(const JetContext& ctx, const Polynomial& omega, VarId z);

}  // namespace aksz
