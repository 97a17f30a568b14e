#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "aksz/derivation.hpp"
#include "aksz/polynomial.hpp"

namespace aksz {

// Sign of a permutation of {0..n-1}, or 0 on a repeated index.
// eps_{0...n-1} = +1.
int levi_civita(std::span<const int> indices);

// Left partial derivative with respect to a single variable, as a derivation.
Derivation partial(const Universe& u, VarId v);

// Right partial: d^R_v p = (-1)^{|v|(|m|+1)} d^L_v m, termwise.
Polynomial right_partial(const Universe& u, VarId v, const Polynomial& p);

// Target-space graded bracket declared through its bivector components
// E^{AB} = {Psi^A, Psi^B}. The parity kappa and ghost shift k are declared,
// never inferred. Components are stored for both orders; set_component fills
// the graded mirror E^{BA} = -(-1)^{(|A|+kappa)(|B|+kappa)} E^{AB}.
class BracketSpec {
public:
    BracketSpec(int parity, int ghost_shift, std::vector<VarId> coordinates)
        : parity_(((parity % 2) + 2) % 2),
          ghost_shift_(ghost_shift),
          coordinates_(std::move(coordinates)) {}

    int parity() const { return parity_; }
    int ghost_shift() const { return ghost_shift_; }
    const std::vector<VarId>& coordinates() const { return coordinates_; }

    void set_component(const Universe& u, VarId a, VarId b, const Polynomial& e);
    const Polynomial* component(VarId a, VarId b) const;
    const std::map<std::pair<VarId, VarId>, Polynomial>& components() const {
        return bivector_;
    }

private:
    int parity_;
    int ghost_shift_;
    std::vector<VarId> coordinates_;
    std::map<std::pair<VarId, VarId>, Polynomial> bivector_;
};

// {f, g} = sum_{A,B} (d^R_A f) E^{AB} (d^L_B g).
Polynomial bracket_eval(const Universe& u, const Polynomial& f, const Polynomial& g,
                        const BracketSpec& bracket);

// Hamiltonian vector field v(Psi) = {S, Psi}; ghost(v) = ghost(S) + k.
Derivation hamiltonian_vf(const Universe& u, const Polynomial& s, const BracketSpec& bracket);

struct NilpotencyReport {
    // Nonzero residuals 1/2 [Q,Q] Psi per generator; empty iff pass.
    std::map<VarId, Polynomial> residuals;
    // Scalar residual 1/2 {S,S} for master-equation checks.
    Polynomial scalar_residual;
    bool pass = true;
};

// Target-space data of a Q-manifold: coordinates, the homological vector
// field through its components, and optionally a bracket, a master function
// and a symplectic potential.
struct QManifoldSpec {
    Universe universe;
    std::vector<VarId> coordinates;
    std::map<VarId, Polynomial> q_action;
    std::optional<BracketSpec> bracket;
    std::optional<Polynomial> master_function;
    std::optional<std::map<VarId, Polynomial>> symplectic_potential;

    Derivation q_derivation() const;
    const Polynomial& q_of(VarId v) const;
};

// Construction-time invariants: gh(Q Psi) = gh(Psi) + 1 termwise with parity
// flip; bracket component gradings; Q = {S, .} whenever both are declared.
void validate_qmanifold(const QManifoldSpec& spec);

NilpotencyReport check_nilpotent(const QManifoldSpec& spec);
NilpotencyReport check_master_equation(const Polynomial& s, const BracketSpec& bracket,
                                       const Universe& u);

// Cotangent lift: coordinates {Psi^A, Pi_A} with gh(Pi_A) = -gh(Psi^A) + n,
// bracket {Pi_B, Psi^A} = -delta_B^A, and
//   Q_E = Q^A d/dPsi^A - (-1)^{|A|} (dQ^B/dPsi^A) Pi_B d/dPi_A,
// generated by the master function -Q^A Pi_A.
QManifoldSpec cotangent_lift(const QManifoldSpec& m, int n);

}  // namespace aksz
