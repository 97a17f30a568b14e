#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace aksz {

enum class VarKind : uint8_t {
    BaseCoord,     // x^mu
    Theta,         // theta^mu, the odd fiber coordinate identified with dx^mu
    TargetCoord,   // coordinate on the target Q-manifold
    FormField,     // component field Psi^A_{mu1...muk}
    Jet,           // total derivative of a formfield
    Momentum,      // conjugate momentum / antifield component
    MomentumJet,   // total derivative of a momentum
};

// Identifier of a graded variable. Packs the creation index (the global
// total order used for monomial canonicalization) together with the parity
// bit, so Koszul signs never need a registry lookup.
class VarId {
public:
    constexpr VarId() : raw_(0) {}

    static constexpr VarId make(uint32_t index, int parity) {
        return VarId((index << 1) | static_cast<uint32_t>(parity & 1));
    }

    constexpr uint32_t index() const { return raw_ >> 1; }
    constexpr int parity() const { return static_cast<int>(raw_ & 1); }
    constexpr uint32_t raw() const { return raw_; }

    friend constexpr auto operator<=>(VarId a, VarId b) = default;

private:
    explicit constexpr VarId(uint32_t raw) : raw_(raw) {}
    uint32_t raw_;
};

struct VarInfo {
    std::string name;
    int ghost = 0;
    int form_degree = 0;  // 1 exactly for theta variables, else 0
    VarKind kind = VarKind::TargetCoord;
    int findex = 0;   // number of antisymmetric base indices carried
    int order = 0;    // jet differentiation order
    int parent = -1;  // creation index of the parent variable, -1 for none

    // Parity is never stored; it is ghost + form degree mod 2 by definition.
    int parity() const { return (((ghost + form_degree) % 2) + 2) % 2; }
    int total_degree() const { return ghost + form_degree; }

    bool same_declaration(const VarInfo& o) const {
        return name == o.name && ghost == o.ghost && form_degree == o.form_degree &&
               kind == o.kind && findex == o.findex && order == o.order;
    }
};

// Append-only registry of graded variables. Copying a universe and then
// appending keeps all previously issued ids valid; that is how jet contexts
// and cotangent lifts extend a target-space universe.
class Universe {
public:
    VarId add(VarInfo info);

    const VarInfo& info(VarId id) const { return infos_[id.index()]; }
    const VarInfo& info(uint32_t index) const { return infos_[index]; }
    size_t size() const { return infos_.size(); }

    VarId id_at(uint32_t index) const;

    // Linear scan; used by parsers and tests only.
    VarId find(const std::string& name) const;
    bool contains(const std::string& name) const;

private:
    std::vector<VarInfo> infos_;
};

}  // namespace aksz
