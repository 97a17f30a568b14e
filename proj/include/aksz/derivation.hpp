#pragma once

#include <map>
#include <set>

#include "aksz/polynomial.hpp"

namespace aksz {

// Graded derivation given extensionally by its action on generators and
// extended by the left Leibniz rule
//     D(pq) = (Dp)q + (-1)^{|D||p|} p(Dq).
// Parity is the total degree shift (ghost + form shift) mod 2, matching the
// variable convention; the form shift is nonzero only for theta-carrying
// derivations like d_H. Variables absent from the table are annihilated.
// Variables in the undefined set mark actions lost to jet truncation:
// applying the derivation to a polynomial containing one throws
// TruncationError.
class Derivation {
public:
    explicit Derivation(int ghost = 0, int form_shift = 0)
        : ghost_(ghost), form_shift_(form_shift) {}

    int ghost() const { return ghost_; }
    int form_shift() const { return form_shift_; }
    int parity() const { return (((ghost_ + form_shift_) % 2) + 2) % 2; }

    void set(VarId v, Polynomial p) {
        if (p.is_zero())
            action_.erase(v);
        else
            action_[v] = std::move(p);
    }
    void mark_undefined(VarId v) { undefined_.insert(v); }

    const Polynomial* action(VarId v) const {
        auto it = action_.find(v);
        return it == action_.end() ? nullptr : &it->second;
    }
    const std::map<VarId, Polynomial>& actions() const { return action_; }
    const std::set<VarId>& undefined() const { return undefined_; }

    bool is_zero() const { return action_.empty(); }

    Polynomial apply(const Polynomial& p) const;
    Polynomial apply(const Monomial& m) const;

    // [D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, materialized on generators.
    // Generators whose composed action is lost to truncation land in the
    // undefined set of the result.
    static Derivation commutator(const Derivation& d1, const Derivation& d2);

    friend bool operator==(const Derivation& a, const Derivation& b) {
        return a.ghost_ == b.ghost_ && a.form_shift_ == b.form_shift_ && a.action_ == b.action_;
    }

private:
    int ghost_;
    int form_shift_;
    std::map<VarId, Polynomial> action_;
    std::set<VarId> undefined_;
};

}  // namespace aksz
