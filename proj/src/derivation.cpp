#include "aksz/derivation.hpp"

#include "aksz/errors.hpp"

namespace aksz {

Polynomial Derivation::apply(const Monomial& m) const {
    // Left Leibniz over the factor list: D picks each factor in turn and
    // jumps over the prefix, contributing (-1)^{|D| |prefix|}.
    Polynomial out;
    const auto& fs = m.factors();
    int prefix_parity = 0;
    for (size_t i = 0; i < fs.size(); ++i) {
        const Factor& f = fs[i];
        if (undefined_.count(f.var))
            throw TruncationError("derivation undefined on a truncated generator");
        auto it = action_.find(f.var);
        if (it != action_.end() && !it->second.is_zero()) {
            // D(v^e) = e v^{e-1} (Dv); for odd v the exponent is 1.
            Monomial pre = m.slice(0, i);
            if (f.exp > 1) {
                auto merged = Monomial::merge(pre, Monomial::variable(f.var, f.exp - 1));
                pre = merged->second;  // even variable, no sign, never zero
            }
            Polynomial piece = Polynomial::term(pre, f.exp) * it->second *
                               Polynomial::term(m.slice(i + 1, fs.size()), 1);
            if (parity() && (prefix_parity & 1)) piece = -piece;
            out += piece;
        }
        prefix_parity += f.var.parity() ? f.exp : 0;
    }
    return out;
}

Polynomial Derivation::apply(const Polynomial& p) const {
    Polynomial out;
    for (const auto& [m, c] : p.terms()) out += apply(m) * c;
    return out;
}

Derivation Derivation::commutator(const Derivation& d1, const Derivation& d2) {
    Derivation out(d1.ghost() + d2.ghost(), d1.form_shift() + d2.form_shift());
    const bool anti = d1.parity() && d2.parity();

    std::set<VarId> domain;
    for (const auto& [v, p] : d1.action_) domain.insert(v);
    for (const auto& [v, p] : d2.action_) domain.insert(v);
    for (VarId v : d1.undefined_) domain.insert(v);
    for (VarId v : d2.undefined_) domain.insert(v);

    for (VarId v : domain) {
        if (d1.undefined_.count(v) || d2.undefined_.count(v)) {
            out.mark_undefined(v);
            continue;
        }
        try {
            const Polynomial* a2 = d2.action(v);
            const Polynomial* a1 = d1.action(v);
            Polynomial r = a2 ? d1.apply(*a2) : Polynomial();
            Polynomial s = a1 ? d2.apply(*a1) : Polynomial();
            if (!anti) s = -s;
            out.set(v, r + s);
        } catch (const TruncationError&) {
            out.mark_undefined(v);
        }
    }
    return out;
}

}  // namespace aksz
