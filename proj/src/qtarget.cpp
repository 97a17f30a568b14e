#include "aksz/qtarget.hpp"

#include <algorithm>

#include "aksz/errors.hpp"

namespace aksz {

int levi_civita(std::span<const int> indices) {
    int sign = 1;
    for (size_t i = 0; i < indices.size(); ++i) {
        for (size_t j = i + 1; j < indices.size(); ++j) {
            if (indices[i] == indices[j]) return 0;
            if (indices[i] > indices[j]) sign = -sign;
        }
    }
    return sign;
}

Derivation partial(const Universe& u, VarId v) {
    Derivation d(-u.info(v).ghost, -u.info(v).form_degree);
    d.set(v, Polynomial::constant(1));
    return d;
}

Polynomial right_partial(const Universe& u, VarId v, const Polynomial& p) {
    Derivation left = partial(u, v);
    Polynomial out;
    if (!v.parity()) return left.apply(p);
    for (const auto& [m, c] : p.terms()) {
        Polynomial piece = left.apply(m) * c;
        if ((m.parity() + 1) & 1) piece = -piece;  // (-1)^{|m|+1}
        out += piece;
    }
    return out;
}

void BracketSpec::set_component(const Universe& u, VarId a, VarId b, const Polynomial& e) {
    const VarInfo& ia = u.info(a);
    const VarInfo& ib = u.info(b);
    for (const auto& [m, c] : e.terms()) {
        if (ghost_of(u, m) != ia.ghost + ib.ghost + ghost_shift_)
            throw GradingError("bivector component {" + ia.name + "," + ib.name +
                               "} has wrong ghost number");
        if (m.parity() != ((ia.parity() + ib.parity() + parity_) & 1))
            throw GradingError("bivector component {" + ia.name + "," + ib.name +
                               "} has wrong parity");
    }

    const int sa = (ia.parity() + parity_) & 1;
    const int sb = (ib.parity() + parity_) & 1;
    Polynomial mirror = (sa && sb) ? e : -e;  // -(-1)^{(|a|+kappa)(|b|+kappa)} e
    if (a == b && !(e == mirror))
        throw GradingError("diagonal bivector component {" + ia.name + "," + ia.name +
                           "} violates graded symmetry");

    auto put = [&](VarId x, VarId y, const Polynomial& val) {
        auto key = std::make_pair(x, y);
        auto it = bivector_.find(key);
        if (it != bivector_.end()) {
            if (!(it->second == val))
                throw GradingError("conflicting bivector components for {" + u.info(x).name +
                                   "," + u.info(y).name + "}");
        } else if (!val.is_zero()) {
            bivector_.emplace(key, val);
        }
    };
    put(a, b, e);
    put(b, a, mirror);
}

const Polynomial* BracketSpec::component(VarId a, VarId b) const {
    auto it = bivector_.find(std::make_pair(a, b));
    return it == bivector_.end() ? nullptr : &it->second;
}

Polynomial bracket_eval(const Universe& u, const Polynomial& f, const Polynomial& g,
                        const BracketSpec& bracket) {
    Polynomial out;
    for (const auto& [pair, e] : bracket.components()) {
        Polynomial df = right_partial(u, pair.first, f);
        if (df.is_zero()) continue;
        Polynomial dg = partial(u, pair.second).apply(g);
        if (dg.is_zero()) continue;
        out += df * e * dg;
    }
    return out;
}

Derivation hamiltonian_vf(const Universe& u, const Polynomial& s, const BracketSpec& bracket) {
    auto gh = ghost_of(u, s);
    if (!gh) throw GradingError("master function must be ghost-homogeneous");
    Derivation v(*gh + bracket.ghost_shift());
    for (VarId c : bracket.coordinates())
        v.set(c, bracket_eval(u, s, Polynomial::variable(c), bracket));
    return v;
}

Derivation QManifoldSpec::q_derivation() const {
    Derivation q(1);
    for (VarId c : coordinates) {
        auto it = q_action.find(c);
        if (it != q_action.end()) q.set(c, it->second);
    }
    return q;
}

const Polynomial& QManifoldSpec::q_of(VarId v) const {
    static const Polynomial zero;
    auto it = q_action.find(v);
    return it == q_action.end() ? zero : it->second;
}

void validate_qmanifold(const QManifoldSpec& spec) {
    const Universe& u = spec.universe;
    for (VarId c : spec.coordinates) {
        const VarInfo& info = u.info(c);
        const Polynomial& q = spec.q_of(c);
        for (const auto& [m, coeff] : q.terms()) {
            if (ghost_of(u, m) != info.ghost + 1)
                throw GradingError("Q(" + info.name + ") must raise ghost by one");
            if (m.parity() != ((info.parity() + 1) & 1))
                throw GradingError("Q(" + info.name + ") must flip parity");
        }
    }
    if (spec.master_function && spec.bracket) {
        Derivation h = hamiltonian_vf(u, *spec.master_function, *spec.bracket);
        for (VarId c : spec.coordinates) {
            const Polynomial* a = h.action(c);
            Polynomial hc = a ? *a : Polynomial();
            if (!(hc == spec.q_of(c)))
                throw GradingError("Q action on " + u.info(c).name +
                                   " differs from the Hamiltonian vector field of S");
        }
    }
}

namespace {

NilpotencyReport residuals_of(const Derivation& q, const std::vector<VarId>& coords) {
    NilpotencyReport report;
    for (VarId c : coords) {
        const Polynomial* a = q.action(c);
        if (!a) continue;
        Polynomial r = q.apply(*a);  // Q^2 Psi = 1/2 [Q,Q] Psi
        if (!r.is_zero()) {
            report.residuals.emplace(c, std::move(r));
            report.pass = false;
        }
    }
    return report;
}

}  // namespace

NilpotencyReport check_nilpotent(const QManifoldSpec& spec) {
    return residuals_of(spec.q_derivation(), spec.coordinates);
}

NilpotencyReport check_master_equation(const Polynomial& s, const BracketSpec& bracket,
                                       const Universe& u) {
    NilpotencyReport report;
    Polynomial r = bracket_eval(u, s, s, bracket);
    r *= Rational(1, 2);
    report.scalar_residual = r;
    report.pass = r.is_zero();
    return report;
}

QManifoldSpec cotangent_lift(const QManifoldSpec& m, int n) {
    if (!check_nilpotent(m).pass)
        throw ValidationError("cotangent lift requires a nilpotent Q");

    QManifoldSpec lifted;
    lifted.universe = m.universe;
    lifted.coordinates = m.coordinates;

    std::map<VarId, VarId> momentum;
    for (VarId c : m.coordinates) {
        const VarInfo& info = m.universe.info(c);
        VarId pi = lifted.universe.add({.name = "pi(" + info.name + ")",
                                        .ghost = n - info.ghost,
                                        .kind = VarKind::Momentum,
                                        .parent = static_cast<int>(c.index())});
        momentum.emplace(c, pi);
        lifted.coordinates.push_back(pi);
    }

    const Universe& u = lifted.universe;
    BracketSpec bracket(n, -n, lifted.coordinates);
    for (VarId c : m.coordinates)
        bracket.set_component(u, momentum.at(c), c, Polynomial::constant(-1));

    // Q_E Psi^A = Q^A; Q_E Pi_A = -(-1)^{|A|} (dQ^B/dPsi^A) Pi_B.
    Polynomial generator;
    for (VarId c : m.coordinates) {
        lifted.q_action[c] = m.q_of(c);
        generator += m.q_of(c) * Polynomial::variable(momentum.at(c));

        Polynomial on_pi;
        Derivation d = partial(u, c);
        for (VarId b : m.coordinates)
            on_pi += d.apply(m.q_of(b)) * Polynomial::variable(momentum.at(b));
        if (!u.info(c).parity()) on_pi = -on_pi;
        lifted.q_action[momentum.at(c)] = on_pi;
    }
    lifted.bracket = std::move(bracket);
    lifted.master_function = -generator;
    validate_qmanifold(lifted);
    return lifted;
}

}  // namespace aksz
