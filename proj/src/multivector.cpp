#include "aksz/multivector.hpp"

#include <algorithm>

#include "aksz/errors.hpp"

namespace aksz {

namespace {

void require_extended(const JetContext& ctx) {
    if (!ctx.is_extended())
        throw ValidationError("operation needs an extended jet context");
}

}  // namespace

Derivation hamiltonian_field(const JetContext& ctx, const LocalFunctional& f) {
    require_extended(ctx);
    Polynomial density = density_of(ctx, f.integrand);
    auto gh = ghost_of(ctx.universe, density);
    if (!gh) throw GradingError("extended bracket needs a ghost-homogeneous functional");
    const bool skew = ctx.variant == MomentumVariant::Skew;

    std::map<VarId, Polynomial> table;
    for (const auto& [key, z] : ctx.formfield_by) {
        VarId pi = ctx.momentum_by.at(key);
        Polynomial dz = euler_lagrange_right(ctx, density, pi);
        if (!dz.is_zero()) table[z] = -dz;
        Polynomial dpi = euler_lagrange_right(ctx, density, z);
        if (!dpi.is_zero()) {
            // Swap-term sign (-1)^{p} relative to the field branch, with p
            // the paired-field parity; fixed once by the adjoint action of
            // Omega_0 reproducing the extended AKSZ differential, and the
            // skew case by the bracket axioms.
            int p = skew ? (z.parity() + 1) & 1 : z.parity();
            table[pi] = p ? -dpi : dpi;
        }
    }
    if (table.empty()) return Derivation(*gh - (skew ? 1 : 0));
    return prolong(ctx, table);
}

LocalFunctional extended_bracket(const JetContext& ctx, const LocalFunctional& f,
                                 const LocalFunctional& g) {
    // Applying the field at form level carries the (-1)^{(|F|+n)n} factor of
    // the defining formula past the theta block.
    Derivation xf = hamiltonian_field(ctx, f);
    return {xf.apply(g.integrand)};
}

LocalFunctional omega0(const JetContext& ctx, const AkszBrst& brst) {
    require_extended(ctx);
    Polynomial density;
    for (const auto& [key, z] : ctx.formfield_by) {
        const Polynomial* sz = brst.s.action(z);
        if (!sz) continue;
        density += -(*sz * Polynomial::variable(ctx.momentum_by.at(key)));
    }
    return {top_form_of(ctx, density)};
}

LocalFunctional s_extended(const JetContext& ctx, const LocalFunctional& omega_0,
                           const LocalFunctional& f) {
    return extended_bracket(ctx, omega_0, f);
}

int momentum_degree(const JetContext& ctx, const Monomial& m) {
    return degree_in_class(ctx.universe, m, DegreeClass::Momentum);
}

int momentum_degree(const JetContext& ctx, const LocalFunctional& f) {
    std::optional<int> deg;
    for (const auto& [m, c] : f.integrand.terms()) {
        int d = momentum_degree(ctx, m);
        if (!deg)
            deg = d;
        else if (*deg != d)
            throw GradingError("functional is not homogeneous in the momenta");
    }
    return deg.value_or(0);
}

LocalFunctional derived_bracket(const JetContext& ctx, const LocalFunctional& v,
                                const std::vector<LocalFunctional>& args) {
    for (const auto& f : args)
        if (momentum_degree(ctx, f) != 0)
            throw ValidationError("derived bracket arguments must be momentum-independent");
    LocalFunctional acc = v;
    Rational factorial = 1;
    for (size_t i = 0; i < args.size(); ++i) {
        acc = extended_bracket(ctx, acc, args[i]);
        factorial *= static_cast<int>(i + 1);
    }
    acc.integrand *= 1 / factorial;
    return acc;
}

const LocalFunctional& LagrangeStructureCandidate::omega(int k) const {
    static const LocalFunctional zero{};
    if (k < 1 || k > static_cast<int>(omegas.size())) return zero;
    return omegas[k - 1];
}

LagrangeStructureCandidate make_candidate(const JetContext& ctx,
                                          std::vector<LocalFunctional> omegas) {
    for (size_t i = 0; i < omegas.size(); ++i) {
        if (omegas[i].integrand.is_zero()) continue;
        int k = static_cast<int>(i) + 1;
        if (momentum_degree(ctx, omegas[i]) != k + 1)
            throw GradingError("Omega_" + std::to_string(k) + " must have momentum degree " +
                               std::to_string(k + 1));
        if (functional_ghost(ctx, omegas[i], 1) != 1)
            throw GradingError("Omega_" + std::to_string(k) + " must carry ghost 1");
    }
    return {std::move(omegas)};
}

LagrangeResidualReport check_lagrange_structure(const JetContext& ctx,
                                                const LocalFunctional& omega_0,
                                                const LagrangeStructureCandidate& cand,
                                                int order) {
    LagrangeResidualReport report;
    for (int m = 1; m <= order; ++m) {
        // r_m = s_E Omega_m + 1/2 sum_{i+j=m, i,j>=1} {Omega_i, Omega_j}.
        LocalFunctional r = s_extended(ctx, omega_0, cand.omega(m));
        for (int i = 1; i < m; ++i) {
            LocalFunctional term = extended_bracket(ctx, cand.omega(i), cand.omega(m - i));
            r.integrand += Rational(1, 2) * term.integrand;
        }
        bool zero = functional_is_zero(ctx, r);
        report.vanishes.push_back(zero);
        if (!zero) report.pass = false;
        report.residuals.push_back(std::move(r));
    }
    return report;
}

namespace {

std::map<int, Polynomial> slice_by_momentum_degree(const JetContext& ctx, const Polynomial& p) {
    std::map<int, Polynomial> out;
    for (const auto& [m, c] : p.terms()) out[momentum_degree(ctx, m)].add_term(m, c);
    return out;
}

}  // namespace

LagrangeStructureCandidate apply_equivalence(const JetContext& ctx,
                                             const LocalFunctional& omega_0,
                                             const LagrangeStructureCandidate& cand,
                                             const std::vector<LocalFunctional>& xis,
                                             int order) {
    LocalFunctional xi{};
    for (size_t i = 0; i < xis.size(); ++i) {
        if (xis[i].integrand.is_zero()) continue;
        if (momentum_degree(ctx, xis[i]) != static_cast<int>(i) + 2)
            throw GradingError("Xi_" + std::to_string(i + 1) + " must have momentum degree " +
                               std::to_string(i + 2));
        xi.integrand += xis[i].integrand;
    }

    LocalFunctional omega = omega_0;
    for (int k = 1; k <= order; ++k) omega.integrand += cand.omega(k).integrand;

    // exp(ad_Xi) Omega with ad_Xi Y = {Y, Xi}_E; each step raises the
    // momentum degree, so the series stops at the requested order.
    const int max_deg = order + 1;
    Polynomial result = omega.integrand;
    LocalFunctional term = omega;
    for (int m = 1; m <= order; ++m) {
        term = extended_bracket(ctx, term, xi);
        term.integrand *= Rational(1, m);
        // Drop momentum degrees beyond the tracked order.
        Polynomial trimmed;
        for (const auto& [mon, c] : term.integrand.terms())
            if (momentum_degree(ctx, mon) <= max_deg) trimmed.add_term(mon, c);
        term.integrand = std::move(trimmed);
        if (term.integrand.is_zero()) break;
        result += term.integrand;
    }

    auto slices = slice_by_momentum_degree(ctx, result);
    std::vector<LocalFunctional> omegas;
    for (int k = 1; k <= order; ++k) {
        LocalFunctional o{};
        if (auto it = slices.find(k + 1); it != slices.end()) o.integrand = it->second;
        omegas.push_back(std::move(o));
    }
    return make_candidate(ctx, std::move(omegas));
}

LocalFunctional functional_field_bracket(const JetContext& ctx, const LocalFunctional& f,
                                         const LocalFunctional& g,
                                         const BracketSpec& target_bracket) {
    const int n = ctx.n;

    // Levi-Civita weighted ladder of variational derivatives, the Eq-34
    // weighting with delta F / delta Psi^A_{list} in place of the momenta.
    auto variational_ladder = [&](const Polynomial& density, VarId a, bool right) {
        const int pa = a.parity();
        Polynomial out;
        for (int k = 0; k <= n; ++k) {
            for (const auto& list : increasing_lists(n, k)) {
                VarId z = ctx.formfield(a, list);
                Polynomial el = right ? euler_lagrange_right(ctx, density, z)
                                      : euler_lagrange(ctx, density, z);
                if (el.is_zero()) continue;
                std::vector<int> comp;
                for (int mu = 0; mu < n; ++mu)
                    if (!std::binary_search(list.begin(), list.end(), mu)) comp.push_back(mu);
                std::vector<int> whole = list;
                whole.insert(whole.end(), comp.begin(), comp.end());
                int eps = levi_civita(whole);
                std::vector<Factor> ths;
                for (int mu : comp) ths.push_back({ctx.thetas[mu], 1});
                auto thm = Monomial::from_factors(ths);
                Rational c = (((n + k * (pa + 1)) % 2) ? -1 : 1) * eps;
                if (thm->first) c = -c;
                out += el * Polynomial::term(thm->second, c);
            }
        }
        return out;
    };

    Polynomial fd = density_of(ctx, f.integrand);
    Polynomial gd = density_of(ctx, g.integrand);

    std::map<VarId, Polynomial> ladders;
    for (VarId a : ctx.target.coordinates) ladders.emplace(a, ladder(ctx, a));

    Polynomial integrand;
    for (const auto& [pair, e] : target_bracket.components()) {
        Polynomial df = variational_ladder(fd, pair.first, true);
        if (df.is_zero()) continue;
        Polynomial dg = variational_ladder(gd, pair.second, false);
        if (dg.is_zero()) continue;
        Polynomial epsi = substitute(ctx.target.universe, ctx.universe, e, ladders);
        integrand += df * epsi * dg;
    }

    // Overall (-1)^{(|F|+n)n} from the defining formula.
    int pf = (functional_ghost(ctx, f, 0) % 2 + 2) % 2;
    if (((pf + n) * n) % 2) integrand = -integrand;
    return {form_part(ctx.universe, integrand, n)};
}

}  // namespace aksz
