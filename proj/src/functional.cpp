#include "aksz/functional.hpp"

#include "aksz/errors.hpp"
#include "aksz/linalg.hpp"

namespace aksz {

LocalFunctional make_functional(const JetContext& ctx, Polynomial integrand) {
    for (const auto& [m, c] : integrand.terms())
        if (form_degree_of(ctx.universe, m) != ctx.n)
            throw ValidationError("integrand is not a top horizontal form");
    return {std::move(integrand)};
}

int functional_ghost(const JetContext& ctx, const LocalFunctional& f, int fallback) {
    auto t = total_degree_of(ctx.universe, f.integrand, fallback + ctx.n);
    if (!t) throw GradingError("integrand is not ghost-homogeneous");
    return *t - ctx.n;
}

Polynomial density_of(const JetContext& ctx, const Polynomial& top_form) {
    // Canonical monomials factor as (x part)(theta block)(field part); the
    // x part is even, so stripping the full block needs no sign.
    Polynomial out;
    for (const auto& [m, c] : top_form.terms()) {
        std::vector<Factor> rest;
        int stripped = 0;
        for (const auto& f : m.factors()) {
            if (ctx.universe.info(f.var).kind == VarKind::Theta)
                stripped += f.exp;
            else
                rest.push_back(f);
        }
        if (stripped != ctx.n)
            throw ValidationError("density_of needs a top form");
        out.add_term(Monomial::from_factors(rest)->second, c);
    }
    return out;
}

Polynomial top_form_of(const JetContext& ctx, const Polynomial& density) {
    for (const auto& [m, c] : density.terms())
        if (form_degree_of(ctx.universe, m) != 0)
            throw ValidationError("densities must be theta-free");
    return Polynomial::term(ctx.theta_top(), 1) * density;
}

std::map<VarId, Polynomial> euler_lagrange_all(const JetContext& ctx, const Polynomial& omega) {
    std::map<VarId, Polynomial> out;
    for (VarId z : ctx.dyn) {
        Polynomial el = euler_lagrange(ctx, omega, z);
        if (!el.is_zero()) out.emplace(z, std::move(el));
    }
    return out;
}

bool functional_is_zero(const JetContext& ctx, const LocalFunctional& f) {
    return euler_lagrange_all(ctx, f.integrand).empty();
}

bool functional_equal(const JetContext& ctx, const LocalFunctional& f,
                      const LocalFunctional& g) {
    return functional_is_zero(ctx, {f.integrand - g.integrand});
}

LocalFunctional pullback(const JetContext& ctx, const Polynomial& target_function) {
    std::map<VarId, Polynomial> repl;
    for (VarId a : ctx.target.coordinates) repl.emplace(a, ladder(ctx, a));
    Polynomial pulled = substitute(ctx.target.universe, ctx.universe, target_function, repl);
    return {form_part(ctx.universe, pulled, ctx.n)};
}

LocalFunctional extended_pullback(const JetContext& ctx, const QManifoldSpec& lifted,
                                  const Polynomial& f_e) {
    if (!ctx.is_extended())
        throw ValidationError("extended pullback needs an extended context");
    std::map<VarId, Polynomial> repl;
    const size_t base_coords = ctx.target.coordinates.size();
    if (lifted.coordinates.size() != 2 * base_coords)
        throw ValidationError("lifted target does not match the context target");
    for (size_t i = 0; i < base_coords; ++i) {
        VarId a = ctx.target.coordinates[i];
        if (lifted.coordinates[i] != a)
            throw ValidationError("lifted target does not extend the context target");
        repl.emplace(a, ladder(ctx, a));
        repl.emplace(lifted.coordinates[base_coords + i], momentum_ladder(ctx, a));
    }
    Polynomial pulled = substitute(lifted.universe, ctx.universe, f_e, repl);
    return {form_part(ctx.universe, pulled, ctx.n)};
}

DescentLadder descent_ladder(const JetContext& ctx, const AkszBrst& brst,
                             const Polynomial& target_cocycle) {
    const Polynomial qf = ctx.target.q_derivation().apply(target_cocycle);
    if (!qf.is_zero())
        throw ValidationError("descent ladder needs a Q-cocycle");
    for (const auto& [m, c] : target_cocycle.terms())
        if (m.is_unit())
            throw ValidationError("descent ladder input must have no field-independent term");

    std::map<VarId, Polynomial> repl;
    for (VarId a : ctx.target.coordinates) repl.emplace(a, ladder(ctx, a));
    Polynomial pulled = substitute(ctx.target.universe, ctx.universe, target_cocycle, repl);

    DescentLadder out;
    for (int k = 0; k <= ctx.n; ++k) out.forms.push_back(form_part(ctx.universe, pulled, k));

    for (int k = 0; k <= ctx.n; ++k) {
        Polynomial rung = brst.s.apply(out.forms[k]);
        if (k > 0) rung += horizontal_differential(ctx, out.forms[k - 1]);
        if (!rung.is_zero())
            throw std::logic_error("descent rung identity failed at form degree " +
                                   std::to_string(k));
    }
    return out;
}

LocalFunctional build_master_action(const JetContext& ctx) {
    if (!ctx.target.symplectic_potential || !ctx.target.master_function)
        throw ValidationError(
            "master action needs a symplectic potential and a master function");

    std::map<VarId, Polynomial> repl;
    for (VarId a : ctx.target.coordinates) repl.emplace(a, ladder(ctx, a));

    Polynomial integrand;
    for (VarId a : ctx.target.coordinates) {
        auto it = ctx.target.symplectic_potential->find(a);
        if (it == ctx.target.symplectic_potential->end()) continue;
        Polynomial va = substitute(ctx.target.universe, ctx.universe, it->second, repl);
        integrand += -horizontal_differential(ctx, ladder(ctx, a)) * va;
    }
    integrand +=
        substitute(ctx.target.universe, ctx.universe, *ctx.target.master_function, repl);
    return {form_part(ctx.universe, integrand, ctx.n)};
}

namespace {

// Stacked Euler-Lagrange signature: coordinates (dyn variable, monomial).
struct ElIndexer {
    std::map<std::pair<uint32_t, Monomial>, uint32_t> index;

    SparseVec signature(const JetContext& ctx, const Polynomial& omega) {
        SparseVec v;
        for (VarId z : ctx.dyn) {
            Polynomial el = euler_lagrange(ctx, omega, z);
            for (const auto& [m, c] : el.terms()) {
                auto [it, ins] = index.try_emplace(std::make_pair(z.index(), m),
                                                   static_cast<uint32_t>(index.size()));
                v[it->second] = c;
            }
        }
        return v;
    }
};

}  // namespace

std::optional<Polynomial> functional_exactness_witness(const JetContext& ctx,
                                                       const Derivation& s,
                                                       const Polynomial& omega,
                                                       const BlockSelector& eta_block) {
    std::vector<Monomial> basis = enumerate_block(ctx.universe, ctx.block_vars, eta_block);
    ElIndexer ix;
    std::vector<SparseVec> cols;
    cols.reserve(basis.size());
    for (const Monomial& m : basis)
        cols.push_back(ix.signature(ctx, s.apply(m)));
    SparseVec rhs = ix.signature(ctx, omega);

    auto x = solve(cols, rhs);
    if (!x) return std::nullopt;
    Polynomial eta;
    for (const auto& [j, c] : *x) eta.add_term(basis[j], c);
    return eta;
}

FunctionalCohomology local_functional_cohomology(const JetContext& ctx, const Derivation& s,
                                                 int ghost, BlockSelector window) {
    window.ghost = ghost;
    window.form_degree = ctx.n;
    std::vector<Monomial> w = enumerate_block(ctx.universe, ctx.block_vars, window);
    std::vector<Monomial> v =
        enumerate_block(ctx.universe, ctx.block_vars, window.shifted(-1, 0));

    FunctionalCohomology out;
    out.ghost = ghost;

    ElIndexer ix;
    // Cocycles: kernel of omega -> EL(s omega).
    std::vector<SparseVec> d_cols;
    d_cols.reserve(w.size());
    std::vector<SparseVec> w_sig;
    w_sig.reserve(w.size());
    for (const Monomial& m : w) {
        Polynomial p = Polynomial::term(m, 1);
        d_cols.push_back(ix.signature(ctx, s.apply(p)));
        w_sig.push_back(ix.signature(ctx, p));
    }
    std::vector<SparseVec> kernel = kernel_basis(d_cols);

    // Functional classes are EL signatures; drop the d_H-exact directions by
    // ranking signatures instead of integrands.
    std::vector<SparseVec> z_rows;
    for (const SparseVec& k : kernel) {
        SparseVec sig;
        for (const auto& [j, c] : k)
            for (const auto& [col, val] : w_sig[j]) {
                sig[col] += c * val;
                if (sig[col] == 0) sig.erase(col);
            }
        if (!sig.empty()) z_rows.push_back(std::move(sig));
    }
    const int rank_z = rank(z_rows);
    out.dim_cocycles = rank_z;

    // Images of the lower block can leave the window, so only their
    // intersection with the cocycle class space kills classes:
    // dim H = rank(Z) - dim(Z cap B) = rank(Z stacked with B) - rank(B).
    std::vector<SparseVec> b_rows;
    for (const Monomial& m : v) {
        SparseVec sig = ix.signature(ctx, s.apply(Polynomial::term(m, 1)));
        if (!sig.empty()) b_rows.push_back(std::move(sig));
    }
    const int rank_b = rank(b_rows);
    std::vector<SparseVec> stacked = z_rows;
    stacked.insert(stacked.end(), b_rows.begin(), b_rows.end());
    const int rank_zb = rank(stacked);

    out.dim_coboundaries = rank_z + rank_b - rank_zb;
    out.dim = rank_zb - rank_b;
    return out;
}

}  // namespace aksz
