#include "aksz/jet.hpp"

#include <algorithm>
#include <sstream>

#include "aksz/errors.hpp"

namespace aksz {

namespace {

std::string index_suffix(const std::vector<int>& list) {
    if (list.empty()) return "";
    std::ostringstream os;
    os << "_{";
    for (size_t i = 0; i < list.size(); ++i) {
        if (i) os << ",";
        os << list[i];
    }
    os << "}";
    return os.str();
}

std::string jet_suffix(const std::vector<int>& multiset) {
    std::ostringstream os;
    os << ".d";
    for (int i : multiset) os << i;
    return os.str();
}

void fill_lists(int n, int k, int from, std::vector<int>& cur,
                std::vector<std::vector<int>>& out, bool strict) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = from; i < n; ++i) {
        cur.push_back(i);
        fill_lists(n, k, strict ? i + 1 : i, cur, out, strict);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> increasing_lists(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    fill_lists(n, k, 0, cur, out, true);
    return out;
}

std::vector<std::vector<int>> index_multisets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    fill_lists(n, k, 0, cur, out, false);
    return out;
}

VarId JetContext::formfield(VarId target_coord, const std::vector<int>& list) const {
    auto it = formfield_by.find({target_coord.index(), list});
    if (it == formfield_by.end())
        throw std::out_of_range("no formfield component for " +
                                universe.info(target_coord).name + index_suffix(list));
    return it->second;
}

VarId JetContext::momentum(VarId target_coord, const std::vector<int>& list) const {
    auto it = momentum_by.find({target_coord.index(), list});
    if (it == momentum_by.end())
        throw std::out_of_range("no momentum component for " +
                                universe.info(target_coord).name + index_suffix(list));
    return it->second;
}

VarId JetContext::jet_of(VarId dyn_var, const std::vector<int>& multiset) const {
    if (multiset.empty()) return dyn_var;
    auto it = jets.find({dyn_var.index(), multiset});
    if (it == jets.end())
        throw TruncationError("jet " + universe.info(dyn_var).name + jet_suffix(multiset) +
                              " exceeds the truncation order");
    return it->second;
}

VarId JetContext::field(const std::string& name) const {
    for (VarId v : dyn)
        if (universe.info(v).name == name) return v;
    for (const auto& [key, v] : jets)
        if (universe.info(v).name == name) return v;
    throw std::out_of_range("no field named " + name);
}

Monomial JetContext::theta_top() const {
    std::vector<Factor> fs;
    for (VarId th : thetas) fs.push_back({th, 1});
    return Monomial::from_factors(fs)->second;
}

namespace {

// Total derivative tables and dH, rebuilt whenever the variable content
// changes.
void build_derivatives(JetContext& ctx) {
    ctx.dmu.clear();
    for (int mu = 0; mu < ctx.n; ++mu) {
        Derivation d(0);
        for (int nu = 0; nu < ctx.n; ++nu)
            if (nu == mu) d.set(ctx.base[nu], Polynomial::constant(1));
        for (VarId z : ctx.dyn) {
            for (int o = 0; o <= ctx.jet_order; ++o) {
                for (const auto& ms : index_multisets(ctx.n, o)) {
                    VarId v = ctx.jet_of(z, ms);
                    if (o == ctx.jet_order) {
                        d.mark_undefined(v);
                        continue;
                    }
                    std::vector<int> next = ms;
                    next.insert(std::lower_bound(next.begin(), next.end(), mu), mu);
                    d.set(v, Polynomial::variable(ctx.jet_of(z, next)));
                }
            }
        }
        ctx.dmu.push_back(std::move(d));
    }

    Derivation dh(0, 1);
    for (int mu = 0; mu < ctx.n; ++mu) {
        const Derivation& d = ctx.dmu[mu];
        Polynomial th = Polynomial::variable(ctx.thetas[mu]);
        for (const auto& [v, p] : d.actions()) {
            Polynomial cur = dh.action(v) ? *dh.action(v) : Polynomial();
            dh.set(v, cur + th * p);
        }
        for (VarId v : d.undefined()) dh.mark_undefined(v);
    }
    ctx.dH = std::move(dh);

    ctx.block_vars.clear();
    ctx.block_vars.insert(ctx.block_vars.end(), ctx.base.begin(), ctx.base.end());
    ctx.block_vars.insert(ctx.block_vars.end(), ctx.thetas.begin(), ctx.thetas.end());
    for (VarId z : ctx.dyn) {
        for (int o = 0; o <= ctx.jet_order; ++o)
            for (const auto& ms : index_multisets(ctx.n, o))
                ctx.block_vars.push_back(ctx.jet_of(z, ms));
    }
}

void add_jets_for(JetContext& ctx, const std::vector<VarId>& order0, VarKind jet_kind) {
    for (int o = 1; o <= ctx.jet_order; ++o) {
        for (VarId z : order0) {
            const VarInfo zi = ctx.universe.info(z);
            for (const auto& ms : index_multisets(ctx.n, o)) {
                VarId v = ctx.universe.add({.name = zi.name + jet_suffix(ms),
                                            .ghost = zi.ghost,
                                            .kind = jet_kind,
                                            .findex = zi.findex,
                                            .order = o,
                                            .parent = static_cast<int>(z.index())});
                ctx.jets.emplace(std::make_pair(z.index(), ms), v);
            }
        }
    }
    for (VarId z : order0) ctx.jets.emplace(std::make_pair(z.index(), std::vector<int>{}), z);
}

}  // namespace

JetContext build_jet_context(int n, const QManifoldSpec& target, int jet_order) {
    if (n < 1 || jet_order < 0) throw ValidationError("need n >= 1 and jet order >= 0");
    validate_qmanifold(target);

    JetContext ctx;
    ctx.universe = target.universe;
    ctx.target = target;
    ctx.n = n;
    ctx.jet_order = jet_order;

    for (int mu = 0; mu < n; ++mu)
        ctx.base.push_back(ctx.universe.add(
            {.name = "x" + std::to_string(mu), .kind = VarKind::BaseCoord}));
    for (int mu = 0; mu < n; ++mu)
        ctx.thetas.push_back(ctx.universe.add({.name = "th" + std::to_string(mu),
                                               .form_degree = 1,
                                               .kind = VarKind::Theta}));

    std::vector<VarId> ff;
    for (VarId a : target.coordinates) {
        const VarInfo ai = ctx.universe.info(a);
        for (int k = 0; k <= n; ++k) {
            for (const auto& list : increasing_lists(n, k)) {
                VarId v = ctx.universe.add({.name = ai.name + index_suffix(list),
                                            .ghost = ai.ghost - k,
                                            .kind = VarKind::FormField,
                                            .findex = k,
                                            .parent = static_cast<int>(a.index())});
                ctx.formfield_by.emplace(std::make_pair(a.index(), list), v);
                ff.push_back(v);
            }
        }
    }
    ctx.dyn = ff;
    add_jets_for(ctx, ff, VarKind::Jet);
    build_derivatives(ctx);
    return ctx;
}

JetContext extend_jet_context(const JetContext& base, MomentumVariant variant) {
    JetContext ctx = base;
    ctx.variant = variant;

    std::vector<VarId> momenta;
    for (VarId a : ctx.target.coordinates) {
        for (int k = 0; k <= ctx.n; ++k) {
            for (const auto& list : increasing_lists(ctx.n, k)) {
                VarId z = ctx.formfield(a, list);
                const VarInfo zi = ctx.universe.info(z);
                const bool skew = variant == MomentumVariant::Skew;
                VarId v = ctx.universe.add(
                    {.name = (skew ? "star(" : "pi(") + zi.name + ")",
                     .ghost = skew ? -zi.ghost + 1 : -zi.ghost,
                     .kind = VarKind::Momentum,
                     .findex = k,
                     .parent = static_cast<int>(z.index())});
                ctx.momentum_by.emplace(std::make_pair(a.index(), list), v);
                momenta.push_back(v);
            }
        }
    }
    ctx.dyn.insert(ctx.dyn.end(), momenta.begin(), momenta.end());
    add_jets_for(ctx, momenta, VarKind::MomentumJet);
    build_derivatives(ctx);
    return ctx;
}

Polynomial ladder(const JetContext& ctx, VarId target_coord) {
    Polynomial out;
    for (int k = 0; k <= ctx.n; ++k) {
        for (const auto& list : increasing_lists(ctx.n, k)) {
            std::vector<Factor> fs = {{ctx.formfield(target_coord, list), 1}};
            for (int mu : list) fs.push_back({ctx.thetas[mu], 1});
            auto m = Monomial::from_factors(fs);
            out.add_term(m->second, m->first ? -1 : 1);
        }
    }
    return out;
}

Polynomial momentum_ladder(const JetContext& ctx, VarId target_coord) {
    if (!ctx.is_extended())
        throw ValidationError("momentum ladder needs an extended context");
    const int n = ctx.n;
    const int pa = target_coord.parity();
    Polynomial out;
    for (int k = 0; k <= n; ++k) {
        for (const auto& list : increasing_lists(n, k)) {
            std::vector<int> comp;
            for (int mu = 0; mu < n; ++mu)
                if (!std::binary_search(list.begin(), list.end(), mu)) comp.push_back(mu);
            std::vector<int> whole = list;
            whole.insert(whole.end(), comp.begin(), comp.end());
            int eps = levi_civita(whole);

            std::vector<Factor> fs = {{ctx.momentum(target_coord, list), 1}};
            for (int mu : comp) fs.push_back({ctx.thetas[mu], 1});
            auto m = Monomial::from_factors(fs);

            int sign = ((n + k * (pa + 1)) % 2) ? -1 : 1;  // (-)^{n + k(|A|+1)}
            Rational c = sign * eps;
            if (m->first) c = -c;
            out.add_term(m->second, c);
        }
    }
    return out;
}

Polynomial total_derivative(const JetContext& ctx, int mu, const Polynomial& p) {
    return ctx.dmu.at(mu).apply(p);
}

Polynomial horizontal_differential(const JetContext& ctx, const Polynomial& p) {
    return ctx.dH.apply(p);
}

Derivation prolong(const JetContext& ctx, const std::map<VarId, Polynomial>& table) {
    std::optional<std::pair<int, int>> shift;
    for (const auto& [z, s] : table) {
        if (std::find(ctx.dyn.begin(), ctx.dyn.end(), z) == ctx.dyn.end())
            throw ValidationError("prolongation table key " + ctx.universe.info(z).name +
                                  " is not an order-0 dynamical variable");
        if (s.is_zero()) continue;
        auto g = ghost_of(ctx.universe, s);
        auto f = form_degree_of(ctx.universe, s);
        if (!g || !f || !s.is_parity_homogeneous())
            throw GradingError("prolongation table entry for " + ctx.universe.info(z).name +
                               " is not grading-homogeneous");
        std::pair<int, int> here{*g - ctx.universe.info(z).ghost, *f};
        if (!shift)
            shift = here;
        else if (*shift != here)
            throw GradingError("prolongation table is not grading-uniform");
    }
    auto [dg, df] = shift.value_or(std::pair<int, int>{1, 0});

    Derivation out(dg, df);
    for (VarId z : ctx.dyn) {
        auto it = table.find(z);
        if (it == table.end() || it->second.is_zero()) continue;
        // BFS through jet orders: d_{(mu)} S by peeling one index at a time.
        std::map<std::vector<int>, std::optional<Polynomial>> acts;
        acts[{}] = it->second;
        out.set(z, it->second);
        for (int o = 1; o <= ctx.jet_order; ++o) {
            for (const auto& ms : index_multisets(ctx.n, o)) {
                std::vector<int> rest(ms.begin() + 1, ms.end());
                const auto& prev = acts.at(rest);
                VarId v = ctx.jet_of(z, ms);
                if (!prev) {
                    acts[ms] = std::nullopt;
                    out.mark_undefined(v);
                    continue;
                }
                try {
                    Polynomial d = total_derivative(ctx, ms.front(), *prev);
                    out.set(v, d);
                    acts[ms] = std::move(d);
                } catch (const TruncationError&) {
                    acts[ms] = std::nullopt;
                    out.mark_undefined(v);
                }
            }
        }
    }
    return out;
}

namespace {

// Match R = sum_L theta^L C_L and solve s(ladder term_L) = theta^L part for
// the component action: U_L = sigma_L (-1)^{|L|} C_L, where sigma_L is the
// stored sign of the canonical ladder term.
void component_table(const JetContext& ctx, VarId a, const Polynomial& r,
                     const std::map<std::pair<uint32_t, std::vector<int>>, VarId>& components,
                     std::map<VarId, Polynomial>& table) {
    // theta monomial -> coefficient polynomial (x and field parts commute
    // with the theta block up to even factors only, so no signs).
    std::map<Monomial, Polynomial> by_theta;
    for (const auto& [m, c] : r.terms()) {
        std::vector<Factor> th, rest;
        for (const auto& f : m.factors()) {
            if (ctx.universe.info(f.var).kind == VarKind::Theta)
                th.push_back(f);
            else
                rest.push_back(f);
        }
        by_theta[Monomial::from_factors(th)->second].add_term(
            Monomial::from_factors(rest)->second, c);
    }

    for (int k = 0; k <= ctx.n; ++k) {
        for (const auto& list : increasing_lists(ctx.n, k)) {
            VarId comp = components.at({a.index(), list});
            std::vector<Factor> fs = {{comp, 1}};
            for (int mu : list) fs.push_back({ctx.thetas[mu], 1});
            int sigma = Monomial::from_factors(fs)->first ? -1 : 1;

            std::vector<Factor> ths;
            for (int mu : list) ths.push_back({ctx.thetas[mu], 1});
            Monomial theta_mon = Monomial::from_factors(ths)->second;

            Polynomial c;
            if (auto it = by_theta.find(theta_mon); it != by_theta.end()) c = it->second;
            if ((k % 2) != 0) c = -c;  // (-1)^{|L|} from jumping the theta block
            if (sigma < 0) c = -c;
            table[comp] = std::move(c);
        }
    }
}

}  // namespace

AkszBrst aksz_brst(const JetContext& ctx) {
    if (!check_nilpotent(ctx.target).pass)
        throw ValidationError("aksz_brst requires a nilpotent target Q");

    std::map<VarId, Polynomial> ladders;
    for (VarId a : ctx.target.coordinates) ladders.emplace(a, ladder(ctx, a));

    std::map<VarId, Polynomial> table_m1, table_0;
    for (VarId a : ctx.target.coordinates) {
        Polynomial dh_part = -horizontal_differential(ctx, ladders.at(a));
        Polynomial q_part =
            substitute(ctx.target.universe, ctx.universe, ctx.target.q_of(a), ladders);
        component_table(ctx, a, dh_part, ctx.formfield_by, table_m1);
        component_table(ctx, a, q_part, ctx.formfield_by, table_0);
    }

    std::map<VarId, Polynomial> table;
    for (const auto& [v, p] : table_m1) table[v] = p;
    for (const auto& [v, p] : table_0) table[v] += p;

    AkszBrst out{prolong(ctx, table), prolong(ctx, table_m1), prolong(ctx, table_0)};
    return out;
}

int n_weight(const JetContext& ctx, const Monomial& m) {
    int w = 0;
    for (const auto& f : m.factors()) {
        const VarInfo& info = ctx.universe.info(f.var);
        if (info.kind == VarKind::Theta)
            w -= f.exp;
        else if (info.kind == VarKind::FormField || info.kind == VarKind::Jet ||
                 info.kind == VarKind::Momentum || info.kind == VarKind::MomentumJet)
            w += f.exp * info.findex;
    }
    return w;
}

std::map<int, Polynomial> grading_N(const JetContext& ctx, const Polynomial& p) {
    std::map<int, Polynomial> out;
    for (const auto& [m, c] : p.terms()) out[n_weight(ctx, m)].add_term(m, c);
    return out;
}

namespace {

Polynomial euler_lagrange_impl(const JetContext& ctx, const Polynomial& omega, VarId z,
                               bool right) {
    if (std::find(ctx.dyn.begin(), ctx.dyn.end(), z) == ctx.dyn.end())
        throw ValidationError("euler_lagrange needs an order-0 dynamical variable");

    std::set<VarId> present;
    for (const auto& [m, c] : omega.terms())
        for (const auto& f : m.factors()) present.insert(f.var);

    Polynomial out;
    for (int o = 0; o <= ctx.jet_order; ++o) {
        for (const auto& ms : index_multisets(ctx.n, o)) {
            VarId v = ctx.jet_of(z, ms);
            if (!present.count(v)) continue;
            Polynomial d = right ? right_partial(ctx.universe, v, omega)
                                 : partial(ctx.universe, v).apply(omega);
            for (int mu : ms) d = total_derivative(ctx, mu, d);
            if (o % 2) d = -d;
            out += d;
        }
    }
    return out;
}

}  // namespace

Polynomial euler_lagrange(const JetContext& ctx, const Polynomial& omega, VarId z) {
    return euler_lagrange_impl(ctx, omega, z, false);
}

Polynomial euler_lagrange_right(const JetContext& ctx, const Polynomial& omega, VarId z) {
    return euler_lagrange_impl(ctx, omega, z, true);
}

}  // namespace aksz
