// Command-line driver: loads model files, runs the checks, and emits
// reports. Exit codes: 0 all checks pass, 1 a mathematical check failed,
// 2 usage or spec error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "aksz/cohomology.hpp"
#include "aksz/errors.hpp"
#include "aksz/functional.hpp"
#include "aksz/multivector.hpp"
#include "aksz/report.hpp"
#include "aksz/specfile.hpp"

namespace {

using namespace aksz;

struct Options {
    std::string spec_path;
    std::string json_path;
    int base_dim = -1;
    int jet_order = -1;
    uint64_t seed = 1;
};

int effective_n(const Options& o, const SpecDocument& spec) {
    return o.base_dim > 0 ? o.base_dim : spec.base_dim;
}
int effective_j(const Options& o, const SpecDocument& spec) {
    return o.jet_order >= 0 ? o.jet_order : spec.jet_order;
}

std::string block_label(const BlockSelector& sel) { return sel.describe(); }

void fill_table(RunReport& report, const Universe& u,
                const std::vector<CohomologyReport>& rows) {
    for (const auto& r : rows) {
        RunReport::CohomologyRow row;
        row.block = block_label(r.block);
        row.dim_space = r.dim_space;
        row.dim_cocycles = r.dim_cocycles;
        row.dim_coboundaries = r.dim_coboundaries;
        row.betti = r.betti;
        for (const auto& rep : r.representatives) row.representatives.push_back(rep.to_string(u));
        report.table.push_back(std::move(row));
    }
}

// ---------------------------------------------------------------- check-q

RunReport run_check_q(const Options& o) {
    SpecDocument spec = load_spec(o.spec_path);
    RunReport report;
    report.command = "check-q " + spec.name;
    NilpotencyReport nil = check_nilpotent(spec.target);
    if (nil.pass) {
        report.add("Q^2 = 0 on all coordinates", true);
    } else {
        for (const auto& [v, r] : nil.residuals)
            report.add("Q^2 " + spec.target.universe.info(v).name, false,
                       r.to_string(spec.target.universe));
    }
    return report;
}

// --------------------------------------------------------------- master-eq

RunReport run_master_eq(const Options& o) {
    SpecDocument spec = load_spec(o.spec_path);
    RunReport report;
    report.command = "master-eq " + spec.name;
    if (!spec.target.master_function || !spec.target.bracket)
        throw SpecError(SpecError::Kind::Structure,
                        "master-eq needs a master function and a bracket");
    NilpotencyReport r = check_master_equation(*spec.target.master_function,
                                               *spec.target.bracket, spec.target.universe);
    report.add("1/2 {S,S}_M = 0", r.pass,
               r.pass ? "" : r.scalar_residual.to_string(spec.target.universe));
    return report;
}

// -------------------------------------------------------------- cohomology

struct BlockFlags {
    int ghost_min = 0;
    int ghost_max = 0;
    int max_cdeg = -1;
    int max_pideg = -1;
    int pi_degree = -1;
    int max_total = -1;
    int max_xdeg = -1;
    bool include_constants = false;
};

BlockSelector selector_from(const BlockFlags& f, int ghost) {
    BlockSelector sel;
    sel.ghost = ghost;
    if (f.max_cdeg >= 0) sel.bounds[DegreeClass::Target] = {0, f.max_cdeg};
    if (f.pi_degree >= 0)
        sel.bounds[DegreeClass::Momentum] = {f.pi_degree, f.pi_degree};
    else if (f.max_pideg >= 0)
        sel.bounds[DegreeClass::Momentum] = {0, f.max_pideg};
    if (f.max_total >= 0) sel.bounds[DegreeClass::Total] = {0, f.max_total};
    if (f.max_xdeg >= 0) sel.bounds[DegreeClass::Base] = {0, f.max_xdeg};
    sel.include_constants = f.include_constants;
    return sel;
}

RunReport run_cohomology(const Options& o, const BlockFlags& f, bool lift_target) {
    SpecDocument spec = load_spec(o.spec_path);
    RunReport report;
    report.command = (lift_target ? "multivector-cohomology " : "cohomology ") + spec.name;

    QManifoldSpec target = spec.target;
    if (lift_target) target = cotangent_lift(spec.target, effective_n(o, spec));
    Derivation q = target.q_derivation();

    std::vector<BlockSelector> sels;
    for (int g = f.ghost_min; g <= f.ghost_max; ++g) sels.push_back(selector_from(f, g));
    auto rows = cohomology_blocks(target.universe, target.coordinates, q, sels);
    fill_table(report, target.universe, rows);
    report.add("cohomology blocks computed", true,
               std::to_string(rows.size()) + " block(s)");
    return report;
}

// -------------------------------------------------------------------- aksz

RunReport run_aksz(const Options& o) {
    SpecDocument spec = load_spec(o.spec_path);
    const int n = effective_n(o, spec);
    const int j = effective_j(o, spec);
    RunReport report;
    report.command = "aksz " + spec.name + " n=" + std::to_string(n) +
                     " J=" + std::to_string(j);

    NilpotencyReport nil = check_nilpotent(spec.target);
    if (!nil.pass) {
        for (const auto& [v, r] : nil.residuals)
            report.add("target Q^2 " + spec.target.universe.info(v).name, false,
                       r.to_string(spec.target.universe));
        return report;
    }
    report.add("target Q^2 = 0", true);

    // Two orders of headroom: each application of s consumes one derivative.
    JetContext ctx = build_jet_context(n, spec.target, j + 2);
    AkszBrst brst = aksz_brst(ctx);

    bool all_zero = true;
    int checked = 0;
    for (VarId z : ctx.dyn) {
        for (int order = 0; order <= j; ++order) {
            for (const auto& ms : index_multisets(n, order)) {
                VarId v = ctx.jet_of(z, ms);
                Polynomial r = brst.s.apply(brst.s.apply(Polynomial::variable(v)));
                ++checked;
                if (!r.is_zero()) {
                    all_zero = false;
                    report.add("s^2 " + ctx.universe.info(v).name, false,
                               r.to_string(ctx.universe));
                }
            }
        }
    }
    report.add("s^2 = 0 on every generator to jet order " + std::to_string(j), all_zero,
               std::to_string(checked) + " generators");

    bool commutes = true;
    for (int mu = 0; mu < n; ++mu) {
        Derivation comm = Derivation::commutator(brst.s, ctx.dmu[mu]);
        for (const auto& [v, p] : comm.actions())
            if (!p.is_zero()) commutes = false;
    }
    report.add("[s, d_mu] = 0 within truncation", commutes);

    // Sampled chain map s I(f) = I(Qf), seeded.
    std::mt19937_64 rng(o.seed);
    Derivation q = spec.target.q_derivation();
    std::uniform_int_distribution<size_t> pick(0, spec.target.coordinates.size() - 1);
    bool chain = true;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Factor> fs;
        for (int d = 0; d < 2; ++d) fs.push_back({spec.target.coordinates[pick(rng)], 1});
        auto m = Monomial::from_factors(fs);
        if (!m) continue;
        Polynomial fpoly = Polynomial::term(m->second, m->first ? -1 : 1);
        LocalFunctional lhs{brst.s.apply(pullback(ctx, fpoly).integrand)};
        LocalFunctional rhs = pullback(ctx, q.apply(fpoly));
        if (!functional_equal(ctx, lhs, rhs)) chain = false;
    }
    report.add("sampled chain map s I(f) = I(Qf)", chain,
               "seed " + std::to_string(o.seed));
    return report;
}

// ----------------------------------------------------------------- descent

RunReport run_descent(const Options& o, const std::string& function_expr) {
    SpecDocument spec = load_spec(o.spec_path);
    const int n = effective_n(o, spec);
    const int j = effective_j(o, spec);
    RunReport report;
    report.command = "descent " + spec.name + " [" + function_expr + "]";

    Polynomial f = spec.parse_target_expression(function_expr);
    JetContext ctx = build_jet_context(n, spec.target, j + 2);
    AkszBrst brst = aksz_brst(ctx);
    try {
        DescentLadder ladder = descent_ladder(ctx, brst, f);
        report.add("input is a field-dependent Q-cocycle", true);
        report.add("all " + std::to_string(ladder.forms.size()) + " rung identities hold",
                   true);
        for (int k = 0; k <= n; ++k)
            report.notes.push_back("form degree " + std::to_string(k) + ": " +
                                   ladder.forms[k].to_string(ctx.universe));
    } catch (const ValidationError& e) {
        report.add("input is a field-dependent Q-cocycle", false, e.what());
    }
    return report;
}

// ------------------------------------------------------------------- prop1

RunReport run_prop1(const Options& o, int ghost_min, int ghost_max, int max_degree,
                    int max_cdeg) {
    SpecDocument spec = load_spec(o.spec_path);
    const int n = effective_n(o, spec);
    const int j = effective_j(o, spec);
    RunReport report;
    report.command = "prop1 " + spec.name + " n=" + std::to_string(n);

    JetContext ctx = build_jet_context(n, spec.target, j + 2);
    AkszBrst brst = aksz_brst(ctx);
    Derivation q = spec.target.q_derivation();

    BlockSelector window;
    window.bounds[DegreeClass::Total] = {0, max_degree};
    window.max_jet_order = j;
    window.include_constants = false;

    for (int g = ghost_min; g <= ghost_max; ++g) {
        FunctionalCohomology jet_side = local_functional_cohomology(ctx, brst.s, g, window);

        BlockSelector target_side;
        target_side.ghost = g + n;
        target_side.bounds[DegreeClass::Target] = {0, max_cdeg};
        target_side.include_constants = false;
        CohomologyReport h_q = cohomology_block(spec.target.universe,
                                                spec.target.coordinates, q, target_side);

        bool match = jet_side.dim == h_q.betti;
        report.add("H^" + std::to_string(g) + "(s,F^) = H^" + std::to_string(g + n) +
                       "(Q) within truncation",
                   match,
                   "jet side " + std::to_string(jet_side.dim) + ", target side " +
                       std::to_string(h_q.betti));
    }
    return report;
}

// -------------------------------------------------------------------- lift

RunReport run_lift(const Options& o) {
    SpecDocument spec = load_spec(o.spec_path);
    const int n = effective_n(o, spec);
    RunReport report;
    report.command = "lift " + spec.name + " n=" + std::to_string(n);

    QManifoldSpec lifted = cotangent_lift(spec.target, n);
    report.add("lifted Q_E is nilpotent", check_nilpotent(lifted).pass);
    for (size_t i = spec.target.coordinates.size(); i < lifted.coordinates.size(); ++i) {
        const VarInfo& info = lifted.universe.info(lifted.coordinates[i]);
        report.notes.push_back(info.name + ": ghost " + std::to_string(info.ghost));
    }
    return report;
}

// ----------------------------------------------------------------- lagrange

RunReport run_lagrange(const Options& o, const std::string& omega1_expr, int order,
                       const std::string& variant) {
    SpecDocument spec = load_spec(o.spec_path);
    const int n = effective_n(o, spec);
    const int j = effective_j(o, spec);
    RunReport report;
    report.command = "lagrange " + spec.name + " order=" + std::to_string(order);

    JetContext base = build_jet_context(n, spec.target, j + 2);
    JetContext ext = extend_jet_context(
        base, variant == "skew" ? MomentumVariant::Skew : MomentumVariant::Symmetric);
    AkszBrst brst = aksz_brst(ext);
    LocalFunctional w0 = omega0(ext, brst);

    QManifoldSpec lifted = cotangent_lift(spec.target, n);
    Polynomial expr = evaluate(parse_expression(omega1_expr), spec.lifted_symbols(lifted), {});
    LocalFunctional omega1 = extended_pullback(ext, lifted, expr);
    LagrangeStructureCandidate cand = make_candidate(ext, {omega1});

    LagrangeResidualReport res = check_lagrange_structure(ext, w0, cand, order);
    for (int m = 1; m <= order; ++m) {
        bool ok = res.vanishes[m - 1];
        report.add("master equation residual r_" + std::to_string(m), ok,
                   ok ? "" : res.residuals[m - 1].integrand.to_string(ext.universe));
    }
    return report;
}

// -------------------------------------------------------------- master-action

RunReport run_master_action(const Options& o) {
    SpecDocument spec = load_spec(o.spec_path);
    const int n = effective_n(o, spec);
    // {S,S} runs two layers of Euler-Lagrange derivatives over integrands
    // with first-order jets.
    const int j = std::max(effective_j(o, spec) + 2, 4);
    RunReport report;
    report.command = "master-action " + spec.name + " n=" + std::to_string(n);

    if (!spec.target.master_function || !spec.target.bracket ||
        !spec.target.symplectic_potential)
        throw SpecError(SpecError::Kind::Structure,
                        "master-action needs S, a bracket and a symplectic potential");

    JetContext ctx = build_jet_context(n, spec.target, j);
    LocalFunctional action = build_master_action(ctx);

    auto sg = ghost_of(spec.target.universe, *spec.target.master_function, 0);
    int expected = (sg ? *sg : 0) - n;
    report.add("gh(S) = gh(S_M) - n", functional_ghost(ctx, action, expected) == expected,
               "ghost " + std::to_string(functional_ghost(ctx, action, expected)));

    LocalFunctional ss =
        functional_field_bracket(ctx, action, action, *spec.target.bracket);
    report.add("1/2 {S,S} = 0 as a local functional", functional_is_zero(ctx, ss));

    AkszBrst brst = aksz_brst(ctx);
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<size_t> pick(0, spec.target.coordinates.size() - 1);
    bool generates = true;
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<Factor> fs;
        for (int d = 0; d < 2; ++d) fs.push_back({spec.target.coordinates[pick(rng)], 1});
        auto m = Monomial::from_factors(fs);
        if (!m) continue;
        Polynomial fpoly = Polynomial::term(m->second, m->first ? -1 : 1);
        LocalFunctional lf = pullback(ctx, fpoly);
        LocalFunctional lhs = functional_field_bracket(ctx, action, lf, *spec.target.bracket);
        LocalFunctional rhs{brst.s.apply(lf.integrand)};
        if (!functional_equal(ctx, lhs, rhs)) generates = false;
    }
    report.add("{S, .} = s on sampled functionals", generates,
               "seed " + std::to_string(o.seed));
    return report;
}

int finish(const RunReport& report, const Options& o, double seconds) {
    std::cout << report.to_text();
    if (!o.json_path.empty()) {
        std::ofstream out(o.json_path);
        out << report.to_json();
    }
    std::cerr << "elapsed: " << seconds << " s\n";
    return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AKSZ sigma model checker"};
    app.require_subcommand(1);

    Options o;
    std::string function_expr, omega1_expr = "0", variant = "sym";
    BlockFlags blocks;
    int order = 1;
    int ghost_min = 0, ghost_max = 0, max_degree = 4, max_cdeg = 6;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("spec", o.spec_path, "model file")->required();
        cmd->add_option("--json", o.json_path, "write the machine-readable report here");
        cmd->add_option("--base-dim", o.base_dim, "override the base dimension");
        cmd->add_option("--jet-order", o.jet_order, "override the jet truncation order");
        cmd->add_option("--seed", o.seed, "seed for sampled property checks");
    };

    CLI::App* check_q = app.add_subcommand("check-q", "nilpotency of the target Q");
    add_common(check_q);

    CLI::App* master_eq = app.add_subcommand("master-eq", "1/2 {S,S}_M = 0 on the target");
    add_common(master_eq);

    auto add_block_flags = [&](CLI::App* cmd) {
        cmd->add_option("--ghost", blocks.ghost_min, "ghost number (start)")->required();
        cmd->add_option("--ghost-max", blocks.ghost_max, "ghost number (end, inclusive)");
        cmd->add_option("--max-cdeg", blocks.max_cdeg, "max degree in target coordinates");
        cmd->add_option("--max-pideg", blocks.max_pideg, "max degree in momenta");
        cmd->add_option("--pi-degree", blocks.pi_degree, "exact degree in momenta");
        cmd->add_option("--max-total", blocks.max_total, "max total degree");
        cmd->add_option("--max-xdeg", blocks.max_xdeg, "max degree in base coordinates");
        cmd->add_flag("--include-constants", blocks.include_constants,
                      "keep field-independent monomials");
    };

    CLI::App* coh = app.add_subcommand("cohomology", "Q-cohomology blocks on the target");
    add_common(coh);
    add_block_flags(coh);

    CLI::App* aksz_cmd = app.add_subcommand("aksz", "build the BRST differential, verify s^2");
    add_common(aksz_cmd);

    CLI::App* descent = app.add_subcommand("descent", "descent ladder of a Q-cocycle");
    add_common(descent);
    descent->add_option("--function", function_expr, "target-space expression")->required();

    CLI::App* prop1 = app.add_subcommand("prop1", "compare H(s,F^) with H(Q) blockwise");
    add_common(prop1);
    prop1->add_option("--ghost", ghost_min, "functional ghost (start)")->required();
    prop1->add_option("--ghost-max", ghost_max, "functional ghost (end, inclusive)");
    prop1->add_option("--max-degree", max_degree, "total degree bound for jet blocks");
    prop1->add_option("--max-cdeg", max_cdeg, "degree bound for target blocks");

    CLI::App* lift = app.add_subcommand("lift", "cotangent extension of the target");
    add_common(lift);

    CLI::App* mcoh = app.add_subcommand("multivector-cohomology",
                                        "Q_E-cohomology blocks on the lifted target");
    add_common(mcoh);
    add_block_flags(mcoh);

    CLI::App* lagrange = app.add_subcommand("lagrange", "order-by-order master equation");
    add_common(lagrange);
    lagrange->add_option("--omega1", omega1_expr,
                         "first-order candidate over the lifted target (pi_<family>[i])")
        ->required();
    lagrange->add_option("--order", order, "highest residual order");
    lagrange->add_option("--variant", variant, "sym|skew")
        ->check(CLI::IsMember({"sym", "skew"}));

    CLI::App* maction = app.add_subcommand("master-action", "build S and verify {S,S} = 0");
    add_common(maction);

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    try {
        RunReport report;
        if (check_q->parsed()) report = run_check_q(o);
        if (master_eq->parsed()) report = run_master_eq(o);
        if (coh->parsed()) {
            if (blocks.ghost_max < blocks.ghost_min) blocks.ghost_max = blocks.ghost_min;
            report = run_cohomology(o, blocks, false);
        }
        if (mcoh->parsed()) {
            if (blocks.ghost_max < blocks.ghost_min) blocks.ghost_max = blocks.ghost_min;
            report = run_cohomology(o, blocks, true);
        }
        if (aksz_cmd->parsed()) report = run_aksz(o);
        if (descent->parsed()) report = run_descent(o, function_expr);
        if (prop1->parsed()) {
            if (ghost_max < ghost_min) ghost_max = ghost_min;
            report = run_prop1(o, ghost_min, ghost_max, max_degree, max_cdeg);
        }
        if (lift->parsed()) report = run_lift(o);
        if (lagrange->parsed()) report = run_lagrange(o, omega1_expr, order, variant);
        if (maction->parsed()) report = run_master_action(o);

        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                             .count();
        return finish(report, o, seconds);
    } catch (const SpecError& e) {
        std::cerr << "spec error";
        if (e.line > 0) std::cerr << " at line " << e.line << ", column " << e.column;
        else if (e.column > 0) std::cerr << " at offset " << e.column;
        std::cerr << ": " << e.what() << "\n";
        return 2;
    } catch (const BlockError& e) {
        std::cerr << "block error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
