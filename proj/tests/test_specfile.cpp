#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aksz/errors.hpp"
#include "aksz/expr.hpp"
#include "aksz/functional.hpp"
#include "aksz/specfile.hpp"
#include "test_util.hpp"

using namespace aksz;
using namespace aksz::testutil;

#ifndef AKSZ_SPECS
#define AKSZ_SPECS "specs"
#endif

namespace {
std::string spec_path(const std::string& name) { return std::string(AKSZ_SPECS) + "/" + name; }
}  // namespace

TEST_CASE("bundled su(2) Chern-Simons spec: 3 ghost-1 coordinates, Q from eps") {
    SpecDocument spec = load_spec(spec_path("cs_su2.json"));
    CHECK(spec.base_dim == 3);
    CHECK(spec.target.coordinates.size() == 3);
    for (VarId c : spec.target.coordinates)
        CHECK(spec.target.universe.info(c).ghost == 1);

    // Q c0 = c1 c2 from 1/2 eps.
    VarId c0 = spec.coordinate("c", 0);
    Polynomial expected = mono({{spec.coordinate("c", 1), 1}, {spec.coordinate("c", 2), 1}});
    CHECK(spec.target.q_of(c0) == expected);
    CHECK(check_nilpotent(spec.target).pass);
}

TEST_CASE("all bundled specs load and validate") {
    for (const char* name : {"cs_su2.json", "psm_su2.json", "bf_su2_n2.json",
                             "bf_su2_n3.json", "bfv_toy.json", "abelian_n2.json"}) {
        SpecDocument spec = load_spec(spec_path(name));
        CHECK(check_nilpotent(spec.target).pass);
    }
    // The control spec loads but fails nilpotency.
    SpecDocument broken = load_spec(spec_path("broken_jacobi.json"));
    CHECK_FALSE(check_nilpotent(broken.target).pass);
}

TEST_CASE("undeclared symbols are rejected with a position") {
    std::string text = R"({
      "name": "bad",
      "coordinates": [ { "name": "c", "range": 3, "ghost": 1 } ],
      "q": { "c[i]": "1/2*eps(i,j,k)*c[j]*b[k]" }
    })";
    try {
        parse_spec(text);
        FAIL("expected a SpecError");
    } catch (const SpecError& e) {
        CHECK(e.kind == SpecError::Kind::UndeclaredSymbol);
        CHECK(e.line == 4);  // located inside the expression on line 4
        CHECK(e.column > 0);
    }
}

TEST_CASE("duplicate coordinates are rejected") {
    std::string text = R"({
      "coordinates": [ { "name": "c", "ghost": 1 }, { "name": "c", "ghost": 0 } ],
      "q": { "c": "0" }
    })";
    CHECK_THROWS_AS(parse_spec(text), SpecError);
    try {
        parse_spec(text);
    } catch (const SpecError& e) {
        CHECK(e.kind == SpecError::Kind::DuplicateCoordinate);
    }
}

TEST_CASE("ghost-inconsistent Q components are rejected") {
    std::string text = R"({
      "coordinates": [ { "name": "c", "range": 3, "ghost": 1 } ],
      "q": { "c[i]": "c[i]" }
    })";
    try {
        parse_spec(text);
        FAIL("expected a SpecError");
    } catch (const SpecError& e) {
        CHECK(e.kind == SpecError::Kind::GhostMismatch);
    }
}

TEST_CASE("syntax errors carry line and column") {
    std::string text = R"({
      "coordinates": [ { "name": "c", "ghost": 1 } ],
      "q": { "c": "c *" }
    })";
    try {
        parse_spec(text);
        FAIL("expected a SpecError");
    } catch (const SpecError& e) {
        CHECK(e.kind == SpecError::Kind::Syntax);
        CHECK(e.line == 3);
    }
}

TEST_CASE("expression grammar: summation, powers, literals") {
    SpecDocument spec = load_spec(spec_path("psm_su2.json"));
    // delta contraction sums over the shared index.
    Polynomial p = spec.parse_target_expression("delta(i,j)*X[i]*X[j]");
    Polynomial expected;
    for (int i = 0; i < 3; ++i) expected += mono({{spec.coordinate("X", i), 2}});
    CHECK(p == expected);

    CHECK(spec.parse_target_expression("2/4*X[0]^2") ==
          Rational(1, 2) * mono({{spec.coordinate("X", 0), 2}}));
    CHECK(spec.parse_target_expression("X[0] - X[0]").is_zero());
    CHECK(spec.parse_target_expression("eps(0,1,2)") == Polynomial::constant(1));
    CHECK(spec.parse_target_expression("eps(0,0,2)").is_zero());

    // eps range consistency with a 3-range family.
    Polynomial q = spec.parse_target_expression("eps(i,j,k)*C[i]*C[j]*C[k]");
    CHECK(q == mono({{spec.coordinate("C", 0), 1},
                     {spec.coordinate("C", 1), 1},
                     {spec.coordinate("C", 2), 1}},
                    6));
}

TEST_CASE("pretty-printed polynomials re-parse to equal polynomials") {
    SpecDocument spec = load_spec(spec_path("cs_su2.json"));
    const Universe& u = spec.target.universe;

    // Target-level round trip.
    Polynomial p = spec.target.q_of(spec.coordinate("c", 0)) -
                   Rational(3, 7) * Polynomial::variable(spec.coordinate("c", 1));
    Polynomial back = parse_polynomial(u, spec.target.coordinates, p.to_string(u));
    CHECK(back == p);

    // Jet-level round trip, with bracketed and suffixed names.
    JetContext ctx = build_jet_context(3, spec.target, 2);
    AkszBrst brst = aksz_brst(ctx);
    VarId a0 = ctx.formfield(spec.coordinate("c", 0), {0});
    Polynomial sa = brst.s.apply(Polynomial::variable(a0));
    Polynomial round =
        parse_polynomial(ctx.universe, ctx.block_vars, sa.to_string(ctx.universe));
    CHECK(round == sa);

    CHECK(parse_polynomial(u, spec.target.coordinates, "0").is_zero());
}

TEST_CASE("lifted symbol table addresses momenta as pi_<family>") {
    SpecDocument spec = load_spec(spec_path("cs_su2.json"));
    QManifoldSpec lifted = cotangent_lift(spec.target, 3);
    Polynomial p = evaluate(parse_expression("1/2*delta(i,j)*pi_c[i]*pi_c[j]"),
                            spec.lifted_symbols(lifted), {});
    Polynomial expected;
    for (size_t i = 3; i < 6; ++i)
        expected += Rational(1, 2) * mono({{lifted.coordinates[i], 2}});
    CHECK(p == expected);
}
