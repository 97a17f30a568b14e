#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aksz/derivation.hpp"
#include "aksz/errors.hpp"
#include "test_util.hpp"

using namespace aksz;
using namespace aksz::testutil;

TEST_CASE("left derivative on the leading factor: d/dc1 (c1 c2) = c2") {
    Su2 t;
    Derivation d(-1);
    d.set(t.c[0], Polynomial::constant(1));
    Polynomial p = mono({{t.c[0], 1}, {t.c[1], 1}});
    CHECK(d.apply(p) == Polynomial::variable(t.c[1]));
    // ... and d/dc2 (c1 c2) = -c1: the derivation jumps over the odd c1.
    Derivation d2(-1);
    d2.set(t.c[1], Polynomial::constant(1));
    CHECK(d2.apply(p) == -Polynomial::variable(t.c[0]));
}

TEST_CASE("su(2) BRST differential kills c1 c2") {
    // Hand expansion: (Qc1)c2 - c1(Qc2) = c2c3c2 - c1c3c1 = 0.
    Su2 t;
    Polynomial p = mono({{t.c[0], 1}, {t.c[1], 1}});
    CHECK(t.q().apply(p).is_zero());
}

TEST_CASE("derivations kill constants") {
    Su2 t;
    CHECK(t.q().apply(Polynomial::constant(Rational(7, 3))).is_zero());
}

TEST_CASE("ghost of the image shifts by the derivation ghost, termwise") {
    Su2 t;
    Derivation q = t.q();
    Polynomial p = Polynomial::variable(t.c[0]);
    auto g = ghost_of(t.u, q.apply(p));
    REQUIRE(g.has_value());
    CHECK(*g == 2);
}

TEST_CASE("even powers: d/dx (x^3) = 3x^2") {
    Universe u;
    VarId x = u.add({.name = "x0", .kind = VarKind::BaseCoord});
    Derivation d(0);
    d.set(x, Polynomial::constant(1));
    CHECK(d.apply(mono({{x, 3}})) == mono({{x, 2}}, 3));
}

TEST_CASE("graded commutator: [d_H, d_H] vanishes on base coordinates") {
    Universe u;
    std::vector<VarId> x, th;
    for (int m = 0; m < 2; ++m)
        x.push_back(u.add({.name = "x" + std::to_string(m), .kind = VarKind::BaseCoord}));
    for (int m = 0; m < 2; ++m)
        th.push_back(u.add(
            {.name = "th" + std::to_string(m), .form_degree = 1, .kind = VarKind::Theta}));
    Derivation dh(0, 1);  // theta^mu d/dx^mu on functions of x alone: odd, form +1
    for (int m = 0; m < 2; ++m) dh.set(x[m], Polynomial::variable(th[m]));
    Derivation sq = Derivation::commutator(dh, dh);
    CHECK(sq.is_zero());
}

TEST_CASE("graded commutator: [Q, Q] = 0 is the eps Jacobi identity") {
    Su2 t;
    CHECK(Derivation::commutator(t.q(), t.q()).is_zero());
}

TEST_CASE("graded commutator: [d/dc1, c1 d/dc2] = d/dc2 on generators") {
    Su2 t;
    Derivation a(-1);  // d/dc1, odd
    a.set(t.c[0], Polynomial::constant(1));
    Derivation b(0);  // c1 d/dc2, ghost 0
    b.set(t.c[1], Polynomial::variable(t.c[0]));
    Derivation comm = Derivation::commutator(a, b);
    // Evaluate on each generator: c2 -> d/dc1(c1) = 1, c1 -> 0.
    CHECK(comm.ghost() == -1);
    REQUIRE(comm.action(t.c[1]) != nullptr);
    CHECK(*comm.action(t.c[1]) == Polynomial::constant(1));
    CHECK(comm.action(t.c[0]) == nullptr);
}

TEST_CASE("Leibniz rule on sampled homogeneous data") {
    Su2 t;
    std::vector<VarId> vars = {t.c[0], t.c[1], t.c[2]};
    std::mt19937_64 rng(99);
    Derivation q = t.q();
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial p = random_homogeneous(rng, vars, 2, 3, trial % 2);
        Polynomial r = random_poly(rng, vars, 2, 3);
        Polynomial lhs = q.apply(p * r);
        Polynomial rhs = q.apply(p) * r;
        Polynomial cross = p * q.apply(r);
        if (q.parity() && (trial % 2)) cross = -cross;
        rhs += cross;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("commutator identities: antisymmetry and Jacobi on generators") {
    Su2 t;
    std::vector<VarId> vars = {t.c[0], t.c[1], t.c[2]};
    std::mt19937_64 rng(123);

    auto random_derivation = [&](int ghost) {
        Derivation d(ghost);
        for (VarId v : vars) {
            // Action must be parity-homogeneous of parity |v| + |D|.
            int want = (v.parity() + ((ghost % 2) + 2)) % 2;
            Polynomial p = random_homogeneous(rng, vars, 2, 2, want);
            d.set(v, p);
        }
        return d;
    };

    for (int trial = 0; trial < 12; ++trial) {
        Derivation a = random_derivation(trial % 3 == 0 ? 1 : 2);
        Derivation b = random_derivation(trial % 2 ? 1 : 0);
        Derivation c = random_derivation(1);

        // Graded antisymmetry: [a,b] = -(-1)^{|a||b|}[b,a].
        Derivation ab = Derivation::commutator(a, b);
        Derivation ba = Derivation::commutator(b, a);
        int sgn = (a.parity() && b.parity()) ? 1 : -1;
        for (VarId v : vars) {
            Polynomial lhs = ab.action(v) ? *ab.action(v) : Polynomial();
            Polynomial rhs = ba.action(v) ? *ba.action(v) : Polynomial();
            if (sgn < 0) rhs = -rhs;
            CHECK(lhs == rhs);
        }

        // Graded Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]].
        Derivation lhs = Derivation::commutator(a, Derivation::commutator(b, c));
        Derivation r1 = Derivation::commutator(Derivation::commutator(a, b), c);
        Derivation r2 = Derivation::commutator(b, Derivation::commutator(a, c));
        int jsgn = (a.parity() && b.parity()) ? -1 : 1;
        for (VarId v : vars) {
            Polynomial l = lhs.action(v) ? *lhs.action(v) : Polynomial();
            Polynomial r = r1.action(v) ? *r1.action(v) : Polynomial();
            Polynomial rr = r2.action(v) ? *r2.action(v) : Polynomial();
            if (jsgn < 0) rr = -rr;
            CHECK(l == r + rr);
        }
    }
}

TEST_CASE("undefined generators surface as truncation errors") {
    Su2 t;
    Derivation d(1);
    d.mark_undefined(t.c[2]);
    d.set(t.c[0], Polynomial::variable(t.c[1]) * Polynomial::variable(t.c[2]));
    CHECK_THROWS_AS(d.apply(Polynomial::variable(t.c[2])), TruncationError);
    CHECK(d.apply(Polynomial::variable(t.c[1])).is_zero());
}
