#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "aksz/cohomology.hpp"
#include "aksz/errors.hpp"
#include "aksz/qtarget.hpp"
#include "test_util.hpp"

using namespace aksz;
using namespace aksz::testutil;

namespace {

// Independent rank oracle: dense fraction-free (Bareiss) elimination over
// int64. Only used to cross-check the sparse rational engine.
int dense_rank(std::vector<std::vector<long long>> m) {
    size_t rows = m.size();
    if (rows == 0) return 0;
    size_t cols = m[0].size();
    long long prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pivot = r;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

BlockSelector su2_block(int ghost) {
    BlockSelector sel;
    sel.ghost = ghost;
    sel.bounds[DegreeClass::Target] = {0, 3};
    return sel;
}

}  // namespace

TEST_CASE("su(2) Chevalley-Eilenberg cohomology: betti (1,0,0,1)") {
    Su2 t;
    Derivation q = t.q();

    // Hand-rank oracle on the 8-dimensional exterior algebra: block dims
    // are (1,3,3,1); d maps ghost 1 to ghost 2 with the full rank 3, all
    // other blocks map to zero.
    {
        // Columns c1,c2,c3 -> rows c2c3, c3c1(= -c1c3), c1c2.
        std::vector<std::vector<long long>> d1 = {{1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
        CHECK(dense_rank(d1) == 3);
        std::vector<std::vector<long long>> d2(1, std::vector<long long>(3, 0));
        CHECK(dense_rank(d2) == 0);
    }

    int expected_betti[4] = {1, 0, 0, 1};
    int expected_dim[4] = {1, 3, 3, 1};
    for (int g = 0; g <= 3; ++g) {
        CohomologyReport r = cohomology_block(t.u, t.c, q, su2_block(g));
        CHECK(r.dim_space == expected_dim[g]);
        CHECK(r.betti == expected_betti[g]);
        CHECK(r.dim_space == r.dim_cocycles + (r.dim_space - r.dim_cocycles));
    }

    // Representative at ghost 3 is proportional to eps_{abc} c^a c^b c^c.
    CohomologyReport top = cohomology_block(t.u, t.c, q, su2_block(3));
    REQUIRE(top.representatives.size() == 1);
    Polynomial ccc = mono({{t.c[0], 1}, {t.c[1], 1}, {t.c[2], 1}});
    const auto& rep = top.representatives[0];
    REQUIRE(rep.term_count() == 1);
    CHECK(rep.terms().begin()->first == ccc.terms().begin()->first);
}

TEST_CASE("su(2) ghost 1: the three images are independent, betti 0") {
    Su2 t;
    CohomologyReport r = cohomology_block(t.u, t.c, t.q(), su2_block(1));
    CHECK(r.dim_cocycles == 0);
    CHECK(r.betti == 0);
}

TEST_CASE("Euler characteristic vanishes on the closed su(2) complex") {
    Su2 t;
    int chi_betti = 0, chi_dim = 0;
    for (int g = 0; g <= 3; ++g) {
        CohomologyReport r = cohomology_block(t.u, t.c, t.q(), su2_block(g));
        int s = (g % 2) ? -1 : 1;
        chi_betti += s * r.betti;
        chi_dim += s * r.dim_space;
    }
    CHECK(chi_betti == 0);
    CHECK(chi_dim == 0);
}

TEST_CASE("verify_complex passes for Q_su2 and fails for the broken target") {
    Su2 t;
    std::vector<BlockSelector> blocks;
    for (int g = 0; g <= 3; ++g) blocks.push_back(su2_block(g));
    CHECK(verify_complex(t.u, t.c, t.q(), blocks));

    Derivation broken(1);
    broken.set(t.c[2], mono({{t.c[0], 1}, {t.c[1], 1}}));
    broken.set(t.c[0], mono({{t.c[1], 1}, {t.c[2], 1}}) + mono({{t.c[2], 1}, {t.c[0], 1}}));
    CHECK_FALSE(verify_complex(t.u, t.c, broken, blocks));

    Derivation zero(1);
    CHECK(verify_complex(t.u, t.c, zero, blocks));
}

TEST_CASE("non-homogeneous derivations are rejected with the offending generator") {
    Su2 t;
    Derivation bad(1);
    bad.set(t.c[0], Polynomial::variable(t.c[1]) +
                        mono({{t.c[0], 1}, {t.c[1], 1}, {t.c[2], 1}}));
    CHECK_THROWS_AS(derivation_bidegree(t.u, bad), BlockError);
}

TEST_CASE("lifted su(2): pi-linear blocks are empty, pi-quadratic ghost 4 is one line") {
    Su2 t;
    QManifoldSpec cs;
    cs.universe = t.u;
    cs.coordinates = t.c;
    for (int a = 0; a < 3; ++a) cs.q_action[t.c[a]] = *t.q().action(t.c[a]);
    QManifoldSpec lifted = cotangent_lift(cs, 3);
    Derivation qe = lifted.q_derivation();
    const Universe& u = lifted.universe;

    // Linear in pi, c-degree <= 6: betti 0 for every ghost block.
    for (int g = 2; g <= 5; ++g) {
        BlockSelector sel;
        sel.ghost = g;
        sel.bounds[DegreeClass::Momentum] = {1, 1};
        sel.bounds[DegreeClass::Target] = {0, 6};
        CohomologyReport r = cohomology_block(u, lifted.coordinates, qe, sel);
        CHECK(r.betti == 0);
    }

    // Quadratic in pi at ghost 4: the invariant delta^{ab} pi_a pi_b.
    BlockSelector sel;
    sel.ghost = 4;
    sel.bounds[DegreeClass::Momentum] = {2, 2};
    sel.bounds[DegreeClass::Target] = {0, 6};
    CohomologyReport r = cohomology_block(u, lifted.coordinates, qe, sel);
    CHECK(r.betti == 1);
    REQUIRE(r.representatives.size() == 1);
    Polynomial inv;
    for (int a = 0; a < 3; ++a)
        inv += mono({{u.find("pi(c[" + std::to_string(a) + "])"), 2}});
    // The representative is a scalar multiple of delta^{ab} pi_a pi_b.
    const Polynomial& rep = r.representatives[0];
    Rational scale = rep.terms().begin()->second / inv.terms().begin()->second;
    CHECK(rep == inv * scale);
}

TEST_CASE("exactness witnesses") {
    Su2 t;
    Derivation q = t.q();

    BlockSelector sel;
    sel.ghost = 2;
    sel.bounds[DegreeClass::Target] = {0, 2};

    // z = 0 has the witness 0.
    auto w0 = exactness_witness(t.u, t.c, Polynomial::zero(), q, sel);
    REQUIRE(w0.has_value());
    CHECK(w0->is_zero());

    // eps ccc is not exact within c-degree <= 2.
    Polynomial ccc = mono({{t.c[0], 1}, {t.c[1], 1}, {t.c[2], 1}}, 6);
    auto w1 = exactness_witness(t.u, t.c, ccc, q, sel);
    CHECK_FALSE(w1.has_value());

    // An actual coboundary is recovered and maps back exactly.
    Polynomial z = q.apply(Polynomial::variable(t.c[0]));
    BlockSelector sel1;
    sel1.ghost = 1;
    sel1.bounds[DegreeClass::Target] = {0, 2};
    auto w2 = exactness_witness(t.u, t.c, z, q, sel1);
    REQUIRE(w2.has_value());
    CHECK(q.apply(*w2) == z);

    // Non-cocycles are rejected.
    CHECK_THROWS_AS(exactness_witness(t.u, t.c, Polynomial::variable(t.c[0]), q, sel1),
                    ValidationError);
}

TEST_CASE("block enumeration: canonical order, hat complex, finiteness guard") {
    Universe u;
    VarId x = u.add({.name = "x0", .kind = VarKind::BaseCoord});
    VarId th = u.add({.name = "th0", .form_degree = 1, .kind = VarKind::Theta});
    VarId c = u.add({.name = "c", .ghost = 1, .kind = VarKind::TargetCoord});
    std::vector<VarId> vars = {x, th, c};

    BlockSelector sel;
    sel.ghost = 0;
    sel.bounds[DegreeClass::Total] = {0, 2};
    auto basis = enumerate_block(u, vars, sel);
    // ghost 0, degree <= 2: 1, x, th, x^2, x th.
    CHECK(basis.size() == 5);
    CHECK(std::is_sorted(basis.begin(), basis.end()));

    sel.include_constants = false;
    auto hat = enumerate_block(u, vars, sel);
    CHECK(hat.empty());  // nothing field-dependent at ghost 0 within degree 2

    BlockSelector unbounded;
    unbounded.ghost = 0;
    CHECK_THROWS_AS(enumerate_block(u, vars, unbounded), BlockError);

    // Exact form degree selection.
    BlockSelector forms = sel;
    forms.include_constants = true;
    forms.form_degree = 1;
    auto one_forms = enumerate_block(u, vars, forms);
    CHECK(one_forms.size() == 2);  // th, x th
}

TEST_CASE("report dimensions are basis-order independent") {
    // Recompute su(2) ranks from a shuffled basis with the dense oracle.
    Su2 t;
    Derivation q = t.q();
    std::mt19937_64 rng(5);

    for (int g = 0; g <= 3; ++g) {
        auto basis = enumerate_block(t.u, t.c, su2_block(g));
        auto image_dim = [&](const std::vector<Monomial>& b) {
            std::map<Monomial, int> col;
            std::vector<std::vector<long long>> m;
            for (const auto& mm : b) {
                Polynomial im = q.apply(mm);
                for (const auto& [mon, cf] : im.terms()) col.try_emplace(mon, col.size());
            }
            for (const auto& mm : b) {
                std::vector<long long> row(col.size(), 0);
                Polynomial im = q.apply(mm);
                for (const auto& [mon, cf] : im.terms()) {
                    CHECK(cf.get_den() == 1);
                    row[col[mon]] = cf.get_num().get_si();
                }
                m.push_back(row);
            }
            return dense_rank(m);
        };
        std::vector<Monomial> shuffled = basis;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(image_dim(basis) == image_dim(shuffled));

        CohomologyReport r = cohomology_block(t.u, t.c, q, su2_block(g));
        CHECK(r.dim_cocycles == r.dim_space - image_dim(basis));
    }
}

TEST_CASE("representatives are independent modulo coboundaries: rank augmentation") {
    Su2 t;
    CohomologyReport r = cohomology_block(t.u, t.c, t.q(), su2_block(3));
    // Augmenting the coboundary space by each representative raises the rank.
    // At ghost 3 there are no coboundaries, so the check is rank 0 -> 1.
    std::vector<SparseVec> rows;
    std::map<Monomial, uint32_t> col;
    for (const auto& rep : r.representatives) {
        SparseVec v;
        for (const auto& [m, c] : rep.terms()) {
            auto [it, ins] = col.try_emplace(m, static_cast<uint32_t>(col.size()));
            v[it->second] = c;
        }
        int before = rank(rows);
        rows.push_back(v);
        CHECK(rank(rows) == before + 1);
    }
}

TEST_CASE("parallel block evaluation matches the serial path") {
    Su2 t;
    std::vector<BlockSelector> sels;
    for (int g = 0; g <= 3; ++g) sels.push_back(su2_block(g));
    auto reports = cohomology_blocks(t.u, t.c, t.q(), sels);
    REQUIRE(reports.size() == 4);
    for (int g = 0; g <= 3; ++g) {
        CohomologyReport serial = cohomology_block(t.u, t.c, t.q(), sels[g]);
        CHECK(reports[g].betti == serial.betti);
        CHECK(reports[g].dim_space == serial.dim_space);
    }
}
