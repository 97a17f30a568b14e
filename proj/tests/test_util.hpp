#pragma once

#include <random>
#include <vector>

#include "aksz/derivation.hpp"
#include "aksz/polynomial.hpp"

namespace aksz::testutil {

// su(2) ghost sector: three odd ghost-1 coordinates c[0..2].
struct Su2 {
    Universe u;
    std::vector<VarId> c;

    Su2() {
        for (int a = 0; a < 3; ++a)
            c.push_back(u.add({.name = "c[" + std::to_string(a) + "]",
                               .ghost = 1,
                               .kind = VarKind::TargetCoord}));
    }

    // Qc^a = 1/2 eps^a_{bc} c^b c^c = c^{a+1} c^{a+2} (cyclic).
    Derivation q() const {
        Derivation d(1);
        for (int a = 0; a < 3; ++a) {
            auto m = Monomial::from_factors(
                std::vector<Factor>{{c[(a + 1) % 3], 1}, {c[(a + 2) % 3], 1}});
            d.set(c[a], Polynomial::term(m->second, m->first ? -1 : 1));
        }
        return d;
    }
};

inline Polynomial mono(std::initializer_list<Factor> fs, Rational coeff = 1) {
    auto m = Monomial::from_factors(std::vector<Factor>(fs));
    if (!m) return Polynomial::zero();
    return Polynomial::term(m->second, m->first ? -coeff : coeff);
}

// Random monomial over the given variables, degree <= max_degree.
inline Polynomial random_poly(std::mt19937_64& rng, const std::vector<VarId>& vars,
                              int max_degree, int n_terms) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(vars.size()) - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> num(-4, 4);
    Polynomial p;
    for (int t = 0; t < n_terms; ++t) {
        std::vector<Factor> fs;
        int d = deg(rng);
        for (int i = 0; i < d; ++i) fs.push_back({vars[pick(rng)], 1});
        auto m = Monomial::from_factors(fs);
        if (!m) continue;
        int c = num(rng);
        if (c == 0) c = 1;
        p.add_term(m->second, m->first ? -c : c);
    }
    return p;
}

// Parity-homogeneous sample: keep only terms of the requested parity.
inline Polynomial random_homogeneous(std::mt19937_64& rng, const std::vector<VarId>& vars,
                                     int max_degree, int n_terms, int parity) {
    Polynomial p = random_poly(rng, vars, max_degree, n_terms);
    Polynomial out;
    for (const auto& [m, c] : p.terms())
        if (m.parity() == parity) out.add_term(m, c);
    return out;
}

}  // namespace aksz::testutil
