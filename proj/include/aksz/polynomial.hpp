#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "aksz/variables.hpp"

namespace aksz {

using Rational = mpq_class;

struct Factor {
    VarId var;
    int exp = 1;

    friend auto operator<=>(const Factor&, const Factor&) = default;
};

// Canonical graded-commutative monomial: factors sorted by the global
// variable order, exponents >= 1, odd variables with exponent exactly 1.
// All Koszul signs in the engine originate from Monomial::merge, which
// counts transpositions of odd units while interleaving two sorted factor
// lists.
class Monomial {
public:
    Monomial() = default;

    // Merge of two canonical monomials. Returns the transposition parity
    // (0 or 1) and the merged monomial, or nullopt when an odd variable
    // squares to zero.
    static std::optional<std::pair<int, Monomial>> merge(const Monomial& a, const Monomial& b);

    // Canonicalize an arbitrarily ordered factor sequence by folding single
    // factors through merge. Exponent 0 factors are dropped.
    static std::optional<std::pair<int, Monomial>> from_factors(std::span<const Factor> factors);

    static Monomial unit() { return Monomial(); }
    static Monomial variable(VarId v, int exp = 1);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }

    int parity() const;        // from VarId parity bits alone
    int total_degree() const;  // sum of exponents
    int degree_in(VarId v) const;

    // Slice [begin, end) of the factor list, already canonical.
    Monomial slice(size_t begin, size_t end) const;

    bool contains(VarId v) const { return degree_in(v) > 0; }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;
};

// Sparse polynomial over exact rationals; no zero coefficients are stored,
// monomials are canonical, term order is the canonical monomial order.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(Rational c);
    static Polynomial variable(VarId v);
    static Polynomial term(const Monomial& m, Rational c);

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    // Parity of a parity-homogeneous polynomial; throws GradingError if mixed.
    int parity() const;
    bool is_parity_homogeneous() const;

    std::string to_string(const Universe& u) const;

private:
    std::map<Monomial, Rational> terms_;
};

// Grading queries need the registry: ghost and form degree are not part of
// the variable id.
int ghost_of(const Universe& u, const Monomial& m);
int form_degree_of(const Universe& u, const Monomial& m);
int total_degree_of(const Universe& u, const Monomial& m);

// Ghost number of a ghost-homogeneous polynomial; nullopt when inhomogeneous
// (the zero polynomial reports the fallback value).
std::optional<int> ghost_of(const Universe& u, const Polynomial& p, int fallback = 0);
std::optional<int> form_degree_of(const Universe& u, const Polynomial& p, int fallback = 0);
std::optional<int> total_degree_of(const Universe& u, const Polynomial& p, int fallback = 0);

// Terms of the given form degree (theta degree).
Polynomial form_part(const Universe& u, const Polynomial& p, int k);
int max_form_degree(const Universe& u, const Polynomial& p);

// Graded ring homomorphism defined by variable replacements. Variables of
// `p` live in `src`; replacement polynomials and the result live in `dst`.
// Each replacement must match the ghost+form total degree and the parity of
// the variable it replaces; unmapped variables must carry identical
// declarations in both universes. Signs arise only from reordering.
Polynomial substitute(const Universe& src, const Universe& dst, const Polynomial& p,
                      const std::map<VarId, Polynomial>& repl);

inline Polynomial substitute(const Universe& u, const Polynomial& p,
                             const std::map<VarId, Polynomial>& repl) {
    return substitute(u, u, p, repl);
}

std::string monomial_to_string(const Universe& u, const Monomial& m);

}  // namespace aksz
