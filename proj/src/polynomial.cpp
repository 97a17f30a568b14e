#include "aksz/polynomial.hpp"

#include <sstream>
#include <stdexcept>

#include "aksz/errors.hpp"

namespace aksz {

namespace {

// Number of odd units carried by a factor block: exp copies of an odd
// variable, zero for even variables.
inline int odd_units(const Factor& f) { return f.var.parity() ? f.exp : 0; }

}  // namespace

std::optional<std::pair<int, Monomial>> Monomial::merge(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());

    int odd_remaining = 0;
    for (const auto& f : a.factors_) odd_remaining += odd_units(f);

    int sign = 0;
    size_t i = 0, j = 0;
    const auto& fa = a.factors_;
    const auto& fb = b.factors_;
    while (i < fa.size() && j < fb.size()) {
        if (fa[i].var < fb[j].var) {
            odd_remaining -= odd_units(fa[i]);
            out.factors_.push_back(fa[i]);
            ++i;
        } else if (fb[j].var < fa[i].var) {
            // b-block crosses every remaining a-block.
            sign += odd_units(fb[j]) * odd_remaining;
            out.factors_.push_back(fb[j]);
            ++j;
        } else {
            if (fa[i].var.parity()) return std::nullopt;  // odd square
            out.factors_.push_back({fa[i].var, fa[i].exp + fb[j].exp});
            ++i;
            ++j;
        }
    }
    while (i < fa.size()) out.factors_.push_back(fa[i++]);
    while (j < fb.size()) out.factors_.push_back(fb[j++]);
    return std::make_pair(sign & 1, std::move(out));
}

std::optional<std::pair<int, Monomial>> Monomial::from_factors(std::span<const Factor> factors) {
    Monomial acc;
    int sign = 0;
    for (const auto& f : factors) {
        if (f.exp == 0) continue;
        if (f.exp < 0) throw std::invalid_argument("negative exponent");
        if (f.var.parity() && f.exp > 1) return std::nullopt;
        Monomial single;
        single.factors_.push_back(f);
        auto merged = merge(acc, single);
        if (!merged) return std::nullopt;
        sign ^= merged->first;
        acc = std::move(merged->second);
    }
    return std::make_pair(sign, std::move(acc));
}

Monomial Monomial::variable(VarId v, int exp) {
    Monomial m;
    if (exp != 0) m.factors_.push_back({v, exp});
    return m;
}

int Monomial::parity() const {
    int p = 0;
    for (const auto& f : factors_) p += odd_units(f);
    return p & 1;
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& f : factors_) d += f.exp;
    return d;
}

int Monomial::degree_in(VarId v) const {
    for (const auto& f : factors_)
        if (f.var == v) return f.exp;
    return 0;
}

Monomial Monomial::slice(size_t begin, size_t end) const {
    Monomial m;
    m.factors_.assign(factors_.begin() + begin, factors_.begin() + end);
    return m;
}

Polynomial Polynomial::constant(Rational c) {
    Polynomial p;
    p.add_term(Monomial::unit(), c);
    return p;
}

Polynomial Polynomial::variable(VarId v) {
    Polynomial p;
    p.add_term(Monomial::variable(v), 1);
    return p;
}

Polynomial Polynomial::term(const Monomial& m, Rational c) {
    Polynomial p;
    p.add_term(m, c);
    return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            auto merged = Monomial::merge(ma, mb);
            if (!merged) continue;
            Rational c = ca * cb;
            if (merged->first) c = -c;
            out.add_term(merged->second, c);
        }
    }
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial p(*this);
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

int Polynomial::parity() const {
    if (terms_.empty()) return 0;
    int p = terms_.begin()->first.parity();
    for (const auto& [m, c] : terms_)
        if (m.parity() != p) throw GradingError("polynomial is not parity-homogeneous");
    return p;
}

bool Polynomial::is_parity_homogeneous() const {
    if (terms_.empty()) return true;
    int p = terms_.begin()->first.parity();
    for (const auto& [m, c] : terms_)
        if (m.parity() != p) return false;
    return true;
}

int ghost_of(const Universe& u, const Monomial& m) {
    int g = 0;
    for (const auto& f : m.factors()) g += f.exp * u.info(f.var).ghost;
    return g;
}

int form_degree_of(const Universe& u, const Monomial& m) {
    int d = 0;
    for (const auto& f : m.factors()) d += f.exp * u.info(f.var).form_degree;
    return d;
}

int total_degree_of(const Universe& u, const Monomial& m) {
    return ghost_of(u, m) + form_degree_of(u, m);
}

namespace {

template <typename F>
std::optional<int> homogeneous_value(const Polynomial& p, int fallback, F&& value) {
    if (p.is_zero()) return fallback;
    auto it = p.terms().begin();
    int v = value(it->first);
    for (const auto& [m, c] : p.terms())
        if (value(m) != v) return std::nullopt;
    return v;
}

}  // namespace

std::optional<int> ghost_of(const Universe& u, const Polynomial& p, int fallback) {
    return homogeneous_value(p, fallback, [&](const Monomial& m) { return ghost_of(u, m); });
}

std::optional<int> form_degree_of(const Universe& u, const Polynomial& p, int fallback) {
    return homogeneous_value(p, fallback, [&](const Monomial& m) { return form_degree_of(u, m); });
}

std::optional<int> total_degree_of(const Universe& u, const Polynomial& p, int fallback) {
    return homogeneous_value(p, fallback, [&](const Monomial& m) { return total_degree_of(u, m); });
}

Polynomial form_part(const Universe& u, const Polynomial& p, int k) {
    Polynomial out;
    for (const auto& [m, c] : p.terms())
        if (form_degree_of(u, m) == k) out.add_term(m, c);
    return out;
}

int max_form_degree(const Universe& u, const Polynomial& p) {
    int d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max(d, form_degree_of(u, m));
    return d;
}

Polynomial substitute(const Universe& src, const Universe& dst, const Polynomial& p,
                      const std::map<VarId, Polynomial>& repl) {
    for (const auto& [v, q] : repl) {
        const VarInfo& vi = src.info(v);
        const int want = vi.total_degree();
        for (const auto& [m, c] : q.terms()) {
            if (m.parity() != v.parity())
                throw GradingError("replacement for " + vi.name + " has wrong parity");
            if (total_degree_of(dst, m) != want)
                throw GradingError("replacement for " + vi.name + " has wrong total degree");
        }
    }

    Polynomial out;
    for (const auto& [m, coeff] : p.terms()) {
        Polynomial acc = Polynomial::constant(coeff);
        for (const auto& f : m.factors()) {
            auto it = repl.find(f.var);
            Polynomial base;
            if (it != repl.end()) {
                base = it->second;
            } else {
                if (&src != &dst && !(f.var.index() < dst.size() &&
                                      dst.info(f.var).same_declaration(src.info(f.var))))
                    throw GradingError("unmapped variable " + src.info(f.var).name +
                                       " does not exist in the destination universe");
                base = Polynomial::variable(f.var);
            }
            for (int e = 0; e < f.exp; ++e) acc = acc * base;
            if (acc.is_zero()) break;
        }
        out += acc;
    }
    return out;
}

std::string monomial_to_string(const Universe& u, const Monomial& m) {
    if (m.is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& f : m.factors()) {
        if (!first) os << "*";
        first = false;
        os << u.info(f.var).name;
        if (f.exp > 1) os << "^" << f.exp;
    }
    return os.str();
}

std::string Polynomial::to_string(const Universe& u) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (m.is_unit()) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << monomial_to_string(u, m);
        }
    }
    return os.str();
}

}  // namespace aksz
