#include "aksz/expr.hpp"

#include <algorithm>
#include <cctype>

#include "aksz/errors.hpp"
#include "aksz/qtarget.hpp"

namespace aksz {

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg, size_t at) const {
        throw SpecError(SpecError::Kind::Syntax, msg, 0, static_cast<int>(at) + 1);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool ident_char(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        if (pos >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[pos])) ||
                                    text[pos] == '_'))
            fail("expected an identifier", pos);
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        return text.substr(start, pos - start);
    }

    long number() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected a number", pos);
        return std::stol(text.substr(start, pos - start));
    }

    ExprIndex index() {
        skip_ws();
        ExprIndex ix;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ix.is_literal = true;
            ix.literal = static_cast<int>(number());
        } else {
            ix.var = ident();
        }
        return ix;
    }

    std::vector<ExprIndex> index_list(char close) {
        std::vector<ExprIndex> out;
        out.push_back(index());
        while (eat(',')) out.push_back(index());
        if (!eat(close)) fail(std::string("expected '") + close + "'", pos);
        return out;
    }

    ExprPtr atom() {
        skip_ws();
        size_t start = pos;
        if (pos >= text.size()) fail("unexpected end of expression", pos);
        char c = text[pos];

        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = number();
            Rational r(num);
            if (eat('/')) {
                long den = number();
                if (den == 0) fail("zero denominator", pos);
                r = Rational(num, den);
                r.canonicalize();
            }
            auto node = std::make_shared<ExprNode>();
            node->kind = ExprNode::Kind::Number;
            node->number = r;
            node->position = static_cast<int>(start);
            return node;
        }
        if (c == '(') {
            ++pos;
            ExprPtr e = sum();
            if (!eat(')')) fail("expected ')'", pos);
            return e;
        }
        std::string name = ident();
        auto node = std::make_shared<ExprNode>();
        node->position = static_cast<int>(start);
        if (name == "eps" && peek() == '(') {
            ++pos;
            node->kind = ExprNode::Kind::Eps;
            node->indices = index_list(')');
            return node;
        }
        if (name == "delta" && peek() == '(') {
            ++pos;
            node->kind = ExprNode::Kind::Delta;
            node->indices = index_list(')');
            if (node->indices.size() != 2) fail("delta takes two indices", start);
            return node;
        }
        node->kind = ExprNode::Kind::Symbol;
        node->symbol = name;
        if (eat('[')) node->indices = index_list(']');
        return node;
    }

    ExprPtr factor() {
        ExprPtr base = atom();
        if (eat('^')) {
            auto node = std::make_shared<ExprNode>();
            node->kind = ExprNode::Kind::Power;
            node->children.push_back(base);
            node->exponent = static_cast<int>(number());
            node->position = base->position;
            if (node->exponent < 0) fail("negative exponent", pos);
            return node;
        }
        return base;
    }

    ExprPtr term() {
        int negations = 0;
        while (eat('-')) ++negations;
        auto node = std::make_shared<ExprNode>();
        node->kind = ExprNode::Kind::Product;
        node->position = static_cast<int>(pos);
        node->children.push_back(factor());
        while (eat('*')) node->children.push_back(factor());
        if (negations % 2) {
            auto neg = std::make_shared<ExprNode>();
            neg->kind = ExprNode::Kind::Negate;
            neg->children.push_back(node);
            neg->position = node->position;
            return neg;
        }
        return node;
    }

    ExprPtr sum() {
        auto node = std::make_shared<ExprNode>();
        node->kind = ExprNode::Kind::Sum;
        node->position = static_cast<int>(pos);
        node->children.push_back(term());
        while (true) {
            if (eat('+')) {
                node->children.push_back(term());
            } else if (peek() == '-') {
                node->children.push_back(term());  // '-' consumed as a negation
            } else {
                break;
            }
        }
        return node;
    }
};

void collect_index_vars(const ExprPtr& e, std::map<std::string, int>& ranges,
                        const SymbolTable& table) {
    if (e->kind == ExprNode::Kind::Symbol || e->kind == ExprNode::Kind::Eps ||
        e->kind == ExprNode::Kind::Delta) {
        int range = 0;
        if (e->kind == ExprNode::Kind::Eps)
            range = static_cast<int>(e->indices.size());
        else if (e->kind == ExprNode::Kind::Symbol)
            range = table.range_of(e->symbol);
        for (const auto& ix : e->indices) {
            if (ix.is_literal) continue;
            auto [it, inserted] = ranges.try_emplace(ix.var, range);
            if (it->second == 0) it->second = range;
            if (range != 0 && it->second != 0 && it->second != range)
                throw SpecError(SpecError::Kind::Structure,
                                "index " + ix.var + " is used with conflicting ranges", 0,
                                e->position + 1);
        }
    }
    for (const auto& ch : e->children) collect_index_vars(ch, ranges, table);
}

Polynomial eval_node(const ExprPtr& e, const SymbolTable& table,
                     const std::map<std::string, int>& env) {
    auto index_value = [&](const ExprIndex& ix) -> int {
        if (ix.is_literal) return ix.literal;
        auto it = env.find(ix.var);
        if (it == env.end())
            throw SpecError(SpecError::Kind::Structure, "unbound index " + ix.var, 0,
                            e->position + 1);
        return it->second;
    };

    switch (e->kind) {
        case ExprNode::Kind::Number: return Polynomial::constant(e->number);
        case ExprNode::Kind::Eps: {
            std::vector<int> vals;
            for (const auto& ix : e->indices) vals.push_back(index_value(ix));
            return Polynomial::constant(levi_civita(vals));
        }
        case ExprNode::Kind::Delta: {
            int a = index_value(e->indices[0]);
            int b = index_value(e->indices[1]);
            return Polynomial::constant(a == b ? 1 : 0);
        }
        case ExprNode::Kind::Symbol: {
            std::vector<int> vals;
            for (const auto& ix : e->indices) vals.push_back(index_value(ix));
            return Polynomial::variable(table.resolve(e->symbol, vals, e->position));
        }
        case ExprNode::Kind::Negate: return -eval_node(e->children[0], table, env);
        case ExprNode::Kind::Power: {
            Polynomial base = eval_node(e->children[0], table, env);
            Polynomial out = Polynomial::constant(1);
            for (int i = 0; i < e->exponent; ++i) out = out * base;
            return out;
        }
        case ExprNode::Kind::Product: {
            Polynomial out = Polynomial::constant(1);
            for (const auto& ch : e->children) {
                out = out * eval_node(ch, table, env);
                if (out.is_zero()) break;
            }
            return out;
        }
        case ExprNode::Kind::Sum: {
            // Each additive term sums independently over its dummy indices.
            Polynomial out;
            for (const auto& ch : e->children) {
                std::map<std::string, int> ranges;
                collect_index_vars(ch, ranges, table);
                std::vector<std::pair<std::string, int>> dummies;
                for (const auto& [var, range] : ranges) {
                    if (env.count(var)) continue;
                    if (range == 0)
                        throw SpecError(SpecError::Kind::Structure,
                                        "cannot infer the range of index " + var, 0,
                                        ch->position + 1);
                    dummies.emplace_back(var, range);
                }
                std::map<std::string, int> local = env;
                std::function<void(size_t)> iterate = [&](size_t i) {
                    if (i == dummies.size()) {
                        out += eval_node(ch, table, local);
                        return;
                    }
                    for (int v = 0; v < dummies[i].second; ++v) {
                        local[dummies[i].first] = v;
                        iterate(i + 1);
                    }
                    local.erase(dummies[i].first);
                };
                iterate(0);
            }
            return out;
        }
    }
    return Polynomial();
}

}  // namespace

ExprPtr parse_expression(const std::string& text) {
    Parser p(text);
    ExprPtr e = p.sum();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input", p.pos);
    return e;
}

Polynomial evaluate(const ExprPtr& e, const SymbolTable& table,
                    const std::map<std::string, int>& frees) {
    // Wrap in a sum so dummy-index collection applies uniformly.
    if (e->kind != ExprNode::Kind::Sum) {
        auto sum = std::make_shared<ExprNode>();
        sum->kind = ExprNode::Kind::Sum;
        sum->children.push_back(e);
        sum->position = e->position;
        return eval_node(sum, table, frees);
    }
    return eval_node(e, table, frees);
}

Polynomial parse_polynomial(const Universe& u, const std::vector<VarId>& vars,
                            const std::string& text) {
    // Longest-match lexing of declared names; the rest of the grammar is the
    // shared one without indices.
    std::vector<std::pair<std::string, VarId>> names;
    for (VarId v : vars) names.emplace_back(u.info(v).name, v);
    std::sort(names.begin(), names.end(),
              [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });

    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& msg) -> void {
        throw SpecError(SpecError::Kind::Syntax, msg, 0, static_cast<int>(pos) + 1);
    };

    auto match_name = [&]() -> std::optional<VarId> {
        for (const auto& [name, v] : names) {
            if (text.compare(pos, name.size(), name) == 0) {
                pos += name.size();
                return v;
            }
        }
        return std::nullopt;
    };

    std::function<Polynomial()> parse_sum;

    auto parse_number = [&]() -> Rational {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected a number");
        long num = std::stol(text.substr(start, pos - start));
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            size_t dstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            if (dstart == pos) fail("expected a denominator");
            long den = std::stol(text.substr(dstart, pos - dstart));
            if (den == 0) fail("zero denominator");
            Rational r(num, den);
            r.canonicalize();
            return r;
        }
        return Rational(num);
    };

    auto parse_atom = [&]() -> Polynomial {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        if (text[pos] == '(') {
            ++pos;
            Polynomial e = parse_sum();
            skip_ws();
            if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
            ++pos;
            return e;
        }
        if (auto v = match_name()) return Polynomial::variable(*v);
        if (std::isdigit(static_cast<unsigned char>(text[pos])))
            return Polynomial::constant(parse_number());
        fail("unknown symbol");
        return Polynomial();
    };

    auto parse_factor = [&]() -> Polynomial {
        Polynomial base = parse_atom();
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            skip_ws();
            Rational e = parse_number();
            if (e.get_den() != 1 || e < 0) fail("exponent must be a natural number");
            Polynomial out = Polynomial::constant(1);
            for (long i = 0; i < e.get_num().get_si(); ++i) out = out * base;
            return out;
        }
        return base;
    };

    auto parse_term = [&]() -> Polynomial {
        int negations = 0;
        skip_ws();
        while (pos < text.size() && text[pos] == '-') {
            ++negations;
            ++pos;
            skip_ws();
        }
        Polynomial out = parse_factor();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                out = out * parse_factor();
            } else {
                break;
            }
        }
        if (negations % 2) out = -out;
        return out;
    };

    parse_sum = [&]() -> Polynomial {
        Polynomial out = parse_term();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '+') {
                ++pos;
                out += parse_term();
            } else if (pos < text.size() && text[pos] == '-') {
                out += parse_term();  // the '-' is consumed as a negation
            } else {
                break;
            }
        }
        return out;
    };

    Polynomial result = parse_sum();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return result;
}

}  // namespace aksz
