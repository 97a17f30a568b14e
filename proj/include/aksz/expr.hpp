#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "aksz/polynomial.hpp"

namespace aksz {

// Expression grammar shared by spec files and report round-trips:
//
//   expr     := term (('+'|'-') term)*
//   term     := ('-')* factor ('*' factor)*
//   factor   := atom ('^' nat)?
//   atom     := rational | 'eps' '(' idx,... ')' | 'delta' '(' idx ',' idx ')'
//             | symbol | '(' expr ')'
//   symbol   := ident ('[' idx,... ']')?
//   idx      := ident | nat
//   rational := nat ('/' nat)?
//
// Division exists only inside rational literals. Index variables not bound
// as free indices are summed over their inferred range, Einstein style.

struct ExprIndex {
    bool is_literal = false;
    int literal = 0;
    std::string var;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Number, Symbol, Eps, Delta, Sum, Product, Power, Negate };
    Kind kind;
    Rational number;                // Number
    std::string symbol;             // Symbol family name
    std::vector<ExprIndex> indices; // Symbol / Eps / Delta
    std::vector<ExprPtr> children;  // Sum / Product
    int exponent = 1;               // Power
    int position = 0;               // offset into the source string
};

// Parse; throws SpecError{Syntax} with the offset in `column`.
ExprPtr parse_expression(const std::string& text);

// Resolution hooks for evaluating an expression over a universe.
struct SymbolTable {
    // (family, concrete indices) -> variable; throws SpecError{UndeclaredSymbol}.
    std::function<VarId(const std::string&, const std::vector<int>&, int position)> resolve;
    // Index range of a family's slots; 0 when the family is unknown.
    std::function<int(const std::string&)> range_of;
};

// Evaluate with Einstein summation over non-free index variables; `frees`
// carries the index values bound by the declaration context.
Polynomial evaluate(const ExprPtr& e, const SymbolTable& table,
                    const std::map<std::string, int>& frees);

// Literal-name polynomial parser for report round-trips: symbols must match
// declared variable names exactly (longest match wins, so bracketed and
// suffixed jet names lex as single tokens).
Polynomial parse_polynomial(const Universe& u, const std::vector<VarId>& vars,
                            const std::string& text);

}  // namespace aksz
