#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aksz/expr.hpp"
#include "aksz/qtarget.hpp"

namespace aksz {

// Parsed model file: declarations plus the validated target-space data.
// Coordinates are declared as indexed families; expressions use the grammar
// from expr.hpp with eps/delta builtins and Einstein summation.
struct SpecDocument {
    std::string name;
    int base_dim = 1;
    int jet_order = 1;

    QManifoldSpec target;

    struct Family {
        std::string name;
        int range = 0;  // 0: a plain scalar symbol
        std::vector<VarId> vars;
    };
    std::vector<Family> families;

    const Family* family(const std::string& name) const;
    VarId coordinate(const std::string& family, int index, int position = 0) const;

    // Symbol table over the declared coordinates.
    SymbolTable symbols() const;
    // Symbol table over a cotangent lift of the target: momenta are
    // addressed as pi_<family>[i].
    SymbolTable lifted_symbols(const QManifoldSpec& lifted) const;

    Polynomial parse_target_expression(const std::string& text,
                                       const std::map<std::string, int>& frees = {}) const;
};

// Load and fully validate a spec document; throws SpecError with a position
// inside the offending expression where applicable.
SpecDocument load_spec(const std::string& path);
SpecDocument parse_spec(const std::string& json_text, const std::string& origin = "spec");

}  // namespace aksz
