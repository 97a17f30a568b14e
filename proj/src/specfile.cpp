#include "aksz/specfile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aksz/errors.hpp"

namespace aksz {

namespace {

using nlohmann::json;

// Locate an expression inside the raw file text to report line/column.
std::pair<int, int> locate(const std::string& raw, const std::string& needle, int offset) {
    size_t at = raw.find(needle);
    if (at == std::string::npos) return {0, offset};
    size_t target = at + static_cast<size_t>(offset > 0 ? offset - 1 : 0);
    int line = 1, col = 1;
    for (size_t i = 0; i < target && i < raw.size(); ++i) {
        if (raw[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void rethrow_located(const SpecError& e, const std::string& raw,
                                  const std::string& expr, const std::string& field) {
    auto [line, col] = locate(raw, expr, e.column);
    throw SpecError(e.kind, field + ": " + e.what(), line, col);
}

// Split a declaration key like "c[a]" or "X[i],C[j]" into (family, index var)
// pairs.
std::vector<std::pair<std::string, std::string>> parse_keys(const std::string& key) {
    std::vector<std::pair<std::string, std::string>> out;
    size_t pos = 0;
    while (pos < key.size()) {
        size_t comma = key.find(',', pos);
        // Commas inside brackets belong to the index list.
        size_t lb = key.find('[', pos);
        if (lb != std::string::npos && comma != std::string::npos && lb < comma) {
            size_t rb = key.find(']', lb);
            if (rb == std::string::npos)
                throw SpecError(SpecError::Kind::Syntax, "unterminated index in key " + key);
            comma = key.find(',', rb);
        }
        std::string piece = key.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        size_t open = piece.find('[');
        if (open == std::string::npos) {
            out.emplace_back(piece, "");
        } else {
            if (piece.back() != ']')
                throw SpecError(SpecError::Kind::Syntax, "malformed key " + key);
            out.emplace_back(piece.substr(0, open),
                             piece.substr(open + 1, piece.size() - open - 2));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

const SpecDocument::Family* SpecDocument::family(const std::string& name) const {
    for (const auto& f : families)
        if (f.name == name) return &f;
    return nullptr;
}

VarId SpecDocument::coordinate(const std::string& fam, int index, int position) const {
    const Family* f = family(fam);
    if (!f)
        throw SpecError(SpecError::Kind::UndeclaredSymbol, "undeclared symbol " + fam, 0,
                        position + 1);
    if (f->range == 0) {
        if (index != 0)
            throw SpecError(SpecError::Kind::Structure, fam + " takes no index", 0,
                            position + 1);
        return f->vars[0];
    }
    if (index < 0 || index >= f->range)
        throw SpecError(SpecError::Kind::Structure,
                        "index out of range for " + fam, 0, position + 1);
    return f->vars[index];
}

SymbolTable SpecDocument::symbols() const {
    SymbolTable t;
    t.resolve = [this](const std::string& fam, const std::vector<int>& ix, int position) {
        if (ix.size() > 1)
            throw SpecError(SpecError::Kind::Structure, fam + " takes at most one index", 0,
                            position + 1);
        return coordinate(fam, ix.empty() ? 0 : ix[0], position);
    };
    t.range_of = [this](const std::string& fam) {
        const Family* f = family(fam);
        return f ? f->range : 0;
    };
    return t;
}

SymbolTable SpecDocument::lifted_symbols(const QManifoldSpec& lifted) const {
    const size_t base = target.coordinates.size();
    SymbolTable t;
    t.resolve = [this, &lifted, base](const std::string& fam, const std::vector<int>& ix,
                                      int position) -> VarId {
        std::string name = fam;
        bool momentum = false;
        if (name.rfind("pi_", 0) == 0) {
            momentum = true;
            name = name.substr(3);
        }
        VarId coord = coordinate(name, ix.empty() ? 0 : ix[0], position);
        if (!momentum) return coord;
        for (size_t i = 0; i < base; ++i)
            if (target.coordinates[i] == coord) return lifted.coordinates[base + i];
        throw SpecError(SpecError::Kind::UndeclaredSymbol, "no momentum for " + name, 0,
                        position + 1);
    };
    t.range_of = [this](const std::string& fam) {
        std::string name = fam.rfind("pi_", 0) == 0 ? fam.substr(3) : fam;
        const Family* f = family(name);
        return f ? f->range : 0;
    };
    return t;
}

Polynomial SpecDocument::parse_target_expression(const std::string& text,
                                                 const std::map<std::string, int>& frees) const {
    return evaluate(parse_expression(text), symbols(), frees);
}

SpecDocument parse_spec(const std::string& raw, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(raw);
    } catch (const json::parse_error& e) {
        // Recover line/column from the byte offset.
        int line = 1, col = 1;
        for (size_t i = 0; i < e.byte && i < raw.size(); ++i) {
            if (raw[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SpecError(SpecError::Kind::Syntax, origin + ": " + e.what(), line, col);
    }

    SpecDocument spec;
    spec.name = doc.value("name", origin);
    spec.base_dim = doc.value("base_dim", 1);
    spec.jet_order = doc.value("jet_order", 1);

    if (!doc.contains("coordinates") || !doc["coordinates"].is_array())
        throw SpecError(SpecError::Kind::Structure, "spec needs a coordinates array");

    for (const auto& c : doc["coordinates"]) {
        SpecDocument::Family fam;
        fam.name = c.at("name").get<std::string>();
        fam.range = c.value("range", 0);
        int ghost = c.at("ghost").get<int>();
        if (spec.family(fam.name))
            throw SpecError(SpecError::Kind::DuplicateCoordinate,
                            "duplicate coordinate " + fam.name);
        int count = fam.range == 0 ? 1 : fam.range;
        for (int i = 0; i < count; ++i) {
            std::string display =
                fam.range == 0 ? fam.name : fam.name + "[" + std::to_string(i) + "]";
            VarId v = spec.target.universe.add(
                {.name = display, .ghost = ghost, .kind = VarKind::TargetCoord});
            fam.vars.push_back(v);
            spec.target.coordinates.push_back(v);
        }
        spec.families.push_back(std::move(fam));
    }

    auto eval_field = [&](const std::string& text, const std::map<std::string, int>& frees,
                          const std::string& field) {
        try {
            return spec.parse_target_expression(text, frees);
        } catch (const SpecError& e) {
            rethrow_located(e, raw, text, field);
        }
    };

    // Per-component maps keyed like "c[a]": the index variable is free in
    // the value expression.
    auto load_component_map = [&](const json& obj, const std::string& field) {
        std::map<VarId, Polynomial> out;
        for (const auto& [key, value] : obj.items()) {
            auto keys = parse_keys(key);
            if (keys.size() != 1)
                throw SpecError(SpecError::Kind::Structure,
                                field + " keys declare exactly one component: " + key);
            const auto& [fam_name, index_var] = keys[0];
            const SpecDocument::Family* fam = spec.family(fam_name);
            if (!fam)
                throw SpecError(SpecError::Kind::UndeclaredSymbol,
                                field + ": undeclared symbol " + fam_name);
            std::string text = value.get<std::string>();
            const bool literal =
                !index_var.empty() &&
                std::all_of(index_var.begin(), index_var.end(),
                            [](unsigned char c) { return std::isdigit(c); });
            int lo = 0, hi = fam->range == 0 ? 0 : fam->range - 1;
            if (literal) lo = hi = std::stoi(index_var);
            if (hi >= (fam->range == 0 ? 1 : fam->range))
                throw SpecError(SpecError::Kind::Structure,
                                field + ": index out of range in " + key);
            for (int i = lo; i <= hi; ++i) {
                std::map<std::string, int> frees;
                if (!index_var.empty() && !literal) frees[index_var] = i;
                Polynomial p = eval_field(text, frees, field + " " + key);
                auto [it, fresh] = out.try_emplace(fam->vars[i], std::move(p));
                if (!fresh)
                    throw SpecError(SpecError::Kind::Structure,
                                    field + ": duplicate component " + key);
            }
        }
        return out;
    };

    if (doc.contains("bracket")) {
        const json& b = doc["bracket"];
        BracketSpec bracket(b.value("parity", 0), b.value("ghost", 0),
                            spec.target.coordinates);
        for (const auto& [key, value] : b.at("components").items()) {
            auto keys = parse_keys(key);
            if (keys.size() != 2)
                throw SpecError(SpecError::Kind::Structure,
                                "bracket keys declare component pairs: " + key);
            std::string text = value.get<std::string>();
            const auto* f1 = spec.family(keys[0].first);
            const auto* f2 = spec.family(keys[1].first);
            if (!f1 || !f2)
                throw SpecError(SpecError::Kind::UndeclaredSymbol,
                                "bracket: undeclared symbol in " + key);
            int n1 = f1->range == 0 ? 1 : f1->range;
            int n2 = f2->range == 0 ? 1 : f2->range;
            for (int i = 0; i < n1; ++i) {
                for (int j = 0; j < n2; ++j) {
                    std::map<std::string, int> frees;
                    if (!keys[0].second.empty()) frees[keys[0].second] = i;
                    if (!keys[1].second.empty()) frees[keys[1].second] = j;
                    Polynomial e = eval_field(text, frees, "bracket " + key);
                    try {
                        bracket.set_component(spec.target.universe, f1->vars[i], f2->vars[j],
                                              e);
                    } catch (const GradingError& err) {
                        throw SpecError(SpecError::Kind::GhostMismatch,
                                        "bracket " + key + ": " + err.what());
                    }
                }
            }
        }
        spec.target.bracket = std::move(bracket);
    }

    if (doc.contains("master_function"))
        spec.target.master_function =
            eval_field(doc["master_function"].get<std::string>(), {}, "master_function");

    if (doc.contains("symplectic_potential"))
        spec.target.symplectic_potential =
            load_component_map(doc["symplectic_potential"], "symplectic_potential");

    if (doc.contains("q")) {
        spec.target.q_action = load_component_map(doc["q"], "q");
    } else if (spec.target.master_function && spec.target.bracket) {
        Derivation h = hamiltonian_vf(spec.target.universe, *spec.target.master_function,
                                      *spec.target.bracket);
        for (VarId c : spec.target.coordinates)
            spec.target.q_action[c] = h.action(c) ? *h.action(c) : Polynomial();
    } else {
        throw SpecError(SpecError::Kind::Structure,
                        "spec needs q components, or a master function with a bracket");
    }

    try {
        validate_qmanifold(spec.target);
    } catch (const GradingError& e) {
        throw SpecError(SpecError::Kind::GhostMismatch, e.what());
    }
    return spec;
}

SpecDocument load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SpecError(SpecError::Kind::Structure, "cannot open spec file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str(), path);
}

}  // namespace aksz
