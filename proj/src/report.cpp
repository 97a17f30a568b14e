#include "aksz/report.hpp"

#include <sstream>

#include <json.hpp>

namespace aksz {

bool RunReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void RunReport::add(const std::string& name, bool ok, std::string detail) {
    checks.push_back({name, ok, std::move(detail)});
}

std::string RunReport::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["pass"] = pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        j["checks"].push_back(jc);
    }
    if (!table.empty()) {
        j["cohomology"] = nlohmann::json::array();
        for (const auto& row : table) {
            nlohmann::json jr;
            jr["block"] = row.block;
            jr["dim_space"] = row.dim_space;
            jr["dim_cocycles"] = row.dim_cocycles;
            jr["dim_coboundaries"] = row.dim_coboundaries;
            jr["betti"] = row.betti;
            jr["representatives"] = row.representatives;
            j["cohomology"].push_back(jr);
        }
    }
    if (!notes.empty()) j["notes"] = notes;
    return j.dump(2) + "\n";
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "# " << command << "\n";
    for (const auto& c : checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) os << "  [" << c.detail << "]";
        os << "\n";
    }
    for (const auto& row : table) {
        os << "block " << row.block << ": dim " << row.dim_space << ", cocycles "
           << row.dim_cocycles << ", coboundaries " << row.dim_coboundaries << ", betti "
           << row.betti << "\n";
        for (const auto& rep : row.representatives) os << "    rep: " << rep << "\n";
    }
    for (const auto& n : notes) os << "note: " << n << "\n";
    return os.str();
}

}  // namespace aksz
