#pragma once

#include <string>
#include <vector>

namespace aksz {

// Outcome of one CLI run. The machine-readable JSON and the human rendering
// carry the same mathematical data; wall-clock timing is printed separately
// so reports stay byte-identical across runs.
struct RunReport {
    struct Check {
        std::string name;
        bool pass = true;
        std::string detail;  // residual polynomial or short explanation
    };

    struct CohomologyRow {
        std::string block;
        int dim_space = 0;
        int dim_cocycles = 0;
        int dim_coboundaries = 0;
        int betti = 0;
        std::vector<std::string> representatives;
    };

    std::string command;
    std::vector<Check> checks;
    std::vector<CohomologyRow> table;
    std::vector<std::string> notes;

    bool pass() const;
    void add(const std::string& name, bool ok, std::string detail = "");

    std::string to_json() const;
    std::string to_text() const;
};

}  // namespace aksz
