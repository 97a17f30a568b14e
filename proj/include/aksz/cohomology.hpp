#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aksz/derivation.hpp"
#include "aksz/linalg.hpp"
#include "aksz/polynomial.hpp"

namespace aksz {

// Degree classes a block can be bounded in. Total counts every variable;
// the others count variables of the matching kinds.
enum class DegreeClass {
    Total,
    Base,      // x
    Theta,     // form degree
    Target,    // target coordinates (c-degree)
    Field,     // formfields and their jets
    Momentum,  // momenta / antifields and their jets
};

struct DegreeWindow {
    int min = 0;
    int max;
};

// Finite graded block: exact ghost number, optional exact form degree,
// degree windows per class, and per-variable jet filters. With
// include_constants = false, field-independent monomials (no target, field
// or momentum variable) are excluded: that is the hat complex.
struct BlockSelector {
    int ghost = 0;
    std::optional<int> form_degree;
    std::map<DegreeClass, DegreeWindow> bounds;
    std::optional<int> max_jet_order;     // max derivative order on any variable
    std::optional<int> max_ladder_order;  // max (order + findex) on any variable
    bool include_constants = true;

    BlockSelector& with_ghost(int g) {
        ghost = g;
        return *this;
    }
    BlockSelector shifted(int dghost, int dform) const;
    std::string describe() const;
};

int degree_in_class(const Universe& u, const Monomial& m, DegreeClass cls);
bool is_field_dependent(const Universe& u, const Monomial& m);

// All monomials over `vars` matching the selector, in canonical order.
// Throws BlockError when the basis is not finite (an even variable not
// covered by any finite degree window).
std::vector<Monomial> enumerate_block(const Universe& u, const std::vector<VarId>& vars,
                                      const BlockSelector& sel);

struct CohomologyReport {
    BlockSelector block;
    int dim_space = 0;
    int dim_cocycles = 0;
    int dim_coboundaries = 0;
    int betti = 0;
    std::vector<Polynomial> representatives;
};

// Bidegree (ghost shift, form shift) of a grading-homogeneous derivation;
// throws BlockError naming the offending generator otherwise.
std::pair<int, int> derivation_bidegree(const Universe& u, const Derivation& d);

// d^2 = 0 as matrices on every listed block.
bool verify_complex(const Universe& u, const std::vector<VarId>& vars, const Derivation& d,
                    const std::vector<BlockSelector>& blocks);

// Exact cocycle / coboundary dimensions on one block. Coboundaries are
// counted within truncation: image vectors of the incoming block that lie
// entirely inside the block span. Representatives are reduced-echelon
// quotient vectors in canonical monomial order.
CohomologyReport cohomology_block(const Universe& u, const std::vector<VarId>& vars,
                                  const Derivation& d, const BlockSelector& sel);

// Parallel evaluation of independent blocks; result order follows input.
std::vector<CohomologyReport> cohomology_blocks(const Universe& u,
                                                const std::vector<VarId>& vars,
                                                const Derivation& d,
                                                const std::vector<BlockSelector>& sels);

// Either eta with D eta = z inside the selected block, or nothing: not
// exact within the truncation. Requires D z = 0.
std::optional<Polynomial> exactness_witness(const Universe& u, const std::vector<VarId>& vars,
                                            const Polynomial& z, const Derivation& d,
                                            const BlockSelector& sel);

}  // namespace aksz
