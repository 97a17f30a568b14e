#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "aksz/polynomial.hpp"

namespace aksz {

// Sparse row vector: column index -> nonzero rational entry.
using SparseVec = std::map<uint32_t, Rational>;

// Reduced row echelon form over the exact rationals, in place. Pivoting is
// deterministic: leftmost column first, sparsest candidate row (ties by row
// order) to control fill. Returns the pivot columns in row order; zero rows
// are dropped.
std::vector<uint32_t> rref(std::vector<SparseVec>& rows);

int rank(std::vector<SparseVec> rows);

// Null space of the linear map x -> A x where column j of A is cols[j].
// Basis vectors are reduced and ordered by their leading (free) column.
std::vector<SparseVec> kernel_basis(const std::vector<SparseVec>& cols);

// One exact solution x of sum_j x_j cols[j] = b, if any.
std::optional<SparseVec> solve(const std::vector<SparseVec>& cols, const SparseVec& b);

// Basis of the intersection of the row space with the coordinate subspace
// spanned by the allowed columns.
std::vector<SparseVec> rowspace_intersection(const std::vector<SparseVec>& rows,
                                             const std::set<uint32_t>& allowed);

// Reduce v against rref rows with the given pivot columns.
SparseVec reduce_against(const SparseVec& v, const std::vector<SparseVec>& rref_rows,
                         const std::vector<uint32_t>& pivots);

}  // namespace aksz
