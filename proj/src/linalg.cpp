#include "aksz/linalg.hpp"

#include <algorithm>
#include <limits>

namespace aksz {

namespace {

void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
    for (const auto& [col, v] : x) {
        auto it = y.find(col);
        if (it == y.end()) {
            Rational nv = a * v;
            if (nv != 0) y.emplace(col, std::move(nv));
        } else {
            it->second += a * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

}  // namespace

std::vector<uint32_t> rref(std::vector<SparseVec>& rows) {
    std::vector<SparseVec> done;
    std::vector<uint32_t> pivots;

    std::vector<SparseVec> work = std::move(rows);
    while (true) {
        // Leftmost column present in any remaining row.
        uint32_t col = std::numeric_limits<uint32_t>::max();
        for (const auto& r : work)
            if (!r.empty()) col = std::min(col, r.begin()->first);
        if (col == std::numeric_limits<uint32_t>::max()) break;

        // Sparsest row whose leading entry sits in that column.
        size_t best = work.size();
        for (size_t i = 0; i < work.size(); ++i) {
            if (work[i].empty() || work[i].begin()->first != col) continue;
            if (best == work.size() || work[i].size() < work[best].size()) best = i;
        }

        SparseVec pivot = std::move(work[best]);
        work.erase(work.begin() + best);
        Rational inv = 1 / pivot.begin()->second;
        for (auto& [c, v] : pivot) v *= inv;

        for (auto& r : work) {
            auto it = r.find(col);
            if (it != r.end()) axpy(r, -it->second, pivot);
        }
        for (auto& r : done) {
            auto it = r.find(col);
            if (it != r.end()) axpy(r, -it->second, pivot);
        }
        done.push_back(std::move(pivot));
        pivots.push_back(col);
    }

    rows = std::move(done);
    return pivots;
}

int rank(std::vector<SparseVec> rows) { return static_cast<int>(rref(rows).size()); }

std::vector<SparseVec> kernel_basis(const std::vector<SparseVec>& cols) {
    // Transpose into rows indexed by the ambient coordinates.
    const uint32_t n = static_cast<uint32_t>(cols.size());
    std::map<uint32_t, SparseVec> by_coord;
    for (uint32_t j = 0; j < n; ++j)
        for (const auto& [coord, v] : cols[j]) by_coord[coord][j] = v;
    std::vector<SparseVec> rows;
    rows.reserve(by_coord.size());
    for (auto& [coord, r] : by_coord) rows.push_back(std::move(r));

    std::vector<uint32_t> pivots = rref(rows);
    std::vector<bool> is_pivot(n, false);
    for (uint32_t p : pivots) is_pivot[p] = true;

    std::vector<SparseVec> basis;
    for (uint32_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        SparseVec v;
        v[free] = 1;
        for (size_t r = 0; r < rows.size(); ++r) {
            auto it = rows[r].find(free);
            if (it != rows[r].end()) v[pivots[r]] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<SparseVec> solve(const std::vector<SparseVec>& cols, const SparseVec& b) {
    // Augmented transpose: rows indexed by ambient coordinates, one extra
    // column for b.
    const uint32_t bcol = static_cast<uint32_t>(cols.size());
    std::map<uint32_t, SparseVec> by_coord;
    for (uint32_t j = 0; j < cols.size(); ++j)
        for (const auto& [coord, v] : cols[j]) by_coord[coord][j] = v;
    for (const auto& [coord, v] : b) by_coord[coord][bcol] = v;

    std::vector<SparseVec> rows;
    rows.reserve(by_coord.size());
    for (auto& [coord, r] : by_coord) rows.push_back(std::move(r));

    std::vector<uint32_t> pivots = rref(rows);
    for (uint32_t p : pivots)
        if (p == bcol) return std::nullopt;  // inconsistent

    SparseVec x;
    for (size_t r = 0; r < rows.size(); ++r) {
        auto it = rows[r].find(bcol);
        if (it != rows[r].end()) x[pivots[r]] = it->second;
    }
    return x;
}

std::vector<SparseVec> rowspace_intersection(const std::vector<SparseVec>& rows,
                                             const std::set<uint32_t>& allowed) {
    // Permute disallowed columns to the front; after rref, rows pivoting in
    // the allowed region have zeros in every disallowed column.
    std::map<uint32_t, uint32_t> fwd;
    std::vector<uint32_t> back;
    uint32_t n_disallowed = 0;
    {
        std::set<uint32_t> all_cols;
        for (const auto& r : rows)
            for (const auto& [c, v] : r) all_cols.insert(c);
        for (uint32_t c : all_cols)
            if (!allowed.count(c)) {
                fwd[c] = static_cast<uint32_t>(back.size());
                back.push_back(c);
            }
        n_disallowed = static_cast<uint32_t>(back.size());
        for (uint32_t c : all_cols)
            if (allowed.count(c)) {
                fwd[c] = static_cast<uint32_t>(back.size());
                back.push_back(c);
            }
    }

    std::vector<SparseVec> permuted;
    permuted.reserve(rows.size());
    for (const auto& r : rows) {
        SparseVec p;
        for (const auto& [c, v] : r) p[fwd.at(c)] = v;
        permuted.push_back(std::move(p));
    }
    std::vector<uint32_t> pivots = rref(permuted);

    std::vector<SparseVec> out;
    for (size_t i = 0; i < permuted.size(); ++i) {
        if (pivots[i] < n_disallowed) continue;
        SparseVec r;
        for (const auto& [c, v] : permuted[i]) r[back[c]] = v;
        out.push_back(std::move(r));
    }
    return out;
}

SparseVec reduce_against(const SparseVec& v, const std::vector<SparseVec>& rref_rows,
                         const std::vector<uint32_t>& pivots) {
    SparseVec out = v;
    for (size_t i = 0; i < rref_rows.size(); ++i) {
        auto it = out.find(pivots[i]);
        if (it != out.end()) axpy(out, -it->second, rref_rows[i]);
    }
    return out;
}

}  // namespace aksz
