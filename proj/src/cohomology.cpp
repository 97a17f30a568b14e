#include "aksz/cohomology.hpp"

#include <future>
#include <sstream>

#include "aksz/errors.hpp"

namespace aksz {

namespace {

DegreeClass class_of(const VarInfo& info) {
    switch (info.kind) {
        case VarKind::BaseCoord: return DegreeClass::Base;
        case VarKind::Theta: return DegreeClass::Theta;
        case VarKind::TargetCoord: return DegreeClass::Target;
        case VarKind::FormField:
        case VarKind::Jet: return DegreeClass::Field;
        case VarKind::Momentum:
        case VarKind::MomentumJet: return DegreeClass::Momentum;
    }
    return DegreeClass::Total;
}

bool counts_as_field(const VarInfo& info) {
    switch (class_of(info)) {
        case DegreeClass::Target:
        case DegreeClass::Field:
        case DegreeClass::Momentum: return true;
        default: return false;
    }
}

}  // namespace

BlockSelector BlockSelector::shifted(int dghost, int dform) const {
    BlockSelector s = *this;
    s.ghost += dghost;
    if (s.form_degree) *s.form_degree += dform;
    return s;
}

std::string BlockSelector::describe() const {
    std::ostringstream os;
    os << "ghost " << ghost;
    if (form_degree) os << ", form " << *form_degree;
    for (const auto& [cls, w] : bounds) {
        const char* name = "?";
        switch (cls) {
            case DegreeClass::Total: name = "total"; break;
            case DegreeClass::Base: name = "x"; break;
            case DegreeClass::Theta: name = "theta"; break;
            case DegreeClass::Target: name = "c"; break;
            case DegreeClass::Field: name = "field"; break;
            case DegreeClass::Momentum: name = "pi"; break;
        }
        os << ", " << name << " in [" << w.min << "," << w.max << "]";
    }
    if (max_jet_order) os << ", jets <= " << *max_jet_order;
    if (max_ladder_order) os << ", order+findex <= " << *max_ladder_order;
    if (!include_constants) os << ", field-dependent";
    return os.str();
}

int degree_in_class(const Universe& u, const Monomial& m, DegreeClass cls) {
    int d = 0;
    for (const auto& f : m.factors()) {
        if (cls == DegreeClass::Total || class_of(u.info(f.var)) == cls) d += f.exp;
    }
    return d;
}

bool is_field_dependent(const Universe& u, const Monomial& m) {
    for (const auto& f : m.factors())
        if (counts_as_field(u.info(f.var))) return true;
    return false;
}

std::vector<Monomial> enumerate_block(const Universe& u, const std::vector<VarId>& vars,
                                      const BlockSelector& sel) {
    // Admissible variables under the per-variable filters.
    std::vector<VarId> admitted;
    for (VarId v : vars) {
        const VarInfo& info = u.info(v);
        if (sel.max_jet_order && info.order > *sel.max_jet_order) continue;
        if (sel.max_ladder_order && info.order + info.findex > *sel.max_ladder_order) continue;
        admitted.push_back(v);
    }

    auto window = [&](DegreeClass cls) -> const DegreeWindow* {
        auto it = sel.bounds.find(cls);
        return it == sel.bounds.end() ? nullptr : &it->second;
    };

    // Every even variable needs a finite cap, or the block is infinite.
    for (VarId v : admitted) {
        if (v.parity()) continue;
        if (window(DegreeClass::Total)) continue;
        if (!window(class_of(u.info(v))))
            throw BlockError("block is not finite: no degree bound covers even variable " +
                             u.info(v).name);
    }

    std::vector<Monomial> out;
    std::vector<Factor> current;
    std::map<DegreeClass, int> degrees;
    int total = 0, ghost = 0, form = 0;

    std::function<void(size_t)> walk = [&](size_t i) {
        // Prune on exceeded maxima.
        if (auto* w = window(DegreeClass::Total); w && total > w->max) return;
        for (const auto& [cls, w] : sel.bounds) {
            auto it = degrees.find(cls);
            if (it != degrees.end() && it->second > w.max) return;
        }
        if (sel.form_degree && form > *sel.form_degree) return;

        if (i == admitted.size()) {
            if (ghost != sel.ghost) return;
            if (sel.form_degree && form != *sel.form_degree) return;
            for (const auto& [cls, w] : sel.bounds) {
                int d = 0;
                if (auto it = degrees.find(cls); it != degrees.end()) d = it->second;
                if (cls == DegreeClass::Total) d = total;
                if (d < w.min || d > w.max) return;
            }
            auto m = Monomial::from_factors(current);
            if (!sel.include_constants && !is_field_dependent(u, m->second)) return;
            out.push_back(m->second);
            return;
        }

        VarId v = admitted[i];
        const VarInfo& info = u.info(v);
        const DegreeClass cls = class_of(info);

        int cap = v.parity() ? 1 : std::numeric_limits<int>::max();
        if (auto* w = window(DegreeClass::Total)) cap = std::min(cap, w->max - total);
        if (auto* w = window(cls)) {
            int used = 0;
            if (auto it = degrees.find(cls); it != degrees.end()) used = it->second;
            cap = std::min(cap, w->max - used);
        }
        if (sel.form_degree && info.form_degree > 0)
            cap = std::min(cap, (*sel.form_degree - form) / info.form_degree);
        cap = std::max(cap, 0);

        for (int e = 0; e <= cap; ++e) {
            if (e > 0) {
                current.push_back({v, e});
                degrees[cls] += e;
                total += e;
                ghost += e * info.ghost;
                form += e * info.form_degree;
            }
            walk(i + 1);
            if (e > 0) {
                current.pop_back();
                degrees[cls] -= e;
                total -= e;
                ghost -= e * info.ghost;
                form -= e * info.form_degree;
            }
        }
    };
    walk(0);

    std::sort(out.begin(), out.end());
    return out;
}

std::pair<int, int> derivation_bidegree(const Universe& u, const Derivation& d) {
    std::optional<std::pair<int, int>> bid;
    for (const auto& [v, p] : d.actions()) {
        if (p.is_zero()) continue;
        const VarInfo& info = u.info(v);
        auto g = ghost_of(u, p);
        auto f = form_degree_of(u, p);
        if (!g || !f)
            throw BlockError("derivation is not grading-homogeneous on generator " + info.name);
        std::pair<int, int> here{*g - info.ghost, *f - info.form_degree};
        if (!bid)
            bid = here;
        else if (*bid != here)
            throw BlockError("derivation is not grading-homogeneous on generator " + info.name);
    }
    if (bid && (bid->first != d.ghost() || bid->second != d.form_shift()))
        throw BlockError("derivation grading disagrees with its action table");
    return bid.value_or(std::pair<int, int>{d.ghost(), d.form_shift()});
}

bool verify_complex(const Universe& u, const std::vector<VarId>& vars, const Derivation& d,
                    const std::vector<BlockSelector>& blocks) {
    derivation_bidegree(u, d);
    for (const auto& sel : blocks) {
        for (const Monomial& m : enumerate_block(u, vars, sel)) {
            Polynomial once = d.apply(m);
            if (!d.apply(once).is_zero()) return false;
        }
    }
    return true;
}

namespace {

struct Indexer {
    std::map<Monomial, uint32_t> index;

    uint32_t of(const Monomial& m) {
        auto [it, inserted] = index.try_emplace(m, static_cast<uint32_t>(index.size()));
        return it->second;
    }
};

SparseVec to_vec(Indexer& ix, const Polynomial& p) {
    SparseVec v;
    for (const auto& [m, c] : p.terms()) v[ix.of(m)] = c;
    return v;
}

}  // namespace

CohomologyReport cohomology_block(const Universe& u, const std::vector<VarId>& vars,
                                  const Derivation& d, const BlockSelector& sel) {
    auto [dg, df] = derivation_bidegree(u, d);

    std::vector<Monomial> basis = enumerate_block(u, vars, sel);
    std::vector<Monomial> basis_in = enumerate_block(u, vars, sel.shifted(-dg, -df));

    CohomologyReport report;
    report.block = sel;
    report.dim_space = static_cast<int>(basis.size());

    // Canonical column order: enumerate the block monomials first so
    // representative pivots follow the canonical monomial order.
    Indexer ix;
    std::set<uint32_t> block_cols;
    for (const Monomial& m : basis) block_cols.insert(ix.of(m));

    auto image_of = [&](const std::vector<Monomial>& src) {
        std::vector<SparseVec> img;
        img.reserve(src.size());
        for (const Monomial& m : src) {
            try {
                img.push_back(to_vec(ix, d.apply(m)));
            } catch (const TruncationError& e) {
                throw BlockError(std::string("block truncation cuts the image: ") + e.what());
            }
        }
        return img;
    };

    std::vector<SparseVec> d_on_block = image_of(basis);
    std::vector<SparseVec> kernel = kernel_basis(d_on_block);
    report.dim_cocycles = static_cast<int>(kernel.size());

    std::vector<SparseVec> d_on_in = image_of(basis_in);
    std::vector<SparseVec> boundaries = rowspace_intersection(d_on_in, block_cols);
    report.dim_coboundaries = static_cast<int>(boundaries.size());
    report.betti = report.dim_cocycles - report.dim_coboundaries;

    // Kernel vectors live in basis coordinates; boundary vectors in ambient
    // monomial coordinates restricted to the block. Translate and quotient.
    std::vector<SparseVec> boundary_rref = boundaries;
    std::vector<uint32_t> boundary_pivots = rref(boundary_rref);

    std::vector<SparseVec> reduced;
    for (const SparseVec& k : kernel) {
        SparseVec ambient;
        for (const auto& [j, c] : k) ambient[ix.of(basis[j])] = c;
        SparseVec r = reduce_against(ambient, boundary_rref, boundary_pivots);
        if (!r.empty()) reduced.push_back(std::move(r));
    }
    rref(reduced);

    std::vector<const Monomial*> by_col(ix.index.size());
    for (const auto& [m, j] : ix.index) by_col[j] = &m;
    for (const SparseVec& r : reduced) {
        Polynomial p;
        for (const auto& [j, c] : r) p.add_term(*by_col[j], c);
        report.representatives.push_back(std::move(p));
    }

    if (static_cast<int>(report.representatives.size()) != report.betti)
        throw BlockError("quotient dimension mismatch in block " + sel.describe());
    return report;
}

std::vector<CohomologyReport> cohomology_blocks(const Universe& u,
                                                const std::vector<VarId>& vars,
                                                const Derivation& d,
                                                const std::vector<BlockSelector>& sels) {
    std::vector<std::future<CohomologyReport>> futures;
    futures.reserve(sels.size());
    for (const auto& sel : sels)
        futures.push_back(std::async(std::launch::async,
                                     [&, sel] { return cohomology_block(u, vars, d, sel); }));
    std::vector<CohomologyReport> out;
    out.reserve(sels.size());
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

std::optional<Polynomial> exactness_witness(const Universe& u, const std::vector<VarId>& vars,
                                            const Polynomial& z, const Derivation& d,
                                            const BlockSelector& sel) {
    if (!d.apply(z).is_zero()) throw ValidationError("exactness_witness: z is not a cocycle");

    std::vector<Monomial> basis = enumerate_block(u, vars, sel);
    Indexer ix;
    std::vector<SparseVec> cols;
    cols.reserve(basis.size());
    for (const Monomial& m : basis) cols.push_back(to_vec(ix, d.apply(m)));
    SparseVec rhs = to_vec(ix, z);

    auto x = solve(cols, rhs);
    if (!x) return std::nullopt;
    Polynomial eta;
    for (const auto& [j, c] : *x) eta.add_term(basis[j], c);
    return eta;
}

}  // namespace aksz
