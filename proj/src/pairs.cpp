#include "novikov/pairs.hpp"

#include <algorithm>
#include <stdexcept>

#include "novikov/error.hpp"
#include "novikov/linalg.hpp"

namespace novikov {

namespace {

SparseVector dense_coords(const std::vector<Rational>& c) { return SparseVector::from_dense(c); }

void require_parent(const ComplexPtr& x, const Subcomplex& z) {
    if (!z.parent() || !(z.parent() == x || *z.parent() == *x))
        throw Error(ErrorCode::InvalidComplex, "subcomplex does not belong to the given complex");
}

} // namespace

std::vector<std::size_t> RelativeComplex::dims() const {
    std::vector<std::size_t> d;
    for (const auto& c : cells) d.push_back(c.size());
    return d;
}

RelativeComplex relative_complex(const ComplexPtr& x, const Subcomplex& z, const LocalSystem& s) {
    require_parent(x, z);
    TwistedComplex tc = coboundary_matrices(x, s);
    const int top = x->dimension();
    RelativeComplex rc{x, z, s, {}, {}};
    std::vector<std::vector<long>> slot(top + 1);
    rc.cells.resize(top + 1);
    for (int p = 0; p <= top; ++p) {
        slot[p].assign(x->count(p), -1);
        for (std::size_t i = 0; i < x->count(p); ++i)
            if (!z.contains(p, i)) {
                slot[p][i] = static_cast<long>(rc.cells[p].size());
                rc.cells[p].push_back(i);
            }
    }
    for (int p = 0; p <= top; ++p) {
        std::vector<SparseVector> cols;
        for (std::size_t i : rc.cells[p]) {
            std::vector<Entry> e;
            for (const auto& entry : tc.delta[p].column(i)) {
                long r = slot[p + 1][entry.index];
                if (r < 0) throw std::logic_error("relative coboundary leaves the cochains vanishing on Z");
                e.push_back({static_cast<Index>(r), entry.value});
            }
            cols.emplace_back(std::move(e));
        }
        rc.delta_rel.emplace_back(p < top ? rc.cells[p + 1].size() : 0, std::move(cols));
    }
    return rc;
}

CohomologyReport relative_betti(const ComplexPtr& x, const Subcomplex& z, const LocalSystem& s, bool with_representatives) {
    RelativeComplex rc = relative_complex(x, z, s);
    CochainCohomology h(rc.dims(), std::move(rc.delta_rel), {with_representatives, false});
    CohomologyReport r;
    r.betti = h.betti();
    if (with_representatives)
        for (int p = 0; p <= h.top_degree(); ++p) r.representatives.push_back(h.representatives(p));
    r.system_fingerprint = s.fingerprint();
    return r;
}

std::size_t PairLES::node_dim(std::size_t node) const {
    std::size_t k = node / 3;
    switch (node % 3) {
    case 0: return relative[k];
    case 1: return absolute[k];
    default: return sub[k];
    }
}

long PairLES::alternating_sum() const {
    long s = 0;
    for (std::size_t k = 0; k < relative.size(); ++k) {
        long term = static_cast<long>(relative[k]) - static_cast<long>(absolute[k]) + static_cast<long>(sub[k]);
        s += k % 2 ? -term : term;
    }
    return s;
}

bool PairLES::exact() const { return std::all_of(exact_at.begin(), exact_at.end(), [](bool b) { return b; }); }

PairLES assemble_les(const ComplexPtr& x, const Subcomplex& z, const LocalSystem& s) {
    require_parent(x, z);
    const int top = x->dimension();
    TwistedCohomology hx(x, s);
    const ComplexPtr& zc = z.complex();
    TwistedCohomology hz(zc, pullback_system(z.inclusion(), s));
    RelativeComplex rc = relative_complex(x, z, s);
    std::vector<std::vector<std::size_t>> cells = rc.cells;
    std::vector<std::vector<long>> rel_slot(top + 1);
    for (int p = 0; p <= top; ++p) {
        rel_slot[p].assign(x->count(p), -1);
        for (std::size_t i = 0; i < cells[p].size(); ++i) rel_slot[p][cells[p][i]] = static_cast<long>(i);
    }
    CochainCohomology hr(rc.dims(), std::move(rc.delta_rel), {true, true});

    PairLES les;
    for (int k = 0; k <= top; ++k) {
        les.relative.push_back(hr.betti(k));
        les.absolute.push_back(hx.betti(k));
        les.sub.push_back(hz.betti(k));
    }
    for (int k = 0; k <= top; ++k) {
        // j: extend relative representatives by zero
        std::vector<SparseVector> jcols;
        for (const auto& r : hr.representatives(k)) {
            std::vector<Entry> e;
            for (const auto& entry : r) e.push_back({static_cast<Index>(cells[k][entry.index]), entry.value});
            jcols.push_back(dense_coords(hx.groups().coordinates(k, SparseVector(std::move(e)))));
        }
        les.j.emplace_back(les.absolute[k], std::move(jcols));

        // i*: restrict to Z (the inclusion is order preserving, so no signs or transport)
        std::vector<SparseVector> icols;
        for (const auto& a : hx.groups().representatives(k)) {
            if (k > zc->dimension()) {
                icols.emplace_back();
                continue;
            }
            std::vector<Entry> e;
            for (std::size_t i = 0; i < zc->count(k); ++i) {
                Rational v = a.at(static_cast<Index>(z.parent_index(k, i)));
                if (!v.is_zero()) e.push_back({static_cast<Index>(i), std::move(v)});
            }
            icols.push_back(dense_coords(hz.groups().coordinates(k, SparseVector(std::move(e)))));
        }
        les.restriction.emplace_back(les.sub[k], std::move(icols));

        // connecting map: extend by zero, apply delta, read off the relative part
        std::vector<SparseVector> dcols;
        if (k <= zc->dimension()) {
            for (const auto& zr : hz.groups().representatives(k)) {
                if (k == top) {
                    dcols.emplace_back();
                    continue;
                }
                std::vector<Entry> e;
                for (const auto& entry : zr) e.push_back({static_cast<Index>(z.parent_index(k, entry.index)), entry.value});
                SparseVector d = hx.groups().apply(k, SparseVector(std::move(e)));
                std::vector<Entry> rel;
                for (const auto& entry : d) {
                    long r = rel_slot[k + 1][entry.index];
                    if (r < 0) throw std::logic_error("connecting map: coboundary of a lifted cocycle does not vanish on Z");
                    rel.push_back({static_cast<Index>(r), entry.value});
                }
                dcols.push_back(dense_coords(hr.coordinates(k + 1, SparseVector(std::move(rel)))));
            }
        }
        les.connecting.emplace_back(k < top ? les.relative[k + 1] : 0, std::move(dcols));
    }

    // exactness: node n has incoming map in(n) and outgoing map out(n)
    const std::size_t nodes = 3 * static_cast<std::size_t>(top + 1);
    auto out_map = [&](std::size_t n) -> const SparseMatrix& {
        std::size_t k = n / 3;
        switch (n % 3) {
        case 0: return les.j[k];
        case 1: return les.restriction[k];
        default: return les.connecting[k];
        }
    };
    for (std::size_t n = 0; n < nodes; ++n) {
        const SparseMatrix& out = out_map(n);
        std::size_t rank_out = rank(out);
        std::size_t rank_in = 0;
        bool composite_zero = true;
        if (n > 0) {
            const SparseMatrix& in = out_map(n - 1);
            rank_in = rank(in);
            for (std::size_t c = 0; c < in.cols() && composite_zero; ++c) composite_zero = out.apply(in.column(c)).empty();
        }
        les.exact_at.push_back(composite_zero && rank_in + rank_out == les.node_dim(n));
    }
    return les;
}

PairLES les_of_pair(const ComplexPtr& x, const Subcomplex& z, const LocalSystem& s) {
    PairLES les = assemble_les(x, z, s);
    for (std::size_t n = 0; n < les.node_count(); ++n)
        if (!les.exact_at[n])
            throw Error(ErrorCode::ExactnessFailure, "long exact sequence is not exact at node " + std::to_string(n));
    if (les.alternating_sum() != 0) throw Error(ErrorCode::ExactnessFailure, "alternating dimension sum is nonzero");
    return les;
}

// ---------------------------------------------------------------------------

std::string to_string(CokerReport::Status s) {
    switch (s) {
    case CokerReport::Status::Ok: return "Ok";
    case CokerReport::Status::RowNotExact: return "RowNotExact";
    case CokerReport::Status::SquareNotCommuting: return "SquareNotCommuting";
    case CokerReport::Status::HypothesisViolated: return "HypothesisViolated";
    case CokerReport::Status::ConclusionFailed: return "ConclusionFailed";
    }
    return "?";
}

namespace {

bool row_exact(const ExactRow& row, std::string& why) {
    for (std::size_t k = 0; k + 1 < row.maps.size(); ++k) {
        const SparseMatrix prod = row.maps[k + 1] * row.maps[k];
        if (prod.nnz() != 0) {
            why = "composite of maps " + std::to_string(k + 1) + " and " + std::to_string(k + 2) + " is nonzero";
            return false;
        }
    }
    for (std::size_t k = 1; k + 1 < row.dims.size(); ++k) {
        if (rank(row.maps[k - 1]) + rank(row.maps[k]) != row.dims[k]) {
            why = "image differs from kernel at position " + std::to_string(k + 1);
            return false;
        }
    }
    return true;
}

void check_shapes(const ExactRow& row, const char* name) {
    if (row.dims.size() != 5 || row.maps.size() != 4) throw Error(ErrorCode::DimensionMismatch, std::string(name) + " row must have 5 spaces and 4 maps");
    for (std::size_t k = 0; k < 4; ++k)
        if (row.maps[k].cols() != row.dims[k] || row.maps[k].rows() != row.dims[k + 1])
            throw Error(ErrorCode::DimensionMismatch, std::string(name) + " row map " + std::to_string(k + 1) + " has the wrong shape");
}

} // namespace

CokerReport check_coker_ladder(const LadderInstance& l) {
    check_shapes(l.top, "top");
    check_shapes(l.bottom, "bottom");
    if (l.vertical.size() != 5) throw Error(ErrorCode::DimensionMismatch, "ladder needs 5 vertical maps");
    for (std::size_t k = 0; k < 5; ++k)
        if (l.vertical[k].cols() != l.top.dims[k] || l.vertical[k].rows() != l.bottom.dims[k])
            throw Error(ErrorCode::DimensionMismatch, "vertical map i" + std::to_string(k + 1) + " has the wrong shape");

    CokerReport r;
    std::string why;
    if (!row_exact(l.top, why)) {
        r.status = CokerReport::Status::RowNotExact;
        r.detail = "top row: " + why;
        return r;
    }
    if (!row_exact(l.bottom, why)) {
        r.status = CokerReport::Status::RowNotExact;
        r.detail = "bottom row: " + why;
        return r;
    }
    for (std::size_t k = 0; k < 4; ++k) {
        if (!(l.bottom.maps[k] * l.vertical[k] == l.vertical[k + 1] * l.top.maps[k])) {
            r.status = CokerReport::Status::SquareNotCommuting;
            r.detail = "square " + std::to_string(k + 1);
            return r;
        }
    }

    const auto& i = l.vertical;
    if (rank(i[0]) != l.bottom.dims[0]) r.violated_hypotheses.push_back("i1 epimorphic");
    if (rank(i[1]) != l.top.dims[1]) r.violated_hypotheses.push_back("i2 monomorphic");
    if (rank(i[2]) != l.top.dims[2]) r.violated_hypotheses.push_back("i3 monomorphic");
    if (rank(i[3]) != l.top.dims[3] || rank(i[3]) != l.bottom.dims[3]) r.violated_hypotheses.push_back("i4 isomorphic");
    if (rank(i[4]) != l.top.dims[4]) r.violated_hypotheses.push_back("i5 monomorphic");
    if (!r.violated_hypotheses.empty()) {
        r.status = CokerReport::Status::HypothesisViolated;
        r.detail = r.violated_hypotheses.front();
        return r;
    }

    Quotient q2(l.bottom.dims[1], i[1].columns());
    Quotient q3(l.bottom.dims[2], i[2].columns());
    r.coker_i2 = q2.dim();
    r.coker_i3 = q3.dim();
    std::vector<SparseVector> cols;
    for (Index row : q2.free_rows()) cols.push_back(dense_coords(q3.coordinates(l.bottom.maps[1].column(row))));
    r.induced = SparseMatrix(q3.dim(), std::move(cols));
    r.induced_iso = r.coker_i2 == r.coker_i3 && rank(r.induced) == r.coker_i2;
    if (!r.induced_iso) {
        r.status = CokerReport::Status::ConclusionFailed;
        r.detail = "induced map coker i2 -> coker i3 is not invertible";
    }
    return r;
}

namespace {

// Exact segment in adapted coordinates from the ranks r0..r5 (r_k = rank f_k;
// r0 and r5 are the ranks of the maps entering A1 and leaving A5). A_k splits
// as [image of f_{k-1} (r_{k-1}) | complement (r_k)], and f_k sends the
// complement identically onto the image part of A_{k+1}.
ExactRow canonical_row(const std::vector<std::size_t>& ranks) {
    ExactRow row;
    for (std::size_t k = 1; k <= 5; ++k) row.dims.push_back(ranks[k - 1] + ranks[k]);
    for (std::size_t k = 1; k <= 4; ++k) {
        SparseMatrix f(row.dims[k], row.dims[k - 1]);
        for (std::size_t t = 0; t < ranks[k]; ++t) f.set(t, ranks[k - 1] + t, Rational(1));
        row.maps.push_back(std::move(f));
    }
    return row;
}

// Block diagonal sum of two rows.
ExactRow direct_sum(const ExactRow& a, const ExactRow& b) {
    ExactRow row;
    for (std::size_t k = 0; k < 5; ++k) row.dims.push_back(a.dims[k] + b.dims[k]);
    for (std::size_t k = 0; k < 4; ++k) {
        SparseMatrix f(row.dims[k + 1], row.dims[k]);
        for (std::size_t c = 0; c < a.dims[k]; ++c)
            for (const auto& e : a.maps[k].column(c)) f.set(e.index, c, e.value);
        for (std::size_t c = 0; c < b.dims[k]; ++c)
            for (const auto& e : b.maps[k].column(c)) f.set(a.dims[k + 1] + e.index, a.dims[k] + c, e.value);
        row.maps.push_back(std::move(f));
    }
    return row;
}

// Identity on the first `shared` coordinates, zero elsewhere.
SparseMatrix partial_identity(std::size_t rows, std::size_t cols, std::size_t shared) {
    SparseMatrix m(rows, cols);
    for (std::size_t t = 0; t < shared; ++t) m.set(t, t, Rational(1));
    return m;
}

SparseMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> entry(-2, 2);
    while (true) {
        std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
        for (auto& r : rows)
            for (auto& v : r) v = Rational(entry(rng));
        SparseMatrix m = SparseMatrix::from_dense(rows);
        if (rank(m) == n) return m;
    }
}

SparseMatrix inverse(const SparseMatrix& m) {
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(*solve(m, SparseVector::unit(static_cast<Index>(j))));
    return SparseMatrix(m.rows(), std::move(cols));
}

// Random change of basis in every space of both rows.
void scramble(std::mt19937_64& rng, LadderInstance& l) {
    std::vector<SparseMatrix> p, pinv, q, qinv;
    for (std::size_t k = 0; k < 5; ++k) {
        p.push_back(random_invertible(rng, l.top.dims[k]));
        pinv.push_back(inverse(p.back()));
        q.push_back(random_invertible(rng, l.bottom.dims[k]));
        qinv.push_back(inverse(q.back()));
    }
    for (std::size_t k = 0; k < 4; ++k) {
        l.top.maps[k] = p[k + 1] * l.top.maps[k] * pinv[k];
        l.bottom.maps[k] = q[k + 1] * l.bottom.maps[k] * qinv[k];
    }
    for (std::size_t k = 0; k < 5; ++k) l.vertical[k] = q[k] * l.vertical[k] * pinv[k];
}

// Top = R + D, bottom = R + C; verticals are the identity on R and zero on D.
LadderInstance assemble_ladder(std::mt19937_64& rng, const std::vector<std::size_t>& r, const std::vector<std::size_t>& d,
                               const std::vector<std::size_t>& c) {
    ExactRow rr = canonical_row(r);
    ExactRow top = direct_sum(rr, canonical_row(d));
    ExactRow bottom = direct_sum(rr, canonical_row(c));
    LadderInstance l{top, bottom, {}};
    for (std::size_t k = 0; k < 5; ++k) l.vertical.push_back(partial_identity(bottom.dims[k], top.dims[k], rr.dims[k]));
    scramble(rng, l);
    return l;
}

std::vector<std::size_t> random_ranks(std::mt19937_64& rng, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> pick(0, hi);
    std::vector<std::size_t> r(6);
    for (auto& v : r) v = pick(rng);
    return r;
}

std::size_t max_dim(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, const std::vector<std::size_t>& c) {
    std::size_t m = 0;
    for (std::size_t k = 1; k <= 5; ++k)
        m = std::max({m, a[k - 1] + a[k] + b[k - 1] + b[k], a[k - 1] + a[k] + c[k - 1] + c[k]});
    return m;
}

} // namespace

LadderInstance random_valid_ladder(std::mt19937_64& rng, std::size_t max_dim_allowed) {
    std::uniform_int_distribution<std::size_t> small(0, 2);
    while (true) {
        auto r = random_ranks(rng, 2);
        // D: only A1 (killed by i1); C: C2 = C3 via an iso, plus C5 -- so C1 = C4 = 0
        std::vector<std::size_t> d{small(rng), 0, 0, 0, 0, 0};
        std::vector<std::size_t> c{0, 0, small(rng), 0, 0, small(rng)};
        if (max_dim(r, d, c) <= max_dim_allowed) return assemble_ladder(rng, r, d, c);
    }
}

LadderInstance random_violating_ladder(std::mt19937_64& rng, LadderDefect defect, std::size_t max_dim_allowed) {
    std::uniform_int_distribution<std::size_t> small(0, 2), positive(1, 2);
    while (true) {
        auto r = random_ranks(rng, 2);
        std::vector<std::size_t> d(6, 0), c(6, 0);
        switch (defect) {
        case LadderDefect::I1NotEpi: c[0] = positive(rng); break;              // C1 != 0
        case LadderDefect::I4NotIso: c[3] = positive(rng); break;              // C3, C4 != 0
        case LadderDefect::I2NotMono: d[0] = small(rng); d[1] = positive(rng); break;  // D2 != 0 is killed by i2
        }
        if (max_dim(r, d, c) <= max_dim_allowed) return assemble_ladder(rng, r, d, c);
    }
}

std::vector<std::size_t> coker_of_pullback(const SimplicialMap& f, const LocalSystem& s) {
    std::vector<std::size_t> out;
    for (const auto& m : pullback_on_cohomology(f, s)) out.push_back(m.rows() - rank(m));
    return out;
}

} // namespace novikov
