#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "novikov/sparse.hpp"

namespace novikov {

/**
 * Incremental column echelon form over Q.
 *
 * Columns are added one at a time and reduced left to right against the
 * pivots found so far; the pivot of a reduced column is its largest row index.
 * Ties never arise because each row carries at most one pivot, so the result
 * is a deterministic function of the insertion order.
 *
 * With tracking enabled the reducer also records, for every inserted column,
 * the combination of inserted columns that produced its reduced form. A
 * column that reduces to zero then yields a kernel vector, and reduce() can
 * express a vector of the column span in terms of the inserted columns.
 */
class ColumnReducer {
public:
    explicit ColumnReducer(std::size_t rows, bool track = false);

    struct Outcome {
        bool pivot;              // true if the column increased the rank
        SparseVector combination; // tracked combination (kernel vector when !pivot); empty when untracked
    };

    /// Inserts column `v` under identifier `id`; identifiers index the
    /// tracked combinations and must be unique.
    Outcome add(SparseVector v, Index id);

    /// Result of fully reducing a vector against the stored pivots.
    struct Reduction {
        SparseVector remainder;   // supported on non-pivot rows only
        SparseVector combination; // v - remainder = sum over ids (tracking only)
    };
    Reduction reduce(SparseVector v) const;

    bool in_span(const SparseVector& v) const { return reduce(v).remainder.empty(); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t rank() const noexcept { return pivot_count_; }
    bool tracking() const noexcept { return track_; }
    bool is_pivot_row(Index row) const { return pivot_slot_[row] >= 0; }
    /// Forgets tracked combinations; later reductions are untracked.
    void drop_tracking();

    /// Reduced column whose pivot is `row` (pivot value normalized to 1).
    const SparseVector& pivot_column(Index row) const;

private:
    std::size_t rows_;
    bool track_;
    std::size_t pivot_count_ = 0;
    std::vector<long> pivot_slot_;       // row -> slot in reduced_, or -1
    std::vector<SparseVector> reduced_;  // normalized reduced columns
    std::vector<SparseVector> combos_;   // tracked combinations (parallel to reduced_)
};

/// Rank over Q.
std::size_t rank(const SparseMatrix& m);

/// Basis of the right kernel; |result| = cols - rank and m * v = 0 for each v.
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);

/// Some x with m x = b, or nullopt when b is not in the column space. The
/// returned solution is deterministic.
std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b);

/**
 * Quotient coordinates for V / W where W is spanned by given columns.
 * The coordinates of a vector are its entries on the non-pivot rows after
 * full reduction, which is canonical for the chosen spanning set.
 */
class Quotient {
public:
    Quotient(std::size_t ambient, const std::vector<SparseVector>& subspace);

    std::size_t ambient_dim() const noexcept { return reducer_.rows(); }
    std::size_t dim() const noexcept { return free_rows_.size(); }
    /// Ambient rows not hit by a pivot; their unit vectors project to a quotient basis.
    const std::vector<Index>& free_rows() const noexcept { return free_rows_; }
    std::vector<Rational> coordinates(const SparseVector& v) const;

private:
    ColumnReducer reducer_;
    std::vector<Index> free_rows_;
    std::vector<long> free_slot_;
};

} // namespace novikov
