#include "novikov/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace novikov {

namespace {

// Above this many entries reduce() switches to a dense accumulator so that a
// long vector is not re-merged once per eliminated pivot.
constexpr std::size_t kDenseThreshold = 48;

} // namespace

ColumnReducer::ColumnReducer(std::size_t rows, bool track)
    : rows_(rows), track_(track), pivot_slot_(rows, -1) {}

ColumnReducer::Outcome ColumnReducer::add(SparseVector v, Index id) {
    SparseVector combo = track_ ? SparseVector::unit(id) : SparseVector();
    while (!v.empty()) {
        const Entry& low = v.back();
        if (low.index >= rows_) throw std::out_of_range("ColumnReducer::add: row out of range");
        long slot = pivot_slot_[low.index];
        if (slot < 0) break;
        Rational factor = -low.value;
        v.axpy(factor, reduced_[slot]);
        if (track_) combo.axpy(factor, combos_[slot]);
    }
    if (v.empty()) return {false, std::move(combo)};

    Rational inv = v.back().value.inverse();
    Index row = v.back().index;
    if (!inv.is_one()) {
        v.scale(inv);
        if (track_) combo.scale(inv);
    }
    pivot_slot_[row] = static_cast<long>(reduced_.size());
    reduced_.push_back(std::move(v));
    if (track_) combos_.push_back(combo);
    ++pivot_count_;
    return {true, std::move(combo)};
}

ColumnReducer::Reduction ColumnReducer::reduce(SparseVector v) const {
    Reduction out;
    if (!v.empty() && v.back().index >= rows_) throw std::out_of_range("ColumnReducer::reduce: row out of range");

    if (v.size() > kDenseThreshold) {
        std::vector<Rational> acc = v.to_dense(rows_);
        std::vector<Entry> combo;
        for (std::size_t r = rows_; r-- > 0;) {
            if (acc[r].is_zero()) continue;
            long slot = pivot_slot_[r];
            if (slot < 0) continue;
            Rational factor = acc[r];
            for (const auto& e : reduced_[slot]) acc[e.index] -= factor * e.value;
            if (track_)
                for (const auto& e : combos_[slot]) combo.push_back({e.index, factor * e.value});
        }
        out.remainder = SparseVector::from_dense(acc);
        if (track_) out.combination = SparseVector(std::move(combo));
        return out;
    }

    std::size_t pos = v.size();
    while (pos > 0) {
        const Entry& e = v.entries()[pos - 1];
        long slot = pivot_slot_[e.index];
        if (slot < 0) {
            --pos;
            continue;
        }
        Index row = e.index;
        Rational factor = e.value;
        v.axpy(-factor, reduced_[slot]);
        if (track_) out.combination.axpy(factor, combos_[slot]);
        auto it = std::lower_bound(v.begin(), v.end(), row, [](const Entry& x, Index k) { return x.index < k; });
        pos = static_cast<std::size_t>(it - v.begin());
    }
    out.remainder = std::move(v);
    return out;
}

void ColumnReducer::drop_tracking() {
    track_ = false;
    combos_.clear();
    combos_.shrink_to_fit();
}

const SparseVector& ColumnReducer::pivot_column(Index row) const {
    long slot = pivot_slot_.at(row);
    if (slot < 0) throw std::out_of_range("ColumnReducer::pivot_column: not a pivot row");
    return reduced_[slot];
}

std::size_t rank(const SparseMatrix& m) {
    ColumnReducer reducer(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) reducer.add(m.column(j), static_cast<Index>(j));
    return reducer.rank();
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
    ColumnReducer reducer(m.rows(), true);
    std::vector<SparseVector> basis;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        auto outcome = reducer.add(m.column(j), static_cast<Index>(j));
        if (!outcome.pivot) basis.push_back(std::move(outcome.combination));
    }
    return basis;
}

std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b) {
    if (!b.empty() && b.back().index >= m.rows()) throw std::invalid_argument("solve: right-hand side longer than row count");
    ColumnReducer reducer(m.rows(), true);
    for (std::size_t j = 0; j < m.cols(); ++j) reducer.add(m.column(j), static_cast<Index>(j));
    auto red = reducer.reduce(b);
    if (!red.remainder.empty()) return std::nullopt;
    return std::move(red.combination);
}

Quotient::Quotient(std::size_t ambient, const std::vector<SparseVector>& subspace)
    : reducer_(ambient), free_slot_(ambient, -1) {
    for (std::size_t j = 0; j < subspace.size(); ++j) reducer_.add(subspace[j], static_cast<Index>(j));
    for (Index r = 0; r < ambient; ++r) {
        if (!reducer_.is_pivot_row(r)) {
            free_slot_[r] = static_cast<long>(free_rows_.size());
            free_rows_.push_back(r);
        }
    }
}

std::vector<Rational> Quotient::coordinates(const SparseVector& v) const {
    std::vector<Rational> coords(free_rows_.size());
    for (const auto& e : reducer_.reduce(v).remainder) coords[free_slot_[e.index]] = e.value;
    return coords;
}

} // namespace novikov
