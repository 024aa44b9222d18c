#include "novikov/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace novikov {

SparseVector::SparseVector(std::vector<Entry> entries) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.index < b.index; });
    entries_.reserve(entries.size());
    for (auto& e : entries) {
        if (!entries_.empty() && entries_.back().index == e.index) {
            entries_.back().value += e.value;
            if (entries_.back().value.is_zero()) entries_.pop_back();
        } else if (!e.value.is_zero()) {
            entries_.push_back(std::move(e));
        }
    }
}

SparseVector SparseVector::unit(Index i, Rational value) {
    SparseVector v;
    if (!value.is_zero()) v.entries_.push_back({i, std::move(value)});
    return v;
}

SparseVector SparseVector::from_dense(std::span<const Rational> dense) {
    SparseVector v;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (!dense[i].is_zero()) v.entries_.push_back({static_cast<Index>(i), dense[i]});
    return v;
}

Rational SparseVector::at(Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index k) { return e.index < k; });
    if (it != entries_.end() && it->index == i) return it->value;
    return Rational();
}

std::vector<Rational> SparseVector::to_dense(std::size_t length) const {
    std::vector<Rational> out(length);
    for (const auto& e : entries_) {
        if (e.index >= length) throw std::out_of_range("SparseVector::to_dense");
        out[e.index] = e.value;
    }
    return out;
}

void SparseVector::axpy(const Rational& factor, const SparseVector& other) {
    if (factor.is_zero() || other.empty()) return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
            merged.push_back(std::move(*a));
            ++a;
        } else if (a == entries_.end() || b->index < a->index) {
            merged.push_back({b->index, factor * b->value});
            ++b;
        } else {
            Rational v = a->value + factor * b->value;
            if (!v.is_zero()) merged.push_back({a->index, std::move(v)});
            ++a;
            ++b;
        }
    }
    entries_ = std::move(merged);
}

void SparseVector::scale(const Rational& factor) {
    if (factor.is_zero()) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_) e.value *= factor;
}

SparseVector SparseVector::scaled(const Rational& factor) const {
    SparseVector v = *this;
    v.scale(factor);
    return v;
}

void SparseVector::push_back(Index i, Rational value) {
    assert(entries_.empty() || entries_.back().index < i);
    if (!value.is_zero()) entries_.push_back({i, std::move(value)});
}

SparseVector operator+(const SparseVector& a, const SparseVector& b) {
    SparseVector r = a;
    r.axpy(Rational(1), b);
    return r;
}

SparseVector operator-(const SparseVector& a, const SparseVector& b) {
    SparseVector r = a;
    r.axpy(Rational(-1), b);
    return r;
}

Rational dot(const SparseVector& a, const SparseVector& b) {
    Rational sum;
    auto x = a.begin();
    auto y = b.begin();
    while (x != a.end() && y != b.end()) {
        if (x->index < y->index) {
            ++x;
        } else if (y->index < x->index) {
            ++y;
        } else {
            sum += x->value * y->value;
            ++x;
            ++y;
        }
    }
    return sum;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

SparseMatrix::SparseMatrix(std::size_t rows, std::vector<SparseVector> columns)
    : rows_(rows), columns_(std::move(columns)) {
    for (const auto& c : columns_)
        if (!c.empty() && c.back().index >= rows_) throw std::out_of_range("SparseMatrix: row index out of bounds");
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i] = SparseVector::unit(static_cast<Index>(i));
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    SparseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("SparseMatrix::from_dense: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.columns_[j].push_back(static_cast<Index>(i), rows[i][j]);
    }
    return m;
}

SparseMatrix SparseMatrix::from_dense(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<Rational>> dense;
    for (const auto& row : rows) dense.emplace_back(row.begin(), row.end());
    return from_dense(dense);
}

std::size_t SparseMatrix::nnz() const noexcept {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const { return columns_.at(c).at(static_cast<Index>(r)); }

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
    if (r >= rows_ || c >= cols()) throw std::out_of_range("SparseMatrix::set");
    SparseVector& col = columns_[c];
    col.axpy(Rational(1), SparseVector::unit(static_cast<Index>(r), value - col.at(static_cast<Index>(r))));
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
    std::vector<Entry> acc;
    for (const auto& e : x) {
        if (e.index >= cols()) throw std::out_of_range("SparseMatrix::apply");
        for (const auto& f : columns_[e.index]) acc.push_back({f.index, e.value * f.value});
    }
    return SparseVector(std::move(acc));
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols(), rows_);
    for (std::size_t j = 0; j < cols(); ++j)
        for (const auto& e : columns_[j]) t.columns_[e.index].push_back(static_cast<Index>(j), e.value);
    return t;
}

std::vector<std::vector<Rational>> SparseMatrix::to_dense() const {
    std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols()));
    for (std::size_t j = 0; j < cols(); ++j)
        for (const auto& e : columns_[j]) d[e.index][j] = e.value;
    return d;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("SparseMatrix product: shape mismatch");
    SparseMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) out.columns_[j] = a.apply(b.column(j));
    return out;
}

} // namespace novikov
