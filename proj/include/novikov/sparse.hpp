#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "novikov/rational.hpp"

namespace novikov {

using Index = std::uint32_t;

struct Entry {
    Index index;
    Rational value;

    friend bool operator==(const Entry&, const Entry&) = default;
};

/**
 * Sparse vector over Q: entries sorted by strictly increasing index, with no
 * stored zeros.
 */
class SparseVector {
public:
    SparseVector() = default;
    explicit SparseVector(std::vector<Entry> entries); // sorts, merges duplicates, drops zeros

    static SparseVector unit(Index i, Rational value = Rational(1));
    static SparseVector from_dense(std::span<const Rational> dense);

    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }
    const Entry& back() const { return entries_.back(); }

    Rational at(Index i) const;
    std::vector<Rational> to_dense(std::size_t length) const;

    /// this += factor * other
    void axpy(const Rational& factor, const SparseVector& other);
    void scale(const Rational& factor);
    SparseVector scaled(const Rational& factor) const;

    /// Appends an entry with index larger than every stored index.
    void push_back(Index i, Rational value);

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

    friend SparseVector operator+(const SparseVector& a, const SparseVector& b);
    friend SparseVector operator-(const SparseVector& a, const SparseVector& b);

private:
    std::vector<Entry> entries_;
};

Rational dot(const SparseVector& a, const SparseVector& b);

/**
 * Column-major sparse matrix. Column j holds the entries of row indices with
 * nonzero values in that column.
 */
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);
    SparseMatrix(std::size_t rows, std::vector<SparseVector> columns);

    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
    static SparseMatrix from_dense(std::initializer_list<std::initializer_list<long long>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }
    std::size_t nnz() const noexcept;

    const SparseVector& column(std::size_t j) const { return columns_[j]; }
    const std::vector<SparseVector>& columns() const noexcept { return columns_; }
    SparseVector& mutable_column(std::size_t j) { return columns_[j]; }

    Rational at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& value);

    SparseVector apply(const SparseVector& x) const;
    SparseMatrix transpose() const;
    std::vector<std::vector<Rational>> to_dense() const;

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<SparseVector> columns_;
};

} // namespace novikov
