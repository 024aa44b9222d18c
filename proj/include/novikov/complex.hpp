#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace novikov {

using Vertex = std::uint32_t;
using Simplex = std::vector<Vertex>;

class Complex;
using ComplexPtr = std::shared_ptr<const Complex>;

struct ValidationError {
    enum class Kind { MissingFace, DuplicateSimplex, VertexOutOfRange, DegenerateSimplex };
    Kind kind;
    Simplex simplex;  // offending simplex
    Simplex detail;   // the missing face, when kind == MissingFace

    std::string message() const;
};

/**
 * Finite ordered simplicial complex. Simplices are stored per dimension as
 * strictly increasing vertex tuples, sorted lexicographically; the index of a
 * simplex within its dimension is its cochain coordinate.
 *
 * The constructor only normalizes (sorts vertices and simplices); use
 * validate_complex() or Complex::make() to enforce the complex invariants.
 */
class Complex {
public:
    Complex() = default;
    Complex(std::size_t vertex_count, std::vector<Simplex> simplices);

    /// Constructs and validates; throws Error{InvalidComplex}.
    static ComplexPtr make(std::size_t vertex_count, std::vector<Simplex> simplices, std::string name = {});
    /// Face closure of the generating simplices; validated.
    static ComplexPtr closure(std::size_t vertex_count, const std::vector<Simplex>& generators, std::string name = {});

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    int dimension() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
    std::size_t count(int p) const noexcept;
    const std::vector<Simplex>& simplices(int p) const;
    const Simplex& simplex(int p, std::size_t i) const { return by_dim_[p][i]; }
    std::size_t total_count() const noexcept;

    /// Index of `s` within dimension |s|-1, if present. `s` must be sorted.
    std::optional<std::size_t> index_of(std::span<const Vertex> s) const;
    bool contains(std::span<const Vertex> s) const { return index_of(s).has_value(); }

    std::vector<std::size_t> f_vector() const;
    long euler_characteristic() const;

    /// Maximal simplices (not a proper face of another), ordered by dimension then lexicographically.
    std::vector<Simplex> maximal_simplices() const;

    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.vertex_count_ == b.vertex_count_ && a.by_dim_ == b.by_dim_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
    std::string name_;
};

std::optional<ValidationError> validate_complex(const Complex& c);
long euler_characteristic(const Complex& c);

/**
 * Vertex map between complexes that sends simplices to simplices.
 */
struct SimplicialMap {
    ComplexPtr source;
    ComplexPtr target;
    std::vector<Vertex> vertex_image;

    /// Sorted, deduplicated image of a source simplex.
    Simplex image(std::span<const Vertex> s) const;
    /// Returns an error message if some simplex image is not a target simplex.
    std::optional<std::string> validate() const;

    static SimplicialMap identity(const ComplexPtr& c);
};

/// g after f. Throws Error{InvalidMap} when f.target != g.source.
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/**
 * A face-closed set of simplices of a parent complex.
 */
class Subcomplex {
public:
    Subcomplex(ComplexPtr parent, std::vector<std::vector<bool>> member);

    const ComplexPtr& parent() const noexcept { return parent_; }
    bool contains(int p, std::size_t index) const { return p < static_cast<int>(member_.size()) && member_[p][index]; }
    bool empty() const noexcept;
    std::size_t count(int p) const;

    /// Z as a standalone complex on its own vertices, relabeled in increasing
    /// order so the inclusion is order preserving.
    const ComplexPtr& complex() const noexcept { return complex_; }
    /// Inclusion Z -> parent.
    const SimplicialMap& inclusion() const noexcept { return inclusion_; }
    /// Parent index of the i-th p-simplex of complex().
    std::size_t parent_index(int p, std::size_t i) const { return parent_index_[p][i]; }

private:
    ComplexPtr parent_;
    std::vector<std::vector<bool>> member_;
    ComplexPtr complex_;
    SimplicialMap inclusion_;
    std::vector<std::vector<std::size_t>> parent_index_;
};

enum class SelectMode {
    Strict,      // selection must already be face closed (Error{NotFaceClosed} otherwise)
    CloseFaces,  // selection is replaced by its face closure
};

Subcomplex subcomplex(const ComplexPtr& c, const std::vector<Simplex>& selection, SelectMode mode = SelectMode::Strict);
Subcomplex subcomplex(const ComplexPtr& c, const std::function<bool(const Simplex&)>& selector,
                      SelectMode mode = SelectMode::Strict);

struct Product {
    ComplexPtr complex;
    SimplicialMap pr1;
    SimplicialMap pr2;
};

/// Staircase triangulation of |a| x |b| on vertex pairs (x, y) numbered
/// x * |V(b)| + y, so the vertex order is lexicographic.
Product product(const ComplexPtr& a, const ComplexPtr& b);

} // namespace novikov
