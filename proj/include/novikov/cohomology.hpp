#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "novikov/complex.hpp"
#include "novikov/linalg.hpp"
#include "novikov/local_system.hpp"
#include "novikov/sparse.hpp"

namespace novikov {

/**
 * Twisted cochain complex of a local system. delta[p] maps C^p -> C^{p+1};
 * its rows are indexed by (p+1)-simplices and its columns by p-simplices:
 *
 *   (d f)(v0..v_{p+1}) = t(v0 v1) f(v1..v_{p+1}) + sum_{i>=1} (-1)^i f(v0..^vi..v_{p+1})
 *
 * i.e. the value on the 0-th face is transported along the leading edge.
 */
struct TwistedComplex {
    ComplexPtr base;
    LocalSystem system;
    std::vector<SparseMatrix> delta;

    std::size_t cochain_dim(int p) const { return base->count(p); }
    int top_degree() const { return base->dimension(); }
};

/// Builds the coboundary matrices and verifies delta[p+1] * delta[p] = 0
/// exactly. Throws Error{InvalidSystem} when the system violates the
/// cocycle condition.
TwistedComplex coboundary_matrices(const ComplexPtr& c, const LocalSystem& s);

/// delta_t applied to a p-cochain without assembling the matrix.
SparseVector apply_coboundary(const LocalSystem& s, int p, const SparseVector& cochain);

struct CohomologyOptions {
    bool representatives = true; // track reductions to extract cocycle representatives
    bool keep_image = true;      // keep the echelon form of every image for coboundary tests
};

/**
 * Cohomology of an arbitrary finite cochain complex over Q, computed by
 * left-to-right column reduction of each coboundary matrix with clearing:
 * degrees are processed upwards and any p-cochain coordinate that is the
 * pivot of a reduced column of delta[p-1] is skipped, since its column in
 * delta[p] must reduce to zero.
 */
class CochainCohomology {
public:
    /// `dims[p]` is the dimension of C^p; `delta[p]` is dims[p+1] x dims[p]
    /// (the last map may be omitted and is then zero).
    CochainCohomology(std::vector<std::size_t> dims, std::vector<SparseMatrix> delta, CohomologyOptions options = {});

    int top_degree() const noexcept { return static_cast<int>(dims_.size()) - 1; }
    std::size_t cochain_dim(int p) const { return p < 0 || p > top_degree() ? 0 : dims_[p]; }
    std::size_t betti(int p) const { return p < 0 || p > top_degree() ? 0 : betti_[p]; }
    const std::vector<std::size_t>& betti() const noexcept { return betti_; }
    /// Rank of delta[p].
    std::size_t rank(int p) const { return p < 0 || p > top_degree() ? 0 : ranks_[p]; }
    const CohomologyOptions& options() const noexcept { return options_; }

    /// Deterministic cocycle representatives of a basis of H^p.
    const std::vector<SparseVector>& representatives(int p) const;

    SparseVector apply(int p, const SparseVector& cochain) const;
    bool is_cocycle(int p, const SparseVector& cochain) const { return apply(p, cochain).empty(); }
    /// True iff the cochain lies in the image of delta[p-1].
    bool is_coboundary(int p, const SparseVector& cochain) const;
    /// Canonical representative of the cochain modulo the image.
    SparseVector reduce_mod_image(int p, const SparseVector& cochain) const;
    /// Coordinates of a cocycle's class in the representative basis. Throws
    /// Error{NotACocycle}.
    std::vector<Rational> coordinates(int p, const SparseVector& cocycle) const;

private:
    friend class TwistedCohomology;
    struct Borrow {};
    // Borrows `delta` (whose storage must outlive this object).
    CochainCohomology(Borrow, std::vector<std::size_t> dims, std::span<const SparseMatrix> delta, CohomologyOptions options);
    void compute();

    std::vector<std::size_t> dims_;
    std::vector<SparseMatrix> owned_;
    std::span<const SparseMatrix> delta_;
    CohomologyOptions options_;
    std::vector<std::size_t> betti_;
    std::vector<std::size_t> ranks_;
    std::vector<std::unique_ptr<ColumnReducer>> image_;    // image_[p]: echelon of im delta[p-1] in C^p
    std::vector<std::vector<SparseVector>> reps_;
    std::vector<std::unique_ptr<ColumnReducer>> rep_basis_; // reduced representatives, tracked by slot
};

/// Per-degree twisted Betti numbers with optional representatives.
struct CohomologyReport {
    std::vector<std::size_t> betti;
    std::vector<std::vector<SparseVector>> representatives; // empty when not requested
    std::string system_fingerprint;

    std::size_t at(int p) const { return p < 0 || p >= static_cast<int>(betti.size()) ? 0 : betti[p]; }
};

/**
 * Twisted complex together with its reduced cohomology data.
 */
class TwistedCohomology {
public:
    TwistedCohomology(const ComplexPtr& c, const LocalSystem& s, CohomologyOptions options = {});

    const TwistedComplex& complex() const noexcept { return complex_; }
    const CochainCohomology& groups() const noexcept { return *groups_; }
    const LocalSystem& system() const noexcept { return complex_.system; }
    const ComplexPtr& base() const noexcept { return complex_.base; }
    std::size_t betti(int p) const { return groups_->betti(p); }
    CohomologyReport report() const;

private:
    TwistedComplex complex_;
    std::unique_ptr<CochainCohomology> groups_;
};

CohomologyReport betti(const ComplexPtr& c, const LocalSystem& s, bool with_representatives = true);

/// Alexander-Whitney cup of an untwisted p-cocycle `a` with a twisted
/// q-cocycle `f`:  (a u f)(v0..v_{p+q}) = a(v0..vp) t(v0 <- vp) f(vp..v_{p+q}).
/// Throws Error{NotACocycle} when either input is not closed.
SparseVector cup(int p, const SparseVector& a, int q, const SparseVector& f, const LocalSystem& s);

/// Cochain pullback f^*: C^p(target; s) -> C^p(source; f^* s), with
/// orientation signs and transport to the image of the leading vertex.
SparseVector pullback_cochain(const SimplicialMap& f, const LocalSystem& s, int p, const SparseVector& cochain);

/// Matrices of f^* on cohomology in the representative bases, one per degree
/// (rows: H^p(source), columns: H^p(target)).
std::vector<SparseMatrix> pullback_on_cohomology(const SimplicialMap& f, const LocalSystem& s);

/// Same, reusing already reduced cohomology of target and source.
std::vector<SparseMatrix> pullback_on_cohomology(const SimplicialMap& f, const TwistedCohomology& target,
                                                 const TwistedCohomology& source);

/// The constant 0-cocycle with value 1 at every vertex.
SparseVector unit_cocycle(const Complex& c);

/// Evaluates a p-cochain on a p-chain (both as coefficient vectors over p-simplices).
inline Rational pairing(const SparseVector& cochain, const SparseVector& chain) { return dot(cochain, chain); }

/**
 * Leray-Hirsch decomposition for the product X x CP^m with a system pulled
 * back from X: every class on the product is uniquely
 *   sum_j h^j u pr1^*(alpha_j),   alpha_j in H^{k-2j}(X; L),
 * and project() returns the coordinates of each alpha_j.
 */
class LerayHirsch {
public:
    /// `h` is the degree-2 generator on `fiber` (an untwisted cocycle) and `m`
    /// the fiber's complex dimension.
    LerayHirsch(const ComplexPtr& x, const LocalSystem& base_system, const ComplexPtr& fiber, const SparseVector& h, int m);

    /// Variant for an existing product and system; throws
    /// Error{SystemNotPulledBack} unless `product_system` = pr1^* base_system.
    LerayHirsch(const Product& prod, const LocalSystem& product_system, const LocalSystem& base_system, const SparseVector& h, int m);

    int fiber_dimension() const noexcept { return m_; }
    const Product& product() const noexcept { return product_; }
    const TwistedCohomology& base_cohomology() const noexcept { return *base_; }
    const TwistedCohomology& total_cohomology() const noexcept { return *total_; }

    /// h^j u pr1^*(alpha_i), the i-th basis class of H^{k-2j}(X; L) lifted to degree k.
    const SparseVector& basis_vector(int k, int j, std::size_t i) const;
    std::size_t basis_size(int k) const;

    /// Pi_j(x) for every j = 0..m (empty coordinate vector when k-2j is out of range).
    std::vector<std::vector<Rational>> project(int k, const SparseVector& x) const;
    /// Pi_j alone.
    std::vector<Rational> project(int k, const SparseVector& x, int j) const;
    /// sum_j h^j u pr1^*(rep of coordinates[j]).
    SparseVector reassemble(int k, const std::vector<std::vector<Rational>>& coordinates) const;

private:
    void build(const SparseVector& h);

    int m_;
    Product product_;
    LocalSystem base_system_;
    LocalSystem total_system_;
    std::unique_ptr<TwistedCohomology> base_;
    std::unique_ptr<TwistedCohomology> total_;
    // basis_[k][j][i]
    std::vector<std::vector<std::vector<SparseVector>>> basis_;
    std::vector<std::unique_ptr<ColumnReducer>> basis_reducer_;
    std::vector<std::vector<std::pair<int, std::size_t>>> basis_slots_;
};

} // namespace novikov
