#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "novikov/cohomology.hpp"
#include "novikov/complex.hpp"
#include "novikov/local_system.hpp"
#include "novikov/sparse.hpp"

namespace novikov {

/**
 * Cochains of X vanishing on Z. The basis in degree p is the p-simplices of X
 * outside Z (in X order); since Z is face closed the twisted coboundary
 * preserves these cochains and delta_rel is a submatrix of delta.
 */
struct RelativeComplex {
    ComplexPtr base;
    Subcomplex z;
    LocalSystem system;
    std::vector<std::vector<std::size_t>> cells;  // cells[p][i]: X index of the i-th relative p-cell
    std::vector<SparseMatrix> delta_rel;

    std::vector<std::size_t> dims() const;
};

RelativeComplex relative_complex(const ComplexPtr& x, const Subcomplex& z, const LocalSystem& s);

CohomologyReport relative_betti(const ComplexPtr& x, const Subcomplex& z, const LocalSystem& s, bool with_representatives = true);

/**
 * The long exact sequence of the pair
 *   ... -> H^k(X,Z) -j-> H^k(X) -i*-> H^k(Z) -d-> H^{k+1}(X,Z) -> ...
 * with every map as a matrix in the representative bases. Nodes are numbered
 * 3k (relative), 3k+1 (absolute), 3k+2 (subcomplex).
 */
struct PairLES {
    std::vector<std::size_t> relative, absolute, sub;  // dims for k = 0..top
    std::vector<SparseMatrix> j;           // absolute[k] x relative[k]
    std::vector<SparseMatrix> restriction; // sub[k] x absolute[k]
    std::vector<SparseMatrix> connecting;  // relative[k+1] x sub[k]
    std::vector<bool> exact_at;            // per node

    int top_degree() const noexcept { return static_cast<int>(relative.size()) - 1; }
    std::size_t node_count() const noexcept { return exact_at.size(); }
    std::size_t node_dim(std::size_t node) const;
    /// sum_k (-1)^k (rel_k - abs_k + sub_k); zero for every exact sequence.
    long alternating_sum() const;
    bool exact() const;
};

/// Throws Error{ExactnessFailure} naming the first non-exact node.
PairLES les_of_pair(const ComplexPtr& x, const Subcomplex& z, const LocalSystem& s);

/// Assembles and checks the sequence without throwing on a failure.
PairLES assemble_les(const ComplexPtr& x, const Subcomplex& z, const LocalSystem& s);

// ---------------------------------------------------------------------------
// Cokernel five-lemma

/// A segment A1 -f1-> A2 -f2-> ... -f4-> A5 of an exact sequence.
struct ExactRow {
    std::vector<std::size_t> dims;   // 5 entries
    std::vector<SparseMatrix> maps;  // 4 entries, maps[k] : dims[k] -> dims[k+1]
};

struct LadderInstance {
    ExactRow top;                        // A row
    ExactRow bottom;                     // B row
    std::vector<SparseMatrix> vertical;  // i1..i5, vertical[k] : A_{k+1} -> B_{k+1}
};

struct CokerReport {
    enum class Status { Ok, RowNotExact, SquareNotCommuting, HypothesisViolated, ConclusionFailed };
    Status status = Status::Ok;
    std::string detail;                            // which row/square/hypothesis failed
    std::vector<std::string> violated_hypotheses;  // e.g. "i1 epimorphic"
    std::size_t coker_i2 = 0;
    std::size_t coker_i3 = 0;
    SparseMatrix induced;  // g2-bar : coker i2 -> coker i3 in free-row bases
    bool induced_iso = false;

    bool pass() const noexcept { return status == Status::Ok; }
};

std::string to_string(CokerReport::Status s);

/// Checks both rows (exactness at A2..A4, B2..B4), commutativity, the
/// hypotheses (computed from the matrices), and then the conclusion.
CokerReport check_coker_ladder(const LadderInstance& l);

/// Random ladder satisfying the hypotheses, all spaces of dimension <= max_dim.
LadderInstance random_valid_ladder(std::mt19937_64& rng, std::size_t max_dim = 8);

enum class LadderDefect { I1NotEpi, I4NotIso, I2NotMono };
/// Random ladder with exact rows and commuting squares that violates the given hypothesis.
LadderInstance random_violating_ladder(std::mt19937_64& rng, LadderDefect defect, std::size_t max_dim = 8);

/// dim coker(f^*: H^k(target; s) -> H^k(source; f^*s)) per degree of the source.
std::vector<std::size_t> coker_of_pullback(const SimplicialMap& f, const LocalSystem& s);

} // namespace novikov
