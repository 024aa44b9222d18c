#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "novikov/complex.hpp"
#include "novikov/rational.hpp"

namespace novikov {

/**
 * Rank-1 local system on a complex, stored multiplicatively: every edge u<v
 * carries a positive weight t(uv), the transport from the fiber over v to the
 * fiber over u. Flatness is the triangle condition t(uw) = t(uv) t(vw).
 *
 * This is the discrete counterpart of the weight sheaf of a closed 1-form
 * theta, with t playing the role of exp(integral of theta) along an edge.
 */
class LocalSystem {
public:
    LocalSystem() = default;
    /// `weights` is indexed by the 1-simplex index of `base`.
    LocalSystem(ComplexPtr base, std::vector<Rational> weights);

    static LocalSystem trivial(const ComplexPtr& base);
    /// Weights for listed edges (u<v or u>v, reoriented); missing edges get 1.
    static LocalSystem from_edges(const ComplexPtr& base, const std::map<std::pair<Vertex, Vertex>, Rational>& edges);

    const ComplexPtr& base() const noexcept { return base_; }
    const std::vector<Rational>& weights() const noexcept { return weights_; }
    const Rational& weight(std::size_t edge_index) const { return weights_[edge_index]; }
    /// Weight of edge {u, v} with u < v.
    const Rational& weight(Vertex u, Vertex v) const;

    /// Transport from the fiber over `from` to the fiber over `to`, along
    /// the edge joining them (1 when to == from).
    Rational transport(Vertex to, Vertex from) const;

    bool is_trivial() const;
    /// Hex digest of the canonical weight listing.
    std::string fingerprint() const;

    friend bool operator==(const LocalSystem& a, const LocalSystem& b) {
        return a.weights_ == b.weights_ && (a.base_ == b.base_ || (a.base_ && b.base_ && *a.base_ == *b.base_));
    }

private:
    ComplexPtr base_;
    std::vector<Rational> weights_;
};

struct CocycleViolation {
    Simplex triangle;   // offending 2-simplex (u, v, w), or the edge for a nonpositive weight
    Rational lhs;       // t(uw)
    Rational rhs;       // t(uv) * t(vw)

    std::string message() const;
};

std::optional<CocycleViolation> validate_system(const LocalSystem& s);

/// Ordered product of t(edge)^(+1) for u->v with u<v and t(edge)^(-1)
/// otherwise along a closed vertex path. Throws Error{PathNotInComplex}.
Rational monodromy(const LocalSystem& s, std::span<const Vertex> loop);

/// t'(uv) = g(v) t(uv) / g(u). Throws Error{NonpositiveGauge}.
LocalSystem gauge_transform(const LocalSystem& s, std::span<const Rational> g);

/// Pullback along a simplicial map: t'(uv) = transport(f(u) <- f(v)), so a
/// collapsed edge gets weight 1.
LocalSystem pullback_system(const SimplicialMap& f, const LocalSystem& s);

} // namespace novikov
