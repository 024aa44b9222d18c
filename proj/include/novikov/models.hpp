#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "novikov/complex.hpp"
#include "novikov/local_system.hpp"
#include "novikov/sparse.hpp"

namespace novikov {

/**
 * Catalog metadata; everything here is re-checked by the engine when a model
 * is built (f-vector, Euler characteristic, untwisted Betti numbers, cycle
 * and generator conditions).
 */
struct ModelDescriptor {
    std::string name;
    std::vector<long> parameters;
    std::vector<std::size_t> expected_f_vector;
    long expected_euler = 0;
    std::vector<std::size_t> untwisted_betti;
    /// Oriented fundamental cycle of a closed orientable model (top degree), empty otherwise.
    SparseVector fundamental_cycle;
    /// Degree-2 generator for projective spaces, with pairing +1 against h_cycle.
    std::optional<SparseVector> h_generator;
    SparseVector h_cycle;
};

struct Model {
    ComplexPtr complex;
    ModelDescriptor descriptor;
};

struct CatalogEntry {
    std::string name;
    std::string parameters;  // e.g. "n" or "" when parameterless
    std::string description;
    std::vector<long> default_parameters;
};

const std::vector<CatalogEntry>& catalog();

/// Builds and validates a catalog model. Throws Error{UnknownModel},
/// Error{BadParams} or Error{DescriptorMismatch}.
Model build_model(std::string_view name, const std::vector<long>& params = {});

ComplexPtr point();
ComplexPtr simplex(int n);
/// Boundary of the (n+1)-simplex.
ComplexPtr sphere(int n);
ComplexPtr circle(int m);
/// circle(3) x circle(3).
ComplexPtr torus_2d();
/// Orientable closed surface of genus g: connected sums of the 7-vertex torus
/// (g >= 1); sphere(2) for g = 0.
ComplexPtr surface(int g);
ComplexPtr cp1();
/// The embedded 9-vertex triangulation (validated on every load).
ComplexPtr cp2();
/// sphere(2) x sphere(2), which has the Betti numbers of CP^2 blown up at a point.
ComplexPtr blowup_cp2_standin();

/// Model of CP^m for m in {1, 2}.
Model projective_space(int m);

/// circle(m*k) -> circle(m), v -> v mod m (a k-fold cover).
SimplicialMap circle_cover(int m, int k);

/// Kernel generator of the top boundary map, normalized to +1 on its first
/// nonzero simplex; empty if the top homology is not one-dimensional.
SparseVector fundamental_cycle(const Complex& c);

/// Closed loops (vertex paths) dual to the free non-tree edges of a BFS
/// spanning forest; generic_system assigns the i-th weight to the i-th loop.
std::vector<std::vector<Vertex>> loop_basis(const ComplexPtr& c);

/// Valid system with monodromy weights[i] on loop_basis(c)[i] and 1 on the
/// remaining basis loops. Throws Error{NotEnoughIndependentLoops}.
LocalSystem generic_system(const ComplexPtr& c, const std::vector<Rational>& weights);

/// Graph subcomplex that is a wedge of `count` edge cycles through one vertex
/// whose classes are independent in H_1. Throws Error{BadParams} if none is found.
Subcomplex wedge_of_circles(const ComplexPtr& c, int count = 2);

/// The CP^1 = boundary of [0,1,2,5] sitting inside cp2().
Subcomplex cp1_in_cp2(const ComplexPtr& cp2_complex);

/// Slice of a product through a vertex: factor 1 gives X x {v} (a copy of the
/// first factor), factor 2 gives {v} x Y.
Subcomplex product_slice(const Product& prod, int factor, Vertex v);

} // namespace novikov
