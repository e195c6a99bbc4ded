#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cosys/complex.hpp"

namespace cosys {

/// All (d+1)-subsets of {0, ..., n-1}.
SimplicialComplex complete_complex(std::size_t n, int d);

/// Incidence graph of points and lines of the projective plane over F_q,
/// q in {2, 3}. Points are labelled 0..P-1, lines P..2P-1.
SimplicialComplex flag_complex_subspaces(std::uint32_t q, std::uint32_t n = 3);

/// Cycle graph on n >= 3 vertices 0..n-1.
SimplicialComplex cycle_graph(std::size_t n);

/// Boundary of the octahedron on vertices 0..5 (antipodes i, i+3).
SimplicialComplex octahedron_boundary();

/// Seven-vertex triangulation of the torus together with the data of its
/// universal cover. Vertex i lifts to the lattice points (x, y) with
/// x + 3y = i mod 7; deck translations form the lattice spanned by
/// a = (1, 2) and b = (-3, 1).
struct Torus7 {
    SimplicialComplex complex;
    std::vector<std::uint32_t> tree_edges;  // spanning tree, edge indices
    // Per edge u<v: deck translation picked up by the tree-gauged lift of
    // u -> v, in (a, b) coordinates. Zero on tree edges.
    std::vector<std::array<std::int64_t, 2>> holonomy;
    // Closed vertex walks based at 0 representing a and b.
    std::array<std::vector<Label>, 2> generator_loops;
};

Torus7 torus_7();

struct RandomComplex {
    SimplicialComplex complex;
    std::size_t retries = 0;
    bool purified = false;
    std::string warning;
};

/// Full (d-1)-skeleton of the simplex on n vertices plus every d-face
/// independently with probability p. Draws use mt19937_64(seed) with
/// "(rng() >> 11) * 2^-53 < p". A non-pure draw is retried up to
/// max_retries times; after that the top-dimensional part is returned (or the
/// (d-1)-skeleton if no d-face was drawn) with a warning.
RandomComplex random_complex(std::size_t n, int d, double p, std::uint64_t seed, std::size_t max_retries = 64);

}  // namespace cosys
