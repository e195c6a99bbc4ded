#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cosys/cohomology.hpp"
#include "cosys/generators.hpp"

namespace cosys {

/// Flat permutation labeling of the edges of X, the data of an action of
/// pi_1(X) on a fiber F. Tree edges, when a tree is given, carry the
/// identity.
class EdgeLabeling {
public:
    EdgeLabeling(const SimplicialComplex& x, std::vector<std::uint32_t> tree_edges, std::vector<Permutation> labels);
    static EdgeLabeling trivial(const SimplicialComplex& x, std::size_t fiber);

    std::size_t fiber() const { return local_.fiber(); }
    const std::vector<std::uint32_t>& tree() const { return tree_; }
    const LocalSystem& local() const { return local_; }
    const Permutation& label(std::uint32_t edge) const { return local_.edge(edge); }
    /// True when the labels generate a transitive group.
    bool transitive() const;

    /// "fiber N", "tree u v" and "label u v : one-line permutation" lines;
    /// '#' comments. Unlisted edges carry the identity; a label on u > v is
    /// stored inverted on v < u.
    static EdgeLabeling parse(const SimplicialComplex& x, std::string_view text, const std::string& source = "<input>");
    std::string serialize(const SimplicialComplex& x) const;

private:
    std::vector<std::uint32_t> tree_;
    LocalSystem local_;
};

/// Labels P_a^{na} P_b^{nb} from the holonomy of torus_7; P_a and P_b must
/// commute.
EdgeLabeling torus_labeling(const Torus7& t, const Permutation& pa, const Permutation& pb);

/// Cycle graph C_n with the path 0-1-...-(n-1) as tree and p on {0, n-1}.
EdgeLabeling cycle_labeling(const SimplicialComplex& cycle, const Permutation& p);

/// Y with vertex (v, f) labelled label(v) * |F| + f; the simplex over sigma
/// starting on sheet f over its first vertex v0 has vertices
/// (v_j, g_{v0 v_j}(f)).
struct CoveringComplex {
    SimplicialComplex total;
    std::size_t fiber = 1;
    // Per degree and Y-simplex: base simplex and sheet over its first vertex.
    std::vector<std::vector<std::uint32_t>> base_simplex;
    std::vector<std::vector<std::uint32_t>> sheet;
};

CoveringComplex build_cover(const SimplicialComplex& x, const EdgeLabeling& labeling);

/// Base weights divided evenly among the sheets.
WeightScheme fiber_measure(const CoveringComplex& y, const WeightScheme& base);

/// c lifted along the projection.
Cochain pull_back(const Cochain& c, const CoveringComplex& y, SpacePtr cover_space);

/// theta of a cocycle into P(F)(A) twisted by the labeling: c(sigma) on
/// every sheet. Throws InputError when c is not a cocycle.
Cochain pushforward_theta(const Cochain& c, const EdgeLabeling& labeling);

struct ShapiroResult {
    CosetMinimum downstairs;  // twisted P(A)-coefficients on X
    CosetMinimum upstairs;    // A-coefficients on the cover with fiber measure
    bool equal = false;
    std::size_t cover_vertices = 0;
};

ShapiroResult shapiro_check(const Cochain& c, const EdgeLabeling& labeling, const SearchOptions& opt);

struct VanishingResult {
    bool zero = false;
    CoboundaryResult witness;  // primitive on Y, or certificate
    bool witness_verified = false;
    SpacePtr cover_space;
};

/// Decides whether the pullback of c to the cover is a coboundary there.
VanishingResult vanishing_test(const Cochain& c, const EdgeLabeling& labeling);

struct LowerBoundEntry {
    std::string name;
    std::size_t fiber = 0;
    std::optional<CosetMinimum> result;
    std::string skipped;  // reason when result is absent
};

struct LowerBoundReport {
    std::vector<LowerBoundEntry> entries;
    std::optional<Rational> minimum;  // over entries with a result
    bool certified = true;
};

LowerBoundReport lower_bound_report(const Cochain& c,
                                    const std::vector<std::pair<std::string, EdgeLabeling>>& labelings,
                                    const SearchOptions& opt);

/// Signs s_t with sum_t s_t dt = 0 over Z, s on the first triangle = +1,
/// for a connected closed orientable surface; nullopt otherwise.
std::optional<std::vector<int>> fundamental_cycle(const SimplicialComplex& x);

/// Degree-2 cocycle pairing to the given values on relator discs; each disc
/// is a list of triangles with orientation signs, discs pairwise disjoint.
/// The value is placed on the first triangle of each disc.
Cochain relator_cocycle(SpacePtr space, const std::vector<std::vector<std::pair<std::uint32_t, int>>>& discs,
                        const std::vector<AElement>& values);

}  // namespace cosys
