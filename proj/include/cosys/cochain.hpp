#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cosys/abelian.hpp"
#include "cosys/complex.hpp"
#include "cosys/measured_boolean.hpp"
#include "cosys/permutation.hpp"

namespace cosys {

/// A permutation of the fiber {0..F-1} on every edge u<v of a complex:
/// sheet f over u continues as sheet g_uv(f) over v. Flat: around every
/// triangle v0<v1<v2, g_{v1v2} g_{v0v1} = g_{v0v2}.
class LocalSystem {
public:
    /// Throws LabelingError naming a triangle where flatness fails.
    LocalSystem(const SimplicialComplex& x, std::vector<Permutation> edge_labels);
    static LocalSystem trivial(const SimplicialComplex& x, std::size_t fiber);

    std::size_t fiber() const { return fiber_; }
    const Permutation& edge(std::uint32_t e) const { return labels_[e]; }
    const std::vector<Permutation>& labels() const { return labels_; }
    bool is_trivial() const;

private:
    std::size_t fiber_ = 1;
    std::vector<Permutation> labels_;
};

/// Sparse integer matrix, rows stored contiguously.
struct SparseRows {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint32_t> start{0};
    std::vector<std::uint32_t> col;
    std::vector<std::int8_t> coef;
};

/// Cochains of a weighted complex with coefficients in A, in P(A) for a
/// measured algebra P, or in P(A) twisted by a local system permuting the
/// atoms. All three are flattened the same way: a degree-k cell is a pair
/// (simplex, atom) numbered simplex-major, plain A being the one-atom case.
/// A twisted cochain assigns to (sigma, f) the value on sheet f over the
/// first vertex of sigma, and
///   (dc)(t, f) = c(d_0 t, g_{v0v1}(f)) + sum_{j>=1} (-1)^j c(d_j t, f).
/// Cell weights are nu(sigma) * w(f).
class CochainSpace {
public:
    CochainSpace(SimplicialComplex x, FiniteAbelianGroup a, WeightScheme scheme,
                 std::optional<MeasuredBoolean> algebra = std::nullopt,
                 std::optional<LocalSystem> local = std::nullopt);

    const SimplicialComplex& complex() const { return x_; }
    const FiniteAbelianGroup& group() const { return a_; }
    const GroupTables& tables() const { return tables_; }
    const WeightScheme& scheme() const { return scheme_; }
    bool has_algebra() const { return algebra_.has_value(); }
    const MeasuredBoolean& algebra() const { return *algebra_; }
    const std::optional<LocalSystem>& local() const { return local_; }
    std::size_t atoms() const { return atoms_; }
    int dimension() const { return x_.dimension(); }

    std::size_t cells(int k) const { return x_.count(k) * atoms_; }
    std::uint32_t cell(std::uint32_t simplex, std::uint32_t atom) const
    {
        return static_cast<std::uint32_t>(simplex * atoms_ + atom);
    }
    std::uint32_t cell_simplex(std::uint32_t c) const { return static_cast<std::uint32_t>(c / atoms_); }
    std::uint32_t cell_atom(std::uint32_t c) const { return static_cast<std::uint32_t>(c % atoms_); }

    /// d_k : C^k -> C^{k+1}, rows indexed by (k+1)-cells; 0 <= k < dim.
    const SparseRows& delta(int k) const { return delta_.at(k); }
    const IntegerWeights& weights(int k) const { return weights_.at(k); }
    Rational weight(int k, std::uint32_t c) const { return weights_.at(k).value(c); }

    /// "Z/2", "P(4 atoms) over Z/2", "P(4 atoms, twisted) over Z/2".
    std::string describe() const;

    /// Cells of degree k (k in {0, 1}) whose values can be set to zero
    /// without changing d of a degree-k cochain modulo the image of d_{k-1}:
    /// one root per component of the cell graph for k = 0, a spanning forest
    /// of it for k = 1. Empty for k >= 2.
    std::vector<bool> gauge_cells(int k) const;

private:
    SimplicialComplex x_;
    FiniteAbelianGroup a_;
    GroupTables tables_;
    WeightScheme scheme_;
    std::optional<MeasuredBoolean> algebra_;
    std::optional<LocalSystem> local_;
    std::size_t atoms_ = 1;
    std::vector<SparseRows> delta_;
    std::vector<IntegerWeights> weights_;
};

using SpacePtr = std::shared_ptr<const CochainSpace>;

SpacePtr make_space(SimplicialComplex x, FiniteAbelianGroup a, WeightScheme scheme,
                    std::optional<MeasuredBoolean> algebra = std::nullopt,
                    std::optional<LocalSystem> local = std::nullopt);

/// Values are element indices of A (see FiniteAbelianGroup::index_of), one
/// per cell.
struct Cochain {
    SpacePtr space;
    int degree = 0;
    std::vector<std::uint32_t> values;

    static Cochain zero(SpacePtr space, int degree);
    bool is_zero() const;
    AElement value(std::uint32_t cell) const;
    void set(std::uint32_t cell, const AElement& v);

    friend bool operator==(const Cochain& a, const Cochain& b)
    {
        return a.space == b.space && a.degree == b.degree && a.values == b.values;
    }
};

Cochain coboundary(const Cochain& c);
Cochain add(const Cochain& a, const Cochain& b);
Cochain negate(const Cochain& c);
Cochain scale(std::int64_t n, const Cochain& c);

/// Weighted support: sum of cell weights over cells with nonzero value.
Rational norm(const Cochain& c);
std::int64_t norm_numerator(const Cochain& c);

/// max over k-cells s of sum over (k+1)-cells t with d(s) involving t of
/// w(t)/w(s); |dc| <= L |c|.
Rational lipschitz_constant(const CochainSpace& space, int k);

/// Lines "v0 v1 ... : value" with A-values as residue tuples, or as
/// {atom:value, ...} for P(A) coefficients. Unlisted simplices are zero.
Cochain parse_cochain(SpacePtr space, int degree, std::string_view text, const std::string& source = "<input>");
std::string serialize_cochain(const Cochain& c);

/// Cup product for cyclic-factor rings A = Z/m1 x ... (coordinatewise
/// product); plain coefficients only.
/// (a u b)(v0..v_{p+q}) = a(v0..vp) * b(vp..v_{p+q}).
Cochain cup(const Cochain& a, const Cochain& b);

/// Cochain over plain A from per-simplex values (indices into A).
Cochain cochain_from_values(SpacePtr space, int degree, std::vector<std::uint32_t> values);

}  // namespace cosys
