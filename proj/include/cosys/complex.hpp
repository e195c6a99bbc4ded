#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cosys/rational.hpp"

namespace cosys {

using Label = std::int64_t;

/// Pure finite simplicial complex. Vertices carry the caller's integer labels;
/// internally vertex v is the v-th smallest label, and every simplex is
/// stored as its increasing vertex list, which fixes its orientation.
/// Simplices of each dimension are numbered in lexicographic order.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Throws PurityError naming a witness when some input simplex is not a
    /// face of a top-dimensional one, InputError on duplicates or negative
    /// labels.
    static SimplicialComplex build(const std::vector<std::vector<Label>>& maximal);

    int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
    std::size_t count(int k) const;
    std::size_t num_vertices() const { return labels_.size(); }
    const std::vector<Label>& vertex_labels() const { return labels_; }

    std::span<const std::uint32_t> simplex(int k, std::uint32_t s) const
    {
        return {simplices_[k].data() + std::size_t{s} * (k + 1), static_cast<std::size_t>(k + 1)};
    }
    std::vector<Label> labels(int k, std::uint32_t s) const;

    std::optional<std::uint32_t> find(std::span<const std::uint32_t> vertices) const;
    std::optional<std::uint32_t> find_labels(std::vector<Label> labels) const;
    std::optional<std::uint32_t> vertex_of(Label label) const;

    /// Index of the (k-1)-face of k-simplex s omitting its j-th vertex.
    std::uint32_t facet(int k, std::uint32_t s, int j) const { return facets_[k][std::size_t{s} * (k + 1) + j]; }
    /// (k+1)-simplices containing k-simplex s, increasing.
    std::span<const std::uint32_t> cofaces(int k, std::uint32_t s) const;
    /// Number of top-dimensional simplices containing k-simplex s.
    std::uint64_t top_cofaces(int k, std::uint32_t s) const { return top_count_[k][s]; }

    std::int64_t euler_characteristic() const;
    /// Connected components of the 1-skeleton; component id per vertex,
    /// numbered by smallest vertex.
    std::vector<std::uint32_t> vertex_components() const;
    std::size_t num_components() const;

    /// Complex of faces disjoint from sigma whose join with sigma lies in X.
    /// Keeps the original labels. The empty face gives X itself; a top
    /// simplex has an empty link and is rejected.
    SimplicialComplex link(const std::vector<Label>& sigma) const;
    SimplicialComplex skeleton(int k) const;

    std::vector<std::vector<Label>> maximal_simplices() const;

    static SimplicialComplex parse(std::string_view text, const std::string& source = "<input>");
    std::string serialize() const;

    std::string simplex_to_string(int k, std::uint32_t s) const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.labels_ == b.labels_ && a.simplices_ == b.simplices_;
    }

private:
    std::vector<Label> labels_;
    std::vector<std::vector<std::uint32_t>> simplices_;   // per dimension, flat
    std::vector<std::vector<std::uint32_t>> facets_;      // per dimension, flat
    std::vector<std::vector<std::uint32_t>> coface_start_;
    std::vector<std::vector<std::uint32_t>> coface_list_;
    std::vector<std::vector<std::uint64_t>> top_count_;
    std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> index_;
};

/// mu(s) = |{t in X(d): s in t}| / (C(d+1, k+1) |X(d)|).
Rational weight_mu(const SimplicialComplex& x, int k, std::uint32_t s);
/// m(s) = (d-k)! |{t in X(d): s in t}|.
Rational weight_m(const SimplicialComplex& x, int k, std::uint32_t s);

enum class WeightKind { mu, m, custom };

/// Per-degree simplex weights, normalized to total mass 1 in every degree
/// that has simplices. Immutable once built.
class WeightScheme {
public:
    static WeightScheme mu(const SimplicialComplex& x);
    static WeightScheme m(const SimplicialComplex& x);
    /// raw[k][s] > 0; normalized per degree.
    static WeightScheme custom(const SimplicialComplex& x, std::vector<std::vector<Rational>> raw);
    /// Lines "v0 v1 ... : p/q"; simplices not listed are an error.
    static WeightScheme parse_custom(const SimplicialComplex& x, std::string_view text,
                                     const std::string& source = "<input>");
    static WeightScheme by_name(const SimplicialComplex& x, std::string_view name);

    WeightKind kind() const { return kind_; }
    std::string name() const;
    const std::vector<Rational>& degree(int k) const { return values_.at(k); }
    const Rational& value(int k, std::uint32_t s) const { return values_.at(k)[s]; }
    const IntegerWeights& integer(int k) const { return integer_.at(k); }
    int dimension() const { return static_cast<int>(values_.size()) - 1; }

private:
    WeightScheme(WeightKind kind, std::vector<std::vector<Rational>> raw);

    WeightKind kind_ = WeightKind::mu;
    std::vector<std::vector<Rational>> values_;
    std::vector<IntegerWeights> integer_;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace cosys
