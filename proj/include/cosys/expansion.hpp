#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosys/cohomology.hpp"

namespace cosys {

/// min over z in Z^i of |c - z|, exact. Requires the classes of H^i to fit
/// in opt.class_budget and each coset search in opt.budget.
Rational distance_to_cocycles(const Cochain& c, const SearchOptions& opt);

struct ExpansionConstant {
    bool vacuous = false;  // every i-cochain is a cocycle
    Rational value;
    bool certified = true;
    std::string mode;  // "exhaustive" or "sampled"
    Cochain witness;
    Rational witness_coboundary;  // |dc|
    Rational witness_distance;    // dist(c, Z^i)
};

/// min over c with dc != 0 of |dc| / dist(c, Z^i). The scan runs over the
/// cells left free by gauge fixing; over budget it samples opt.anneal_iterations
/// random cochains when heuristic mode is on, giving an upper bound.
ExpansionConstant expansion_constant(SpacePtr space, int degree, const SearchOptions& opt);

struct DegreeRecord {
    int degree = 0;
    CohomologyGroup cohomology;
    bool reduced_vanishes = false;  // degree 0: H^0 is the constants
    CosystoleResult cosystole;
    ExpansionConstant expansion;
    bool cosystolic_ok = false;
    bool expansion_ok = false;
    bool verdict = false;
};

struct ExpansionReport {
    bool coboundary = false;  // vanishing cohomology required
    Rational target;
    std::vector<DegreeRecord> degrees;
    bool verdict = false;
    bool certified = true;
};

ExpansionReport cosystolic_expander_check(SpacePtr space, const std::vector<int>& dims, const Rational& target,
                                          const SearchOptions& opt);
ExpansionReport coboundary_expander_check(SpacePtr space, const std::vector<int>& dims, const Rational& target,
                                          const SearchOptions& opt);

inline constexpr std::size_t kMaxSpectralSize = 2000;
inline constexpr double kSpectralTolerance = 1e-9;

/// Eigenvalues of d*d on C^k(X, R), ascending, for the inner product with
/// weights m(sigma)/k!. Negative rounding noise is clamped to 0.
std::vector<double> upper_laplacian_spectrum(const SimplicialComplex& x, int k);

struct SkeletonRecord {
    std::vector<Label> face;  // empty: X itself
    std::size_t vertices = 0;
    bool has_edges = false;
    bool connected = false;
    double lambda = 0;            // second largest |eigenvalue| of the walk
    double lambda_one_sided = 0;  // second largest eigenvalue of the walk
    std::string error;            // capacity failure, if any
};

/// One record for X and one per face of dimension <= dim X - 2, faces in
/// increasing dimension then lexicographic order. Walk: m-weighted on the
/// 1-skeleton of the link, m taken in the link's own dimension.
std::vector<SkeletonRecord> skeleton_expansion(const SimplicialComplex& x);
SkeletonRecord walk_spectrum(const SimplicialComplex& link, std::vector<Label> face);

struct LinkRecord {
    SkeletonRecord skeleton;
    std::optional<ExpansionReport> coboundary;  // absent when error is set
    std::string error;
    bool hypothesis_i = false;
    bool hypothesis_ii = false;
};

struct KmReport {
    Rational beta_target;
    double mu_target = 0;
    std::uint64_t degree_bound = 0;  // Q: max top simplices through a vertex
    std::vector<LinkRecord> links;
    bool hypothesis_i = false;
    bool hypothesis_ii = false;
    bool certified = true;
};

/// (i) each link is a coboundary expander over A in degrees 0..dim-1 with
/// constant >= beta_target; (ii) its one-sided walk eigenvalue is at most
/// mu_target. Per-link capacity failures are recorded, not thrown.
KmReport km_hypotheses_report(const SimplicialComplex& x, const FiniteAbelianGroup& a, const std::string& scheme,
                              const Rational& beta_target, double mu_target, const SearchOptions& opt);

}  // namespace cosys
