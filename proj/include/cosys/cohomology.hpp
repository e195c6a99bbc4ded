#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosys/cochain.hpp"
#include "cosys/kernels/coset_search.hpp"

namespace cosys {

struct SearchOptions {
    double budget = 1e12;           // largest exhaustive search space |A|^vars
    bool heuristic = false;         // fall back to annealing over budget
    int workers = 1;
    std::uint64_t seed = 1;
    std::uint64_t anneal_iterations = 200000;
    std::uint64_t samples = 4096;           // sampled expansion scans
    std::uint64_t class_budget = 1u << 16;  // classes enumerated by cosystole
};

/// H^i as a direct sum of cyclic groups: generator k is a cocycle of
/// additive order orders[k] > 1.
struct CohomologyGroup {
    SpacePtr space;
    int degree = 0;
    std::vector<Cochain> generators;
    std::vector<std::uint64_t> orders;

    bool trivial() const { return generators.empty(); }
    /// |H^i| in decimal.
    std::string order_string() const;
    Cochain combination(const std::vector<std::uint64_t>& coeffs) const;
};

/// Computed per cyclic factor of A with the diagonal form over Z/m_j.
CohomologyGroup cohomology(SpacePtr space, int degree);

struct CoboundaryResult {
    std::optional<Cochain> primitive;
    // When no primitive exists: a functional on degree-i cells, modulo the
    // factor's order, vanishing on the image of d and not on c.
    std::size_t factor = 0;
    std::vector<std::uint64_t> certificate;
};

/// Solves db = c for c of degree >= 1.
CoboundaryResult is_coboundary(const Cochain& c);

/// Rechecks a certificate against d and c from scratch.
bool verify_certificate(const Cochain& c, const CoboundaryResult& r);

/// Coset search layout: the free cells of degree i-1 after gauge fixing,
/// and the kernel problem whose targets are the degree-i cells.
struct CosetFrame {
    SpacePtr space;
    int degree = 0;
    std::vector<std::uint32_t> var_cell;
    kernels::CosetProblem problem;

    double log2_space() const;
    std::string space_string() const;
    Cochain primitive(const std::vector<std::uint32_t>& assignment) const;
};

CosetFrame make_coset_frame(SpacePtr space, int degree);

struct CosetMinimum {
    Rational value;
    bool certified = true;
    std::string mode;  // "trivial-class", "exhaustive" or "heuristic"
    Cochain primitive; // b
    Cochain minimizer; // rep + db
};

/// min over b of |rep + db|; the lexicographically first optimal b over the
/// free cells. Throws CapacityError over budget unless heuristic mode is on.
CosetMinimum cosystolic_norm(const Cochain& rep, const SearchOptions& opt);

struct CosystoleResult {
    bool vacuous = false;  // H^i = 0
    Rational value;
    bool certified = true;
    Cochain minimizer;
    std::vector<std::uint64_t> class_coeffs;  // in the generator basis
    std::size_t classes = 0;
};

CosystoleResult cosystole(SpacePtr space, int degree, const SearchOptions& opt);

std::string format_space_size(std::uint64_t base, std::size_t exponent);
/// Budget as printed in capacity messages, e.g. "1e+06".
std::string format_budget(double budget);

}  // namespace cosys
