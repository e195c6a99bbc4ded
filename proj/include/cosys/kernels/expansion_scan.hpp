#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cosys/abelian.hpp"
#include "cosys/kernels/coset_search.hpp"

namespace cosys::kernels {

/// Enumerates cochains c over the free cells (others held at zero) and
/// minimizes |dc| / dist(c) over c with dc != 0, where |.| are weighted
/// supports. The search visits c in lexicographic order; the reported
/// witness is the lexicographically first minimizer.
struct ScanProblem {
    const GroupTables* tables = nullptr;
    std::vector<std::uint32_t> var_cell;        // free cells, increasing
    std::size_t num_cells = 0;
    std::vector<std::int64_t> cell_weight;      // degree i
    std::vector<std::int64_t> target_weight;    // degree i+1
    // d restricted to the free cells: incidences of variable k.
    std::vector<std::uint32_t> var_start;
    std::vector<std::uint32_t> var_target;
    std::vector<std::int8_t> var_coef;

    std::size_t num_vars() const { return var_cell.size(); }
};

/// dist(c) given the dense cochain c. May return any value <= stop_at once
/// it is known that the true distance is <= stop_at (stop_at < 0: exact).
using DistanceFn = std::function<std::int64_t(const std::vector<std::uint32_t>& c, std::int64_t stop_at)>;

struct ScanResult {
    bool found = false;                 // some c has dc != 0
    std::int64_t coboundary_norm = 0;   // |dc| of the witness, degree-(i+1) units
    std::int64_t distance = 0;          // dist(c) of the witness, degree-i units
    std::vector<std::uint32_t> witness; // dense over all cells
    std::uint64_t evaluated = 0;        // distance calls made
};

ScanResult expansion_scan_serial(const ScanProblem& p, const DistanceFn& dist);
ScanResult expansion_scan_parallel(const ScanProblem& p, const DistanceFn& dist, int workers);

/// Evaluates the ratio on `samples` seeded random cochains; an upper bound on
/// the minimum.
ScanResult expansion_scan_sample(const ScanProblem& p, const DistanceFn& dist, std::uint64_t seed,
                                 std::uint64_t samples);

}  // namespace cosys::kernels
