#pragma once

#include <cstdint>
#include <vector>

namespace cosys::kernels {

/// Labels x in {0..blocks-1}^points minimizing
///   max over (g, i, j) of |target[g][i][j] - scale * |B_i ∩ perm_g(B_j)||
/// where B_i is the set of points labelled i. Labelings are enumerated in
/// lexicographic order; the first minimizer wins.
struct PartitionProblem {
    std::size_t points = 0;
    std::size_t blocks = 0;
    std::vector<std::vector<std::uint32_t>> perms;  // images per word
    std::vector<std::int64_t> target;               // [g][i][j], row-major
    std::int64_t scale = 1;

    std::int64_t evaluate(const std::vector<std::uint32_t>& labels) const;
};

struct PartitionResult {
    std::vector<std::uint32_t> labels;
    std::int64_t value = 0;
};

PartitionResult partition_min_serial(const PartitionProblem& p);
/// Same labels and value as the serial search for every worker count.
PartitionResult partition_min_parallel(const PartitionProblem& p, int workers);
/// Seeded steepest-descent single-point relabelling with restarts; an upper
/// bound.
PartitionResult partition_local_search(const PartitionProblem& p, std::uint64_t seed, std::size_t restarts);

}  // namespace cosys::kernels
