#include "cosys/kernels/partition_match.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <random>

#include <omp.h>

#include "cosys/errors.hpp"

namespace cosys::kernels {

std::int64_t PartitionProblem::evaluate(const std::vector<std::uint32_t>& labels) const
{
    const std::size_t d = blocks;
    std::vector<std::int64_t> count(d * d);
    std::int64_t worst = 0;
    for (std::size_t g = 0; g < perms.size(); ++g) {
        std::fill(count.begin(), count.end(), 0);
        // x in B_j with perm(x) in B_i.
        for (std::size_t x = 0; x < points; ++x) ++count[labels[perms[g][x]] * d + labels[x]];
        for (std::size_t k = 0; k < d * d; ++k) {
            worst = std::max<std::int64_t>(worst, std::llabs(target[g * d * d + k] - scale * count[k]));
        }
    }
    return worst;
}

namespace {

// Decodes index into a labeling, first point most significant.
void decode(std::uint64_t index, const PartitionProblem& p, std::vector<std::uint32_t>& labels)
{
    for (std::size_t k = p.points; k-- > 0;) {
        labels[k] = static_cast<std::uint32_t>(index % p.blocks);
        index /= p.blocks;
    }
}

std::uint64_t space_size(const PartitionProblem& p)
{
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < p.points; ++k) {
        if (total > (std::uint64_t{1} << 40) / p.blocks) throw CapacityError("partition space too large for exhaustive search");
        total *= p.blocks;
    }
    return total;
}

}  // namespace

PartitionResult partition_min_serial(const PartitionProblem& p)
{
    const auto total = space_size(p);
    PartitionResult best;
    best.value = std::numeric_limits<std::int64_t>::max();
    std::vector<std::uint32_t> labels(p.points, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        decode(idx, p, labels);
        auto v = p.evaluate(labels);
        if (v < best.value) {
            best.value = v;
            best.labels = labels;
        }
    }
    return best;
}

PartitionResult partition_min_parallel(const PartitionProblem& p, int workers)
{
    if (workers <= 1) return partition_min_serial(p);
    const auto total = static_cast<std::int64_t>(space_size(p));
    std::int64_t best_value = std::numeric_limits<std::int64_t>::max();
    std::int64_t best_index = total;
#pragma omp parallel num_threads(workers)
    {
        std::vector<std::uint32_t> labels(p.points, 0);
        std::int64_t local_value = std::numeric_limits<std::int64_t>::max(), local_index = total;
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < total; ++idx) {
            decode(static_cast<std::uint64_t>(idx), p, labels);
            auto v = p.evaluate(labels);
            if (v < local_value) {
                local_value = v;
                local_index = idx;
            }
        }
#pragma omp critical(partition_reduce)
        {
            if (local_value < best_value || (local_value == best_value && local_index < best_index)) {
                best_value = local_value;
                best_index = local_index;
            }
        }
    }
    PartitionResult out;
    out.value = best_value;
    out.labels.assign(p.points, 0);
    decode(static_cast<std::uint64_t>(best_index), p, out.labels);
    return out;
}

PartitionResult partition_local_search(const PartitionProblem& p, std::uint64_t seed, std::size_t restarts)
{
    std::mt19937_64 rng(seed);
    PartitionResult best;
    best.value = std::numeric_limits<std::int64_t>::max();
    std::vector<std::uint32_t> labels(p.points);
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
        for (auto& l : labels) l = static_cast<std::uint32_t>(rng() % p.blocks);
        auto cur = p.evaluate(labels);
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t x = 0; x < p.points; ++x) {
                const auto keep = labels[x];
                for (std::uint32_t b = 0; b < p.blocks; ++b) {
                    if (b == keep) continue;
                    labels[x] = b;
                    auto v = p.evaluate(labels);
                    if (v < cur) {
                        cur = v;
                        improved = true;
                        break;
                    }
                    labels[x] = keep;
                }
            }
        }
        if (cur < best.value) {
            best.value = cur;
            best.labels = labels;
        }
    }
    return best;
}

}  // namespace cosys::kernels
