#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "cosys/abelian.hpp"

namespace cosys::kernels {

/// Minimize sum_t w_t [base_t + sum_k coef_{t,k} x_k != 0] over assignments
/// x in A^num_vars, A given by its index tables. Variables are assigned in
/// index order with values 0..|A|-1, so the first optimum found by the
/// depth-first search is the lexicographically smallest optimal assignment.
struct CosetProblem {
    const GroupTables* tables = nullptr;
    std::size_t num_vars = 0;
    std::vector<std::uint32_t> base;
    std::vector<std::int64_t> weight;
    // Incidences of variable k: [var_start[k], var_start[k+1]).
    std::vector<std::uint32_t> var_start;
    std::vector<std::uint32_t> var_target;
    std::vector<std::int8_t> var_coef;
    // Targets whose highest variable is k; they are scored when k is set.
    std::vector<std::uint32_t> done_start;
    std::vector<std::uint32_t> done_target;
    // Targets with no variable: scored once from base.
    std::vector<std::uint32_t> fixed_targets;

    std::size_t num_targets() const { return base.size(); }
};

struct Incidence {
    std::uint32_t var;
    std::int8_t coef;
};

/// targets[t] lists the variables entering target t.
CosetProblem make_coset_problem(const GroupTables& tables, std::size_t num_vars,
                                const std::vector<std::vector<Incidence>>& targets,
                                std::vector<std::int64_t> weight);

inline constexpr std::int64_t kNoBound = std::numeric_limits<std::int64_t>::max();

struct CosetResult {
    bool found = false;  // some assignment has value < bound
    std::int64_t value = kNoBound;
    std::vector<std::uint32_t> assignment;
    bool stopped_early = false;
    std::uint64_t nodes = 0;
};

/// Reference search. Reports only values < bound. With stop_at >= 0 the search
/// ends at the first value <= stop_at, which is then only an upper bound.
CosetResult coset_min_serial(const CosetProblem& p, const std::vector<std::uint32_t>& base,
                             std::int64_t bound = kNoBound, std::int64_t stop_at = -1);

/// Same optimum and witness as coset_min_serial for every worker count.
CosetResult coset_min_parallel(const CosetProblem& p, const std::vector<std::uint32_t>& base, int workers,
                               std::int64_t bound = kNoBound);

/// Seeded simulated annealing; returns the best assignment seen, an upper
/// bound on the optimum.
CosetResult coset_min_anneal(const CosetProblem& p, const std::vector<std::uint32_t>& base, std::uint64_t seed,
                             std::uint64_t iterations);

/// Value of one assignment, independent of the search machinery.
std::int64_t coset_value(const CosetProblem& p, const std::vector<std::uint32_t>& base,
                         const std::vector<std::uint32_t>& assignment);

}  // namespace cosys::kernels
