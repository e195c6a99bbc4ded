#include "cosys/kernels/coset_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>

#include <omp.h>

#include "cosys/errors.hpp"

namespace cosys::kernels {

CosetProblem make_coset_problem(const GroupTables& tables, std::size_t num_vars,
                                const std::vector<std::vector<Incidence>>& targets, std::vector<std::int64_t> weight)
{
    if (weight.size() != targets.size()) throw ShapeError("one weight per target required");
    CosetProblem p;
    p.tables = &tables;
    p.num_vars = num_vars;
    p.base.assign(targets.size(), 0);
    p.weight = std::move(weight);
    std::vector<std::vector<std::pair<std::uint32_t, std::int8_t>>> by_var(num_vars);
    std::vector<std::vector<std::uint32_t>> done(num_vars);
    for (std::uint32_t t = 0; t < targets.size(); ++t) {
        if (targets[t].empty()) {
            p.fixed_targets.push_back(t);
            continue;
        }
        std::uint32_t last = 0;
        for (const auto& inc : targets[t]) {
            if (inc.var >= num_vars) throw ShapeError("incidence refers to a missing variable");
            by_var[inc.var].emplace_back(t, inc.coef);
            last = std::max(last, inc.var);
        }
        done[last].push_back(t);
    }
    p.var_start.push_back(0);
    p.done_start.push_back(0);
    for (std::size_t k = 0; k < num_vars; ++k) {
        for (auto [t, c] : by_var[k]) {
            p.var_target.push_back(t);
            p.var_coef.push_back(c);
        }
        p.var_start.push_back(static_cast<std::uint32_t>(p.var_target.size()));
        p.done_target.insert(p.done_target.end(), done[k].begin(), done[k].end());
        p.done_start.push_back(static_cast<std::uint32_t>(p.done_target.size()));
    }
    return p;
}

namespace {

// Depth-first search state for one subtree. `cur` holds base plus the
// contribution of the assigned variables.
struct Searcher {
    const CosetProblem& p;
    const GroupTables& g;
    std::vector<std::uint32_t> cur;
    std::vector<std::uint32_t> assign;
    std::int64_t best;
    std::vector<std::uint32_t> best_assign;
    bool found = false;
    std::int64_t stop_at = -1;
    bool stopped = false;
    std::atomic<std::int64_t>* global = nullptr;
    std::uint64_t nodes = 0;

    Searcher(const CosetProblem& prob, const std::vector<std::uint32_t>& base, std::int64_t bound)
        : p(prob), g(*prob.tables), cur(base), assign(prob.num_vars, 0), best(bound)
    {
    }

    void set(std::size_t k, std::uint32_t a)
    {
        std::uint32_t na = g.neg(a);
        for (auto i = p.var_start[k]; i < p.var_start[k + 1]; ++i) {
            auto t = p.var_target[i];
            cur[t] = g.add(cur[t], p.var_coef[i] > 0 ? a : na);
        }
        assign[k] = a;
    }
    void unset(std::size_t k)
    {
        std::uint32_t a = assign[k], na = g.neg(a);
        for (auto i = p.var_start[k]; i < p.var_start[k + 1]; ++i) {
            auto t = p.var_target[i];
            cur[t] = g.add(cur[t], p.var_coef[i] > 0 ? na : a);
        }
    }
    std::int64_t completed_cost(std::size_t k) const
    {
        std::int64_t c = 0;
        for (auto i = p.done_start[k]; i < p.done_start[k + 1]; ++i) {
            auto t = p.done_target[i];
            if (cur[t] != 0) c += p.weight[t];
        }
        return c;
    }
    bool prune(std::int64_t cost) const
    {
        if (cost >= best) return true;
        return global && cost > global->load(std::memory_order_relaxed);
    }
    void record(std::int64_t cost)
    {
        best = cost;
        best_assign = assign;
        found = true;
        if (global) {
            auto g0 = global->load(std::memory_order_relaxed);
            while (cost < g0 && !global->compare_exchange_weak(g0, cost, std::memory_order_relaxed)) {
            }
        }
        if (cost <= stop_at) stopped = true;
    }
    void dfs(std::size_t k, std::int64_t cost)
    {
        ++nodes;
        if (k == p.num_vars) {
            record(cost);
            return;
        }
        const std::uint32_t order = g.order();
        for (std::uint32_t a = 0; a < order && !stopped; ++a) {
            set(k, a);
            std::int64_t c2 = cost + completed_cost(k);
            if (!prune(c2)) dfs(k + 1, c2);
            unset(k);
        }
    }
};

std::int64_t fixed_cost(const CosetProblem& p, const std::vector<std::uint32_t>& base)
{
    std::int64_t c = 0;
    for (auto t : p.fixed_targets) {
        if (base[t] != 0) c += p.weight[t];
    }
    return c;
}

void check_base(const CosetProblem& p, const std::vector<std::uint32_t>& base)
{
    if (base.size() != p.num_targets()) throw ShapeError("base vector has the wrong length");
}

}  // namespace

std::int64_t coset_value(const CosetProblem& p, const std::vector<std::uint32_t>& base,
                         const std::vector<std::uint32_t>& assignment)
{
    check_base(p, base);
    const auto& g = *p.tables;
    auto cur = base;
    for (std::size_t k = 0; k < p.num_vars; ++k) {
        for (auto i = p.var_start[k]; i < p.var_start[k + 1]; ++i) {
            auto t = p.var_target[i];
            cur[t] = g.add(cur[t], p.var_coef[i] > 0 ? assignment[k] : g.neg(assignment[k]));
        }
    }
    std::int64_t c = 0;
    for (std::size_t t = 0; t < cur.size(); ++t) {
        if (cur[t] != 0) c += p.weight[t];
    }
    return c;
}

CosetResult coset_min_serial(const CosetProblem& p, const std::vector<std::uint32_t>& base, std::int64_t bound,
                             std::int64_t stop_at)
{
    check_base(p, base);
    Searcher s(p, base, bound);
    s.stop_at = stop_at;
    std::int64_t c0 = fixed_cost(p, base);
    if (!s.prune(c0)) s.dfs(0, c0);
    CosetResult r;
    r.found = s.found;
    r.value = s.found ? s.best : kNoBound;
    r.assignment = std::move(s.best_assign);
    r.stopped_early = s.stopped;
    r.nodes = s.nodes;
    return r;
}

CosetResult coset_min_parallel(const CosetProblem& p, const std::vector<std::uint32_t>& base, int workers,
                               std::int64_t bound)
{
    check_base(p, base);
    if (workers <= 1 || p.num_vars == 0) return coset_min_serial(p, base, bound);
    const std::uint64_t order = p.tables->order();
    // Prefix depth: enough lexicographic tasks to balance the workers.
    std::size_t depth = 0;
    std::uint64_t tasks = 1;
    while (depth < p.num_vars && tasks < 64ull * static_cast<std::uint64_t>(workers) && tasks * order <= (1u << 20)) {
        tasks *= order;
        ++depth;
    }
    std::atomic<std::int64_t> global{bound};
    std::vector<CosetResult> results(tasks);
    const std::int64_t c0 = fixed_cost(p, base);

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t task = 0; task < static_cast<std::int64_t>(tasks); ++task) {
        Searcher s(p, base, bound);
        s.global = &global;
        std::int64_t cost = c0;
        // Decode the prefix: first variable most significant.
        std::uint64_t code = static_cast<std::uint64_t>(task);
        std::vector<std::uint32_t> prefix(depth);
        for (std::size_t k = depth; k-- > 0;) {
            prefix[k] = static_cast<std::uint32_t>(code % order);
            code /= order;
        }
        bool alive = !s.prune(cost);
        for (std::size_t k = 0; k < depth && alive; ++k) {
            s.set(k, prefix[k]);
            cost += s.completed_cost(k);
            alive = !s.prune(cost);
        }
        if (alive) s.dfs(depth, cost);
        results[task].found = s.found;
        results[task].value = s.found ? s.best : kNoBound;
        results[task].assignment = std::move(s.best_assign);
        results[task].nodes = s.nodes;
    }

    CosetResult out;
    std::uint64_t nodes = 0;
    for (auto& r : results) {
        nodes += r.nodes;
        if (r.found && (!out.found || r.value < out.value)) out = std::move(r);
    }
    out.nodes = nodes;
    return out;
}

CosetResult coset_min_anneal(const CosetProblem& p, const std::vector<std::uint32_t>& base, std::uint64_t seed,
                             std::uint64_t iterations)
{
    check_base(p, base);
    const auto& g = *p.tables;
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> x(p.num_vars, 0);
    auto cur = base;
    for (std::size_t t = 0; t < cur.size(); ++t) cur[t] = base[t];
    std::int64_t value = coset_value(p, base, x);
    CosetResult out;
    out.found = true;
    out.value = value;
    out.assignment = x;
    if (p.num_vars == 0 || g.order() < 2) return out;
    std::int64_t total = 0;
    for (auto w : p.weight) total += w;
    double t0 = std::max(1.0, static_cast<double>(total) / static_cast<double>(std::max<std::size_t>(1, p.num_targets())));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::uint64_t it = 0; it < iterations; ++it) {
        double temp = t0 * (1.0 - static_cast<double>(it) / static_cast<double>(iterations)) + 1e-9;
        auto k = static_cast<std::size_t>(rng() % p.num_vars);
        auto a = static_cast<std::uint32_t>(1 + rng() % (g.order() - 1));
        auto na = g.neg(a);
        std::int64_t delta = 0;
        for (auto i = p.var_start[k]; i < p.var_start[k + 1]; ++i) {
            auto t = p.var_target[i];
            auto nv = g.add(cur[t], p.var_coef[i] > 0 ? a : na);
            delta += (nv != 0 ? p.weight[t] : 0) - (cur[t] != 0 ? p.weight[t] : 0);
        }
        if (delta <= 0 || unit(rng) < std::exp(-static_cast<double>(delta) / temp)) {
            for (auto i = p.var_start[k]; i < p.var_start[k + 1]; ++i) {
                auto t = p.var_target[i];
                cur[t] = g.add(cur[t], p.var_coef[i] > 0 ? a : na);
            }
            x[k] = g.add(x[k], a);
            value += delta;
            if (value < out.value) {
                out.value = value;
                out.assignment = x;
            }
        }
    }
    out.nodes = iterations;
    return out;
}

}  // namespace cosys::kernels
