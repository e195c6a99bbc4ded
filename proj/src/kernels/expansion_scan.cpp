#include "cosys/kernels/expansion_scan.hpp"

#include <atomic>
#include <mutex>
#include <random>

#include <omp.h>

namespace cosys::kernels {

namespace {

__extension__ using i128 = __int128;

// Best ratio num/den seen so far; den == 0 means none.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 0;

    bool none() const { return den == 0; }
    // num/den compared with a/b, b > 0.
    bool less_than(std::int64_t a, std::int64_t b) const { return !none() && static_cast<i128>(num) * b < static_cast<i128>(a) * den; }
};

struct SharedBest {
    std::mutex mu;
    Ratio r;

    Ratio load()
    {
        std::lock_guard<std::mutex> lock(mu);
        return r;
    }
    void offer(std::int64_t num, std::int64_t den)
    {
        std::lock_guard<std::mutex> lock(mu);
        if (r.none() || static_cast<i128>(num) * r.den < static_cast<i128>(r.num) * den) r = {num, den};
    }
};

struct Scanner {
    const ScanProblem& p;
    const GroupTables& g;
    const DistanceFn& dist;
    std::vector<std::uint32_t> c;      // dense over all cells
    std::vector<std::uint32_t> dc;     // dense over targets
    std::int64_t dnorm = 0;            // weighted support of dc
    std::int64_t cnorm = 0;            // weighted support of c
    Ratio best;
    ScanResult result;
    SharedBest* shared = nullptr;
    // Cached copy of the shared bound, refreshed per leaf.
    Ratio global;

    Scanner(const ScanProblem& prob, const DistanceFn& d)
        : p(prob), g(*prob.tables), dist(d), c(prob.num_cells, 0), dc(prob.target_weight.size(), 0)
    {
    }

    void add(std::size_t k, std::uint32_t a)
    {
        auto cell = p.var_cell[k];
        auto old = c[cell];
        c[cell] = g.add(old, a);
        cnorm += (c[cell] != 0 ? p.cell_weight[cell] : 0) - (old != 0 ? p.cell_weight[cell] : 0);
        auto na = g.neg(a);
        for (auto i = p.var_start[k]; i < p.var_start[k + 1]; ++i) {
            auto t = p.var_target[i];
            auto before = dc[t];
            dc[t] = g.add(before, p.var_coef[i] > 0 ? a : na);
            dnorm += (dc[t] != 0 ? p.target_weight[t] : 0) - (before != 0 ? p.target_weight[t] : 0);
        }
    }

    void leaf()
    {
        if (dnorm == 0) return;
        // dist(c) <= |c|, so |dc|/|c| bounds the ratio from below.
        if (!best.none() && static_cast<i128>(dnorm) * best.den >= static_cast<i128>(best.num) * cnorm) return;
        if (shared) global = shared->load();
        if (!global.none() && global.less_than(dnorm, cnorm)) return;
        // Not better locally iff dist <= dnorm * best.den / best.num; worse
        // than the shared best iff dist < dnorm * global.den / global.num.
        std::int64_t stop_at = -1;
        if (!best.none()) stop_at = static_cast<std::int64_t>(static_cast<i128>(dnorm) * best.den / best.num);
        if (!global.none()) {
            i128 q = static_cast<i128>(dnorm) * global.den;
            auto s = static_cast<std::int64_t>(q % global.num == 0 ? q / global.num - 1 : q / global.num);
            stop_at = std::max(stop_at, s);
        }
        ++result.evaluated;
        std::int64_t d = dist(c, stop_at);
        if (d <= stop_at || d == 0) return;
        if (best.none() || static_cast<i128>(dnorm) * best.den < static_cast<i128>(best.num) * d) {
            best = {dnorm, d};
            result.found = true;
            result.coboundary_norm = dnorm;
            result.distance = d;
            result.witness = c;
            if (shared) shared->offer(dnorm, d);
        }
    }

    void dfs(std::size_t k)
    {
        if (k == p.num_vars()) {
            leaf();
            return;
        }
        const std::uint32_t order = g.order();
        for (std::uint32_t a = 0; a < order; ++a) {
            // Step from value a-1 to a by adding 1 (index 1 need not generate A,
            // so set the value directly).
            std::uint32_t cur = c[p.var_cell[k]];
            std::uint32_t diff = g.add(a, g.neg(cur));
            if (diff != 0) add(k, diff);
            dfs(k + 1);
        }
        std::uint32_t cur = c[p.var_cell[k]];
        if (cur != 0) add(k, g.neg(cur));
    }
};

}  // namespace

ScanResult expansion_scan_serial(const ScanProblem& p, const DistanceFn& dist)
{
    Scanner s(p, dist);
    s.dfs(0);
    return s.result;
}

ScanResult expansion_scan_parallel(const ScanProblem& p, const DistanceFn& dist, int workers)
{
    if (workers <= 1 || p.num_vars() == 0) return expansion_scan_serial(p, dist);
    const std::uint64_t order = p.tables->order();
    std::size_t depth = 0;
    std::uint64_t tasks = 1;
    while (depth < p.num_vars() && tasks < 64ull * static_cast<std::uint64_t>(workers) && tasks * order <= (1u << 20)) {
        tasks *= order;
        ++depth;
    }
    SharedBest shared;
    std::vector<ScanResult> results(tasks);

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t task = 0; task < static_cast<std::int64_t>(tasks); ++task) {
        Scanner s(p, dist);
        s.shared = &shared;
        std::uint64_t code = static_cast<std::uint64_t>(task);
        std::vector<std::uint32_t> prefix(depth);
        for (std::size_t k = depth; k-- > 0;) {
            prefix[k] = static_cast<std::uint32_t>(code % order);
            code /= order;
        }
        for (std::size_t k = 0; k < depth; ++k) {
            if (prefix[k] != 0) s.add(k, prefix[k]);
        }
        s.dfs(depth);
        results[task] = std::move(s.result);
    }

    ScanResult out;
    std::uint64_t evaluated = 0;
    for (auto& r : results) {
        evaluated += r.evaluated;
        if (!r.found) continue;
        if (!out.found || static_cast<i128>(r.coboundary_norm) * out.distance <
                              static_cast<i128>(out.coboundary_norm) * r.distance) {
            out = std::move(r);
        }
    }
    out.evaluated = evaluated;
    return out;
}

ScanResult expansion_scan_sample(const ScanProblem& p, const DistanceFn& dist, std::uint64_t seed, std::uint64_t samples)
{
    std::mt19937_64 rng(seed);
    Scanner s(p, dist);
    for (std::uint64_t it = 0; it < samples; ++it) {
        for (std::size_t k = 0; k < p.num_vars(); ++k) {
            auto target = static_cast<std::uint32_t>(rng() % p.tables->order());
            auto cur = s.c[p.var_cell[k]];
            auto diff = s.g.add(target, s.g.neg(cur));
            if (diff != 0) s.add(k, diff);
        }
        s.leaf();
    }
    return s.result;
}

}  // namespace cosys::kernels
