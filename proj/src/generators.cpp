#include "cosys/generators.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "cosys/errors.hpp"

namespace cosys {

namespace {

// Lexicographic k-subsets of {0..n-1}.
std::vector<std::vector<Label>> subsets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<Label>> out;
    if (k > n) return out;
    std::vector<Label> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<Label>(i);
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == static_cast<Label>(n - k + i - 1)) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace

SimplicialComplex complete_complex(std::size_t n, int d)
{
    if (d < 0 || static_cast<std::size_t>(d) + 1 > n) {
        throw InputError("complete complex needs d + 1 <= n (got n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
    }
    return SimplicialComplex::build(subsets(n, static_cast<std::size_t>(d) + 1));
}

SimplicialComplex flag_complex_subspaces(std::uint32_t q, std::uint32_t n)
{
    if ((q != 2 && q != 3) || n != 3) {
        throw InputError("flag complexes are generated for q in {2,3} and n = 3 only");
    }
    // Projective points of F_q^3, normalized so the first nonzero coordinate is 1.
    std::vector<std::array<std::uint32_t, 3>> points;
    for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
            for (std::uint32_t c = 0; c < q; ++c) {
                std::array<std::uint32_t, 3> v{a, b, c};
                auto first = std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
                if (first != v.end() && *first == 1) points.push_back(v);
            }
        }
    }
    // A line {x : l.x = 0} is named by its normal vector, itself a projective point.
    auto np = static_cast<Label>(points.size());
    std::vector<std::vector<Label>> edges;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            std::uint32_t dot = 0;
            for (int t = 0; t < 3; ++t) dot += points[i][t] * points[j][t];
            if (dot % q == 0) edges.push_back({static_cast<Label>(i), np + static_cast<Label>(j)});
        }
    }
    return SimplicialComplex::build(edges);
}

SimplicialComplex cycle_graph(std::size_t n)
{
    if (n < 3) throw InputError("cycle graph needs at least 3 vertices");
    std::vector<std::vector<Label>> edges;
    for (std::size_t i = 0; i < n; ++i) edges.push_back({static_cast<Label>(i), static_cast<Label>((i + 1) % n)});
    return SimplicialComplex::build(edges);
}

SimplicialComplex octahedron_boundary()
{
    std::vector<std::vector<Label>> tris;
    for (Label a : {0, 3}) {
        for (Label b : {1, 4}) {
            for (Label c : {2, 5}) tris.push_back({a, b, c});
        }
    }
    return SimplicialComplex::build(tris);
}

Torus7 torus_7()
{
    std::vector<std::vector<Label>> tris;
    for (Label i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    Torus7 t;
    t.complex = SimplicialComplex::build(tris);
    const auto& x = t.complex;

    // Lattice step of the lift of u -> v, indexed by (v - u) mod 7.
    const std::array<std::array<std::int64_t, 2>, 7> step{{
        {0, 0}, {1, 0}, {-1, 1}, {0, 1}, {0, -1}, {1, -1}, {-1, 0},
    }};

    // Breadth-first spanning tree from vertex 0, edges in index order.
    std::vector<std::array<std::int64_t, 2>> pos(7);
    std::vector<bool> reached(7, false);
    reached[0] = true;
    std::deque<std::uint32_t> queue{0};
    std::vector<bool> in_tree(x.count(1), false);
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (std::uint32_t e = 0; e < x.count(1); ++e) {
            auto ev = x.simplex(1, e);
            if (ev[0] != u && ev[1] != u) continue;
            auto w = ev[0] == u ? ev[1] : ev[0];
            if (reached[w]) continue;
            reached[w] = true;
            in_tree[e] = true;
            t.tree_edges.push_back(e);
            auto s = step[(w + 7 - u) % 7];
            pos[w] = {pos[u][0] + s[0], pos[u][1] + s[1]};
            queue.push_back(w);
        }
    }
    std::sort(t.tree_edges.begin(), t.tree_edges.end());

    t.holonomy.resize(x.count(1));
    for (std::uint32_t e = 0; e < x.count(1); ++e) {
        auto u = x.simplex(1, e)[0], v = x.simplex(1, e)[1];
        auto s = step[(v + 7 - u) % 7];
        std::int64_t hx = pos[u][0] + s[0] - pos[v][0];
        std::int64_t hy = pos[u][1] + s[1] - pos[v][1];
        // Solve h = na (1,2) + nb (-3,1); the basis has determinant 7.
        std::int64_t na = (hx + 3 * hy) / 7;
        std::int64_t nb = (hy - 2 * hx) / 7;
        if (na * 1 + nb * -3 != hx || na * 2 + nb != hy) throw StructureError("torus_7: holonomy off the lattice");
        t.holonomy[e] = {na, nb};
    }
    t.generator_loops = {std::vector<Label>{0, 1, 4, 0}, std::vector<Label>{0, 2, 1, 0}};
    return t;
}

RandomComplex random_complex(std::size_t n, int d, double p, std::uint64_t seed, std::size_t max_retries)
{
    if (d < 1 || static_cast<std::size_t>(d) + 1 > n) throw InputError("random complex needs 1 <= d and d + 1 <= n");
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("inclusion probability must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    auto faces = subsets(n, static_cast<std::size_t>(d) + 1);
    auto ridges = subsets(n, static_cast<std::size_t>(d));
    RandomComplex out;
    std::vector<std::vector<Label>> chosen;
    for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
        chosen.clear();
        for (const auto& f : faces) {
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) chosen.push_back(f);
        }
        bool pure = true;
        for (const auto& r : ridges) {
            bool covered = std::any_of(chosen.begin(), chosen.end(), [&](const auto& f) {
                return std::includes(f.begin(), f.end(), r.begin(), r.end());
            });
            if (!covered) {
                pure = false;
                break;
            }
        }
        if (pure && !chosen.empty()) {
            out.complex = SimplicialComplex::build(chosen);
            out.retries = attempt;
            return out;
        }
    }
    out.retries = max_retries;
    out.purified = true;
    if (chosen.empty()) {
        out.complex = SimplicialComplex::build(ridges);
        out.warning = "no " + std::to_string(d) + "-faces drawn; returning the full " + std::to_string(d - 1) + "-skeleton";
    } else {
        out.complex = SimplicialComplex::build(chosen);
        out.warning = "draw not pure after " + std::to_string(max_retries) +
                      " retries; returning its pure top-dimensional part";
    }
    return out;
}

}  // namespace cosys
