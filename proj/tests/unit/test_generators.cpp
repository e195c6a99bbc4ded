#include <doctest.h>

#include "cosys/errors.hpp"
#include "cosys/generators.hpp"

using namespace cosys;

TEST_CASE("generators: complete complexes")
{
    CHECK(complete_complex(3, 1) == cycle_graph(3));
    CHECK(complete_complex(4, 2).count(2) == 4);
    CHECK(complete_complex(5, 1).count(1) == 10);
    CHECK_THROWS_AS(complete_complex(2, 2), InputError);
}

TEST_CASE("generators: projective-plane flag complexes")
{
    auto f2 = flag_complex_subspaces(2);
    CHECK(f2.count(0) == 14);
    CHECK(f2.count(1) == 21);
    for (std::uint32_t v = 0; v < 14; ++v) CHECK(f2.cofaces(0, v).size() == 3);
    auto f3 = flag_complex_subspaces(3);
    CHECK(f3.count(0) == 26);
    CHECK(f3.count(1) == 52);
    for (std::uint32_t v = 0; v < 26; ++v) CHECK(f3.cofaces(0, v).size() == 4);
    // Bipartite: every edge joins a point (label < P) to a line.
    for (auto [f, p] : {std::pair{f2, 7}, std::pair{f3, 13}}) {
        for (std::uint32_t e = 0; e < f.count(1); ++e) {
            auto l = f.labels(1, e);
            CHECK(l[0] < p);
            CHECK(l[1] >= p);
        }
        CHECK(f.num_components() == 1);
    }
    // Point-line duality of the Fano plane is an automorphism swapping the parts.
    for (std::uint32_t e = 0; e < f2.count(1); ++e) {
        auto l = f2.labels(1, e);
        CHECK(f2.find_labels({l[1] - 7, l[0] + 7}).has_value());
    }
    CHECK_THROWS_AS(flag_complex_subspaces(4), InputError);
    CHECK_THROWS_AS(flag_complex_subspaces(2, 4), InputError);
}

TEST_CASE("generators: seven-vertex torus")
{
    auto t = torus_7();
    const auto& x = t.complex;
    CHECK(x.count(0) == 7);
    CHECK(x.count(1) == 21);
    CHECK(x.count(2) == 14);
    CHECK(x.euler_characteristic() == 0);
    for (std::uint32_t e = 0; e < 21; ++e) CHECK(x.cofaces(1, e).size() == 2);
    CHECK(t.tree_edges.size() == 6);
    for (auto e : t.tree_edges) CHECK(t.holonomy[e] == std::array<std::int64_t, 2>{0, 0});
    // Flat: holonomy sums to zero around every triangle.
    for (std::uint32_t f = 0; f < 14; ++f) {
        auto e01 = x.facet(2, f, 2), e12 = x.facet(2, f, 0), e02 = x.facet(2, f, 1);
        for (int c = 0; c < 2; ++c) CHECK(t.holonomy[e01][c] + t.holonomy[e12][c] - t.holonomy[e02][c] == 0);
    }
    // The recorded loops are the basis translations.
    for (int g = 0; g < 2; ++g) {
        std::array<std::int64_t, 2> sum{0, 0};
        const auto& loop = t.generator_loops[g];
        for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
            auto u = loop[i], v = loop[i + 1];
            auto e = *x.find_labels({u, v});
            int sign = u < v ? 1 : -1;
            sum[0] += sign * t.holonomy[e][0];
            sum[1] += sign * t.holonomy[e][1];
        }
        CHECK(sum[0] == (g == 0 ? 1 : 0));
        CHECK(sum[1] == (g == 1 ? 1 : 0));
    }
}

TEST_CASE("generators: random complexes")
{
    CHECK(random_complex(6, 2, 1.0, 3).complex == complete_complex(6, 2));
    auto empty = random_complex(5, 1, 0.0, 3, 4);
    CHECK(empty.purified);
    CHECK_FALSE(empty.warning.empty());
    CHECK(empty.complex.dimension() == 0);
    auto a = random_complex(9, 2, 0.4, 42);
    auto b = random_complex(9, 2, 0.4, 42);
    CHECK(a.complex.serialize() == b.complex.serialize());
    CHECK(a.retries == b.retries);
}
