#include <doctest.h>

#include <algorithm>

#include "cosys/complex.hpp"
#include "cosys/errors.hpp"
#include "cosys/generators.hpp"

using namespace cosys;

namespace {

// Independent coface count: scan every maximal simplex.
std::uint64_t brute_top_count(const SimplicialComplex& x, const std::vector<Label>& sigma)
{
    std::uint64_t c = 0;
    for (const auto& t : x.maximal_simplices()) {
        if (std::includes(t.begin(), t.end(), sigma.begin(), sigma.end())) ++c;
    }
    return c;
}

}  // namespace

TEST_CASE("complex: build examples")
{
    auto tri = SimplicialComplex::build({{0, 1, 2}});
    CHECK(tri.dimension() == 2);
    CHECK(tri.count(0) == 3);
    CHECK(tri.count(1) == 3);
    CHECK(tri.count(2) == 1);
    auto c3 = SimplicialComplex::build({{0, 1}, {1, 2}, {0, 2}});
    CHECK(c3.dimension() == 1);
    CHECK(c3.count(1) == 3);
    CHECK_THROWS_AS(SimplicialComplex::build({{0, 1, 2}, {3, 4}}), PurityError);
    CHECK_THROWS_AS(SimplicialComplex::build({{0, 1}, {1, 0}}), InputError);
    // A redundant face of a maximal simplex is accepted.
    CHECK(SimplicialComplex::build({{0, 1, 2}, {0, 1}}) == tri);
    try {
        SimplicialComplex::build({{0, 1, 2}, {3, 4}});
    } catch (const PurityError& e) {
        CHECK(std::string(e.what()).find("{3,4}") != std::string::npos);
    }
}

TEST_CASE("complex: facets, cofaces and orientation")
{
    auto x = SimplicialComplex::build({{5, 2, 9}, {2, 9, 11}});
    CHECK(x.vertex_labels() == std::vector<Label>{2, 5, 9, 11});
    auto t = *x.find_labels({9, 5, 2});
    CHECK(x.labels(2, t) == std::vector<Label>{2, 5, 9});
    CHECK(x.labels(1, x.facet(2, t, 0)) == std::vector<Label>{5, 9});
    CHECK(x.labels(1, x.facet(2, t, 2)) == std::vector<Label>{2, 5});
    auto e = *x.find_labels({2, 9});
    CHECK(x.cofaces(1, e).size() == 2);
    CHECK(x.top_cofaces(0, *x.vertex_of(2)) == 2);
    CHECK_FALSE(x.find_labels({5, 11}).has_value());
}

TEST_CASE("complex: weights")
{
    auto k4 = complete_complex(4, 1);
    for (std::uint32_t v = 0; v < 4; ++v) {
        CHECK(weight_mu(k4, 0, v) == make_rational(1, 4));
        CHECK(weight_m(k4, 0, v) == 3);
    }
    CHECK(weight_m(k4, 1, 0) == 1);

    auto tri = SimplicialComplex::build({{0, 1, 2}});
    CHECK(weight_mu(tri, 1, 0) == make_rational(1, 3));
    CHECK(weight_m(tri, 0, 0) == 2);
    CHECK(weight_m(tri, 1, 0) == 1);
    CHECK(weight_m(tri, 2, 0) == 1);

    auto torus = torus_7().complex;
    for (std::uint32_t e = 0; e < torus.count(1); ++e) CHECK(weight_mu(torus, 1, e) == make_rational(1, 21));
    for (std::uint32_t v = 0; v < 7; ++v) CHECK(weight_m(torus, 0, v) == 12);
    CHECK_THROWS_AS(weight_mu(torus, 1, 99), InputError);
}

TEST_CASE("complex: weight identities on random complexes")
{
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto r = random_complex(6 + seed % 4, 1 + static_cast<int>(seed % 3), 0.6, seed);
        const auto& x = r.complex;
        int d = x.dimension();
        for (int k = 0; k <= d; ++k) {
            Rational total = 0;
            for (std::uint32_t s = 0; s < x.count(k); ++s) {
                total += weight_mu(x, k, s);
                CHECK(x.top_cofaces(k, s) == brute_top_count(x, x.labels(k, s)));
                if (k < d) {
                    Rational sum = 0;
                    for (auto t : x.cofaces(k, s)) sum += weight_m(x, k + 1, t);
                    CHECK(sum == weight_m(x, k, s));
                }
            }
            CHECK(total == 1);
        }
        auto mu = WeightScheme::mu(x);
        auto m = WeightScheme::m(x);
        // Normalizing m per degree recovers mu.
        for (int k = 0; k <= d; ++k) CHECK(mu.degree(k) == m.degree(k));
    }
}

TEST_CASE("complex: links")
{
    auto tri = SimplicialComplex::build({{0, 1, 2}});
    auto l = tri.link({0});
    CHECK(l.dimension() == 1);
    CHECK(l.maximal_simplices() == std::vector<std::vector<Label>>{{1, 2}});
    CHECK_THROWS_AS(tri.link({0, 1, 2}), StructureError);
    CHECK_THROWS_AS(tri.link({0, 7}), InputError);
    CHECK(tri.link({}) == tri);

    auto c3 = cycle_graph(3);
    auto lc = c3.link({0});
    CHECK(lc.dimension() == 0);
    CHECK(lc.count(0) == 2);

    auto oct = octahedron_boundary();
    auto lo = oct.link({0});
    CHECK(lo.count(0) == 4);
    CHECK(lo.count(1) == 4);
    CHECK(lo.num_components() == 1);
    for (std::uint32_t v = 0; v < 4; ++v) CHECK(lo.cofaces(0, v).size() == 2);

    auto torus = torus_7().complex;
    for (Label v = 0; v < 7; ++v) {
        auto lt = torus.link({v});
        CHECK(lt.count(0) == 6);
        CHECK(lt.count(1) == 6);
        CHECK(lt.num_components() == 1);
    }
    // Purity of links: dimension d - |sigma|.
    auto x = complete_complex(6, 3);
    for (int k = 0; k < 3; ++k) {
        for (std::uint32_t s = 0; s < x.count(k); ++s) CHECK(x.link(x.labels(k, s)).dimension() == 3 - (k + 1));
    }
}

TEST_CASE("complex: skeleta and io")
{
    auto tri = SimplicialComplex::build({{0, 1, 2}});
    CHECK(tri.skeleton(1) == cycle_graph(3));
    CHECK(complete_complex(4, 3).skeleton(1) == complete_complex(4, 1));
    CHECK(tri.skeleton(2) == tri);
    CHECK_THROWS_AS(tri.skeleton(3), InputError);

    auto t = torus_7().complex;
    CHECK(SimplicialComplex::parse(t.serialize()) == t);
    auto p = SimplicialComplex::parse("# a triangle\n0 1 2\n\n1 2  # redundant face\n");
    CHECK(p == tri);
    CHECK_THROWS_AS(SimplicialComplex::parse("0 1\n1 x\n", "bad.cx"), ParseError);
    try {
        SimplicialComplex::parse("0 1\n1 -2\n", "bad.cx");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("bad.cx:2:", 0) == 0);
    }
}

TEST_CASE("complex: custom weights are normalized")
{
    auto c3 = cycle_graph(3);
    auto w = WeightScheme::parse_custom(c3, "0 : 1\n1 : 1\n2 : 2\n0 1 : 1\n1 2 : 1\n0 2 : 2\n");
    CHECK(w.value(0, 2) == make_rational(1, 2));
    CHECK(w.value(1, *c3.find_labels({0, 2})) == make_rational(1, 2));
    CHECK(w.integer(1).denominator == 4);
    CHECK_THROWS_AS(WeightScheme::parse_custom(c3, "0 : 1\n"), InputError);
    CHECK_THROWS_AS(WeightScheme::parse_custom(c3, "0 1 : -1\n"), InputError);
}
