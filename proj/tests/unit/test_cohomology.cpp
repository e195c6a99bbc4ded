#include <doctest.h>

#include <random>

#include "cosys/cohomology.hpp"
#include "cosys/errors.hpp"
#include "cosys/generators.hpp"
#include "support/brute.hpp"

using namespace cosys;

namespace {

SpacePtr plain(const SimplicialComplex& x, FiniteAbelianGroup a)
{
    return make_space(x, std::move(a), WeightScheme::mu(x));
}

std::uint64_t order(const CohomologyGroup& h)
{
    std::uint64_t n = 1;
    for (auto o : h.orders) n *= o;
    return n;
}

}  // namespace

TEST_CASE("cohomology orders match exhaustive counting")
{
    struct Case {
        SimplicialComplex x;
        FiniteAbelianGroup a;
    };
    std::vector<Case> cases{{cycle_graph(3), FiniteAbelianGroup::cyclic(4)},
                            {complete_complex(4, 1), FiniteAbelianGroup::cyclic(2)},
                            {complete_complex(4, 2), FiniteAbelianGroup::cyclic(3)},
                            {cycle_graph(4), FiniteAbelianGroup({2, 2})},
                            {octahedron_boundary(), FiniteAbelianGroup::cyclic(2)},
                            {SimplicialComplex::build({{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}), FiniteAbelianGroup::cyclic(3)}};
    for (const auto& c : cases) {
        auto s = plain(c.x, c.a);
        for (int i = 0; i <= s->dimension(); ++i) {
            if (s->cells(i) * std::log2(double(c.a.order())) > 14) continue;
            if (i > 0 && s->cells(i - 1) * std::log2(double(c.a.order())) > 14) continue;
            CAPTURE(c.x.serialize());
            CAPTURE(i);
            CHECK(order(cohomology(s, i)) == brute::cohomology_order(s, i));
        }
    }
}

TEST_CASE("known cohomology")
{
    auto t = torus_7();
    auto h1 = cohomology(plain(t.complex, FiniteAbelianGroup::cyclic(2)), 1);
    CHECK(h1.orders == std::vector<std::uint64_t>{2, 2});
    CHECK(order(cohomology(plain(t.complex, FiniteAbelianGroup::cyclic(2)), 2)) == 2);
    CHECK(order(cohomology(plain(t.complex, FiniteAbelianGroup::cyclic(6)), 1)) == 36);
    CHECK(cohomology(plain(octahedron_boundary(), FiniteAbelianGroup::cyclic(5)), 1).trivial());
    CHECK(order(cohomology(plain(octahedron_boundary(), FiniteAbelianGroup::cyclic(5)), 2)) == 5);
    CHECK(order(cohomology(plain(complete_complex(5, 1), FiniteAbelianGroup::cyclic(2)), 1)) == 64);
    // Generators are cocycles of the stated order and are not coboundaries.
    for (std::size_t k = 0; k < h1.generators.size(); ++k) {
        CHECK(coboundary(h1.generators[k]).is_zero());
        CHECK_FALSE(is_coboundary(h1.generators[k]).primitive.has_value());
    }
    CHECK_FALSE(is_coboundary(add(h1.generators[0], h1.generators[1])).primitive.has_value());
}

TEST_CASE("primitives and certificates")
{
    std::mt19937_64 rng(9);
    auto t = torus_7();
    auto s = plain(t.complex, FiniteAbelianGroup({2, 3}));
    for (int trial = 0; trial < 10; ++trial) {
        Cochain b = Cochain::zero(s, 0);
        for (auto& v : b.values) v = static_cast<std::uint32_t>(rng() % 6);
        auto r = is_coboundary(coboundary(b));
        REQUIRE(r.primitive.has_value());
        CHECK(coboundary(*r.primitive) == coboundary(b));
    }
    auto h = cohomology(s, 1);
    for (const auto& g : h.generators) {
        auto r = is_coboundary(g);
        REQUIRE_FALSE(r.primitive.has_value());
        CHECK(verify_certificate(g, r));
    }
    CHECK_THROWS_AS(is_coboundary(Cochain::zero(s, 0)), InputError);
}

TEST_CASE("cup product on the torus")
{
    auto t = torus_7();
    auto s = plain(t.complex, FiniteAbelianGroup::cyclic(2));
    auto h = cohomology(s, 1);
    auto& a = h.generators[0];
    auto& b = h.generators[1];
    CHECK_FALSE(is_coboundary(cup(a, b)).primitive.has_value());
    CHECK(is_coboundary(cup(a, a)).primitive.has_value());
}

TEST_CASE("cosystole of cycles")
{
    for (std::size_t n : {3, 4, 5, 7}) {
        auto s = plain(cycle_graph(n), FiniteAbelianGroup::cyclic(2));
        auto r = cosystole(s, 1, {});
        CHECK_FALSE(r.vacuous);
        CHECK(r.certified);
        CHECK(r.value == Rational(1, static_cast<long>(n)));
        CHECK(norm(r.minimizer) == r.value);
    }
    CHECK(cosystole(plain(octahedron_boundary(), FiniteAbelianGroup::cyclic(2)), 1, {}).vacuous);
}

TEST_CASE("coset minimum matches exhaustive search")
{
    auto t = torus_7();
    for (std::uint32_t m : {2u, 3u}) {
        auto s = plain(t.complex, FiniteAbelianGroup::cyclic(m));
        auto h = cohomology(s, 1);
        std::vector<std::uint64_t> coeffs(h.orders.size(), 0);
        for (coeffs[0] = 0; coeffs[0] < h.orders[0]; ++coeffs[0]) {
            for (coeffs[1] = 0; coeffs[1] < h.orders[1]; ++coeffs[1]) {
                auto z = h.combination(coeffs);
                auto oracle = brute::coset_minimum(z);
                SearchOptions one, many;
                many.workers = 6;
                auto r1 = cosystolic_norm(z, one);
                auto r6 = cosystolic_norm(z, many);
                CHECK(r1.value == oracle);
                CHECK(r6.value == oracle);
                CHECK(r1.minimizer == r6.minimizer);
                CHECK(norm(r1.minimizer) == r1.value);
                CHECK(add(z, coboundary(r1.primitive)) == r1.minimizer);
            }
        }
    }
}

TEST_CASE("budget is enforced")
{
    auto x = complete_complex(7, 2);
    auto s = plain(x, FiniteAbelianGroup::cyclic(3));
    SearchOptions tight;
    tight.budget = 1e3;
    Cochain b = Cochain::zero(s, 1);
    b.values[0] = 1;
    CHECK(cosystolic_norm(coboundary(b), tight).mode == "trivial-class");
    auto c = cycle_graph(30);
    auto big = plain(c, FiniteAbelianGroup::cyclic(5));
    auto h = cohomology(big, 1);
    CHECK_THROWS_AS(cosystolic_norm(h.generators[0], tight), CapacityError);
    tight.heuristic = true;
    auto r = cosystolic_norm(h.generators[0], tight);
    CHECK_FALSE(r.certified);
    CHECK(r.value >= Rational(1, 30));
}
