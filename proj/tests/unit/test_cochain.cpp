#include <doctest.h>

#include <random>

#include "cosys/cochain.hpp"
#include "cosys/errors.hpp"
#include "cosys/generators.hpp"
#include "support/brute.hpp"

using namespace cosys;

namespace {

SpacePtr plain(const SimplicialComplex& x, std::uint32_t m)
{
    return make_space(x, FiniteAbelianGroup::cyclic(m), WeightScheme::mu(x));
}

Cochain random_cochain(std::mt19937_64& rng, const SpacePtr& s, int k)
{
    Cochain c = Cochain::zero(s, k);
    for (auto& v : c.values) v = static_cast<std::uint32_t>(rng() % s->group().order());
    return c;
}

// Double cover of C_3: the sheets swap along edge {0,2}.
SpacePtr twisted_c3(std::uint32_t m)
{
    auto x = cycle_graph(3);
    std::vector<Permutation> labels(x.count(1), Permutation::identity(2));
    labels[*x.find_labels({0, 2})] = Permutation::transposition(2, 0, 1);
    return make_space(x, FiniteAbelianGroup::cyclic(m), WeightScheme::mu(x), MeasuredBoolean::uniform(2),
                      LocalSystem(x, labels));
}

}  // namespace

TEST_CASE("coboundary squares to zero")
{
    std::mt19937_64 rng(7);
    std::vector<SpacePtr> spaces{plain(complete_complex(5, 3), 3), plain(torus_7().complex, 4),
                                 make_space(octahedron_boundary(), FiniteAbelianGroup({2, 3}),
                                            WeightScheme::m(octahedron_boundary()), MeasuredBoolean::uniform(3)),
                                 twisted_c3(5)};
    for (const auto& s : spaces) {
        for (int k = 0; k + 2 <= s->dimension(); ++k) {
            for (int t = 0; t < 20; ++t) CHECK(coboundary(coboundary(random_cochain(rng, s, k))).is_zero());
        }
    }
}

TEST_CASE("vertex indicator on the triangle graph")
{
    auto s = plain(cycle_graph(3), 2);
    Cochain c = Cochain::zero(s, 0);
    c.values[0] = 1;
    auto dc = coboundary(c);
    const auto& x = s->complex();
    CHECK(dc.values[*x.find_labels({0, 1})] == 1);
    CHECK(dc.values[*x.find_labels({0, 2})] == 1);
    CHECK(dc.values[*x.find_labels({1, 2})] == 0);
    CHECK(norm(c) == Rational(1, 3));
    CHECK(norm(dc) == Rational(2, 3));
}

TEST_CASE("alternating sum on the full triangle")
{
    auto s = plain(complete_complex(3, 2), 3);
    const auto& x = s->complex();
    Cochain c = Cochain::zero(s, 1);
    c.values[*x.find_labels({0, 1})] = 1;
    c.values[*x.find_labels({0, 2})] = 2;
    c.values[*x.find_labels({1, 2})] = 2;
    // c(12) - c(02) + c(01) = 2 - 2 + 1.
    CHECK(coboundary(c).values[0] == 1);
    c.values[*x.find_labels({0, 1})] = 0;
    CHECK(coboundary(c).is_zero());
}

TEST_CASE("twisted coboundary agrees with the cover")
{
    // Sheet f over 0 continues to sheet g(f) over 2; a sheet-constant 0-cochain
    // on the twisted double cover has zero coboundary exactly when it is
    // constant on the connected cover.
    auto s = twisted_c3(2);
    Cochain c = Cochain::zero(s, 0);
    for (std::uint32_t v = 0; v < 3; ++v) c.values[s->cell(v, 0)] = 1;
    CHECK_FALSE(coboundary(c).is_zero());
    for (std::uint32_t v = 0; v < 3; ++v) c.values[s->cell(v, 1)] = 1;
    CHECK(coboundary(c).is_zero());
}

TEST_CASE("flatness is enforced")
{
    auto x = complete_complex(3, 2);
    std::vector<Permutation> labels(x.count(1), Permutation::identity(2));
    labels[0] = Permutation::transposition(2, 0, 1);
    CHECK_THROWS_AS(LocalSystem(x, labels), LabelingError);
}

TEST_CASE("norm and weights")
{
    auto x = complete_complex(4, 2);
    auto s = plain(x, 2);
    Cochain c = Cochain::zero(s, 2);
    c.values[0] = 1;
    CHECK(norm(c) == Rational(1, 4));
    auto p = make_space(x, FiniteAbelianGroup::cyclic(2), WeightScheme::mu(x),
                        MeasuredBoolean(std::vector<Rational>{Rational(1, 3), Rational(2, 3)}));
    Cochain d = Cochain::zero(p, 2);
    d.values[p->cell(0, 1)] = 1;
    CHECK(norm(d) == Rational(1, 6));
    Rational total = 0;
    for (std::uint32_t k = 0; k < p->cells(1); ++k) total += p->weight(1, k);
    CHECK(total == 1);
}

TEST_CASE("lipschitz constant bounds the coboundary")
{
    std::mt19937_64 rng(3);
    auto s = plain(torus_7().complex, 3);
    for (int k = 0; k < 2; ++k) {
        auto lip = lipschitz_constant(*s, k);
        for (int t = 0; t < 50; ++t) {
            auto c = random_cochain(rng, s, k);
            CHECK(norm(coboundary(c)) <= lip * norm(c));
        }
    }
}

TEST_CASE("gauge cells")
{
    auto t = torus_7();
    auto s = plain(t.complex, 2);
    auto g0 = s->gauge_cells(0), g1 = s->gauge_cells(1);
    CHECK(std::count(g0.begin(), g0.end(), true) == 1);
    CHECK(std::count(g1.begin(), g1.end(), true) == 6);
    auto tw = twisted_c3(2);
    auto h0 = tw->gauge_cells(0), h1 = tw->gauge_cells(1);
    CHECK(std::count(h0.begin(), h0.end(), true) == 1);
    CHECK(std::count(h1.begin(), h1.end(), true) == 5);
}

TEST_CASE("cochain text round trip")
{
    std::mt19937_64 rng(11);
    auto s = make_space(torus_7().complex, FiniteAbelianGroup({2, 3}), WeightScheme::mu(torus_7().complex));
    auto c = random_cochain(rng, s, 1);
    CHECK(parse_cochain(s, 1, serialize_cochain(c)) == c);
    auto p = make_space(cycle_graph(4), FiniteAbelianGroup::cyclic(3), WeightScheme::mu(cycle_graph(4)),
                        MeasuredBoolean::uniform(3));
    auto d = random_cochain(rng, p, 1);
    CHECK(parse_cochain(p, 1, serialize_cochain(d)) == d);
    CHECK_THROWS_AS(parse_cochain(s, 1, "0 9 : (1,0)\n"), ParseError);
}

TEST_CASE("cup product is a derivation")
{
    std::mt19937_64 rng(5);
    auto s = plain(complete_complex(5, 3), 4);
    for (int t = 0; t < 20; ++t) {
        auto a = random_cochain(rng, s, 1), b = random_cochain(rng, s, 1);
        // d(a u b) = da u b - a u db for a of degree 1.
        auto lhs = coboundary(cup(a, b));
        auto rhs = add(cup(coboundary(a), b), negate(cup(a, coboundary(b))));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("brute-force oracle sanity")
{
    CHECK(brute::cohomology_order(plain(cycle_graph(3), 2), 1) == 2);
    CHECK(brute::cohomology_order(plain(cycle_graph(3), 2), 0) == 2);
    CHECK(brute::cohomology_order(twisted_c3(2), 0) == 2);
}
