#include <doctest.h>

#include <random>

#include "cosys/zmod.hpp"

using namespace cosys;

namespace {

ZmodMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::uint64_t m, int density)
{
    ZmodMatrix a(r, c, m);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            if (static_cast<int>(rng() % 100) < density) a.at(i, j) = rng() % m;
        }
    }
    return a;
}

std::vector<std::uint64_t> dot_rows(const std::vector<std::uint64_t>& lambda, const ZmodMatrix& a)
{
    std::vector<std::uint64_t> out(a.cols(), 0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) out[j] = (out[j] + lambda[i] * a.at(i, j)) % a.modulus();
    }
    return out;
}

}  // namespace

TEST_CASE("zmod: diagonal form identities")
{
    std::mt19937_64 rng(11);
    for (std::uint64_t m : {2u, 3u, 4u, 6u, 8u, 9u, 12u, 30u}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
            auto a = random_matrix(rng, r, c, m, 30 + trial * 3);
            auto f = diagonalize(a);
            auto d = f.L * a * f.R;
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < c; ++j) {
                    if (i != j) CHECK(d.at(i, j) == 0);
                    else CHECK((d.at(i, i) == 0 ? m : d.at(i, i)) == f.diag[i]);
                }
            }
            for (auto g : f.diag) CHECK(m % g == 0);
            CHECK(f.L * f.Linv == ZmodMatrix::identity(r, m));
            CHECK(f.R * f.Rinv == ZmodMatrix::identity(c, m));
        }
    }
}

TEST_CASE("zmod: solving agrees with exhaustive search")
{
    std::mt19937_64 rng(5);
    for (std::uint64_t m : {2u, 4u, 6u}) {
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
            auto a = random_matrix(rng, r, c, m, 50);
            auto f = diagonalize(a);
            std::vector<std::uint64_t> b(r);
            for (auto& v : b) v = rng() % m;
            // Brute-force solvability over all m^c vectors.
            bool solvable = false;
            std::vector<std::uint64_t> x(c, 0);
            while (true) {
                if (a.apply(x) == b) solvable = true;
                std::size_t j = 0;
                while (j < c && ++x[j] == m) x[j++] = 0;
                if (j == c) break;
            }
            auto s = solve(f, b);
            CHECK(s.solution.has_value() == solvable);
            if (s.solution) {
                CHECK(a.apply(*s.solution) == b);
            } else {
                for (auto v : dot_rows(s.certificate, a)) CHECK(v == 0);
                std::uint64_t pair = 0;
                for (std::size_t i = 0; i < r; ++i) pair = (pair + s.certificate[i] * b[i]) % m;
                CHECK(pair != 0);
            }
        }
    }
}

TEST_CASE("zmod: units and inverses")
{
    CHECK(mod_inverse(3, 8) == 3);
    CHECK(mod_inverse(5, 12) == 5);
    CHECK_THROWS(mod_inverse(2, 4));
}
