#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cosys/rational.hpp"

namespace cosys {

/// Bijection of {0, ..., n-1}. Text form is one-line notation over
/// {1, ..., n}: "2 3 1" maps 1->2, 2->3, 3->1.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> images);

    static Permutation identity(std::size_t n);
    static Permutation cycle(std::size_t n);  // i -> i+1 mod n
    static Permutation transposition(std::size_t n, std::uint32_t a, std::uint32_t b);
    static Permutation parse(std::string_view one_line);

    std::size_t size() const { return images_.size(); }
    std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
    const std::vector<std::uint32_t>& images() const { return images_; }

    bool is_identity() const;
    Permutation inverse() const;
    std::size_t fixed_points() const;
    std::size_t order() const;  // lcm of cycle lengths
    std::string to_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::uint32_t> images_;
};

/// (lhs * rhs)(x) = lhs(rhs(x)).
Permutation operator*(const Permutation& lhs, const Permutation& rhs);

Permutation power(const Permutation& p, std::int64_t k);

/// l_n(s) = |{i : s(i) != i}| / n.
Rational hamming_length(const Permutation& p);

/// d_n(s, t) = l_n(s t^{-1}).
Rational hamming_distance(const Permutation& s, const Permutation& t);

/// True when the group generated by `gens` on {0..n-1} has a single orbit.
bool is_transitive(std::size_t n, const std::vector<Permutation>& gens);

}  // namespace cosys
