#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cosys {

/// Element of a finite abelian group: one least non-negative residue per
/// cyclic factor.
struct AElement {
    std::vector<std::uint32_t> coords;

    friend bool operator==(const AElement&, const AElement&) = default;
    friend auto operator<=>(const AElement&, const AElement&) = default;
};

/// A = Z/m_1 x ... x Z/m_t, given by its factor list (no normalization).
/// The empty list is the trivial group.
///
/// Besides the coordinate API, elements have a dense index in [0, order())
/// that follows the lexicographic order of coordinates (first factor most
/// significant, zero at index 0). The search kernels work on indices through
/// GroupTables.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<std::uint32_t> factors);

    static FiniteAbelianGroup cyclic(std::uint32_t m) { return FiniteAbelianGroup({m}); }

    const std::vector<std::uint32_t>& factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    std::uint64_t order() const { return order_; }
    bool is_trivial() const { return order_ == 1; }

    AElement zero() const;
    bool contains(const AElement& x) const;
    bool is_zero(const AElement& x) const;

    AElement add(const AElement& x, const AElement& y) const;
    AElement neg(const AElement& x) const;
    AElement scale(std::int64_t n, const AElement& x) const;

    // Every element, lexicographic by coordinates, zero first. Throws
    // CapacityError when order() exceeds `bound`.
    std::vector<AElement> enumerate(std::uint64_t bound = kDefaultEnumerationBound) const;

    std::uint32_t index_of(const AElement& x) const;
    AElement element(std::uint32_t index) const;

    // Text syntax: "Z/2 x Z/3", whitespace-insensitive; "0" or "1" is the
    // trivial group.
    static FiniteAbelianGroup parse(std::string_view text);
    std::string to_string() const;

    // "(1,2)"; a bare residue is accepted for cyclic groups.
    AElement parse_element(std::string_view text) const;
    std::string format(const AElement& x) const;

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b)
    {
        return a.factors_ == b.factors_;
    }

    static constexpr std::uint64_t kDefaultEnumerationBound = 1u << 20;

private:
    void check_shape(const AElement& x) const;
    static std::string format_unchecked(const AElement& x);

    std::vector<std::uint32_t> factors_;
    std::uint64_t order_ = 1;
};

/// Dense arithmetic on element indices. Tables are materialized for groups of
/// order <= kTableLimit; larger groups fall back to coordinate arithmetic.
class GroupTables {
public:
    explicit GroupTables(const FiniteAbelianGroup& g);

    std::uint32_t order() const { return order_; }
    std::uint32_t add(std::uint32_t x, std::uint32_t y) const
    {
        return tabulated_ ? add_[x * order_ + y] : add_slow(x, y);
    }
    std::uint32_t neg(std::uint32_t x) const { return tabulated_ ? neg_[x] : neg_slow(x); }
    std::uint32_t scale(std::int64_t n, std::uint32_t x) const;
    const FiniteAbelianGroup& group() const { return group_; }

    static constexpr std::uint32_t kTableLimit = 256;

private:
    std::uint32_t add_slow(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t neg_slow(std::uint32_t x) const;

    FiniteAbelianGroup group_;
    std::uint32_t order_;
    bool tabulated_;
    std::vector<std::uint32_t> add_;
    std::vector<std::uint32_t> neg_;
};

}  // namespace cosys
