#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace cosys {

/// Dense matrix over Z/m with entries kept in [0, m).
class ZmodMatrix {
public:
    ZmodMatrix() = default;
    ZmodMatrix(std::size_t rows, std::size_t cols, std::uint64_t m);

    static ZmodMatrix identity(std::size_t n, std::uint64_t m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint64_t modulus() const { return m_; }

    std::uint64_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::int64_t v);

    std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& x) const;
    ZmodMatrix operator*(const ZmodMatrix& rhs) const;
    bool operator==(const ZmodMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::uint64_t m_ = 1;
    std::vector<std::uint64_t> a_;
};

/// L * M * R = D with L, R invertible over Z/m and D diagonal. Diagonal
/// entries are divisors of m (m itself marks a zero pivot) and are listed for
/// k < min(rows, cols).
struct DiagonalForm {
    ZmodMatrix L, Linv, R, Rinv;
    std::vector<std::uint64_t> diag;
};

/// Throws CapacityError when rows * cols exceeds kMaxEntries.
DiagonalForm diagonalize(const ZmodMatrix& m);

inline constexpr std::size_t kMaxDenseEntries = std::size_t{1} << 24;

/// Solution x of M x = b, or, when none exists, a functional lambda with
/// lambda M = 0 and lambda . b != 0.
struct LinearSolve {
    std::optional<std::vector<std::uint64_t>> solution;
    std::vector<std::uint64_t> certificate;
};

LinearSolve solve(const DiagonalForm& form, const std::vector<std::uint64_t>& b);

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

}  // namespace cosys
