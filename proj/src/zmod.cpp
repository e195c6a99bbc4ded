#include "cosys/zmod.hpp"

#include <numeric>
#include <utility>

#include "cosys/errors.hpp"

namespace cosys {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>((static_cast<u128>(a) + b) % m);
}

std::uint64_t reduce(std::int64_t v, std::uint64_t m)
{
    auto r = v % static_cast<std::int64_t>(m);
    if (r < 0) r += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r);
}

// s a + t b = gcd(a, b) over the integers.
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t)
{
    std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t r = a - q * b;
        a = b;
        b = r;
        std::int64_t sn = s0 - q * s1;
        s0 = s1;
        s1 = sn;
        std::int64_t tn = t0 - q * t1;
        t0 = t1;
        t1 = tn;
    }
    s = s0;
    t = t0;
    return a;
}

// Unit u with p = g u (mod m), where g = gcd(p, m).
std::uint64_t unit_part(std::uint64_t p, std::uint64_t m)
{
    std::uint64_t g = std::gcd(p, m);
    std::uint64_t base = p / g, step = m / g;
    for (std::uint64_t u = base % m;; u = (u + step) % m) {
        if (std::gcd(u, m) == 1) return u;
    }
}

// Row operations are applied to (M, L) and mirrored on Linv from the right;
// column operations to (M, R) and mirrored on Rinv from the left.
struct Reducer {
    ZmodMatrix a, L, Linv, R, Rinv;
    std::uint64_t m;

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
        for (std::size_t c = 0; c < L.cols(); ++c) std::swap(L.at(i, c), L.at(j, c));
        for (std::size_t r = 0; r < Linv.rows(); ++r) std::swap(Linv.at(r, i), Linv.at(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
        for (std::size_t r = 0; r < R.rows(); ++r) std::swap(R.at(r, i), R.at(r, j));
        for (std::size_t c = 0; c < Rinv.cols(); ++c) std::swap(Rinv.at(i, c), Rinv.at(j, c));
    }
    // Rows (i, j) <- [[p, q], [r, s]] (i, j) with ps - qr = 1.
    void mix_rows(std::size_t i, std::size_t j, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s)
    {
        auto P = reduce(p, m), Q = reduce(q, m), Rr = reduce(r, m), S = reduce(s, m);
        auto rows2 = [&](ZmodMatrix& x) {
            for (std::size_t c = 0; c < x.cols(); ++c) {
                auto u = x.at(i, c), v = x.at(j, c);
                x.at(i, c) = addmod(mulmod(P, u, m), mulmod(Q, v, m), m);
                x.at(j, c) = addmod(mulmod(Rr, u, m), mulmod(S, v, m), m);
            }
        };
        rows2(a);
        rows2(L);
        // Inverse [[s, -q], [-r, p]] applied to columns (i, j) from the right.
        auto NQ = reduce(-q, m), NR = reduce(-r, m);
        for (std::size_t row = 0; row < Linv.rows(); ++row) {
            auto u = Linv.at(row, i), v = Linv.at(row, j);
            Linv.at(row, i) = addmod(mulmod(u, S, m), mulmod(v, NR, m), m);
            Linv.at(row, j) = addmod(mulmod(u, NQ, m), mulmod(v, P, m), m);
        }
    }
    // Columns (i, j) <- (i, j) [[p, r], [q, s]] with ps - qr = 1, i.e. the
    // transpose of mix_rows.
    void mix_cols(std::size_t i, std::size_t j, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s)
    {
        auto P = reduce(p, m), Q = reduce(q, m), Rr = reduce(r, m), S = reduce(s, m);
        auto cols2 = [&](ZmodMatrix& x) {
            for (std::size_t row = 0; row < x.rows(); ++row) {
                auto u = x.at(row, i), v = x.at(row, j);
                x.at(row, i) = addmod(mulmod(P, u, m), mulmod(Q, v, m), m);
                x.at(row, j) = addmod(mulmod(Rr, u, m), mulmod(S, v, m), m);
            }
        };
        cols2(a);
        cols2(R);
        auto NQ = reduce(-q, m), NR = reduce(-r, m);
        for (std::size_t c = 0; c < Rinv.cols(); ++c) {
            auto u = Rinv.at(i, c), v = Rinv.at(j, c);
            Rinv.at(i, c) = addmod(mulmod(S, u, m), mulmod(NR, v, m), m);
            Rinv.at(j, c) = addmod(mulmod(NQ, u, m), mulmod(P, v, m), m);
        }
    }
    // Row i <- row i + f * row j.
    void add_row(std::size_t i, std::size_t j, std::uint64_t f)
    {
        if (f == 0) return;
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = addmod(a.at(i, c), mulmod(f, a.at(j, c), m), m);
        for (std::size_t c = 0; c < L.cols(); ++c) L.at(i, c) = addmod(L.at(i, c), mulmod(f, L.at(j, c), m), m);
        auto nf = (m - f) % m;
        for (std::size_t r = 0; r < Linv.rows(); ++r) Linv.at(r, j) = addmod(Linv.at(r, j), mulmod(Linv.at(r, i), nf, m), m);
    }
    // Column i <- column i + f * column j.
    void add_col(std::size_t i, std::size_t j, std::uint64_t f)
    {
        if (f == 0) return;
        for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, i) = addmod(a.at(r, i), mulmod(f, a.at(r, j), m), m);
        for (std::size_t r = 0; r < R.rows(); ++r) R.at(r, i) = addmod(R.at(r, i), mulmod(f, R.at(r, j), m), m);
        auto nf = (m - f) % m;
        for (std::size_t c = 0; c < Rinv.cols(); ++c) Rinv.at(j, c) = addmod(Rinv.at(j, c), mulmod(nf, Rinv.at(i, c), m), m);
    }
    void scale_row(std::size_t i, std::uint64_t u)
    {
        auto ui = mod_inverse(u, m);
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = mulmod(u, a.at(i, c), m);
        for (std::size_t c = 0; c < L.cols(); ++c) L.at(i, c) = mulmod(u, L.at(i, c), m);
        for (std::size_t r = 0; r < Linv.rows(); ++r) Linv.at(r, i) = mulmod(Linv.at(r, i), ui, m);
    }
};

}  // namespace

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m)
{
    if (m == 1) return 0;
    std::int64_t s = 0, t = 0;
    auto g = xgcd(static_cast<std::int64_t>(a % m), static_cast<std::int64_t>(m), s, t);
    if (g != 1) throw InputError("element is not a unit");
    return reduce(s, m);
}

ZmodMatrix::ZmodMatrix(std::size_t rows, std::size_t cols, std::uint64_t m) : rows_(rows), cols_(cols), m_(m)
{
    if (m == 0) throw InputError("modulus must be positive");
    if (rows != 0 && cols > kMaxDenseEntries / rows) {
        throw CapacityError("dense matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " exceeds the linear-algebra bound");
    }
    a_.assign(rows * cols, 0);
}

ZmodMatrix ZmodMatrix::identity(std::size_t n, std::uint64_t m)
{
    ZmodMatrix out(n, n, m);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = 1 % m;
    return out;
}

void ZmodMatrix::set(std::size_t i, std::size_t j, std::int64_t v)
{
    at(i, j) = reduce(v, m_);
}

std::vector<std::uint64_t> ZmodMatrix::apply(const std::vector<std::uint64_t>& x) const
{
    if (x.size() != cols_) throw ShapeError("vector length does not match matrix");
    std::vector<std::uint64_t> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        u128 acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            acc += static_cast<u128>(at(i, j)) * x[j];
            if ((j & 1023) == 1023) acc %= m_;
        }
        out[i] = static_cast<std::uint64_t>(acc % m_);
    }
    return out;
}

ZmodMatrix ZmodMatrix::operator*(const ZmodMatrix& rhs) const
{
    if (cols_ != rhs.rows_ || m_ != rhs.m_) throw ShapeError("matrix product shape mismatch");
    ZmodMatrix out(rows_, rhs.cols_, m_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            auto v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                out.at(i, j) = addmod(out.at(i, j), mulmod(v, rhs.at(k, j), m_), m_);
            }
        }
    }
    return out;
}

DiagonalForm diagonalize(const ZmodMatrix& input)
{
    const auto m = input.modulus();
    const auto rows = input.rows(), cols = input.cols();
    Reducer red{input, ZmodMatrix::identity(rows, m), ZmodMatrix::identity(rows, m),
                ZmodMatrix::identity(cols, m), ZmodMatrix::identity(cols, m), m};
    auto& a = red.a;
    const auto n = std::min(rows, cols);
    DiagonalForm out;
    out.diag.assign(n, m);
    for (std::size_t t = 0; t < n; ++t) {
        // Pivot: the entry generating the largest ideal, first in row-major order.
        std::uint64_t best = m;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = t; i < rows && best > 1; ++i) {
            for (std::size_t j = t; j < cols; ++j) {
                auto v = a.at(i, j);
                if (v == 0) continue;
                auto g = std::gcd(v, m);
                if (g < best) {
                    best = g;
                    pi = i;
                    pj = j;
                    if (g == 1) break;
                }
            }
        }
        if (best == m) break;
        red.swap_rows(t, pi);
        red.swap_cols(t, pj);
        red.scale_row(t, mod_inverse(unit_part(a.at(t, t), m), m));
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                auto v = a.at(i, t);
                if (v == 0) continue;
                auto p = a.at(t, t);
                if (v % p != 0) {
                    std::int64_t s = 0, u = 0;
                    auto h = xgcd(static_cast<std::int64_t>(p), static_cast<std::int64_t>(v), s, u);
                    red.mix_rows(t, i, s, u, -static_cast<std::int64_t>(v) / h, static_cast<std::int64_t>(p) / h);
                    red.scale_row(t, mod_inverse(unit_part(a.at(t, t), m), m));
                    dirty = true;
                    continue;
                }
                red.add_row(i, t, (m - v / p % m) % m);
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                auto v = a.at(t, j);
                if (v == 0) continue;
                auto p = a.at(t, t);
                if (v % p != 0) {
                    std::int64_t s = 0, u = 0;
                    auto h = xgcd(static_cast<std::int64_t>(p), static_cast<std::int64_t>(v), s, u);
                    red.mix_cols(t, j, s, u, -static_cast<std::int64_t>(v) / h, static_cast<std::int64_t>(p) / h);
                    red.scale_row(t, mod_inverse(unit_part(a.at(t, t), m), m));
                    dirty = true;
                    continue;
                }
                red.add_col(j, t, (m - v / p % m) % m);
            }
        }
        out.diag[t] = a.at(t, t);
    }
    out.L = std::move(red.L);
    out.Linv = std::move(red.Linv);
    out.R = std::move(red.R);
    out.Rinv = std::move(red.Rinv);
    return out;
}

LinearSolve solve(const DiagonalForm& form, const std::vector<std::uint64_t>& b)
{
    const auto m = form.L.modulus();
    auto r = form.L.apply(b);
    const auto ncols = form.R.rows();
    std::vector<std::uint64_t> y(ncols, 0);
    LinearSolve out;
    for (std::size_t k = 0; k < r.size(); ++k) {
        std::uint64_t g = k < form.diag.size() ? form.diag[k] : m;
        if (r[k] % g != 0) {
            // (m/g) L_k annihilates M and pairs nontrivially with b.
            out.certificate.resize(r.size());
            for (std::size_t j = 0; j < r.size(); ++j) out.certificate[j] = mulmod(m / g % m, form.L.at(k, j), m);
            return out;
        }
        if (k < ncols && g != m) y[k] = r[k] / g;
    }
    out.solution = form.R.apply(y);
    return out;
}

}  // namespace cosys
