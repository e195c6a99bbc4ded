#include "cosys/permutation.hpp"

#include <numeric>
#include <sstream>

#include "cosys/errors.hpp"

namespace cosys {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images))
{
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
        if (x >= images_.size() || seen[x]) throw InputError("not a permutation: " + to_string());
        seen[x] = true;
    }
}

Permutation Permutation::identity(std::size_t n)
{
    std::vector<std::uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0u);
    return Permutation(std::move(v));
}

Permutation Permutation::cycle(std::size_t n)
{
    std::vector<std::uint32_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint32_t>((i + 1) % n);
    return Permutation(std::move(v));
}

Permutation Permutation::transposition(std::size_t n, std::uint32_t a, std::uint32_t b)
{
    auto p = identity(n);
    if (a >= n || b >= n) throw InputError("transposition out of range");
    std::swap(p.images_[a], p.images_[b]);
    return p;
}

Permutation Permutation::parse(std::string_view one_line)
{
    std::istringstream in{std::string(one_line)};
    std::vector<std::uint32_t> v;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw InputError("malformed permutation entry '" + tok + "'");
        }
        if (used != tok.size() || x < 1) throw InputError("malformed permutation entry '" + tok + "'");
        v.push_back(static_cast<std::uint32_t>(x - 1));
    }
    return Permutation(std::move(v));
}

bool Permutation::is_identity() const
{
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != i) return false;
    }
    return true;
}

Permutation Permutation::inverse() const
{
    std::vector<std::uint32_t> v(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) v[images_[i]] = static_cast<std::uint32_t>(i);
    Permutation p;
    p.images_ = std::move(v);
    return p;
}

std::size_t Permutation::fixed_points() const
{
    std::size_t c = 0;
    for (std::size_t i = 0; i < images_.size(); ++i) c += images_[i] == i;
    return c;
}

std::size_t Permutation::order() const
{
    std::vector<bool> seen(images_.size(), false);
    std::size_t ord = 1;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

std::string Permutation::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(images_[i] + 1);
    }
    return out;
}

Permutation operator*(const Permutation& lhs, const Permutation& rhs)
{
    if (lhs.size() != rhs.size()) throw ShapeError("composing permutations of different degree");
    std::vector<std::uint32_t> v(lhs.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = lhs(rhs(static_cast<std::uint32_t>(i)));
    return Permutation(std::move(v));
}

Permutation power(const Permutation& p, std::int64_t k)
{
    Permutation base = k < 0 ? p.inverse() : p;
    auto e = static_cast<std::uint64_t>(k < 0 ? -k : k);
    Permutation out = Permutation::identity(p.size());
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

Rational hamming_length(const Permutation& p)
{
    if (p.size() == 0) return 0;
    return make_rational(static_cast<std::int64_t>(p.size() - p.fixed_points()),
                         static_cast<std::int64_t>(p.size()));
}

Rational hamming_distance(const Permutation& s, const Permutation& t)
{
    return hamming_length(s * t.inverse());
}

bool is_transitive(std::size_t n, const std::vector<Permutation>& gens)
{
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            for (auto y : {g(x), g.inverse()(x)}) {
                if (!seen[y]) {
                    seen[y] = true;
                    ++count;
                    stack.push_back(y);
                }
            }
        }
    }
    return count == n;
}

}  // namespace cosys
