#include "cosys/abelian.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "cosys/errors.hpp"

namespace cosys {

namespace {

std::string strip(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

std::uint32_t residue(std::int64_t v, std::uint32_t m)
{
    std::int64_t r = v % static_cast<std::int64_t>(m);
    if (r < 0) r += m;
    return static_cast<std::uint32_t>(r);
}

std::uint64_t parse_unsigned(const std::string& s, std::string_view context)
{
    if (s.empty()) throw InputError("expected a number in '" + std::string(context) + "'");
    std::uint64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw InputError("expected a number in '" + std::string(context) + "'");
        }
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
        if (v > std::numeric_limits<std::uint32_t>::max()) {
            throw InputError("number out of range in '" + std::string(context) + "'");
        }
    }
    return v;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::uint32_t> factors)
    : factors_(std::move(factors))
{
    for (auto m : factors_) {
        if (m < 2) throw InputError("cyclic factor orders must be >= 2");
        if (order_ > std::numeric_limits<std::uint32_t>::max() / m) {
            throw CapacityError("group order exceeds 32-bit index range");
        }
        order_ *= m;
    }
}

AElement FiniteAbelianGroup::zero() const
{
    return AElement{std::vector<std::uint32_t>(factors_.size(), 0)};
}

bool FiniteAbelianGroup::contains(const AElement& x) const
{
    if (x.coords.size() != factors_.size()) return false;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (x.coords[j] >= factors_[j]) return false;
    }
    return true;
}

bool FiniteAbelianGroup::is_zero(const AElement& x) const
{
    check_shape(x);
    for (auto c : x.coords) {
        if (c != 0) return false;
    }
    return true;
}

void FiniteAbelianGroup::check_shape(const AElement& x) const
{
    if (!contains(x)) {
        throw ShapeError("element " + format_unchecked(x) + " does not belong to " + to_string());
    }
}

AElement FiniteAbelianGroup::add(const AElement& x, const AElement& y) const
{
    check_shape(x);
    check_shape(y);
    AElement out = x;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        out.coords[j] = static_cast<std::uint32_t>((std::uint64_t{x.coords[j]} + y.coords[j]) % factors_[j]);
    }
    return out;
}

AElement FiniteAbelianGroup::neg(const AElement& x) const
{
    return scale(-1, x);
}

AElement FiniteAbelianGroup::scale(std::int64_t n, const AElement& x) const
{
    check_shape(x);
    AElement out = x;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        std::uint32_t m = factors_[j];
        std::uint64_t k = residue(n, m);
        out.coords[j] = static_cast<std::uint32_t>((k * x.coords[j]) % m);
    }
    return out;
}

std::vector<AElement> FiniteAbelianGroup::enumerate(std::uint64_t bound) const
{
    if (order_ > bound) {
        throw CapacityError("group order " + std::to_string(order_) + " exceeds enumeration bound " +
                            std::to_string(bound));
    }
    std::vector<AElement> out;
    out.reserve(order_);
    for (std::uint32_t i = 0; i < order_; ++i) out.push_back(element(i));
    return out;
}

std::uint32_t FiniteAbelianGroup::index_of(const AElement& x) const
{
    check_shape(x);
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) idx = idx * factors_[j] + x.coords[j];
    return static_cast<std::uint32_t>(idx);
}

AElement FiniteAbelianGroup::element(std::uint32_t index) const
{
    if (index >= order_) throw ShapeError("element index out of range");
    AElement out = zero();
    for (std::size_t j = factors_.size(); j-- > 0;) {
        out.coords[j] = index % factors_[j];
        index /= factors_[j];
    }
    return out;
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view text)
{
    std::string s = strip(text);
    if (s == "0" || s == "1" || s == "trivial") return FiniteAbelianGroup();
    std::vector<std::uint32_t> factors;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find('x', pos);
        std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (part.size() < 3 || part[0] != 'Z' || part[1] != '/') {
            throw InputError("malformed group '" + std::string(text) + "' (expected e.g. Z/2 x Z/3)");
        }
        auto m = parse_unsigned(part.substr(2), text);
        if (m < 2) throw InputError("cyclic factor orders must be >= 2 in '" + std::string(text) + "'");
        factors.push_back(static_cast<std::uint32_t>(m));
        if (next == std::string::npos) break;
        pos = next + 1;
        if (pos == s.size()) throw InputError("trailing separator in '" + std::string(text) + "'");
    }
    if (factors.empty()) throw InputError("empty group description");
    return FiniteAbelianGroup(std::move(factors));
}

std::string FiniteAbelianGroup::to_string() const
{
    if (factors_.empty()) return "trivial";
    std::string out;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (j) out += " x ";
        out += "Z/" + std::to_string(factors_[j]);
    }
    return out;
}

AElement FiniteAbelianGroup::parse_element(std::string_view text) const
{
    std::string s = strip(text);
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') throw InputError("unbalanced parentheses in element '" + s + "'");
        s = s.substr(1, s.size() - 2);
    } else if (factors_.size() != 1 && !s.empty()) {
        throw InputError("element '" + s + "' must be a parenthesized tuple for " + to_string());
    }
    std::vector<std::int64_t> raw;
    if (!s.empty()) {
        std::size_t pos = 0;
        while (true) {
            std::size_t next = s.find(',', pos);
            std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            bool negative = !part.empty() && part[0] == '-';
            auto v = static_cast<std::int64_t>(parse_unsigned(negative ? part.substr(1) : part, text));
            raw.push_back(negative ? -v : v);
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    }
    if (raw.size() != factors_.size()) {
        throw ShapeError("element '" + std::string(text) + "' has " + std::to_string(raw.size()) +
                         " coordinates, expected " + std::to_string(factors_.size()));
    }
    AElement out = zero();
    for (std::size_t j = 0; j < factors_.size(); ++j) out.coords[j] = residue(raw[j], factors_[j]);
    return out;
}

std::string FiniteAbelianGroup::format(const AElement& x) const
{
    check_shape(x);
    return format_unchecked(x);
}

std::string FiniteAbelianGroup::format_unchecked(const AElement& x)
{
    std::string out = "(";
    for (std::size_t j = 0; j < x.coords.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(x.coords[j]);
    }
    return out + ")";
}

GroupTables::GroupTables(const FiniteAbelianGroup& g)
    : group_(g), order_(static_cast<std::uint32_t>(g.order())), tabulated_(g.order() <= kTableLimit)
{
    if (!tabulated_) return;
    add_.resize(std::size_t{order_} * order_);
    neg_.resize(order_);
    for (std::uint32_t x = 0; x < order_; ++x) {
        neg_[x] = neg_slow(x);
        for (std::uint32_t y = 0; y < order_; ++y) add_[x * order_ + y] = add_slow(x, y);
    }
}

std::uint32_t GroupTables::add_slow(std::uint32_t x, std::uint32_t y) const
{
    // Mixed-radix digitwise addition, least significant factor last.
    const auto& f = group_.factors();
    std::uint32_t out = 0, mult = 1;
    for (std::size_t j = f.size(); j-- > 0;) {
        std::uint32_t a = x % f[j], b = y % f[j];
        x /= f[j];
        y /= f[j];
        out += ((a + b) % f[j]) * mult;
        mult *= f[j];
    }
    return out;
}

std::uint32_t GroupTables::neg_slow(std::uint32_t x) const
{
    const auto& f = group_.factors();
    std::uint32_t out = 0, mult = 1;
    for (std::size_t j = f.size(); j-- > 0;) {
        std::uint32_t a = x % f[j];
        x /= f[j];
        out += ((f[j] - a) % f[j]) * mult;
        mult *= f[j];
    }
    return out;
}

std::uint32_t GroupTables::scale(std::int64_t n, std::uint32_t x) const
{
    if (n == 1) return x;
    if (n == -1) return neg(x);
    if (n == 0) return 0;
    const auto& f = group_.factors();
    std::uint32_t out = 0, mult = 1;
    for (std::size_t j = f.size(); j-- > 0;) {
        std::uint64_t a = x % f[j];
        x /= f[j];
        out += static_cast<std::uint32_t>((residue(n, f[j]) * a) % f[j]) * mult;
        mult *= f[j];
    }
    return out;
}

}  // namespace cosys
