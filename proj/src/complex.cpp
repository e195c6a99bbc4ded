#include "cosys/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "cosys/errors.hpp"

namespace cosys {

namespace {

std::string format_labels(const std::vector<Label>& v)
{
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "}";
}

bool is_subset(const std::vector<Label>& small, const std::vector<Label>& big)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::uint64_t factorial(int n)
{
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

SimplicialComplex SimplicialComplex::build(const std::vector<std::vector<Label>>& maximal)
{
    if (maximal.empty()) throw InputError("complex needs at least one simplex");
    std::vector<std::vector<Label>> input;
    std::set<std::vector<Label>> seen;
    for (auto s : maximal) {
        if (s.empty()) throw InputError("empty simplex in input");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw InputError("repeated vertex in simplex " + format_labels(s));
        }
        if (s.front() < 0) throw InputError("negative vertex label in " + format_labels(s));
        if (!seen.insert(s).second) throw InputError("duplicate maximal simplex " + format_labels(s));
        input.push_back(std::move(s));
    }
    std::size_t top = 0;
    for (const auto& s : input) top = std::max(top, s.size());
    std::vector<std::vector<Label>> tops;
    for (const auto& s : input) {
        if (s.size() == top) tops.push_back(s);
    }
    for (const auto& s : input) {
        if (s.size() == top) continue;
        bool covered = std::any_of(tops.begin(), tops.end(), [&](const auto& t) { return is_subset(s, t); });
        if (!covered) {
            throw PurityError("complex is not pure: " + format_labels(s) + " lies in no " +
                              std::to_string(top - 1) + "-simplex");
        }
    }
    if (top > 24) throw CapacityError("simplex dimension too large to enumerate faces");

    SimplicialComplex x;
    std::set<Label> vertex_set;
    for (const auto& t : tops) vertex_set.insert(t.begin(), t.end());
    x.labels_.assign(vertex_set.begin(), vertex_set.end());

    int d = static_cast<int>(top) - 1;
    std::vector<std::set<std::vector<std::uint32_t>>> faces(d + 1);
    for (const auto& t : tops) {
        std::vector<std::uint32_t> idx(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            idx[i] = static_cast<std::uint32_t>(std::lower_bound(x.labels_.begin(), x.labels_.end(), t[i]) - x.labels_.begin());
        }
        for (std::uint32_t mask = 1; mask < (1u << top); ++mask) {
            std::vector<std::uint32_t> f;
            for (std::size_t i = 0; i < top; ++i) {
                if (mask & (1u << i)) f.push_back(idx[i]);
            }
            faces[f.size() - 1].insert(std::move(f));
        }
    }

    x.simplices_.resize(d + 1);
    x.index_.resize(d + 1);
    for (int k = 0; k <= d; ++k) {
        std::uint32_t i = 0;
        for (const auto& f : faces[k]) {
            x.simplices_[k].insert(x.simplices_[k].end(), f.begin(), f.end());
            x.index_[k].emplace(f, i++);
        }
    }

    x.facets_.resize(d + 1);
    x.coface_start_.resize(d + 1);
    x.coface_list_.resize(d + 1);
    for (int k = 1; k <= d; ++k) {
        auto n = x.count(k);
        x.facets_[k].resize(n * (k + 1));
        std::vector<std::vector<std::uint32_t>> co(x.count(k - 1));
        for (std::uint32_t s = 0; s < n; ++s) {
            auto v = x.simplex(k, s);
            for (int j = 0; j <= k; ++j) {
                std::vector<std::uint32_t> f;
                for (int i = 0; i <= k; ++i) {
                    if (i != j) f.push_back(v[i]);
                }
                auto fi = x.index_[k - 1].at(f);
                x.facets_[k][std::size_t{s} * (k + 1) + j] = fi;
                co[fi].push_back(s);
            }
        }
        auto& start = x.coface_start_[k - 1];
        auto& list = x.coface_list_[k - 1];
        start.assign(1, 0);
        for (auto& c : co) {
            list.insert(list.end(), c.begin(), c.end());
            start.push_back(static_cast<std::uint32_t>(list.size()));
        }
    }
    x.coface_start_[d].assign(x.count(d) + 1, 0);

    x.top_count_.resize(d + 1);
    x.top_count_[d].assign(x.count(d), 1);
    for (int k = d - 1; k >= 0; --k) {
        // Each top simplex through s is reached from (d - k) of its (k+1)-faces.
        x.top_count_[k].assign(x.count(k), 0);
        for (std::uint32_t s = 0; s < x.count(k); ++s) {
            std::uint64_t sum = 0;
            for (auto t : x.cofaces(k, s)) sum += x.top_count_[k + 1][t];
            x.top_count_[k][s] = sum / static_cast<std::uint64_t>(d - k);
        }
    }
    return x;
}

std::size_t SimplicialComplex::count(int k) const
{
    if (k < 0 || k > dimension()) return 0;
    return simplices_[k].size() / static_cast<std::size_t>(k + 1);
}

std::vector<Label> SimplicialComplex::labels(int k, std::uint32_t s) const
{
    std::vector<Label> out;
    for (auto v : simplex(k, s)) out.push_back(labels_[v]);
    return out;
}

std::optional<std::uint32_t> SimplicialComplex::find(std::span<const std::uint32_t> vertices) const
{
    int k = static_cast<int>(vertices.size()) - 1;
    if (k < 0 || k > dimension()) return std::nullopt;
    auto it = index_[k].find(std::vector<std::uint32_t>(vertices.begin(), vertices.end()));
    if (it == index_[k].end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> SimplicialComplex::find_labels(std::vector<Label> labels) const
{
    std::sort(labels.begin(), labels.end());
    std::vector<std::uint32_t> idx;
    for (auto l : labels) {
        auto v = vertex_of(l);
        if (!v) return std::nullopt;
        idx.push_back(*v);
    }
    return find(idx);
}

std::optional<std::uint32_t> SimplicialComplex::vertex_of(Label label) const
{
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<std::uint32_t>(it - labels_.begin());
}

std::span<const std::uint32_t> SimplicialComplex::cofaces(int k, std::uint32_t s) const
{
    if (k >= dimension()) return {};
    const auto& start = coface_start_[k];
    return {coface_list_[k].data() + start[s], static_cast<std::size_t>(start[s + 1] - start[s])};
}

std::int64_t SimplicialComplex::euler_characteristic() const
{
    std::int64_t chi = 0;
    for (int k = 0; k <= dimension(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<std::int64_t>(count(k));
    return chi;
}

std::vector<std::uint32_t> SimplicialComplex::vertex_components() const
{
    std::vector<std::uint32_t> parent(num_vertices());
    std::iota(parent.begin(), parent.end(), 0u);
    auto root = [&](std::uint32_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::uint32_t e = 0; e < count(1); ++e) {
        auto a = root(simplex(1, e)[0]), b = root(simplex(1, e)[1]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::uint32_t> comp(num_vertices());
    std::map<std::uint32_t, std::uint32_t> ids;
    for (std::uint32_t v = 0; v < num_vertices(); ++v) {
        auto r = root(v);
        auto [it, inserted] = ids.emplace(r, static_cast<std::uint32_t>(ids.size()));
        comp[v] = it->second;
    }
    return comp;
}

std::size_t SimplicialComplex::num_components() const
{
    auto comp = vertex_components();
    return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

SimplicialComplex SimplicialComplex::link(const std::vector<Label>& sigma) const
{
    if (sigma.empty()) return *this;
    auto s = find_labels(sigma);
    if (!s) throw InputError("link: " + format_labels(sigma) + " is not a simplex");
    int k = static_cast<int>(sigma.size()) - 1;
    if (k == dimension()) throw StructureError("link of a top-dimensional simplex is empty");
    auto sig = simplex(k, *s);
    std::vector<std::vector<Label>> out;
    for (std::uint32_t t = 0; t < count(dimension()); ++t) {
        auto tv = simplex(dimension(), t);
        if (!std::includes(tv.begin(), tv.end(), sig.begin(), sig.end())) continue;
        std::vector<Label> rest;
        for (auto v : tv) {
            if (!std::binary_search(sig.begin(), sig.end(), v)) rest.push_back(labels_[v]);
        }
        out.push_back(std::move(rest));
    }
    return build(out);
}

SimplicialComplex SimplicialComplex::skeleton(int k) const
{
    if (k < 0 || k > dimension()) throw InputError("skeleton dimension " + std::to_string(k) + " out of range");
    std::vector<std::vector<Label>> out;
    for (std::uint32_t s = 0; s < count(k); ++s) out.push_back(labels(k, s));
    return build(out);
}

std::vector<std::vector<Label>> SimplicialComplex::maximal_simplices() const
{
    std::vector<std::vector<Label>> out;
    for (std::uint32_t s = 0; s < count(dimension()); ++s) out.push_back(labels(dimension(), s));
    return out;
}

SimplicialComplex SimplicialComplex::parse(std::string_view text, const std::string& source)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::vector<Label>> maximal;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<Label> s;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            long long v = -1;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || v < 0) throw ParseError(source, lineno, "expected a non-negative vertex, got '" + tok + "'");
            s.push_back(v);
        }
        if (!s.empty()) maximal.push_back(std::move(s));
    }
    if (maximal.empty()) throw ParseError(source, lineno, "no simplices");
    try {
        return build(maximal);
    } catch (const InputError& e) {
        throw InputError(source + ": " + e.what());
    }
}

std::string SimplicialComplex::serialize() const
{
    std::string out;
    for (const auto& s : maximal_simplices()) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(s[i]);
        }
        out += '\n';
    }
    return out;
}

std::string SimplicialComplex::simplex_to_string(int k, std::uint32_t s) const
{
    std::string out;
    for (auto l : labels(k, s)) {
        if (!out.empty()) out += ' ';
        out += std::to_string(l);
    }
    return out;
}

Rational weight_mu(const SimplicialComplex& x, int k, std::uint32_t s)
{
    if (k < 0 || k > x.dimension() || s >= x.count(k)) throw InputError("weight_mu: no such simplex");
    int d = x.dimension();
    return make_rational(static_cast<std::int64_t>(x.top_cofaces(k, s)),
                         static_cast<std::int64_t>(binomial(d + 1, k + 1) * x.count(d)));
}

Rational weight_m(const SimplicialComplex& x, int k, std::uint32_t s)
{
    if (k < 0 || k > x.dimension() || s >= x.count(k)) throw InputError("weight_m: no such simplex");
    return Rational(static_cast<long>(factorial(x.dimension() - k) * x.top_cofaces(k, s)));
}

WeightScheme::WeightScheme(WeightKind kind, std::vector<std::vector<Rational>> raw) : kind_(kind)
{
    for (std::size_t k = 0; k < raw.size(); ++k) {
        Rational total = 0;
        for (const auto& w : raw[k]) {
            if (w <= 0) throw InputError("simplex weights must be positive (degree " + std::to_string(k) + ")");
            total += w;
        }
        for (auto& w : raw[k]) w /= total;
        integer_.push_back(to_integer_weights(raw[k]));
    }
    values_ = std::move(raw);
}

WeightScheme WeightScheme::mu(const SimplicialComplex& x)
{
    std::vector<std::vector<Rational>> raw(x.dimension() + 1);
    for (int k = 0; k <= x.dimension(); ++k) {
        for (std::uint32_t s = 0; s < x.count(k); ++s) raw[k].push_back(weight_mu(x, k, s));
    }
    return WeightScheme(WeightKind::mu, std::move(raw));
}

WeightScheme WeightScheme::m(const SimplicialComplex& x)
{
    std::vector<std::vector<Rational>> raw(x.dimension() + 1);
    for (int k = 0; k <= x.dimension(); ++k) {
        for (std::uint32_t s = 0; s < x.count(k); ++s) raw[k].push_back(weight_m(x, k, s));
    }
    return WeightScheme(WeightKind::m, std::move(raw));
}

WeightScheme WeightScheme::custom(const SimplicialComplex& x, std::vector<std::vector<Rational>> raw)
{
    if (raw.size() != static_cast<std::size_t>(x.dimension() + 1)) throw ShapeError("custom weights: wrong number of degrees");
    for (int k = 0; k <= x.dimension(); ++k) {
        if (raw[k].size() != x.count(k)) throw ShapeError("custom weights: wrong count in degree " + std::to_string(k));
    }
    return WeightScheme(WeightKind::custom, std::move(raw));
}

WeightScheme WeightScheme::parse_custom(const SimplicialComplex& x, std::string_view text, const std::string& source)
{
    std::vector<std::vector<std::optional<Rational>>> given(x.dimension() + 1);
    for (int k = 0; k <= x.dimension(); ++k) given[k].resize(x.count(k));
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError(source, lineno, "expected 'vertices : weight'");
        std::istringstream ls(line.substr(0, colon));
        std::vector<Label> verts;
        Label v;
        while (ls >> v) verts.push_back(v);
        auto s = x.find_labels(verts);
        if (!s) throw ParseError(source, lineno, "not a simplex of the complex");
        std::istringstream ws(line.substr(colon + 1));
        std::string tok;
        ws >> tok;
        try {
            given[verts.size() - 1][*s] = parse_rational(tok);
        } catch (const InputError& e) {
            throw ParseError(source, lineno, e.what());
        }
    }
    std::vector<std::vector<Rational>> raw(x.dimension() + 1);
    for (int k = 0; k <= x.dimension(); ++k) {
        for (std::uint32_t s = 0; s < x.count(k); ++s) {
            if (!given[k][s]) throw InputError(source + ": missing weight for simplex " + x.simplex_to_string(k, s));
            raw[k].push_back(*given[k][s]);
        }
    }
    return custom(x, std::move(raw));
}

WeightScheme WeightScheme::by_name(const SimplicialComplex& x, std::string_view name)
{
    if (name == "mu") return mu(x);
    if (name == "m") return m(x);
    throw InputError("unknown weight scheme '" + std::string(name) + "' (expected mu or m)");
}

std::string WeightScheme::name() const
{
    switch (kind_) {
    case WeightKind::mu: return "mu";
    case WeightKind::m: return "m";
    case WeightKind::custom: return "custom";
    }
    return "?";
}

}  // namespace cosys
