#include "cosys/covers.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "cosys/errors.hpp"

namespace cosys {

namespace {

LocalSystem checked_local(const SimplicialComplex& x, const std::vector<std::uint32_t>& tree,
                          std::vector<Permutation> labels)
{
    for (auto e : tree) {
        if (e >= x.count(1)) throw LabelingError("tree edge index out of range");
        if (!labels.at(e).is_identity()) {
            throw LabelingError("tree edge " + x.simplex_to_string(1, e) + " carries a non-identity label");
        }
    }
    if (!tree.empty()) {
        // A spanning forest: acyclic, one fewer edge than vertices per component.
        std::vector<std::uint32_t> parent(x.num_vertices());
        std::iota(parent.begin(), parent.end(), 0u);
        auto find = [&](std::uint32_t v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (auto e : tree) {
            auto s = x.simplex(1, e);
            auto a = find(s[0]), b = find(s[1]);
            if (a == b) throw LabelingError("tree edges contain a cycle through " + x.simplex_to_string(1, e));
            parent[std::max(a, b)] = std::min(a, b);
        }
        if (tree.size() + x.num_components() != x.num_vertices()) throw LabelingError("tree does not span the 1-skeleton");
    }
    return LocalSystem(x, std::move(labels));
}

}  // namespace

EdgeLabeling::EdgeLabeling(const SimplicialComplex& x, std::vector<std::uint32_t> tree_edges,
                           std::vector<Permutation> labels)
    : tree_(std::move(tree_edges)), local_(checked_local(x, tree_, std::move(labels)))
{
    std::sort(tree_.begin(), tree_.end());
}

EdgeLabeling EdgeLabeling::trivial(const SimplicialComplex& x, std::size_t fiber)
{
    return EdgeLabeling(x, {}, std::vector<Permutation>(x.count(1), Permutation::identity(fiber)));
}

bool EdgeLabeling::transitive() const
{
    return is_transitive(fiber(), local_.labels());
}

EdgeLabeling EdgeLabeling::parse(const SimplicialComplex& x, std::string_view text, const std::string& source)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> fiber;
    std::vector<std::uint32_t> tree;
    std::map<std::uint32_t, Permutation> given;
    auto edge_of = [&](Label u, Label v) {
        auto e = x.find_labels({std::min(u, v), std::max(u, v)});
        if (u == v || !e) throw ParseError(source, lineno, "no edge " + std::to_string(u) + " " + std::to_string(v));
        return *e;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "fiber") {
            std::size_t n = 0;
            if (!(ls >> n) || n == 0) throw ParseError(source, lineno, "fiber needs a positive size");
            fiber = n;
        } else if (key == "tree") {
            Label u = 0, v = 0;
            if (!(ls >> u >> v)) throw ParseError(source, lineno, "tree needs two vertices");
            tree.push_back(edge_of(u, v));
        } else if (key == "label") {
            Label u = 0, v = 0;
            std::string colon;
            if (!(ls >> u >> v >> colon) || colon != ":") throw ParseError(source, lineno, "expected 'label u v : permutation'");
            std::string rest;
            std::getline(ls, rest);
            Permutation p;
            try {
                p = Permutation::parse(rest);
            } catch (const InputError& e) {
                throw ParseError(source, lineno, e.what());
            }
            if (u > v) p = p.inverse();
            auto e = edge_of(u, v);
            if (given.count(e)) throw ParseError(source, lineno, "edge labelled twice");
            given.emplace(e, std::move(p));
        } else {
            throw ParseError(source, lineno, "unknown keyword '" + key + "'");
        }
        std::string extra;
        if (key != "label" && ls >> extra) throw ParseError(source, lineno, "trailing input '" + extra + "'");
    }
    std::size_t n = fiber.value_or(given.empty() ? 1 : given.begin()->second.size());
    std::vector<Permutation> labels(x.count(1), Permutation::identity(n));
    for (auto& [e, p] : given) {
        if (p.size() != n) throw ParseError(source, lineno, "label on " + x.simplex_to_string(1, e) + " has wrong degree");
        labels[e] = p;
    }
    try {
        return EdgeLabeling(x, std::move(tree), std::move(labels));
    } catch (const LabelingError& e) {
        throw LabelingError(source + ": " + e.what());
    }
}

std::string EdgeLabeling::serialize(const SimplicialComplex& x) const
{
    std::string out = "fiber " + std::to_string(fiber()) + "\n";
    for (auto e : tree_) {
        auto l = x.labels(1, e);
        out += "tree " + std::to_string(l[0]) + " " + std::to_string(l[1]) + "\n";
    }
    for (std::uint32_t e = 0; e < x.count(1); ++e) {
        if (label(e).is_identity()) continue;
        auto l = x.labels(1, e);
        out += "label " + std::to_string(l[0]) + " " + std::to_string(l[1]) + " : " + label(e).to_string() + "\n";
    }
    return out;
}

EdgeLabeling torus_labeling(const Torus7& t, const Permutation& pa, const Permutation& pb)
{
    if (pa.size() != pb.size()) throw LabelingError("generator images act on different fibers");
    if (pa * pb != pb * pa) throw LabelingError("generator images of Z^2 must commute");
    std::vector<Permutation> labels;
    for (const auto& h : t.holonomy) labels.push_back(power(pa, h[0]) * power(pb, h[1]));
    return EdgeLabeling(t.complex, t.tree_edges, std::move(labels));
}

EdgeLabeling cycle_labeling(const SimplicialComplex& cycle, const Permutation& p)
{
    const auto n = cycle.num_vertices();
    if (cycle.dimension() != 1 || cycle.count(1) != n) throw ShapeError("cycle_labeling needs a cycle graph");
    std::vector<std::uint32_t> tree;
    std::vector<Permutation> labels(cycle.count(1), Permutation::identity(p.size()));
    const auto& v = cycle.vertex_labels();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        auto e = cycle.find_labels({v[i], v[i + 1]});
        if (!e) throw ShapeError("cycle_labeling needs consecutive labels joined by edges");
        tree.push_back(*e);
    }
    auto closing = cycle.find_labels({v.front(), v.back()});
    if (!closing) throw ShapeError("cycle_labeling needs a closing edge");
    labels[*closing] = p;
    return EdgeLabeling(cycle, std::move(tree), std::move(labels));
}

CoveringComplex build_cover(const SimplicialComplex& x, const EdgeLabeling& labeling)
{
    const auto F = labeling.fiber();
    const auto& vl = x.vertex_labels();
    const int d = x.dimension();
    auto lifted = [&](int k, std::uint32_t s, std::uint32_t f) {
        auto verts = x.simplex(k, s);
        std::vector<Label> out;
        for (int j = 0; j <= k; ++j) {
            std::uint32_t sheet = f;
            if (j > 0) sheet = labeling.label(*x.find(std::array<std::uint32_t, 2>{verts[0], verts[j]}))(f);
            out.push_back(vl[verts[j]] * static_cast<Label>(F) + sheet);
        }
        return out;
    };
    std::vector<std::vector<Label>> tops;
    for (std::uint32_t s = 0; s < x.count(d); ++s) {
        for (std::uint32_t f = 0; f < F; ++f) tops.push_back(lifted(d, s, f));
    }
    CoveringComplex y;
    y.fiber = F;
    y.total = SimplicialComplex::build(tops);
    y.base_simplex.resize(d + 1);
    y.sheet.resize(d + 1);
    for (int k = 0; k <= d; ++k) {
        if (y.total.count(k) != x.count(k) * F) throw StructureError("cover is not |F|-to-1 in degree " + std::to_string(k));
        y.base_simplex[k].assign(y.total.count(k), 0);
        y.sheet[k].assign(y.total.count(k), 0);
        std::vector<bool> hit(y.total.count(k), false);
        for (std::uint32_t s = 0; s < x.count(k); ++s) {
            for (std::uint32_t f = 0; f < F; ++f) {
                auto idx = y.total.find_labels(lifted(k, s, f));
                if (!idx || hit[*idx]) throw StructureError("cover lift collides in degree " + std::to_string(k));
                hit[*idx] = true;
                y.base_simplex[k][*idx] = s;
                y.sheet[k][*idx] = f;
            }
        }
    }
    // Covering map check: faces of a lift project to faces of its image.
    for (int k = 1; k <= d; ++k) {
        for (std::uint32_t t = 0; t < y.total.count(k); ++t) {
            for (int j = 0; j <= k; ++j) {
                if (y.base_simplex[k - 1][y.total.facet(k, t, j)] != x.facet(k, y.base_simplex[k][t], j)) {
                    throw StructureError("projection is not simplicial at " + y.total.simplex_to_string(k, t));
                }
            }
        }
    }
    return y;
}

WeightScheme fiber_measure(const CoveringComplex& y, const WeightScheme& base)
{
    std::vector<std::vector<Rational>> raw(y.base_simplex.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
        for (auto s : y.base_simplex[k]) raw[k].push_back(base.value(static_cast<int>(k), s) / static_cast<long>(y.fiber));
    }
    return WeightScheme::custom(y.total, std::move(raw));
}

Cochain pull_back(const Cochain& c, const CoveringComplex& y, SpacePtr cover_space)
{
    if (c.space->has_algebra()) throw InputError("pull_back needs plain A-coefficients");
    Cochain out = Cochain::zero(cover_space, c.degree);
    for (std::uint32_t s = 0; s < out.values.size(); ++s) out.values[s] = c.values[y.base_simplex[c.degree][s]];
    return out;
}

namespace {

void require_cocycle(const Cochain& c)
{
    if (c.space->has_algebra()) throw InputError("expected a cochain with plain A-coefficients");
    if (c.degree < c.space->dimension() && !coboundary(c).is_zero()) throw InputError("cochain is not a cocycle");
}

SpacePtr twisted_space(const Cochain& c, const EdgeLabeling& labeling)
{
    const auto& x = c.space->complex();
    return make_space(x, c.space->group(), c.space->scheme(), MeasuredBoolean::uniform(labeling.fiber()),
                      labeling.local());
}

}  // namespace

Cochain pushforward_theta(const Cochain& c, const EdgeLabeling& labeling)
{
    require_cocycle(c);
    auto space = twisted_space(c, labeling);
    Cochain out = Cochain::zero(space, c.degree);
    for (std::uint32_t s = 0; s < c.values.size(); ++s) {
        for (std::uint32_t f = 0; f < labeling.fiber(); ++f) out.values[space->cell(s, f)] = c.values[s];
    }
    return out;
}

ShapiroResult shapiro_check(const Cochain& c, const EdgeLabeling& labeling, const SearchOptions& opt)
{
    require_cocycle(c);
    ShapiroResult out;
    out.downstairs = cosystolic_norm(pushforward_theta(c, labeling), opt);
    auto y = build_cover(c.space->complex(), labeling);
    out.cover_vertices = y.total.num_vertices();
    auto ys = make_space(y.total, c.space->group(), fiber_measure(y, c.space->scheme()));
    out.upstairs = cosystolic_norm(pull_back(c, y, ys), opt);
    out.equal = out.downstairs.value == out.upstairs.value;
    return out;
}

VanishingResult vanishing_test(const Cochain& c, const EdgeLabeling& labeling)
{
    require_cocycle(c);
    if (c.degree < 1) throw InputError("vanishing test needs degree >= 1");
    auto y = build_cover(c.space->complex(), labeling);
    VanishingResult out;
    out.cover_space = make_space(y.total, c.space->group(), fiber_measure(y, c.space->scheme()));
    auto lifted = pull_back(c, y, out.cover_space);
    out.witness = is_coboundary(lifted);
    out.zero = out.witness.primitive.has_value();
    out.witness_verified = out.zero ? coboundary(*out.witness.primitive) == lifted : verify_certificate(lifted, out.witness);
    return out;
}

LowerBoundReport lower_bound_report(const Cochain& c,
                                    const std::vector<std::pair<std::string, EdgeLabeling>>& labelings,
                                    const SearchOptions& opt)
{
    require_cocycle(c);
    LowerBoundReport out;
    for (const auto& [name, labeling] : labelings) {
        LowerBoundEntry e;
        e.name = name;
        e.fiber = labeling.fiber();
        try {
            e.result = cosystolic_norm(pushforward_theta(c, labeling), opt);
            if (!out.minimum || e.result->value < *out.minimum) out.minimum = e.result->value;
            out.certified = out.certified && e.result->certified;
        } catch (const CapacityError& err) {
            e.skipped = err.what();
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

std::optional<std::vector<int>> fundamental_cycle(const SimplicialComplex& x)
{
    if (x.dimension() != 2 || x.count(2) == 0) return std::nullopt;
    // Edge e of triangle t appears in dt with sign (-1)^j for j its position.
    std::vector<std::vector<std::pair<std::uint32_t, int>>> by_edge(x.count(1));
    for (std::uint32_t t = 0; t < x.count(2); ++t) {
        for (int j = 0; j < 3; ++j) by_edge[x.facet(2, t, j)].push_back({t, j % 2 ? -1 : 1});
    }
    for (const auto& inc : by_edge) {
        if (inc.size() != 2) return std::nullopt;
    }
    std::vector<int> sign(x.count(2), 0);
    sign[0] = 1;
    std::queue<std::uint32_t> q;
    q.push(0);
    while (!q.empty()) {
        auto t = q.front();
        q.pop();
        for (int j = 0; j < 3; ++j) {
            const auto& inc = by_edge[x.facet(2, t, j)];
            auto [o, os] = inc[0].first == t ? inc[1] : inc[0];
            auto ts = inc[0].first == t ? inc[0].second : inc[1].second;
            int want = -sign[t] * ts * os;
            if (sign[o] == 0) {
                sign[o] = want;
                q.push(o);
            } else if (sign[o] != want) {
                return std::nullopt;
            }
        }
    }
    for (int s : sign) {
        if (s == 0) return std::nullopt;
    }
    return sign;
}

Cochain relator_cocycle(SpacePtr space, const std::vector<std::vector<std::pair<std::uint32_t, int>>>& discs,
                        const std::vector<AElement>& values)
{
    if (discs.size() != values.size()) throw ShapeError("one value per relator disc required");
    if (space->has_algebra() || space->dimension() < 2) throw InputError("relator cocycles need plain coefficients on a 2-complex");
    Cochain c = Cochain::zero(space, 2);
    std::vector<bool> used(space->cells(2), false);
    const auto& g = space->group();
    for (std::size_t r = 0; r < discs.size(); ++r) {
        if (discs[r].empty()) throw InputError("relator disc " + std::to_string(r) + " is empty");
        for (auto [t, s] : discs[r]) {
            if (t >= used.size() || (s != 1 && s != -1)) throw InputError("malformed relator disc");
            if (used[t]) throw InputError("relator discs overlap");
            used[t] = true;
        }
        auto [t0, s0] = discs[r].front();
        c.values[t0] = g.index_of(g.scale(s0, values[r]));
    }
    if (c.degree < space->dimension() && !coboundary(c).is_zero()) {
        throw InputError("relator values do not define a cocycle on this complex");
    }
    return c;
}

}  // namespace cosys
