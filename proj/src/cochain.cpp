#include "cosys/cochain.hpp"

#include <numeric>
#include <sstream>

#include "cosys/errors.hpp"

namespace cosys {

LocalSystem::LocalSystem(const SimplicialComplex& x, std::vector<Permutation> edge_labels)
    : labels_(std::move(edge_labels))
{
    if (labels_.size() != x.count(1)) {
        throw LabelingError("local system needs one permutation per edge (" + std::to_string(x.count(1)) + ")");
    }
    fiber_ = labels_.empty() ? 1 : labels_.front().size();
    for (const auto& p : labels_) {
        if (p.size() != fiber_) throw LabelingError("edge permutations act on fibers of different sizes");
    }
    for (std::uint32_t t = 0; t < x.count(2); ++t) {
        const auto& g01 = labels_[x.facet(2, t, 2)];
        const auto& g12 = labels_[x.facet(2, t, 0)];
        const auto& g02 = labels_[x.facet(2, t, 1)];
        if (g12 * g01 != g02) {
            throw LabelingError("labeling is not flat on triangle " + x.simplex_to_string(2, t));
        }
    }
}

LocalSystem LocalSystem::trivial(const SimplicialComplex& x, std::size_t fiber)
{
    if (x.count(1) == 0) throw LabelingError("local systems need at least one edge");
    return LocalSystem(x, std::vector<Permutation>(x.count(1), Permutation::identity(fiber)));
}

bool LocalSystem::is_trivial() const
{
    for (const auto& p : labels_) {
        if (!p.is_identity()) return false;
    }
    return true;
}

CochainSpace::CochainSpace(SimplicialComplex x, FiniteAbelianGroup a, WeightScheme scheme,
                           std::optional<MeasuredBoolean> algebra, std::optional<LocalSystem> local)
    : x_(std::move(x)), a_(std::move(a)), tables_(a_), scheme_(std::move(scheme)), algebra_(std::move(algebra)),
      local_(std::move(local))
{
    if (scheme_.dimension() != x_.dimension()) throw ShapeError("weight scheme does not match the complex");
    for (int k = 0; k <= x_.dimension(); ++k) {
        if (scheme_.degree(k).size() != x_.count(k)) throw ShapeError("weight scheme does not match the complex");
    }
    if (algebra_) atoms_ = algebra_->atoms();
    if (local_) {
        if (!algebra_) throw InputError("twisted coefficients need a measured algebra on the fiber");
        if (local_->fiber() != atoms_) throw ShapeError("local system fiber differs from the atom count");
        if (local_->labels().size() != x_.count(1)) throw ShapeError("local system belongs to another complex");
        for (const auto& g : local_->labels()) {
            for (std::uint32_t f = 0; f < atoms_; ++f) {
                if (algebra_->weight(g(f)) != algebra_->weight(f)) {
                    throw LabelingError("local system does not preserve atom weights");
                }
            }
        }
    }

    for (int k = 0; k <= x_.dimension(); ++k) {
        std::vector<Rational> w;
        w.reserve(cells(k));
        for (std::uint32_t s = 0; s < x_.count(k); ++s) {
            for (std::uint32_t f = 0; f < atoms_; ++f) {
                w.push_back(algebra_ ? scheme_.value(k, s) * algebra_->weight(f) : scheme_.value(k, s));
            }
        }
        weights_.push_back(to_integer_weights(w));
    }

    for (int k = 0; k < x_.dimension(); ++k) {
        SparseRows m;
        m.rows = cells(k + 1);
        m.cols = cells(k);
        for (std::uint32_t t = 0; t < x_.count(k + 1); ++t) {
            const Permutation* g = nullptr;
            if (local_) {
                auto v = x_.simplex(k + 1, t);
                std::uint32_t e = k + 1 == 1 ? t : *x_.find(std::vector<std::uint32_t>{v[0], v[1]});
                g = &local_->edge(e);
            }
            for (std::uint32_t f = 0; f < atoms_; ++f) {
                for (int j = 0; j <= k + 1; ++j) {
                    std::uint32_t face = x_.facet(k + 1, t, j);
                    std::uint32_t atom = (j == 0 && g) ? (*g)(f) : f;
                    m.col.push_back(cell(face, atom));
                    m.coef.push_back(static_cast<std::int8_t>(j % 2 ? -1 : 1));
                }
                m.start.push_back(static_cast<std::uint32_t>(m.col.size()));
            }
        }
        delta_.push_back(std::move(m));
    }
}

std::string CochainSpace::describe() const
{
    if (!algebra_) return a_.to_string();
    std::string p = "P(" + std::to_string(atoms_) + " atoms";
    if (local_ && !local_->is_trivial()) p += ", twisted";
    return p + ") over " + a_.to_string();
}

std::vector<bool> CochainSpace::gauge_cells(int k) const
{
    std::vector<bool> gauge(cells(k), false);
    if (k > 1 || k > x_.dimension()) return gauge;
    const auto n0 = cells(0);
    std::vector<std::uint32_t> parent(n0);
    std::iota(parent.begin(), parent.end(), 0u);
    auto root = [&](std::uint32_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    const SparseRows* d0 = x_.dimension() >= 1 ? &delta_[0] : nullptr;
    for (std::uint32_t e = 0; d0 && e < d0->rows; ++e) {
        // Row e of d_0 is +head -tail.
        std::uint32_t head = d0->col[d0->start[e]];
        std::uint32_t tail = d0->col[d0->start[e] + 1];
        auto a = root(head), b = root(tail);
        if (a == b) continue;
        parent[std::max(a, b)] = std::min(a, b);
        if (k == 1) gauge[e] = true;
    }
    if (k == 0) {
        for (std::uint32_t v = 0; v < n0; ++v) gauge[v] = root(v) == v;
    }
    return gauge;
}

SpacePtr make_space(SimplicialComplex x, FiniteAbelianGroup a, WeightScheme scheme,
                    std::optional<MeasuredBoolean> algebra, std::optional<LocalSystem> local)
{
    return std::make_shared<const CochainSpace>(std::move(x), std::move(a), std::move(scheme), std::move(algebra),
                                                std::move(local));
}

Cochain Cochain::zero(SpacePtr space, int degree)
{
    if (degree < 0 || degree > space->dimension()) throw ShapeError("cochain degree out of range");
    Cochain c;
    c.values.assign(space->cells(degree), 0);
    c.space = std::move(space);
    c.degree = degree;
    return c;
}

bool Cochain::is_zero() const
{
    for (auto v : values) {
        if (v != 0) return false;
    }
    return true;
}

AElement Cochain::value(std::uint32_t cell) const
{
    return space->group().element(values.at(cell));
}

void Cochain::set(std::uint32_t cell, const AElement& v)
{
    values.at(cell) = space->group().index_of(v);
}

namespace {

void same_space(const Cochain& a, const Cochain& b)
{
    if (a.space != b.space || a.degree != b.degree) throw ShapeError("cochains live in different spaces or degrees");
}

}  // namespace

Cochain coboundary(const Cochain& c)
{
    if (c.degree >= c.space->dimension()) {
        throw ShapeError("coboundary of a degree-" + std::to_string(c.degree) + " cochain on a " +
                         std::to_string(c.space->dimension()) + "-dimensional complex");
    }
    const auto& d = c.space->delta(c.degree);
    const auto& g = c.space->tables();
    Cochain out = Cochain::zero(c.space, c.degree + 1);
    for (std::size_t r = 0; r < d.rows; ++r) {
        std::uint32_t acc = 0;
        for (auto i = d.start[r]; i < d.start[r + 1]; ++i) {
            auto v = c.values[d.col[i]];
            acc = g.add(acc, d.coef[i] > 0 ? v : g.neg(v));
        }
        out.values[r] = acc;
    }
    return out;
}

Cochain add(const Cochain& a, const Cochain& b)
{
    same_space(a, b);
    Cochain out = a;
    const auto& g = a.space->tables();
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = g.add(a.values[i], b.values[i]);
    return out;
}

Cochain negate(const Cochain& c)
{
    Cochain out = c;
    for (auto& v : out.values) v = c.space->tables().neg(v);
    return out;
}

Cochain scale(std::int64_t n, const Cochain& c)
{
    Cochain out = c;
    for (auto& v : out.values) v = c.space->tables().scale(n, v);
    return out;
}

std::int64_t norm_numerator(const Cochain& c)
{
    const auto& w = c.space->weights(c.degree);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        if (c.values[i] != 0) total += w.numerators[i];
    }
    return total;
}

Rational norm(const Cochain& c)
{
    return c.space->weights(c.degree).fraction(norm_numerator(c));
}

Rational lipschitz_constant(const CochainSpace& space, int k)
{
    if (k < 0 || k >= space.dimension()) throw ShapeError("no coboundary in degree " + std::to_string(k));
    const auto& d = space.delta(k);
    const auto& wk = space.weights(k);
    const auto& wk1 = space.weights(k + 1);
    std::vector<std::int64_t> reach(d.cols, 0);
    for (std::size_t r = 0; r < d.rows; ++r) {
        for (auto i = d.start[r]; i < d.start[r + 1]; ++i) reach[d.col[i]] += wk1.numerators[r];
    }
    Rational best = 0;
    for (std::size_t s = 0; s < d.cols; ++s) {
        Rational q = wk1.fraction(reach[s]) / wk.value(s);
        if (q > best) best = q;
    }
    return best;
}

Cochain parse_cochain(SpacePtr space, int degree, std::string_view text, const std::string& source)
{
    Cochain c = Cochain::zero(space, degree);
    const auto& x = space->complex();
    const auto& a = space->group();
    std::vector<bool> seen(x.count(degree), false);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError(source, lineno, "expected 'vertices : value'");
        std::istringstream ls(line.substr(0, colon));
        std::vector<Label> verts;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                verts.push_back(std::stoll(tok, &used));
                if (used != tok.size()) throw InputError("");
            } catch (const std::exception&) {
                throw ParseError(source, lineno, "malformed vertex '" + tok + "'");
            }
        }
        if (static_cast<int>(verts.size()) != degree + 1) {
            throw ParseError(source, lineno, "expected a " + std::to_string(degree) + "-simplex");
        }
        auto s = x.find_labels(verts);
        if (!s) throw ParseError(source, lineno, "not a simplex of the complex");
        if (seen[*s]) throw ParseError(source, lineno, "simplex listed twice");
        seen[*s] = true;
        std::string value = line.substr(colon + 1);
        try {
            if (space->has_algebra()) {
                auto dense = pa_dense(space->algebra(), a, parse_pa_element(space->algebra(), a, value));
                for (std::uint32_t f = 0; f < space->atoms(); ++f) c.set(space->cell(*s, f), dense[f]);
            } else {
                c.set(*s, a.parse_element(value));
            }
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(source, lineno, e.what());
        }
    }
    return c;
}

std::string serialize_cochain(const Cochain& c)
{
    const auto& x = c.space->complex();
    const auto& a = c.space->group();
    std::string out;
    for (std::uint32_t s = 0; s < x.count(c.degree); ++s) {
        std::map<std::uint32_t, AElement> values;
        bool nonzero = false;
        for (std::uint32_t f = 0; f < c.space->atoms(); ++f) {
            auto v = c.values[c.space->cell(s, f)];
            if (v != 0) nonzero = true;
            values.emplace(f, a.element(v));
        }
        if (!nonzero) continue;
        out += x.simplex_to_string(c.degree, s) + " : ";
        if (c.space->has_algebra()) {
            out += format_pa_element(a, pa_normalize(a, std::move(values)));
        } else {
            out += a.format(values.at(0));
        }
        out += "\n";
    }
    return out;
}

Cochain cup(const Cochain& a, const Cochain& b)
{
    if (a.space != b.space) throw ShapeError("cup product of cochains in different spaces");
    if (a.space->has_algebra()) throw InputError("cup products are defined for plain coefficients only");
    int p = a.degree, q = b.degree;
    const auto& x = a.space->complex();
    if (p + q > x.dimension()) throw ShapeError("cup product degree exceeds the dimension");
    const auto& g = a.space->group();
    Cochain out = Cochain::zero(a.space, p + q);
    for (std::uint32_t t = 0; t < x.count(p + q); ++t) {
        auto v = x.simplex(p + q, t);
        auto front = *x.find(v.subspan(0, p + 1));
        auto back = *x.find(v.subspan(p));
        auto u = g.element(a.values[front]), w = g.element(b.values[back]);
        AElement prod = g.zero();
        for (std::size_t j = 0; j < g.rank(); ++j) {
            prod.coords[j] = static_cast<std::uint32_t>(std::uint64_t{u.coords[j]} * w.coords[j] % g.factors()[j]);
        }
        out.set(t, prod);
    }
    return out;
}

Cochain cochain_from_values(SpacePtr space, int degree, std::vector<std::uint32_t> values)
{
    Cochain c = Cochain::zero(std::move(space), degree);
    if (values.size() != c.values.size()) throw ShapeError("value vector has the wrong length");
    for (auto v : values) {
        if (v >= c.space->group().order()) throw ShapeError("value index out of range");
    }
    c.values = std::move(values);
    return c;
}

}  // namespace cosys
