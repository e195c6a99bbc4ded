#include "cosys/measured_boolean.hpp"

#include <cctype>
#include <sstream>

#include "cosys/errors.hpp"

namespace cosys {

MeasuredBoolean::MeasuredBoolean(std::vector<Rational> weights, GeneratorImages action)
    : weights_(std::move(weights)), action_(std::move(action))
{
    if (weights_.empty()) throw InputError("measured algebra needs at least one atom");
    Rational total = 0;
    for (const auto& w : weights_) {
        if (w < 0) throw InputError("negative atom weight " + to_string(w));
        total += w;
    }
    if (total != 1) throw InputError("atom weights sum to " + to_string(total) + ", expected 1");
    for (const auto& [g, perm] : action_) {
        if (perm.size() != weights_.size()) {
            throw ShapeError("action of '" + std::string(1, g) + "' has degree " + std::to_string(perm.size()) +
                             " on " + std::to_string(weights_.size()) + " atoms");
        }
        for (std::uint32_t i = 0; i < perm.size(); ++i) {
            if (weights_[perm(i)] != weights_[i]) {
                throw InputError("action of '" + std::string(1, g) + "' does not preserve the weight of atom " +
                                 std::to_string(i + 1));
            }
        }
    }
}

MeasuredBoolean MeasuredBoolean::uniform(std::size_t atoms)
{
    if (atoms == 0) throw InputError("measured algebra needs at least one atom");
    return MeasuredBoolean(std::vector<Rational>(atoms, make_rational(1, static_cast<std::int64_t>(atoms))));
}

bool MeasuredBoolean::faithful() const
{
    for (const auto& w : weights_) {
        if (w == 0) return false;
    }
    return true;
}

MeasuredBoolean MeasuredBoolean::parse(std::string_view text, const std::string& source)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0, n = 0;
    std::vector<Rational> weights;
    GeneratorImages action;
    bool have_weights = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        try {
            if (key == "atoms") {
                if (!(ls >> n) || n == 0) throw InputError("expected a positive atom count");
            } else if (key == "weights") {
                std::string tok;
                while (ls >> tok) weights.push_back(parse_rational(tok));
                have_weights = true;
            } else if (key == "act") {
                std::string gen, rest;
                if (!(ls >> gen) || gen.size() != 1 || !std::islower(static_cast<unsigned char>(gen[0]))) {
                    throw InputError("act needs a lowercase generator letter");
                }
                std::getline(ls, rest);
                if (action.count(gen[0])) throw InputError("duplicate action for '" + gen + "'");
                action.emplace(gen[0], Permutation::parse(rest));
            } else {
                throw InputError("unknown key '" + key + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(source, lineno, e.what());
        }
    }
    if (n == 0) throw ParseError(source, lineno, "missing 'atoms' line");
    if (!have_weights) weights.assign(n, make_rational(1, static_cast<std::int64_t>(n)));
    if (weights.size() != n) {
        throw ParseError(source, lineno, "expected " + std::to_string(n) + " weights, got " + std::to_string(weights.size()));
    }
    try {
        return MeasuredBoolean(std::move(weights), std::move(action));
    } catch (const InputError& e) {
        throw ParseError(source, lineno, e.what());
    }
}

std::string MeasuredBoolean::serialize() const
{
    std::string out = "atoms " + std::to_string(atoms()) + "\nweights";
    for (const auto& w : weights_) out += " " + to_string(w);
    out += "\n";
    for (const auto& [g, perm] : action_) out += std::string("act ") + g + " " + perm.to_string() + "\n";
    return out;
}

namespace {

void check_atoms(const MeasuredBoolean& p, const PAElement& x)
{
    if (!x.support.empty() && x.support.rbegin()->first >= p.atoms()) {
        throw ShapeError("element refers to atom " + std::to_string(x.support.rbegin()->first + 1) + " of a " +
                         std::to_string(p.atoms()) + "-atom algebra");
    }
}

}  // namespace

PAElement pa_normalize(const FiniteAbelianGroup& a, std::map<std::uint32_t, AElement> values)
{
    PAElement out;
    for (auto& [atom, v] : values) {
        if (!a.is_zero(v)) out.support.emplace(atom, std::move(v));
    }
    return out;
}

PAElement pa_add(const MeasuredBoolean& p, const FiniteAbelianGroup& a, const PAElement& x, const PAElement& y)
{
    check_atoms(p, x);
    check_atoms(p, y);
    auto values = x.support;
    for (const auto& [atom, v] : y.support) {
        auto [it, inserted] = values.emplace(atom, v);
        if (!inserted) it->second = a.add(it->second, v);
    }
    return pa_normalize(a, std::move(values));
}

PAElement pa_neg(const FiniteAbelianGroup& a, const PAElement& x)
{
    PAElement out;
    for (const auto& [atom, v] : x.support) out.support.emplace(atom, a.neg(v));
    return out;
}

Rational pa_measure(const MeasuredBoolean& p, const PAElement& x)
{
    check_atoms(p, x);
    Rational total = 0;
    for (const auto& entry : x.support) total += p.weight(entry.first);
    return total;
}

Rational pa_dist(const MeasuredBoolean& p, const FiniteAbelianGroup& a, const PAElement& x, const PAElement& y)
{
    return pa_measure(p, pa_add(p, a, x, pa_neg(a, y)));
}

PAElement theta_embed(const MeasuredBoolean& p, const FiniteAbelianGroup& a, const AElement& value)
{
    PAElement out;
    if (a.is_zero(value)) return out;
    for (std::uint32_t i = 0; i < p.atoms(); ++i) out.support.emplace(i, value);
    return out;
}

PAElement pa_act(const MeasuredBoolean& p, const Word& w, const PAElement& x)
{
    check_atoms(p, x);
    if (p.action().empty() && !w.empty()) throw InputError("measured algebra carries no action");
    Permutation perm = evaluate_word(p.action(), w, p.atoms());
    PAElement out;
    // (w.x)(perm(i)) = x(i)
    for (const auto& [atom, v] : x.support) out.support.emplace(perm(atom), v);
    return out;
}

std::vector<AElement> pa_dense(const MeasuredBoolean& p, const FiniteAbelianGroup& a, const PAElement& x)
{
    check_atoms(p, x);
    std::vector<AElement> out(p.atoms(), a.zero());
    for (const auto& [atom, v] : x.support) out[atom] = v;
    return out;
}

PAElement parse_pa_element(const MeasuredBoolean& p, const FiniteAbelianGroup& a, std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
        throw InputError("P(A) value must be written {atom:value, ...}");
    }
    s = s.substr(1, s.size() - 2);
    std::map<std::uint32_t, AElement> values;
    std::size_t pos = 0;
    while (pos < s.size()) {
        // Split on commas at parenthesis depth zero.
        std::size_t end = pos;
        int depth = 0;
        while (end < s.size() && (depth > 0 || s[end] != ',')) {
            if (s[end] == '(') ++depth;
            if (s[end] == ')') --depth;
            ++end;
        }
        std::string item = s.substr(pos, end - pos);
        auto colon = item.find(':');
        if (colon == std::string::npos) throw InputError("missing ':' in P(A) entry '" + item + "'");
        std::size_t used = 0;
        long long atom = 0;
        try {
            atom = std::stoll(item.substr(0, colon), &used);
        } catch (const std::exception&) {
            throw InputError("malformed atom in P(A) entry '" + item + "'");
        }
        if (used != colon || atom < 1 || static_cast<std::size_t>(atom) > p.atoms()) {
            throw InputError("atom out of range in P(A) entry '" + item + "'");
        }
        auto key = static_cast<std::uint32_t>(atom - 1);
        if (values.count(key)) throw InputError("duplicate atom in P(A) entry '" + item + "'");
        values.emplace(key, a.parse_element(item.substr(colon + 1)));
        pos = end + 1;
    }
    return pa_normalize(a, std::move(values));
}

std::string format_pa_element(const FiniteAbelianGroup& a, const PAElement& x)
{
    std::string out = "{";
    bool first = true;
    for (const auto& [atom, v] : x.support) {
        if (!first) out += ", ";
        first = false;
        out += std::to_string(atom + 1) + ":" + a.format(v);
    }
    return out + "}";
}

AtomMorphism::AtomMorphism(MeasuredBoolean source, MeasuredBoolean target, std::vector<std::uint32_t> target_to_source)
    : source_(std::move(source)), target_(std::move(target)), dual_(std::move(target_to_source))
{
    if (dual_.size() != target_.atoms()) throw MorphismError("atom map must assign a source atom to every target atom");
    std::vector<Rational> block(source_.atoms(), Rational(0));
    for (std::size_t q = 0; q < dual_.size(); ++q) {
        if (dual_[q] >= source_.atoms()) throw MorphismError("atom map refers to a missing source atom");
        block[dual_[q]] += target_.weight(q);
    }
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (block[i] != source_.weight(i)) {
            throw MorphismError("block of source atom " + std::to_string(i + 1) + " has weight " + to_string(block[i]) +
                                ", expected " + to_string(source_.weight(i)));
        }
    }
}

AtomMorphism AtomMorphism::identity(const MeasuredBoolean& p)
{
    std::vector<std::uint32_t> id(p.atoms());
    for (std::uint32_t i = 0; i < id.size(); ++i) id[i] = i;
    return AtomMorphism(p, p, std::move(id));
}

bool AtomMorphism::is_equivariant() const
{
    for (const auto& [g, tq] : target_.action()) {
        auto it = source_.action().find(g);
        if (it == source_.action().end()) continue;
        for (std::uint32_t q = 0; q < dual_.size(); ++q) {
            if (dual_[tq(q)] != it->second(dual_[q])) return false;
        }
    }
    return true;
}

PAElement apply_morphism(const AtomMorphism& f, const PAElement& x)
{
    check_atoms(f.source(), x);
    PAElement out;
    const auto& dual = f.target_to_source();
    for (std::uint32_t q = 0; q < dual.size(); ++q) {
        auto it = x.support.find(dual[q]);
        if (it != x.support.end()) out.support.emplace(q, it->second);
    }
    return out;
}

PAElement descend(const AtomMorphism& f, const FiniteAbelianGroup& a, const PAElement& y)
{
    check_atoms(f.target(), y);
    const auto& dual = f.target_to_source();
    std::vector<AElement> value(f.source().atoms(), a.zero());
    std::vector<bool> seen(f.source().atoms(), false);
    for (std::uint32_t q = 0; q < dual.size(); ++q) {
        auto it = y.support.find(q);
        AElement v = it == y.support.end() ? a.zero() : it->second;
        auto p = dual[q];
        if (seen[p] && value[p] != v) {
            throw MorphismError("value is not constant on the block of source atom " + std::to_string(p + 1));
        }
        seen[p] = true;
        value[p] = std::move(v);
    }
    std::map<std::uint32_t, AElement> values;
    for (std::uint32_t p = 0; p < value.size(); ++p) values.emplace(p, value[p]);
    return pa_normalize(a, std::move(values));
}

}  // namespace cosys
