#include "cosys/sofic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "cosys/errors.hpp"
#include "cosys/kernels/partition_match.hpp"
#include "cosys/zmod.hpp"

namespace cosys {

namespace {

std::string strip_comment(std::string line)
{
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    return line;
}

// Splits "key: rest"; false when the line has no colon.
bool split_key(const std::string& line, std::string& key, std::string& rest)
{
    auto colon = line.find(':');
    if (colon == std::string::npos) return false;
    std::istringstream k(line.substr(0, colon));
    k >> key;
    rest = line.substr(colon + 1);
    return true;
}

std::vector<char> parse_letters(const std::string& rest, const std::string& source, std::size_t lineno)
{
    std::istringstream in(rest);
    std::vector<char> out;
    std::string tok;
    while (in >> tok) {
        if (tok.size() != 1 || tok[0] < 'a' || tok[0] > 'z') {
            throw ParseError(source, lineno, "generator names are single lowercase letters, got '" + tok + "'");
        }
        if (std::find(out.begin(), out.end(), tok[0]) != out.end()) throw ParseError(source, lineno, "generator listed twice");
        out.push_back(tok[0]);
    }
    return out;
}

// Presentation lines; returns false when the key is not one of them.
bool presentation_line(Presentation& p, const std::string& key, const std::string& rest, const std::string& source,
                       std::size_t lineno)
{
    if (key == "gens") {
        p.gens = parse_letters(rest, source, lineno);
        return true;
    }
    if (key == "rels") {
        std::istringstream in(rest);
        std::string tok;
        while (in >> tok) {
            Word w;
            try {
                w = freely_reduce(parse_word(tok));
            } catch (const InputError& e) {
                throw ParseError(source, lineno, e.what());
            }
            if (w.empty()) throw ParseError(source, lineno, "relator '" + tok + "' reduces to the empty word");
            p.relators.push_back(std::move(w));
        }
        return true;
    }
    return false;
}

void check_presentation(const Presentation& p, const std::string& source)
{
    if (p.gens.empty()) throw InputError(source + ": presentation has no generators");
    for (const auto& r : p.relators) {
        for (auto l : r) {
            if (std::find(p.gens.begin(), p.gens.end(), l.gen) == p.gens.end()) {
                throw InputError(source + ": relator " + format_word(r) + " uses unknown generator '" +
                                 std::string(1, l.gen) + "'");
            }
        }
    }
}

std::string letters_line(const std::vector<char>& v)
{
    std::string out;
    for (char c : v) {
        if (!out.empty()) out += ' ';
        out += c;
    }
    return out;
}

std::size_t gen_index(const std::vector<char>& gens, char g)
{
    auto it = std::find(gens.begin(), gens.end(), g);
    if (it == gens.end()) throw InputError("unknown generator '" + std::string(1, g) + "'");
    return static_cast<std::size_t>(it - gens.begin());
}

}  // namespace

Presentation Presentation::parse(std::string_view text, const std::string& source)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    Presentation p;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(line);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string key, rest;
        if (!split_key(line, key, rest) || !presentation_line(p, key, rest, source, lineno)) {
            throw ParseError(source, lineno, "expected 'gens:' or 'rels:'");
        }
    }
    check_presentation(p, source);
    return p;
}

std::string Presentation::serialize() const
{
    std::string out = "gens: " + letters_line(gens) + "\nrels:";
    for (const auto& r : relators) out += " " + format_word(r);
    return out + "\n";
}

AlmostHom AlmostHom::parse(std::string_view text, const std::string& source)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    AlmostHom phi;
    bool have_n = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(line);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (!have_n) {
            if (tok == "n" || tok == "n:") ls >> tok;
            std::size_t used = 0;
            long long v = -1;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || v < 1) throw ParseError(source, lineno, "expected the point count first");
            phi.n = static_cast<std::size_t>(v);
            have_n = true;
            continue;
        }
        std::string key, rest;
        if (!split_key(line, key, rest) || key.rfind("gen", 0) != 0) {
            throw ParseError(source, lineno, "expected 'gen a: permutation'");
        }
        std::istringstream ks(line.substr(0, line.find(':')));
        std::string word_gen, name;
        ks >> word_gen >> name;
        if (word_gen != "gen" || name.size() != 1 || name[0] < 'a' || name[0] > 'z') {
            throw ParseError(source, lineno, "expected 'gen a: permutation'");
        }
        Permutation p;
        try {
            p = Permutation::parse(rest);
        } catch (const InputError& e) {
            throw ParseError(source, lineno, e.what());
        }
        if (p.size() != phi.n) {
            throw ParseError(source, lineno, "image of '" + name + "' has " + std::to_string(p.size()) +
                                                 " entries, expected " + std::to_string(phi.n));
        }
        if (!phi.images.emplace(name[0], std::move(p)).second) throw ParseError(source, lineno, "generator given twice");
    }
    if (!have_n) throw ParseError(source, lineno, "empty almost-homomorphism");
    return phi;
}

std::string AlmostHom::serialize() const
{
    std::string out = std::to_string(n) + "\n";
    for (const auto& [g, p] : images) out += std::string("gen ") + g + ": " + p.to_string() + "\n";
    return out;
}

Permutation word_eval(const AlmostHom& phi, const Word& w)
{
    for (auto l : w) {
        if (!phi.images.count(l.gen)) throw InputError("no image for generator '" + std::string(1, l.gen) + "'");
    }
    return evaluate_word(phi.images, w, phi.n);
}

DefectReport defect_report(const AlmostHom& phi, const Presentation& p, std::size_t max_length, std::size_t word_budget)
{
    DefectReport out;
    out.max_relator_defect = 0;
    for (const auto& r : p.relators) {
        out.relator_defects.push_back(hamming_length(word_eval(phi, r)));
        out.max_relator_defect = std::max(out.max_relator_defect, out.relator_defects.back());
    }
    auto words = reduced_words(p.gens, max_length, word_budget);
    out.words = words.size();
    out.min_freeness = 1;
    for (const auto& w : words) {
        auto v = hamming_length(word_eval(phi, w));
        if (!out.least_free_word || v < out.min_freeness) {
            out.min_freeness = v;
            out.least_free_word = w;
        }
    }
    return out;
}

ExtensionSpec ExtensionSpec::parse(std::string_view text, const std::string& source)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    ExtensionSpec s;
    bool have_a = false;
    std::vector<std::tuple<std::size_t, Word, std::string>> raw_alpha;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(line);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string key, rest;
        if (!split_key(line, key, rest)) throw ParseError(source, lineno, "expected 'key: value'");
        if (presentation_line(s.quotient, key, rest, source, lineno)) continue;
        if (key == "A") {
            try {
                s.a = FiniteAbelianGroup::parse(rest);
            } catch (const InputError& e) {
                throw ParseError(source, lineno, e.what());
            }
            have_a = true;
        } else if (key == "center") {
            s.center = parse_letters(rest, source, lineno);
        } else if (key == "alpha") {
            auto eq = rest.find('=');
            if (eq == std::string::npos) throw ParseError(source, lineno, "expected 'alpha: relator = element'");
            std::istringstream ws(rest.substr(0, eq));
            std::string tok;
            ws >> tok;
            Word w;
            try {
                w = freely_reduce(parse_word(tok));
            } catch (const InputError& e) {
                throw ParseError(source, lineno, e.what());
            }
            raw_alpha.emplace_back(lineno, std::move(w), rest.substr(eq + 1));
        } else {
            throw ParseError(source, lineno, "unknown key '" + key + "'");
        }
    }
    check_presentation(s.quotient, source);
    if (!have_a) throw InputError(source + ": missing 'A:' line");
    if (s.center.size() != s.a.rank()) {
        throw InputError(source + ": 'center:' needs one letter per cyclic factor of " + s.a.to_string());
    }
    for (char c : s.center) {
        if (std::find(s.quotient.gens.begin(), s.quotient.gens.end(), c) != s.quotient.gens.end()) {
            throw InputError(source + ": center letter '" + std::string(1, c) + "' is also a quotient generator");
        }
    }
    s.alpha.assign(s.quotient.relators.size(), s.a.zero());
    std::vector<bool> seen(s.alpha.size(), false);
    for (auto& [ln, w, value] : raw_alpha) {
        auto it = std::find(s.quotient.relators.begin(), s.quotient.relators.end(), w);
        if (it == s.quotient.relators.end()) throw ParseError(source, ln, "alpha given for a word that is not a relator");
        auto k = static_cast<std::size_t>(it - s.quotient.relators.begin());
        if (seen[k]) throw ParseError(source, ln, "alpha given twice for " + format_word(w));
        seen[k] = true;
        try {
            s.alpha[k] = s.a.parse_element(value);
        } catch (const InputError& e) {
            throw ParseError(source, ln, e.what());
        }
    }
    return s;
}

std::string ExtensionSpec::serialize() const
{
    std::string out = quotient.serialize();
    out += "A: " + a.to_string() + "\ncenter: " + letters_line(center) + "\n";
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        out += "alpha: " + format_word(quotient.relators[k]) + " = " + a.format(alpha[k]) + "\n";
    }
    return out;
}

ExtensionApproximation::ExtensionApproximation(AlmostHom phi, FiniteAbelianGroup a, std::vector<char> center)
    : phi_(std::move(phi)), a_(std::move(a)), center_(std::move(center))
{
    if (center_.size() != a_.rank()) throw StructureError("one center letter per cyclic factor of A required");
    for (std::size_t j = 0; j < center_.size(); ++j) {
        auto it = phi_.images.find(center_[j]);
        if (it == phi_.images.end()) throw StructureError("no image for center letter '" + std::string(1, center_[j]) + "'");
        if (!power(it->second, a_.factors()[j]).is_identity()) {
            throw StructureError("center letter '" + std::string(1, center_[j]) + "' has order not dividing " +
                                 std::to_string(a_.factors()[j]));
        }
        for (std::size_t k = 0; k < j; ++k) {
            const auto& other = phi_.images.at(center_[k]);
            if (it->second * other != other * it->second) throw StructureError("center letters do not commute");
        }
    }
    for (const auto& [g, p] : phi_.images) {
        if (std::find(center_.begin(), center_.end(), g) == center_.end()) quotient_gens_.push_back(g);
    }
    const auto n = static_cast<std::uint32_t>(phi_.n);
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    orbit_.assign(n, unset);
    offset_.assign(n, a_.zero());
    const auto elements = a_.enumerate();
    for (std::uint32_t p = 0; p < n; ++p) {
        if (orbit_[p] != unset) continue;
        auto o = static_cast<std::uint32_t>(base_.size());
        base_.push_back(p);
        for (const auto& e : elements) {
            auto q = act(e, p);
            if (orbit_[q] != unset) throw StructureError("A does not act freely: point " + std::to_string(q + 1) + " repeats");
            orbit_[q] = o;
            offset_[q] = e;
        }
    }
}

std::uint32_t ExtensionApproximation::act(const AElement& a, std::uint32_t p) const
{
    for (std::size_t j = 0; j < center_.size(); ++j) {
        const auto& perm = phi_.images.at(center_[j]);
        for (std::uint32_t k = 0; k < a.coords[j]; ++k) p = perm(p);
    }
    return p;
}

InducedQuotient induce_quotient(const ExtensionApproximation& phi)
{
    const auto m = phi.orbits();
    const auto n = phi.hom().n;
    InducedQuotient out;
    out.quotient.n = m;
    std::size_t disagree = 0;
    for (char s : phi.quotient_gens()) {
        const auto& perm = phi.hom().images.at(s);
        std::vector<std::vector<std::uint32_t>> votes(m, std::vector<std::uint32_t>(m, 0));
        for (std::uint32_t p = 0; p < n; ++p) ++votes[phi.orbit_of(p)][phi.orbit_of(perm(p))];
        std::vector<std::uint32_t> target(m);
        for (std::size_t o = 0; o < m; ++o) {
            target[o] = static_cast<std::uint32_t>(std::max_element(votes[o].begin(), votes[o].end()) - votes[o].begin());
        }
        std::vector<bool> hit(m, false);
        bool bijective = true;
        for (auto t : target) {
            bijective = bijective && !hit[t];
            hit[t] = true;
        }
        if (!bijective) {
            if (m > 20) throw StructureError("induced orbit map of '" + std::string(1, s) + "' is not a bijection");
            out.reassigned = true;
            // best[mask]: most votes for orbits popcount(mask).. with targets in mask used.
            std::vector<std::int64_t> best(std::size_t{1} << m, -1);
            const std::size_t full = (std::size_t{1} << m) - 1;
            best[full] = 0;
            for (std::size_t mask = full; mask-- > 0;) {
                auto k = static_cast<std::size_t>(__builtin_popcountll(mask));
                for (std::size_t t = 0; t < m; ++t) {
                    if (mask >> t & 1) continue;
                    auto v = best[mask | std::size_t{1} << t];
                    if (v >= 0) best[mask] = std::max(best[mask], v + votes[k][t]);
                }
            }
            std::size_t mask = 0;
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t t = 0; t < m; ++t) {
                    if (mask >> t & 1) continue;
                    if (best[mask | std::size_t{1} << t] + votes[k][t] == best[mask]) {
                        target[k] = static_cast<std::uint32_t>(t);
                        mask |= std::size_t{1} << t;
                        break;
                    }
                }
            }
        }
        for (std::uint32_t p = 0; p < n; ++p) disagree += phi.orbit_of(perm(p)) != target[phi.orbit_of(p)];
        out.quotient.images.emplace(s, Permutation(std::move(target)));
    }
    auto denom = static_cast<std::int64_t>(n * std::max<std::size_t>(phi.quotient_gens().size(), 1));
    out.ambiguity = make_rational(static_cast<std::int64_t>(disagree), denom);
    return out;
}

std::vector<std::uint32_t> base_section(const ExtensionApproximation& phi)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t o = 0; o < phi.orbits(); ++o) out.push_back(phi.base(o));
    return out;
}

DefectCocycle defect_cocycle(const ExtensionApproximation& phi, const InducedQuotient& q,
                             const std::vector<std::uint32_t>& section)
{
    const auto& a = phi.group();
    if (section.size() != phi.orbits()) throw InputError("section needs one point per orbit");
    for (std::uint32_t o = 0; o < section.size(); ++o) {
        if (section[o] >= phi.hom().n || phi.orbit_of(section[o]) != o) {
            throw InputError("section point " + std::to_string(section[o] + 1) + " is not in orbit " + std::to_string(o + 1));
        }
    }
    DefectCocycle out;
    out.gens = phi.quotient_gens();
    for (char s : out.gens) {
        const auto& perm = phi.hom().images.at(s);
        const auto& induced = q.quotient.images.at(s);
        std::vector<AElement> row;
        for (std::uint32_t o = 0; o < section.size(); ++o) {
            auto x = perm(section[o]);
            auto t = phi.orbit_of(x);
            out.off_target += t != induced(o);
            row.push_back(a.add(phi.offset(x), a.neg(phi.offset(section[t]))));
        }
        out.beta.push_back(std::move(row));
    }
    return out;
}

std::optional<AElement> relator_sum(const FiniteAbelianGroup& a, const AlmostHom& quotient, const DefectCocycle& b,
                                    const Word& r, std::uint32_t orbit)
{
    AElement acc = a.zero();
    std::uint32_t cur = orbit;
    for (auto it = r.rbegin(); it != r.rend(); ++it) {
        auto k = gen_index(b.gens, it->gen);
        const auto& perm = quotient.images.at(it->gen);
        if (!it->inverse) {
            acc = a.add(acc, b.beta[k][cur]);
            cur = perm(cur);
        } else {
            auto prev = perm.inverse()(cur);
            acc = a.add(acc, a.neg(b.beta[k][prev]));
            cur = prev;
        }
    }
    if (cur != orbit) return std::nullopt;
    return acc;
}

namespace {

void check_generators(const ExtensionApproximation& phi, const ExtensionSpec& spec)
{
    auto a = phi.quotient_gens(), b = spec.quotient.gens;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw InputError("generators of the approximation (" + letters_line(a) + ") and the extension (" +
                                 letters_line(b) + ") differ");
    if (!(phi.group() == spec.a) || phi.center() != spec.center) throw InputError("center data differ from the extension");
}

}  // namespace

std::vector<RelatorAgreement> compare_delta_beta(const ExtensionApproximation& phi, const InducedQuotient& q,
                                                 const ExtensionSpec& spec, const DefectCocycle& beta)
{
    check_generators(phi, spec);
    std::vector<RelatorAgreement> out;
    for (std::size_t k = 0; k < spec.quotient.relators.size(); ++k) {
        RelatorAgreement r;
        r.relator = spec.quotient.relators[k];
        r.alpha = spec.alpha[k];
        r.total = phi.orbits();
        for (std::uint32_t o = 0; o < phi.orbits(); ++o) {
            auto s = relator_sum(phi.group(), q.quotient, beta, r.relator, o);
            r.agree += s && *s == r.alpha;
        }
        r.fraction = make_rational(static_cast<std::int64_t>(r.agree), static_cast<std::int64_t>(r.total));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<AElement> derive_alpha(const ExtensionApproximation& phi, const Presentation& p)
{
    std::vector<AElement> out;
    for (const auto& r : p.relators) {
        auto perm = word_eval(phi.hom(), r);
        auto x = perm(phi.base(0));
        if (phi.orbit_of(x) != 0) throw PreconditionError("relator " + format_word(r) + " moves orbits");
        const auto& a = phi.offset(x);
        for (std::uint32_t q = 0; q < phi.hom().n; ++q) {
            if (perm(q) != phi.act(a, q)) {
                throw PreconditionError("relator " + format_word(r) + " does not act as an element of A");
            }
        }
        out.push_back(a);
    }
    return out;
}

AfreeResult afree_vanishing_check(const ExtensionApproximation& phi, const ExtensionSpec& spec)
{
    check_generators(phi, spec);
    for (char s : phi.quotient_gens()) {
        const auto& ps = phi.hom().images.at(s);
        for (char z : phi.center()) {
            const auto& pz = phi.hom().images.at(z);
            if (ps * pz != pz * ps) {
                throw PreconditionError("generator '" + std::string(1, s) + "' does not commute with the A-action");
            }
        }
    }
    if (derive_alpha(phi, spec.quotient) != spec.alpha) {
        throw PreconditionError("relator values of the action differ from the extension's alpha");
    }
    const auto q = induce_quotient(phi);
    const auto& a = phi.group();
    const auto m = phi.orbits();
    const auto& gens = phi.quotient_gens();
    const auto& rels = spec.quotient.relators;
    AfreeResult out;
    std::vector<std::vector<std::uint64_t>> per_factor;
    for (std::size_t j = 0; j < a.rank(); ++j) {
        const std::uint64_t mod = a.factors()[j];
        ZmodMatrix mat(rels.size() * m, gens.size() * m, mod);
        std::vector<std::uint64_t> rhs(rels.size() * m);
        for (std::size_t k = 0; k < rels.size(); ++k) {
            for (std::uint32_t o = 0; o < m; ++o) {
                const auto row = k * m + o;
                rhs[row] = spec.alpha[k].coords[j];
                std::uint32_t cur = o;
                for (auto it = rels[k].rbegin(); it != rels[k].rend(); ++it) {
                    auto g = gen_index(gens, it->gen);
                    const auto& perm = q.quotient.images.at(it->gen);
                    if (!it->inverse) {
                        auto& e = mat.at(row, g * m + cur);
                        e = (e + 1) % mod;
                        cur = perm(cur);
                    } else {
                        cur = perm.inverse()(cur);
                        auto& e = mat.at(row, g * m + cur);
                        e = (e + mod - 1) % mod;
                    }
                }
            }
        }
        auto sol = solve(diagonalize(mat), rhs);
        if (!sol.solution) {
            out.factor = j;
            out.certificate = std::move(sol.certificate);
            return out;
        }
        per_factor.push_back(std::move(*sol.solution));
    }
    DefectCocycle b;
    b.gens = gens;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        std::vector<AElement> row;
        for (std::uint32_t o = 0; o < m; ++o) {
            AElement e = a.zero();
            for (std::size_t j = 0; j < a.rank(); ++j) e.coords[j] = static_cast<std::uint32_t>(per_factor[j][g * m + o]);
            row.push_back(e);
        }
        b.beta.push_back(std::move(row));
    }
    auto solves = [&](const DefectCocycle& c) {
        for (std::size_t k = 0; k < rels.size(); ++k) {
            for (std::uint32_t o = 0; o < m; ++o) {
                auto s = relator_sum(a, q.quotient, c, rels[k], o);
                if (!s || *s != spec.alpha[k]) return false;
            }
        }
        return true;
    };
    out.consistent = true;
    out.verified = solves(b);
    out.beta_solves = solves(defect_cocycle(phi, q, base_section(phi)));
    out.primitive = std::move(b);
    return out;
}

StabilityResult stability_match(const AlmostHom& phi, const std::vector<std::uint32_t>& partition, std::size_t blocks,
                                const std::vector<StabilityCandidate>& candidates, const std::vector<Word>& words,
                                const Rational& epsilon, const StabilityOptions& opt)
{
    if (candidates.empty()) throw InputError("stability check needs at least one candidate action");
    if (blocks == 0 || blocks > 8) throw InputError("between 1 and 8 blocks are supported");
    if (partition.size() != phi.n) throw ShapeError("partition must label every point");
    for (auto b : partition) {
        if (b >= blocks) throw InputError("block label out of range");
    }
    if (words.empty()) throw InputError("stability check needs at least one word");
    const auto n = static_cast<std::int64_t>(phi.n);
    const std::size_t d = blocks;
    // Counts |A_i ∩ phi(w) A_j| for the reference action.
    std::vector<std::int64_t> ref(words.size() * d * d, 0);
    for (std::size_t g = 0; g < words.size(); ++g) {
        auto perm = word_eval(phi, words[g]);
        for (std::uint32_t x = 0; x < phi.n; ++x) ++ref[g * d * d + partition[perm(x)] * d + partition[x]];
    }
    StabilityResult out;
    for (const auto& cand : candidates) {
        kernels::PartitionProblem p;
        p.points = cand.action.n;
        p.blocks = d;
        p.scale = n;
        const auto xs = static_cast<std::int64_t>(cand.action.n);
        for (const auto& w : words) p.perms.push_back(word_eval(cand.action, w).images());
        for (auto c : ref) p.target.push_back(c * xs);
        double space = std::pow(static_cast<double>(d), static_cast<double>(p.points));
        CandidateMatch cm;
        cm.name = cand.name;
        cm.points = p.points;
        kernels::PartitionResult r;
        if (p.points <= opt.max_exhaustive_points && space <= static_cast<double>(opt.budget)) {
            r = kernels::partition_min_parallel(p, opt.workers);
        } else {
            r = kernels::partition_local_search(p, opt.seed, opt.restarts);
            cm.exhaustive = false;
            out.certified = false;
        }
        cm.blocks = std::move(r.labels);
        cm.discrepancy = make_rational(r.value, n * xs);
        if (out.candidates.empty() || cm.discrepancy < out.candidates[out.best].discrepancy) {
            out.best = out.candidates.size();
        }
        out.candidates.push_back(std::move(cm));
    }
    out.within_epsilon = out.candidates[out.best].discrepancy < epsilon;
    return out;
}

}  // namespace cosys
