#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "cosys/covers.hpp"
#include "cosys/errors.hpp"
#include "cosys/expansion.hpp"
#include "cosys/generators.hpp"
#include "cosys/sofic.hpp"

namespace cosys::cli {

namespace {

constexpr const char* kNormalization = "per-degree total mass 1";
constexpr double kDefaultBudget = 1e12;

struct Common {
    int workers = 1;
    double budget = kDefaultBudget;
    std::uint64_t seed = 1;
    bool certified_only = false;
    bool heuristic = false;
    std::string output;
    std::string weights = "mu";
};

// Ordered key: value lines; blocks open with a "block:" line after a blank.
class Report {
public:
    void add(const std::string& key, const std::string& value) { body_ += key + ": " + value + "\n"; }
    void add(const std::string& key, const Rational& value) { add(key, to_string(value)); }
    void flag(const std::string& key, bool value) { add(key, value ? "yes" : "no"); }
    void block(const std::string& name) { body_ += "\nblock: " + name + "\n"; }
    // Raw text, one "key: line" per line of it.
    void lines(const std::string& key, const std::string& text)
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) add(key, line);
    }
    void certify(bool ok) { certified_ = certified_ && ok; }

    std::string render(const std::string& command, const std::string& weights, const std::string& normalization,
                       std::uint64_t seed) const
    {
        std::string out = "tool: cosys " COSYS_VERSION "\n";
        out += "command: " + command + "\n";
        out += "weights: " + weights + "\n";
        out += "normalization: " + normalization + "\n";
        out += "seed: " + std::to_string(seed) + "\n";
        out += std::string("certified: ") + (certified_ ? "yes" : "no") + "\n";
        return out + body_;
    }

private:
    std::string body_;
    bool certified_ = true;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(double v)
{
    if (std::abs(v) < 5e-13) v = 0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = " ")
{
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
    return out;
}

template <class T>
std::string join_numbers(const std::vector<T>& v)
{
    std::vector<std::string> parts;
    for (const auto& x : v) parts.push_back(std::to_string(x));
    return join(parts);
}

std::string labels_string(const std::vector<Label>& face)
{
    return face.empty() ? "()" : join_numbers(face);
}

SearchOptions search_options(const Common& c)
{
    SearchOptions opt;
    opt.budget = c.budget;
    opt.heuristic = c.heuristic;
    opt.workers = c.workers;
    opt.seed = c.seed;
    return opt;
}

// Reported value, or a placeholder when uncertified values are suppressed.
std::string number(const Common& c, const Rational& v, bool certified)
{
    if (c.certified_only && !certified) return "suppressed (heuristic)";
    return to_string(v);
}

WeightScheme load_scheme(const SimplicialComplex& x, const std::string& weights)
{
    if (weights == "mu" || weights == "m") return WeightScheme::by_name(x, weights);
    return WeightScheme::parse_custom(x, read_file(weights), weights);
}

struct Loaded {
    SimplicialComplex x;
    FiniteAbelianGroup a;
    SpacePtr space;
};

Loaded load_space(const Common& c, const std::string& complex_path, const std::string& coeff)
{
    Loaded l;
    l.x = SimplicialComplex::parse(read_file(complex_path), complex_path);
    l.a = FiniteAbelianGroup::parse(coeff);
    l.space = make_space(l.x, l.a, load_scheme(l.x, c.weights));
    return l;
}

void check_degree(const SimplicialComplex& x, int degree)
{
    if (degree < 0 || degree > x.dimension()) {
        throw InputError("degree " + std::to_string(degree) + " outside 0.." + std::to_string(x.dimension()));
    }
}

Cochain load_cochain(const SpacePtr& space, int degree, const std::string& path)
{
    check_degree(space->complex(), degree);
    return parse_cochain(space, degree, read_file(path), path);
}

void add_cochain(Report& r, const std::string& key, const Cochain& c)
{
    auto text = serialize_cochain(c);
    if (text.empty()) r.add(key, "zero");
    else r.lines(key, text);
}

// ---------------------------------------------------------------------------
// Complexes

struct GenerateArgs {
    std::string family;
    std::size_t n = 0;
    int d = 1;
    std::uint32_t q = 2;
    double p = 0.5;
};

std::string cmd_generate(const Common& c, const GenerateArgs& g)
{
    SimplicialComplex x;
    std::vector<std::string> notes;
    if (g.family == "complete") {
        x = complete_complex(g.n, g.d);
    } else if (g.family == "flag") {
        x = flag_complex_subspaces(g.q, g.n == 0 ? 3 : static_cast<std::uint32_t>(g.n));
    } else if (g.family == "cycle") {
        x = cycle_graph(g.n);
    } else if (g.family == "octahedron") {
        x = octahedron_boundary();
    } else if (g.family == "torus7") {
        x = torus_7().complex;
    } else if (g.family == "random") {
        if (!(g.p >= 0 && g.p <= 1)) throw InputError("--p must lie in [0, 1]");
        auto rc = random_complex(g.n, g.d, g.p, c.seed);
        x = rc.complex;
        notes.push_back("retries: " + std::to_string(rc.retries));
        notes.push_back(std::string("purified: ") + (rc.purified ? "yes" : "no"));
        if (!rc.warning.empty()) notes.push_back("warning: " + rc.warning);
    } else {
        throw InputError("unknown family '" + g.family + "' (complete, flag, cycle, octahedron, torus7, random)");
    }
    Report header;
    std::string out;
    std::istringstream hs(header.render("generate", "none", "none", c.seed));
    std::string line;
    while (std::getline(hs, line)) out += "# " + line + "\n";
    out += "# family: " + g.family + "\n";
    for (const auto& n : notes) out += "# " + n + "\n";
    return out + x.serialize();
}

std::string cmd_analyze(const Common& c, const std::string& path, const std::string& coeff)
{
    auto l = load_space(c, path, coeff);
    Report r;
    r.add("complex", path);
    r.add("coefficients", l.a.to_string());
    r.add("vertices", std::to_string(l.x.num_vertices()));
    r.add("dimension", std::to_string(l.x.dimension()));
    std::vector<std::size_t> f;
    for (int k = 0; k <= l.x.dimension(); ++k) f.push_back(l.x.count(k));
    r.add("f-vector", join_numbers(f));
    r.add("euler characteristic", std::to_string(l.x.euler_characteristic()));
    r.add("components", std::to_string(l.x.num_components()));
    for (int k = 0; k <= l.x.dimension(); ++k) {
        auto h = cohomology(l.space, k);
        r.block("H^" + std::to_string(k));
        r.add("order", h.order_string());
        r.add("cyclic factors", h.trivial() ? "none" : join_numbers(h.orders));
        if (k == 0) r.flag("reduced vanishes", l.x.num_components() == 1);
    }
    return r.render("analyze-complex", l.space->scheme().name(), kNormalization, c.seed);
}

std::string cmd_cosystole(const Common& c, const std::string& path, const std::string& coeff, int degree)
{
    auto l = load_space(c, path, coeff);
    check_degree(l.x, degree);
    auto h = cohomology(l.space, degree);
    auto res = cosystole(l.space, degree, search_options(c));
    Report r;
    r.add("complex", path);
    r.add("coefficients", l.space->describe());
    r.add("degree", std::to_string(degree));
    r.add("cohomology order", h.order_string());
    if (res.vacuous) {
        r.add("cosystole", "vacuous (no nonzero class)");
    } else {
        r.add("cosystole", number(c, res.value, res.certified));
        r.flag("exhaustive", res.certified);
        r.add("classes searched", std::to_string(res.classes));
        r.add("class coefficients", join_numbers(res.class_coeffs));
        if (!c.certified_only || res.certified) add_cochain(r, "minimizer", res.minimizer);
    }
    r.certify(res.certified);
    return r.render("cosystole", l.space->scheme().name(), kNormalization, c.seed);
}

void add_expansion(Report& r, const Common& c, const ExpansionConstant& e)
{
    if (e.vacuous) {
        r.add("epsilon", "vacuous (every cochain is a cocycle)");
        return;
    }
    r.add("epsilon", number(c, e.value, e.certified));
    r.add("mode", e.mode);
    if (c.certified_only && !e.certified) return;
    r.add("witness coboundary norm", e.witness_coboundary);
    r.add("witness distance", e.witness_distance);
    add_cochain(r, "witness", e.witness);
}

struct ExpansionArgs {
    std::string complex, coeff = "Z/2", check = "none", target = "0", dims;
    int degree = 0;
};

std::vector<int> parse_dims(const std::string& text, int dim)
{
    std::vector<int> out;
    std::istringstream in(text);
    int v = 0;
    while (in >> v) out.push_back(v);
    if (!in.eof()) throw InputError("malformed --dims '" + text + "'");
    if (text.find_first_not_of(" \t") == std::string::npos) {
        for (int k = 0; k < std::max(dim, 1); ++k) out.push_back(k);
    }
    return out;
}

std::string cmd_expansion(const Common& c, const ExpansionArgs& a)
{
    auto l = load_space(c, a.complex, a.coeff);
    Report r;
    r.add("complex", a.complex);
    r.add("coefficients", l.space->describe());
    auto opt = search_options(c);
    if (a.check == "none") {
        check_degree(l.x, a.degree);
        auto e = expansion_constant(l.space, a.degree, opt);
        r.add("degree", std::to_string(a.degree));
        add_expansion(r, c, e);
        r.certify(e.certified);
    } else if (a.check == "cosystolic" || a.check == "coboundary") {
        auto dims = parse_dims(a.dims, l.x.dimension());
        for (int k : dims) check_degree(l.x, k);
        auto target = parse_rational(a.target);
        auto rep = a.check == "coboundary" ? coboundary_expander_check(l.space, dims, target, opt)
                                           : cosystolic_expander_check(l.space, dims, target, opt);
        r.add("check", a.check);
        r.add("target", target);
        for (const auto& d : rep.degrees) {
            r.block("degree " + std::to_string(d.degree));
            r.add("cohomology order", d.cohomology.order_string());
            if (d.degree == 0) r.flag("reduced vanishes", d.reduced_vanishes);
            if (!rep.coboundary) {
                if (d.cosystole.vacuous) r.add("cosystole", "vacuous (no nonzero class)");
                else r.add("cosystole", number(c, d.cosystole.value, d.cosystole.certified));
                r.flag("cosystole meets target", d.cosystolic_ok);
            }
            add_expansion(r, c, d.expansion);
            r.flag("expansion meets target", d.expansion_ok);
            r.flag("verdict", d.verdict);
        }
        r.block("summary");
        r.flag("verdict", rep.verdict);
        r.certify(rep.certified);
    } else {
        throw InputError("--check must be none, cosystolic or coboundary");
    }
    return r.render("expansion", l.space->scheme().name(), kNormalization, c.seed);
}

struct SpectrumArgs {
    std::string complex, coeff = "Z/2", beta = "1/10";
    int degree = 0;
    bool links = false, km = false;
    double mu = 0.5;
};

void add_skeleton(Report& r, const SkeletonRecord& s)
{
    r.add("face", labels_string(s.face));
    r.add("vertices", std::to_string(s.vertices));
    if (!s.error.empty()) {
        r.add("error", s.error);
        return;
    }
    r.flag("connected", s.connected);
    r.add("lambda", fmt(s.lambda));
    r.add("lambda one-sided", fmt(s.lambda_one_sided));
}

std::string cmd_spectrum(const Common& c, const SpectrumArgs& a)
{
    auto x = SimplicialComplex::parse(read_file(a.complex), a.complex);
    Report r;
    r.add("complex", a.complex);
    r.add("spectral tolerance", fmt(kSpectralTolerance));
    std::string scheme = "m";
    if (a.km) {
        scheme = c.weights;
        auto rep = km_hypotheses_report(x, FiniteAbelianGroup::parse(a.coeff), c.weights, parse_rational(a.beta), a.mu,
                                        search_options(c));
        r.add("coefficients", a.coeff);
        r.add("beta target", rep.beta_target);
        r.add("mu target", fmt(rep.mu_target));
        r.add("degree bound Q", std::to_string(rep.degree_bound));
        for (const auto& link : rep.links) {
            r.block("link");
            add_skeleton(r, link.skeleton);
            if (!link.error.empty()) r.add("expansion error", link.error);
            if (link.coboundary) {
                for (const auto& d : link.coboundary->degrees) {
                    auto key = "epsilon " + std::to_string(d.degree);
                    if (d.expansion.vacuous) r.add(key, "vacuous");
                    else r.add(key, number(c, d.expansion.value, d.expansion.certified));
                }
            }
            r.flag("hypothesis (i)", link.hypothesis_i);
            r.flag("hypothesis (ii)", link.hypothesis_ii);
        }
        r.block("summary");
        r.flag("hypothesis (i)", rep.hypothesis_i);
        r.flag("hypothesis (ii)", rep.hypothesis_ii);
        r.certify(rep.certified);
    } else if (a.links) {
        for (const auto& s : skeleton_expansion(x)) {
            r.block("walk");
            add_skeleton(r, s);
        }
    } else {
        check_degree(x, a.degree);
        auto ev = upper_laplacian_spectrum(x, a.degree);
        std::vector<std::string> parts;
        for (double v : ev) parts.push_back(fmt(v));
        r.add("degree", std::to_string(a.degree));
        r.add("eigenvalues", join(parts));
    }
    return r.render("spectrum", scheme, a.km ? kNormalization : "inner product m(sigma)/k!", c.seed);
}

// ---------------------------------------------------------------------------
// Covers

EdgeLabeling load_labeling(const SimplicialComplex& x, const std::string& path)
{
    return EdgeLabeling::parse(x, read_file(path), path);
}

std::string cmd_build_cover(const Common& c, const std::string& complex, const std::string& labeling)
{
    auto x = SimplicialComplex::parse(read_file(complex), complex);
    auto lab = load_labeling(x, labeling);
    auto y = build_cover(x, lab);
    Report header;
    std::string out;
    std::istringstream hs(header.render("build-cover", "none", "none", c.seed));
    std::string line;
    while (std::getline(hs, line)) out += "# " + line + "\n";
    out += "# fiber: " + std::to_string(y.fiber) + "\n";
    out += "# vertices: " + std::to_string(y.total.num_vertices()) + "\n";
    out += "# components: " + std::to_string(y.total.num_components()) + "\n";
    out += std::string("# transitive: ") + (lab.transitive() ? "yes" : "no") + "\n";
    out += "# vertex label: base label * fiber + sheet\n";
    return out + y.total.serialize();
}

struct CoverArgs {
    std::string complex, coeff = "Z/2", cochain;
    std::vector<std::string> labelings;
    int degree = 1;
};

void add_minimum(Report& r, const Common& c, const std::string& prefix, const CosetMinimum& m)
{
    r.add(prefix + " class norm", number(c, m.value, m.certified));
    r.add(prefix + " mode", m.mode);
}

std::string cmd_shapiro(const Common& c, const CoverArgs& a)
{
    auto l = load_space(c, a.complex, a.coeff);
    auto z = load_cochain(l.space, a.degree, a.cochain);
    auto lab = load_labeling(l.x, a.labelings.at(0));
    auto res = shapiro_check(z, lab, search_options(c));
    Report r;
    r.add("complex", a.complex);
    r.add("labeling", a.labelings[0]);
    r.add("fiber", std::to_string(lab.fiber()));
    r.add("cover vertices", std::to_string(res.cover_vertices));
    r.add("degree", std::to_string(a.degree));
    add_minimum(r, c, "twisted", res.downstairs);
    add_minimum(r, c, "cover", res.upstairs);
    bool certified = res.downstairs.certified && res.upstairs.certified;
    if (c.certified_only && !certified) r.add("equal", "suppressed (heuristic)");
    else r.flag("equal", res.equal);
    r.certify(certified);
    return r.render("shapiro-check", l.space->scheme().name(), kNormalization, c.seed);
}

std::string cmd_pushforward(const Common& c, const CoverArgs& a)
{
    auto l = load_space(c, a.complex, a.coeff);
    auto z = load_cochain(l.space, a.degree, a.cochain);
    auto lab = load_labeling(l.x, a.labelings.at(0));
    auto theta = pushforward_theta(z, lab);
    auto opt = search_options(c);
    auto base = cosystolic_norm(z, opt);
    auto pushed = cosystolic_norm(theta, opt);
    Report r;
    r.add("complex", a.complex);
    r.add("labeling", a.labelings[0]);
    r.add("coefficients", theta.space->describe());
    r.add("degree", std::to_string(a.degree));
    add_cochain(r, "theta", theta);
    add_minimum(r, c, "base", base);
    add_minimum(r, c, "pushforward", pushed);
    bool certified = base.certified && pushed.certified;
    if (c.certified_only && !certified) r.add("contractive", "suppressed (heuristic)");
    else r.flag("contractive", pushed.value <= base.value);
    r.certify(certified);
    return r.render("pushforward", l.space->scheme().name(), kNormalization, c.seed);
}

std::string cmd_vanishing(const Common& c, const CoverArgs& a)
{
    auto l = load_space(c, a.complex, a.coeff);
    auto z = load_cochain(l.space, a.degree, a.cochain);
    auto lab = load_labeling(l.x, a.labelings.at(0));
    auto res = vanishing_test(z, lab);
    Report r;
    r.add("complex", a.complex);
    r.add("labeling", a.labelings[0]);
    r.add("degree", std::to_string(a.degree));
    r.flag("pullback vanishes", res.zero);
    r.flag("witness verified", res.witness_verified);
    if (res.witness.primitive) {
        add_cochain(r, "primitive on cover", *res.witness.primitive);
    } else {
        r.add("certificate factor", std::to_string(res.witness.factor));
        r.add("certificate", join_numbers(res.witness.certificate));
    }
    return r.render("vanishing-test", l.space->scheme().name(), kNormalization, c.seed);
}

std::string cmd_lower_bound(const Common& c, const CoverArgs& a)
{
    auto l = load_space(c, a.complex, a.coeff);
    auto z = load_cochain(l.space, a.degree, a.cochain);
    std::vector<std::pair<std::string, EdgeLabeling>> labs;
    for (const auto& spec : a.labelings) {
        auto eq = spec.find('=');
        auto name = eq == std::string::npos ? spec : spec.substr(0, eq);
        auto path = eq == std::string::npos ? spec : spec.substr(eq + 1);
        labs.emplace_back(name, load_labeling(l.x, path));
    }
    auto rep = lower_bound_report(z, labs, search_options(c));
    Report r;
    r.add("complex", a.complex);
    r.add("degree", std::to_string(a.degree));
    for (const auto& e : rep.entries) {
        r.block("cover " + e.name);
        r.add("fiber", std::to_string(e.fiber));
        if (e.result) add_minimum(r, c, "twisted", *e.result);
        else r.add("skipped", e.skipped);
    }
    r.block("summary");
    if (rep.minimum) r.add("minimum", number(c, *rep.minimum, rep.certified));
    else r.add("minimum", "none (every cover skipped)");
    r.certify(rep.certified);
    return r.render("lower-bound", l.space->scheme().name(), kNormalization, c.seed);
}

// ---------------------------------------------------------------------------
// Sofic approximations

constexpr const char* kHamming = "normalized Hamming, 1/n per moved point";

std::string beta_row(const FiniteAbelianGroup& a, const std::vector<AElement>& row)
{
    std::vector<std::string> parts;
    for (const auto& v : row) parts.push_back(a.format(v));
    return join(parts);
}

struct SoficArgs {
    std::string presentation, hom, extension, section, partition, words = "", epsilon = "1/10";
    std::vector<std::string> candidates;
    std::size_t length = 4, word_budget = 100000, max_exhaustive = 12, restarts = 64;
};

std::string cmd_sofic_report(const Common& c, const SoficArgs& a)
{
    auto p = Presentation::parse(read_file(a.presentation), a.presentation);
    auto phi = AlmostHom::parse(read_file(a.hom), a.hom);
    auto rep = defect_report(phi, p, a.length, a.word_budget);
    Report r;
    r.add("points", std::to_string(phi.n));
    for (std::size_t k = 0; k < p.relators.size(); ++k) {
        r.add("defect " + format_word(p.relators[k]), rep.relator_defects[k]);
    }
    r.add("max relator defect", rep.max_relator_defect);
    r.add("word length", std::to_string(a.length));
    r.add("words", std::to_string(rep.words));
    if (rep.least_free_word) {
        r.add("min freeness", rep.min_freeness);
        r.add("least free word", format_word(*rep.least_free_word));
    }
    r.add("caveat", "words are not tested for triviality in the group");
    return r.render("sofic-report", "none", kHamming, c.seed);
}

struct ExtensionInput {
    ExtensionSpec spec;
    std::unique_ptr<ExtensionApproximation> phi;
};

ExtensionInput load_extension(const SoficArgs& a)
{
    ExtensionInput in;
    in.spec = ExtensionSpec::parse(read_file(a.extension), a.extension);
    auto hom = AlmostHom::parse(read_file(a.hom), a.hom);
    in.phi = std::make_unique<ExtensionApproximation>(std::move(hom), in.spec.a, in.spec.center);
    return in;
}

std::vector<std::uint32_t> parse_points(const std::string& text, const std::string& what)
{
    std::vector<std::uint32_t> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || v < 1) throw InputError("malformed " + what + " entry '" + tok + "'");
        out.push_back(static_cast<std::uint32_t>(v - 1));
    }
    return out;
}

std::vector<std::uint32_t> section_for(const ExtensionApproximation& phi, const std::string& text)
{
    return text.empty() ? base_section(phi) : parse_points(text, "section");
}

void add_orbits(Report& r, const ExtensionApproximation& phi)
{
    r.add("points", std::to_string(phi.hom().n));
    r.add("A", phi.group().to_string());
    r.add("orbits", std::to_string(phi.orbits()));
}

std::string cmd_induce(const Common& c, const SoficArgs& a)
{
    auto in = load_extension(a);
    auto q = induce_quotient(*in.phi);
    Report r;
    add_orbits(r, *in.phi);
    r.add("ambiguity", q.ambiguity);
    r.flag("reassigned", q.reassigned);
    r.lines("quotient", q.quotient.serialize());
    return r.render("induce", "none", kHamming, c.seed);
}

std::string cmd_defect_cocycle(const Common& c, const SoficArgs& a)
{
    auto in = load_extension(a);
    auto q = induce_quotient(*in.phi);
    auto section = section_for(*in.phi, a.section);
    auto b = defect_cocycle(*in.phi, q, section);
    Report r;
    add_orbits(r, *in.phi);
    std::vector<std::uint32_t> shown;
    for (auto p : section) shown.push_back(p + 1);
    r.add("section", join_numbers(shown));
    r.add("off target", std::to_string(b.off_target));
    for (std::size_t g = 0; g < b.gens.size(); ++g) {
        r.add(std::string("beta ") + b.gens[g], beta_row(in.phi->group(), b.beta[g]));
    }
    return r.render("defect-cocycle", "none", kHamming, c.seed);
}

std::string cmd_compare_alpha(const Common& c, const SoficArgs& a)
{
    auto in = load_extension(a);
    auto q = induce_quotient(*in.phi);
    auto b = defect_cocycle(*in.phi, q, section_for(*in.phi, a.section));
    Report r;
    add_orbits(r, *in.phi);
    r.add("ambiguity", q.ambiguity);
    for (const auto& row : compare_delta_beta(*in.phi, q, in.spec, b)) {
        r.block("relator " + format_word(row.relator));
        r.add("alpha", in.spec.a.format(row.alpha));
        r.add("agree", std::to_string(row.agree) + "/" + std::to_string(row.total));
        r.add("fraction", row.fraction);
    }
    return r.render("compare-alpha", "none", kHamming, c.seed);
}

std::string cmd_afree(const Common& c, const SoficArgs& a)
{
    auto in = load_extension(a);
    auto res = afree_vanishing_check(*in.phi, in.spec);
    Report r;
    add_orbits(r, *in.phi);
    r.flag("consistent", res.consistent);
    if (res.primitive) {
        r.flag("verified", res.verified);
        r.flag("section cocycle solves", res.beta_solves);
        for (std::size_t g = 0; g < res.primitive->gens.size(); ++g) {
            r.add(std::string("b ") + res.primitive->gens[g], beta_row(in.phi->group(), res.primitive->beta[g]));
        }
    } else {
        r.add("certificate factor", std::to_string(res.factor));
        r.add("certificate", join_numbers(res.certificate));
    }
    return r.render("afree-check", "none", kHamming, c.seed);
}

std::string cmd_stability(const Common& c, const SoficArgs& a)
{
    auto phi = AlmostHom::parse(read_file(a.hom), a.hom);
    auto part = parse_points(a.partition, "partition");
    std::size_t blocks = 0;
    for (auto b : part) blocks = std::max<std::size_t>(blocks, b + 1);
    std::vector<StabilityCandidate> cands;
    for (const auto& spec : a.candidates) {
        auto eq = spec.find('=');
        auto name = eq == std::string::npos ? spec : spec.substr(0, eq);
        auto path = eq == std::string::npos ? spec : spec.substr(eq + 1);
        cands.push_back({name, AlmostHom::parse(read_file(path), path)});
    }
    std::vector<Word> words;
    std::istringstream ws(a.words);
    std::string tok;
    while (ws >> tok) words.push_back(parse_word(tok));
    if (words.empty()) {
        for (const auto& [g, p] : phi.images) words.push_back(Word{Letter{g, false}});
    }
    StabilityOptions opt;
    opt.budget = static_cast<std::uint64_t>(std::min(c.budget, 1e18));
    opt.max_exhaustive_points = a.max_exhaustive;
    opt.workers = c.workers;
    opt.seed = c.seed;
    opt.restarts = a.restarts;
    auto eps = parse_rational(a.epsilon);
    auto res = stability_match(phi, part, blocks, cands, words, eps, opt);
    Report r;
    r.add("points", std::to_string(phi.n));
    r.add("blocks", std::to_string(blocks));
    std::vector<std::string> wnames;
    for (const auto& w : words) wnames.push_back(format_word(w));
    r.add("words", join(wnames));
    r.add("epsilon", eps);
    for (const auto& m : res.candidates) {
        r.block("candidate " + m.name);
        r.add("points", std::to_string(m.points));
        r.flag("exhaustive", m.exhaustive);
        r.add("discrepancy", number(c, m.discrepancy, m.exhaustive));
        std::vector<std::uint32_t> shown;
        for (auto b : m.blocks) shown.push_back(b + 1);
        if (!c.certified_only || m.exhaustive) r.add("partition", join_numbers(shown));
    }
    r.block("summary");
    r.add("best", res.candidates[res.best].name);
    r.flag("within epsilon", res.within_epsilon);
    r.certify(res.certified);
    return r.render("stability-check", "none", kHamming, c.seed);
}

// ---------------------------------------------------------------------------

double default_budget()
{
    const char* env = std::getenv("COSYS_BUDGET");
    if (!env || !*env) return kDefaultBudget;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw InputError(std::string("malformed COSYS_BUDGET '") + env + "'");
    return v;
}

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--workers", c.workers, "OpenMP worker threads (does not change output)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget", c.budget, "largest exhaustive search space (default: COSYS_BUDGET or 1e12)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "seed for randomized steps");
    sub->add_flag("--certified-only", c.certified_only, "suppress values from heuristic searches");
    sub->add_flag("--heuristic", c.heuristic, "search heuristically instead of failing over budget");
    sub->add_option("-o,--output", c.output, "write the report to this file");
    sub->add_option("--weights", c.weights, "mu, m, or a custom weight file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cochain, cover and sofic-approximation toolkit", "cosys"};
    app.name("cosys");
    app.require_subcommand(1);
    Common common;
    try {
        common.budget = default_budget();
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    std::function<std::string()> action;

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "emit a complex file");
    g->add_option("--family", gen.family, "complete, flag, cycle, octahedron, torus7, random")->required();
    g->add_option("--n", gen.n, "vertex count (flag: subspace dimension)");
    g->add_option("--d", gen.d, "dimension");
    g->add_option("--q", gen.q, "field order for flag complexes");
    g->add_option("--p", gen.p, "face probability for random complexes");
    g->callback([&] { action = [&] { return cmd_generate(common, gen); }; });

    std::string complex_path, coeff = "Z/2";
    int degree = 1;
    auto* an = app.add_subcommand("analyze-complex", "counts and cohomology of a complex");
    an->add_option("--complex", complex_path)->required();
    an->add_option("--coeff", coeff);
    an->callback([&] { action = [&] { return cmd_analyze(common, complex_path, coeff); }; });

    auto* cs = app.add_subcommand("cosystole", "smallest norm of a nonzero class");
    cs->add_option("--complex", complex_path)->required();
    cs->add_option("--coeff", coeff);
    cs->add_option("--degree", degree)->required();
    cs->callback([&] { action = [&] { return cmd_cosystole(common, complex_path, coeff, degree); }; });

    ExpansionArgs ex;
    auto* e = app.add_subcommand("expansion", "expansion constant or expander check");
    e->add_option("--complex", ex.complex)->required();
    e->add_option("--coeff", ex.coeff);
    e->add_option("--degree", ex.degree);
    e->add_option("--check", ex.check, "none, cosystolic or coboundary");
    e->add_option("--target", ex.target, "target constant for checks");
    e->add_option("--dims", ex.dims, "degrees for checks, e.g. \"0 1\"");
    e->callback([&] { action = [&] { return cmd_expansion(common, ex); }; });

    SpectrumArgs sp;
    auto* s = app.add_subcommand("spectrum", "upper Laplacian, link walks, link hypotheses");
    s->add_option("--complex", sp.complex)->required();
    s->add_option("--degree", sp.degree);
    s->add_flag("--links", sp.links, "walk spectra of X and of its links");
    s->add_flag("--km", sp.km, "link hypotheses report");
    s->add_option("--coeff", sp.coeff);
    s->add_option("--beta", sp.beta, "link expansion target");
    s->add_option("--mu", sp.mu, "link walk eigenvalue target");
    s->callback([&] { action = [&] { return cmd_spectrum(common, sp); }; });

    std::string labeling_path;
    auto* bc = app.add_subcommand("build-cover", "emit the covering complex");
    bc->add_option("--complex", complex_path)->required();
    bc->add_option("--labeling", labeling_path)->required();
    bc->callback([&] { action = [&] { return cmd_build_cover(common, complex_path, labeling_path); }; });

    CoverArgs cv;
    auto cover_command = [&](const char* name, const char* help, auto fn, bool many) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("--complex", cv.complex)->required();
        sc->add_option("--coeff", cv.coeff);
        sc->add_option("--cochain", cv.cochain)->required();
        sc->add_option("--degree", cv.degree);
        auto* lo = sc->add_option("--labeling", cv.labelings, many ? "name=path, repeatable" : "labeling file")
                       ->required();
        if (!many) lo->expected(1);
        sc->callback([&, fn] { action = [&, fn] { return fn(common, cv); }; });
        return sc;
    };
    std::vector<CLI::App*> subs{g, an, cs, e, s, bc};
    subs.push_back(cover_command("shapiro-check", "class norm on the twisted side and on the cover", cmd_shapiro, false));
    subs.push_back(cover_command("pushforward", "theta of a cocycle into twisted coefficients", cmd_pushforward, false));
    subs.push_back(cover_command("vanishing-test", "does the pullback become a coboundary", cmd_vanishing, false));
    subs.push_back(cover_command("lower-bound", "twisted class norms over several covers", cmd_lower_bound, true));

    SoficArgs so;
    auto* sr = app.add_subcommand("sofic-report", "relator defects and freeness");
    sr->add_option("--presentation", so.presentation)->required();
    sr->add_option("--hom", so.hom)->required();
    sr->add_option("--length", so.length, "longest word checked for freeness");
    sr->add_option("--word-budget", so.word_budget);
    sr->callback([&] { action = [&] { return cmd_sofic_report(common, so); }; });
    subs.push_back(sr);

    auto extension_command = [&](const char* name, const char* help, auto fn, bool section) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("--hom", so.hom)->required();
        sc->add_option("--extension", so.extension)->required();
        if (section) sc->add_option("--section", so.section, "one point per orbit, 1-based");
        sc->callback([&, fn] { action = [&, fn] { return fn(common, so); }; });
        return sc;
    };
    subs.push_back(extension_command("induce", "action on A-orbits", cmd_induce, false));
    subs.push_back(extension_command("defect-cocycle", "A-displacements of a section", cmd_defect_cocycle, true));
    subs.push_back(extension_command("compare-alpha", "relator sums of beta against alpha", cmd_compare_alpha, true));
    subs.push_back(extension_command("afree-check", "solve for b with relator sums alpha", cmd_afree, false));

    auto* st = app.add_subcommand("stability-check", "match partition statistics against candidate actions");
    st->add_option("--hom", so.hom)->required();
    st->add_option("--partition", so.partition, "block per point, 1-based")->required();
    st->add_option("--candidate", so.candidates, "name=path, repeatable")->required();
    st->add_option("--words", so.words, "words compared (default: the generators)");
    st->add_option("--epsilon", so.epsilon);
    st->add_option("--max-exhaustive", so.max_exhaustive, "largest candidate searched exhaustively");
    st->add_option("--restarts", so.restarts, "local search restarts");
    st->callback([&] { action = [&] { return cmd_stability(common, so); }; });
    subs.push_back(st);

    for (auto* sub : subs) add_common(sub, common);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& h) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& pe) {
        err << "error: " << pe.what() << "\n";
        auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return 2;
    }

    try {
        auto text = action();
        if (common.output.empty()) {
            out << text;
        } else {
            std::ofstream f(common.output, std::ios::binary);
            if (!f) throw InputError("cannot write '" + common.output + "'");
            f << text;
        }
        return 0;
    } catch (const CapacityError& ce) {
        err << "capacity: " << ce.what() << "\n";
        return 3;
    } catch (const InputError& ie) {
        err << "error: " << ie.what() << "\n";
        return 2;
    }
}

}  // namespace cosys::cli
