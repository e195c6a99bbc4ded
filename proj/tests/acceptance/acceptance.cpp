// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "cli.hpp"
#include "cosys/covers.hpp"
#include "cosys/expansion.hpp"
#include "cosys/generators.hpp"
#include "cosys/sofic.hpp"
#include "support/brute.hpp"
#include "support/extensions.hpp"

using namespace cosys;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass) detail = why;
        pass = false;
    }
};

std::vector<SimplicialComplex> corpus()
{
    std::vector<SimplicialComplex> out{complete_complex(3, 2), complete_complex(4, 2), complete_complex(5, 3),
                                       complete_complex(6, 2), octahedron_boundary(), torus_7().complex};
    for (std::uint64_t seed = 1; out.size() < 56; ++seed) {
        std::size_t n = 5 + seed % 8;  // 5..12
        int d = 2 + static_cast<int>(seed % 2);
        double p = 0.15 + 0.1 * static_cast<double>(seed % 5);
        out.push_back(random_complex(n, d, p, seed).complex);
    }
    return out;
}

// 1. Weight identities.
Outcome weights_identities(const std::vector<SimplicialComplex>& xs)
{
    Outcome o;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& x = xs[i];
        if (x.num_vertices() > 12 || x.dimension() > 3) o.fail("corpus complex " + std::to_string(i) + " too large");
        for (int k = 0; k <= x.dimension(); ++k) {
            Rational sum = 0;
            for (std::uint32_t s = 0; s < x.count(k); ++s) sum += weight_mu(x, k, s);
            if (sum != 1) o.fail("mu mass " + to_string(sum) + " on complex " + std::to_string(i));
            if (k == x.dimension()) continue;
            for (std::uint32_t s = 0; s < x.count(k); ++s) {
                Rational up = 0;
                for (auto t : x.cofaces(k, s)) up += weight_m(x, k + 1, t);
                if (up != weight_m(x, k, s)) o.fail("m identity on complex " + std::to_string(i));
            }
        }
    }
    o.detail = o.pass ? std::to_string(xs.size()) + " complexes" : o.detail;
    return o;
}

// 2. d d = 0 on random cochains.
Outcome delta_squared(const std::vector<SimplicialComplex>& xs)
{
    const std::vector<std::string> groups{"Z/2", "Z/3", "Z/4", "Z/2 x Z/2"};
    Outcome o;
    std::size_t checked = 0, bad = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : checked, bad)
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].dimension() < 2) continue;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            auto space = make_space(xs[i], FiniteAbelianGroup::parse(groups[gi]), WeightScheme::mu(xs[i]));
            std::mt19937_64 rng(i * 16 + gi);
            const auto q = space->group().order();
            for (int trial = 0; trial < 1000; ++trial) {
                int k = static_cast<int>(rng() % static_cast<std::uint64_t>(xs[i].dimension() - 1));
                Cochain c = Cochain::zero(space, k);
                for (auto& v : c.values) v = static_cast<std::uint32_t>(rng() % q);
                ++checked;
                bad += !coboundary(coboundary(c)).is_zero();
            }
        }
    }
    if (bad) o.fail(std::to_string(bad) + " nonzero dd");
    else o.detail = std::to_string(checked) + " cochains";
    return o;
}

// 3. Analyzer versus unpruned enumeration.
Outcome oracle_equivalence()
{
    struct Case {
        std::string name;
        SpacePtr space;
        int degree;
    };
    auto mu = [](const SimplicialComplex& x, const char* a) {
        return make_space(x, FiniteAbelianGroup::parse(a), WeightScheme::mu(x));
    };
    auto m = [](const SimplicialComplex& x, const char* a) {
        return make_space(x, FiniteAbelianGroup::parse(a), WeightScheme::m(x));
    };
    auto c3 = cycle_graph(3), k4 = complete_complex(4, 1), tri = complete_complex(3, 2);
    auto c6 = torus_7().complex.link({0});
    auto k4s = complete_complex(4, 2), oct = octahedron_boundary(), torus = torus_7().complex;
    std::vector<Case> cases{
        {"C3 Z/2", mu(c3, "Z/2"), 0},        {"C3 Z/2", mu(c3, "Z/2"), 1},       {"C3 Z/3", mu(c3, "Z/3"), 1},
        {"K4 Z/2", mu(k4, "Z/2"), 0},        {"K4 Z/2", mu(k4, "Z/2"), 1},       {"K4 Z/2xZ/2", mu(k4, "Z/2 x Z/2"), 0},
        {"triangle Z/2", mu(tri, "Z/2"), 0}, {"triangle Z/2", mu(tri, "Z/2"), 1}, {"triangle Z/4", mu(tri, "Z/4"), 1},
        {"triangle Z/2", mu(tri, "Z/2"), 2}, {"C6 link Z/2", mu(c6, "Z/2"), 0},  {"C6 link Z/2", mu(c6, "Z/2"), 1},
        {"C6 link Z/3", mu(c6, "Z/3"), 0},   {"C6 link m", m(c6, "Z/2"), 0},     {"K4 2-skeleton", mu(k4s, "Z/2"), 0},
        {"K4 2-skeleton", mu(k4s, "Z/2"), 1}, {"octahedron", mu(oct, "Z/2"), 0}, {"octahedron", mu(oct, "Z/2"), 1},
        {"octahedron", m(oct, "Z/2"), 2},    {"torus", mu(torus, "Z/2"), 0},     {"torus", mu(torus, "Z/2"), 1},
    };
    Outcome o;
    std::size_t norms = 0, constants = 0;
    SearchOptions opt;
    std::mt19937_64 rng(9);
    for (const auto& cs : cases) {
        const auto& s = cs.space;
        const double q = static_cast<double>(s->group().order());
        auto log2_cells = [&](int k) { return k < 0 ? 0.0 : std::log2(q) * static_cast<double>(s->cells(k)); };
        // Coset minima of every class, each shifted by a random coboundary.
        if (cs.degree >= 1 && log2_cells(cs.degree - 1) <= 20) {
            auto h = cohomology(s, cs.degree);
            std::vector<std::uint64_t> coeff(h.generators.size(), 0);
            while (true) {
                auto z = h.combination(coeff);
                Cochain b = Cochain::zero(s, cs.degree - 1);
                for (auto& v : b.values) v = static_cast<std::uint32_t>(rng() % s->group().order());
                z = add(z, coboundary(b));
                auto got = cosystolic_norm(z, opt);
                if (!got.certified || got.value != brute::coset_minimum(z)) o.fail("coset minimum on " + cs.name);
                ++norms;
                std::size_t k = 0;
                while (k < coeff.size() && ++coeff[k] == h.orders[k]) coeff[k++] = 0;
                if (k == coeff.size()) break;
            }
        }
        if (log2_cells(cs.degree) <= 20) {
            auto got = expansion_constant(s, cs.degree, opt);
            auto want = brute::expansion_constant(s, cs.degree);
            bool same = want < 0 ? got.vacuous : (!got.vacuous && got.certified && got.value == want);
            if (!same) o.fail("expansion constant on " + cs.name + " degree " + std::to_string(cs.degree));
            ++constants;
        }
    }
    if (o.pass) o.detail = std::to_string(norms) + " coset minima, " + std::to_string(constants) + " constants";
    return o;
}

// 4. Twisted class norm equals the class norm on the cover.
Outcome shapiro_isometry()
{
    Outcome o;
    std::size_t instances = 0, comparisons = 0;
    auto c3 = make_space(cycle_graph(3), FiniteAbelianGroup::cyclic(2), WeightScheme::mu(cycle_graph(3)));
    auto gen = cohomology(c3, 1).generators.at(0);
    for (std::size_t k : {2, 3, 4}) {
        auto r = shapiro_check(gen, cycle_labeling(c3->complex(), Permutation::cycle(k)), {});
        if (!r.equal || !r.downstairs.certified || !r.upstairs.certified) o.fail("C3 " + std::to_string(k) + "-fold");
        ++instances;
        ++comparisons;
    }
    auto t = torus_7();
    auto ts = make_space(t.complex, FiniteAbelianGroup::cyclic(2), WeightScheme::mu(t.complex));
    auto h1 = cohomology(ts, 1);
    auto top = cup(h1.generators[0], h1.generators[1]);
    auto swap = Permutation::transposition(2, 0, 1), id2 = Permutation::identity(2);
    std::vector<std::pair<std::string, EdgeLabeling>> covers{
        {"a double", torus_labeling(t, swap, id2)},
        {"b double", torus_labeling(t, id2, swap)},
        {"cyclic 4-fold", torus_labeling(t, Permutation::cycle(4), Permutation::identity(4))},
    };
    for (const auto& [name, lab] : covers) {
        ++instances;
        for (const auto& z : {h1.generators[0], h1.generators[1], add(h1.generators[0], h1.generators[1]), top}) {
            auto r = shapiro_check(z, lab, {});
            if (!r.equal || !r.downstairs.certified || !r.upstairs.certified) o.fail("torus " + name);
            ++comparisons;
        }
    }
    if (o.pass) o.detail = std::to_string(instances) + " covers, " + std::to_string(comparisons) + " classes";
    return o;
}

// 5. Class norms along towers of covers.
Outcome contractivity()
{
    Outcome o;
    std::size_t steps = 0;
    auto tower = [&](const std::string& name, const Cochain& z, const std::vector<EdgeLabeling>& chain) {
        Rational prev = cosystolic_norm(z, {}).value;
        for (const auto& lab : chain) {
            auto v = cosystolic_norm(pushforward_theta(z, lab), {}).value;
            if (v > prev) o.fail(name + ": " + to_string(v) + " > " + to_string(prev));
            prev = v;
            ++steps;
        }
    };
    for (std::uint32_t m : {2u, 3u}) {
        for (std::size_t n : {3u, 4u}) {
            auto x = cycle_graph(n);
            auto s = make_space(x, FiniteAbelianGroup::cyclic(m), WeightScheme::mu(x));
            for (const auto& z : cohomology(s, 1).generators) {
                // Towers where each fiber count divides the next.
                auto towers = m == 2 ? std::vector<std::vector<std::size_t>>{{2, 4, 8}, {3, 6}}
                                     : std::vector<std::vector<std::size_t>>{{3, 9}, {2, 4}};
                for (const auto& ks : towers) {
                    std::vector<EdgeLabeling> chain;
                    for (auto k : ks) chain.push_back(cycle_labeling(x, Permutation::cycle(k)));
                    tower("C" + std::to_string(n), z, chain);
                }
            }
        }
    }
    auto t = torus_7();
    auto ts = make_space(t.complex, FiniteAbelianGroup::cyclic(2), WeightScheme::mu(t.complex));
    auto h1 = cohomology(ts, 1);
    auto swap = Permutation::transposition(2, 0, 1), id2 = Permutation::identity(2);
    std::vector<EdgeLabeling> chain{torus_labeling(t, swap, id2),
                                    torus_labeling(t, Permutation::cycle(4), Permutation::identity(4))};
    for (const auto& z : {h1.generators[0], h1.generators[1], cup(h1.generators[0], h1.generators[1])}) {
        tower("torus", z, chain);
    }
    if (o.pass) o.detail = std::to_string(steps) + " tower steps, no increase";
    return o;
}

// 6. Relator-sum system solvable on exact extension actions.
Outcome vanishing_consistency()
{
    Outcome o;
    std::size_t n = 0;
    for (const auto& e : ext::library()) {
        if (e.order > 16) o.fail(e.name + " larger than 16");
        auto r = afree_vanishing_check(ExtensionApproximation(e.phi, e.spec.a, e.spec.center), e.spec);
        if (!r.consistent) o.fail(e.name + " returned an infeasibility certificate");
        else if (!r.verified) o.fail(e.name + " primitive failed verification");
        ++n;
    }
    if (o.pass) o.detail = std::to_string(n) + " extensions, 0 certificates";
    return o;
}

// Agreement counts recomputed from raw permutations; single cyclic A.
std::vector<std::size_t> agreement_oracle(const AlmostHom& phi, const ExtensionSpec& spec)
{
    const auto& z = phi.images.at(spec.center.at(0));
    const std::uint32_t m = spec.a.factors().at(0);
    std::vector<std::uint32_t> orbit(phi.n, ~0u), base;
    for (std::uint32_t p = 0; p < phi.n; ++p) {
        if (orbit[p] != ~0u) continue;
        for (std::uint32_t x = p, k = 0; k < m; ++k, x = z(x)) orbit[x] = static_cast<std::uint32_t>(base.size());
        base.push_back(p);
    }
    const auto orbits = base.size();
    auto offset = [&](std::uint32_t x) {
        std::uint32_t y = base[orbit[x]], k = 0;
        while (y != x) y = z(y), ++k;
        return k;
    };
    std::map<char, std::vector<std::uint32_t>> target, beta;
    for (char s : spec.quotient.gens) {
        const auto& perm = phi.images.at(s);
        std::vector<std::vector<int>> votes(orbits, std::vector<int>(orbits, 0));
        for (std::uint32_t p = 0; p < phi.n; ++p) ++votes[orbit[p]][orbit[perm(p)]];
        std::vector<std::uint32_t> cand(orbits), best;
        std::iota(cand.begin(), cand.end(), 0u);
        int most = -1;
        do {
            int v = 0;
            for (std::size_t o = 0; o < orbits; ++o) v += votes[o][cand[o]];
            if (v > most) most = v, best = cand;
        } while (std::next_permutation(cand.begin(), cand.end()));
        target[s] = best;
        for (std::size_t o = 0; o < orbits; ++o) {
            auto x = perm(base[o]);
            beta[s].push_back((offset(x) + m - offset(base[orbit[x]])) % m);
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < spec.quotient.relators.size(); ++k) {
        const auto& r = spec.quotient.relators[k];
        std::size_t agree = 0;
        for (std::uint32_t o = 0; o < orbits; ++o) {
            std::uint32_t cur = o, sum = 0;
            for (auto it = r.rbegin(); it != r.rend(); ++it) {
                const auto& t = target[it->gen];
                if (!it->inverse) {
                    sum = (sum + beta[it->gen][cur]) % m;
                    cur = t[cur];
                } else {
                    cur = static_cast<std::uint32_t>(std::find(t.begin(), t.end(), cur) - t.begin());
                    sum = (sum + m - beta[it->gen][cur]) % m;
                }
            }
            agree += cur == o && sum == spec.alpha[k].coords[0];
        }
        out.push_back(agree);
    }
    return out;
}

// 7. Agreement of relator sums with alpha, exact and after corruption.
Outcome defect_agreement()
{
    Outcome o;
    std::size_t corruptions = 0;
    Rational worst_c = 0;
    for (const auto& e : ext::library()) {
        if (e.spec.a.rank() != 1) continue;
        const auto n = e.phi.n;
        const auto card = static_cast<std::int64_t>(e.spec.a.order());
        {
            ExtensionApproximation phi(e.phi, e.spec.a, e.spec.center);
            auto q = induce_quotient(phi);
            for (const auto& r : compare_delta_beta(phi, q, e.spec, defect_cocycle(phi, q, base_section(phi)))) {
                if (r.fraction != 1) o.fail(e.name + " exact agreement below 1");
            }
        }
        for (char s : e.spec.quotient.gens) {
            for (std::uint32_t p = 0; p < n; ++p) {
                for (std::uint32_t x = p + 1; x < n; ++x) {
                    auto bad = e.phi;
                    bad.images[s] = bad.images.at(s) * Permutation::transposition(n, p, x);
                    ExtensionApproximation phi(bad, e.spec.a, e.spec.center);
                    auto q = induce_quotient(phi);
                    auto rows = compare_delta_beta(phi, q, e.spec, defect_cocycle(phi, q, base_section(phi)));
                    auto oracle = agreement_oracle(bad, e.spec);
                    ++corruptions;
                    for (std::size_t k = 0; k < rows.size(); ++k) {
                        if (rows[k].agree != oracle[k]) o.fail(e.name + " disagrees with the oracle");
                        auto letters = static_cast<std::int64_t>(rows[k].relator.size());
                        // Observed drop in units of 1/(n * letters).
                        Rational c = (1 - rows[k].fraction) * static_cast<std::int64_t>(n) / letters;
                        worst_c = std::max(worst_c, c);
                        if (c > 2 * card) o.fail(e.name + " drop exceeds 2|A|/n per letter");
                    }
                }
            }
        }
    }
    if (o.pass) {
        o.detail = std::to_string(corruptions) + " corruptions, largest drop " + to_string(worst_c) +
                   "/n per letter (bound 2|A|/n)";
    }
    return o;
}

// 8. Spectra of complete and disconnected graphs.
Outcome spectra()
{
    Outcome o;
    for (std::size_t n = 3; n <= 8; ++n) {
        auto ev = upper_laplacian_spectrum(complete_complex(n, 1), 0);
        double want = static_cast<double>(n) / static_cast<double>(n - 1);
        if (ev.size() != n || std::abs(ev[0]) > 1e-9) o.fail("K" + std::to_string(n) + " kernel");
        for (std::size_t i = 1; i < ev.size(); ++i) {
            if (std::abs(ev[i] - want) > 1e-9 * want) o.fail("K" + std::to_string(n) + " eigenvalue");
        }
    }
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        // Two to four blocks, each a random connected graph on 2..5 vertices.
        std::size_t blocks = 2 + rng() % 3;
        std::vector<std::vector<Label>> edges;
        Label next = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            std::size_t size = 2 + rng() % 4;
            for (std::size_t v = 1; v < size; ++v) edges.push_back({next + static_cast<Label>(rng() % v), next + static_cast<Label>(v)});
            for (std::size_t u = 0; u < size; ++u) {
                for (std::size_t v = u + 1; v < size; ++v) {
                    if (rng() % 3 == 0) edges.push_back({next + static_cast<Label>(u), next + static_cast<Label>(v)});
                }
            }
            next += static_cast<Label>(size);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        auto x = SimplicialComplex::build(edges);
        auto ev = upper_laplacian_spectrum(x, 0);
        std::size_t zeros = 0;
        for (double v : ev) zeros += std::abs(v) < 1e-9;
        if (zeros != x.num_components() || zeros != blocks) o.fail("kernel dimension on random graph " + std::to_string(trial));
    }
    if (o.pass) o.detail = "K3..K8 and 20 disconnected graphs";
    return o;
}

// 9. Building: degree-0 expansion of the Fano flag complex.
Outcome building()
{
    Outcome o;
    auto x = flag_complex_subspaces(2, 3);
    auto s = make_space(x, FiniteAbelianGroup::cyclic(2), WeightScheme::mu(x));
    auto rep = coboundary_expander_check(s, {0}, 0, {});
    const auto& d0 = rep.degrees.at(0);
    auto oracle = brute::expansion_constant(s, 0);
    auto h1 = cohomology(s, 1);
    if (!d0.expansion.certified || d0.expansion.vacuous || d0.expansion.value <= 0) o.fail("no certified positive constant");
    if (d0.expansion.value != oracle) o.fail("analyzer " + to_string(d0.expansion.value) + " vs oracle " + to_string(oracle));
    if (!d0.reduced_vanishes) o.fail("reduced H^0 nonzero");
    if (o.pass) {
        o.detail = "epsilon_0 = " + to_string(d0.expansion.value) + " (oracle " + to_string(oracle) + "), |H^1(Z/2)| = " +
                   h1.order_string();
    }
    return o;
}

// 10. Reports do not depend on the worker count.
Outcome determinism()
{
    const std::string data = COSYS_DATA_DIR;
    std::vector<std::vector<std::string>> commands{
        {"generate", "--family", "random", "--n", "9", "--d", "2", "--p", "0.4", "--seed", "5"},
        {"analyze-complex", "--complex", data + "/torus7.cx"},
        {"cosystole", "--complex", data + "/torus7.cx", "--degree", "1"},
        {"cosystole", "--complex", data + "/torus7.cx", "--degree", "2", "--coeff", "Z/3"},
        {"expansion", "--complex", data + "/fano_flags.cx", "--degree", "0"},
        {"expansion", "--complex", data + "/torus7.cx", "--check", "cosystolic", "--target", "1/10", "--dims", "0 1"},
        {"expansion", "--complex", data + "/torus7.cx", "--degree", "1", "--heuristic", "--budget", "1000"},
        {"spectrum", "--complex", data + "/torus7.cx", "--km"},
        {"shapiro-check", "--complex", data + "/torus7.cx", "--cochain", data + "/torus7_a.coc", "--labeling",
         data + "/torus7_b_double.lab"},
        {"pushforward", "--complex", data + "/c3.cx", "--cochain", data + "/c3_edge.coc", "--labeling",
         data + "/c3_triple.lab"},
        {"lower-bound", "--complex", data + "/c3.cx", "--cochain", data + "/c3_edge.coc", "--labeling",
         "two=" + data + "/c3_double.lab", "--labeling", "three=" + data + "/c3_triple.lab"},
        {"vanishing-test", "--complex", data + "/c3.cx", "--cochain", data + "/c3_edge.coc", "--labeling",
         data + "/c3_double.lab"},
        {"compare-alpha", "--hom", data + "/q8.hom", "--extension", data + "/q8.ext"},
        {"afree-check", "--hom", data + "/heisenberg2.hom", "--extension", data + "/heisenberg2.ext"},
        {"stability-check", "--hom", data + "/five_cycle.hom", "--partition", "1 1 2 2 2", "--candidate",
         "Z5=" + data + "/five_cycle.hom", "--candidate", "Z6=" + data + "/six_cycle.hom", "--words", "a aa"},
        {"stability-check", "--hom", data + "/six_cycle.hom", "--partition", "1 2 1 2 1 2", "--candidate",
         "Z6=" + data + "/six_cycle.hom", "--max-exhaustive", "3"},
    };
    Outcome o;
    for (const auto& cmd : commands) {
        std::string reports[2];
        int status[2];
        const char* workers[2] = {"1", "8"};
        for (int w = 0; w < 2; ++w) {
            std::vector<std::string> args{"cosys"};
            args.insert(args.end(), cmd.begin(), cmd.end());
            args.push_back("--workers");
            args.push_back(workers[w]);
            std::ostringstream out, err;
            status[w] = cli::run(args, out, err);
            reports[w] = out.str();
            if (status[w] != 0) o.fail(cmd[0] + " exited " + std::to_string(status[w]) + ": " + err.str());
        }
        if (reports[0] != reports[1]) o.fail(cmd[0] + " output depends on --workers");
    }
    if (o.pass) o.detail = std::to_string(commands.size()) + " reports byte-identical at 1 and 8 workers";
    return o;
}

}  // namespace

int main()
{
    using clock = std::chrono::steady_clock;
    auto xs = corpus();
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> list{
        {1, "weight identities", 10, [&] { return weights_identities(xs); }},
        {2, "coboundary squares to zero", 30, [&] { return delta_squared(xs); }},
        {3, "oracle equivalence", 300, oracle_equivalence},
        {4, "cover isometry", 600, shapiro_isometry},
        {5, "contractivity", 600, contractivity},
        {6, "vanishing consistency", 60, vanishing_consistency},
        {7, "defect cocycle agreement", 60, defect_agreement},
        {8, "spectral sanity", 600, spectra},
        {9, "building expansion", 600, building},
        {10, "worker determinism", 600, determinism},
    };
    int failed = 0;
    for (const auto& c : list) {
        auto start = clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(clock::now() - start).count();
        if (secs > c.limit_seconds) o.fail("took " + std::to_string(secs) + " s");
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << c.name << " [" << timing
                  << "]: " << o.detail << std::endl;
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
