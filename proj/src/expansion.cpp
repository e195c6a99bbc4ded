#include "cosys/expansion.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "cosys/errors.hpp"
#include "cosys/kernels/expansion_scan.hpp"

namespace cosys {

namespace {

// dist(., Z^i) as min over classes h of the coset minimum of c - h.
class CocycleDistance {
public:
    CocycleDistance(SpacePtr space, int degree, const SearchOptions& opt)
        : frame_(make_coset_frame(space, degree))
    {
        if (frame_.log2_space() > std::log2(opt.budget)) {
            throw CapacityError("distance search space " + frame_.space_string() + " exceeds budget " +
                                format_budget(opt.budget));
        }
        auto h = cohomology(space, degree);
        mpz_class total = 1;
        for (auto o : h.orders) total *= static_cast<unsigned long>(o);
        if (total > mpz_class(static_cast<unsigned long>(opt.class_budget))) {
            throw CapacityError("H^" + std::to_string(degree) + " has " + total.get_str() +
                                " elements, more than the class budget " + std::to_string(opt.class_budget));
        }
        std::vector<std::uint64_t> coeffs(h.orders.size(), 0);
        while (true) {
            classes_.push_back(negate(h.combination(coeffs)).values);
            std::size_t k = coeffs.size();
            while (k > 0 && ++coeffs[k - 1] == h.orders[k - 1]) coeffs[--k] = 0;
            if (k == 0) break;
        }
    }

    std::int64_t operator()(const std::vector<std::uint32_t>& c, std::int64_t stop_at) const
    {
        const auto& g = frame_.space->tables();
        std::int64_t best = kernels::kNoBound;
        std::vector<std::uint32_t> base(c.size());
        for (const auto& h : classes_) {
            for (std::size_t i = 0; i < c.size(); ++i) base[i] = g.add(c[i], h[i]);
            auto r = kernels::coset_min_serial(frame_.problem, base, best, stop_at);
            if (r.found) best = r.value;
            if (stop_at >= 0 && best <= stop_at) break;
        }
        return best;
    }

private:
    CosetFrame frame_;
    std::vector<std::vector<std::uint32_t>> classes_;  // -h for every class h
};

}  // namespace

Rational distance_to_cocycles(const Cochain& c, const SearchOptions& opt)
{
    CocycleDistance dist(c.space, c.degree, opt);
    return c.space->weights(c.degree).fraction(dist(c.values, -1));
}

ExpansionConstant expansion_constant(SpacePtr space, int degree, const SearchOptions& opt)
{
    if (degree < 0 || degree > space->dimension()) throw ShapeError("expansion degree out of range");
    ExpansionConstant out;
    if (degree == space->dimension()) {
        out.vacuous = true;
        return out;
    }
    kernels::ScanProblem p;
    p.tables = &space->tables();
    p.num_cells = space->cells(degree);
    p.cell_weight = space->weights(degree).numerators;
    p.target_weight = space->weights(degree + 1).numerators;
    auto gauge = space->gauge_cells(degree);
    for (std::uint32_t c = 0; c < p.num_cells; ++c) {
        if (!gauge[c]) p.var_cell.push_back(c);
    }
    // Transpose d_i restricted to the free cells.
    const auto& d = space->delta(degree);
    std::vector<std::vector<std::pair<std::uint32_t, std::int8_t>>> by_cell(p.num_cells);
    for (std::uint32_t row = 0; row < d.rows; ++row) {
        for (auto i = d.start[row]; i < d.start[row + 1]; ++i) by_cell[d.col[i]].push_back({row, d.coef[i]});
    }
    p.var_start.push_back(0);
    for (auto c : p.var_cell) {
        for (auto [t, coef] : by_cell[c]) {
            p.var_target.push_back(t);
            p.var_coef.push_back(coef);
        }
        p.var_start.push_back(static_cast<std::uint32_t>(p.var_target.size()));
    }

    CocycleDistance dist(space, degree, opt);
    kernels::DistanceFn fn = [&dist](const std::vector<std::uint32_t>& c, std::int64_t stop_at) {
        return dist(c, stop_at);
    };
    const double log2_space = static_cast<double>(p.num_vars()) * std::log2(static_cast<double>(space->group().order()));
    kernels::ScanResult r;
    if (log2_space > std::log2(opt.budget)) {
        if (!opt.heuristic) {
            throw CapacityError("expansion search space " + format_space_size(space->group().order(), p.num_vars()) +
                                " exceeds budget " + format_budget(opt.budget) +
                                "; rerun with heuristic mode for an upper bound");
        }
        r = kernels::expansion_scan_sample(p, fn, opt.seed, opt.samples);
        out.certified = false;
        out.mode = "sampled";
    } else {
        r = kernels::expansion_scan_parallel(p, fn, opt.workers);
        out.mode = "exhaustive";
    }
    if (!r.found) {
        out.vacuous = true;
        return out;
    }
    out.witness = Cochain{space, degree, r.witness};
    out.witness_coboundary = space->weights(degree + 1).fraction(r.coboundary_norm);
    out.witness_distance = space->weights(degree).fraction(r.distance);
    out.value = out.witness_coboundary / out.witness_distance;
    return out;
}

namespace {

ExpansionReport expander_check(SpacePtr space, const std::vector<int>& dims, const Rational& target,
                               const SearchOptions& opt, bool coboundary)
{
    ExpansionReport out;
    out.coboundary = coboundary;
    out.target = target;
    out.verdict = true;
    for (int i : dims) {
        if (i < 0 || i > space->dimension()) throw ShapeError("degree " + std::to_string(i) + " out of range");
        DegreeRecord rec;
        rec.degree = i;
        rec.cohomology = cohomology(space, i);
        if (i == 0) {
            // Constant cochains are cocycles; reduced H^0 vanishes when they
            // are all of H^0.
            mpz_class total = 1;
            for (auto o : rec.cohomology.orders) total *= static_cast<unsigned long>(o);
            rec.reduced_vanishes = total == mpz_class(static_cast<unsigned long>(space->group().order()));
        } else {
            rec.reduced_vanishes = rec.cohomology.trivial();
        }
        rec.cosystole = cosystole(space, i, opt);
        rec.expansion = expansion_constant(space, i, opt);
        rec.cosystolic_ok = rec.cosystole.vacuous || rec.cosystole.value >= target;
        rec.expansion_ok = rec.expansion.vacuous || rec.expansion.value >= target;
        rec.verdict = rec.cosystolic_ok && rec.expansion_ok && (!coboundary || rec.reduced_vanishes);
        out.verdict = out.verdict && rec.verdict;
        out.certified = out.certified && rec.cosystole.certified && rec.expansion.certified;
        out.degrees.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

ExpansionReport cosystolic_expander_check(SpacePtr space, const std::vector<int>& dims, const Rational& target,
                                          const SearchOptions& opt)
{
    return expander_check(std::move(space), dims, target, opt, false);
}

ExpansionReport coboundary_expander_check(SpacePtr space, const std::vector<int>& dims, const Rational& target,
                                          const SearchOptions& opt)
{
    return expander_check(std::move(space), dims, target, opt, true);
}

std::vector<double> upper_laplacian_spectrum(const SimplicialComplex& x, int k)
{
    if (k < 0 || k > x.dimension()) throw ShapeError("spectrum degree out of range");
    const auto n = x.count(k);
    if (n > kMaxSpectralSize) {
        throw CapacityError(std::to_string(n) + " simplices in degree " + std::to_string(k) +
                            " exceed the eigensolver budget " + std::to_string(kMaxSpectralSize));
    }
    if (k == x.dimension()) return std::vector<double>(n, 0.0);
    // Inner product weight m(sigma)/deg!.
    auto w = [&](int deg, std::uint32_t s) {
        double f = 1.0;
        for (int i = 2; i <= deg; ++i) f *= i;
        return weight_m(x, deg, s).get_d() / f;
    };
    // S = W_k^{-1/2} D^T W_{k+1} D W_k^{-1/2} is similar to W_k^{-1} D^T W_{k+1} D.
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<double> inv_sqrt(n);
    for (std::uint32_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(w(k, i));
    for (std::uint32_t t = 0; t < x.count(k + 1); ++t) {
        const double wt = w(k + 1, t);
        for (int a = 0; a <= k + 1; ++a) {
            auto fa = x.facet(k + 1, t, a);
            double sa = (a % 2 ? -1.0 : 1.0) * inv_sqrt[fa];
            for (int b = 0; b <= k + 1; ++b) {
                auto fb = x.facet(k + 1, t, b);
                double sb = (b % 2 ? -1.0 : 1.0) * inv_sqrt[fb];
                s(fa, fb) += wt * sa * sb;
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    double scale = 1.0;
    for (double v : ev) scale = std::max(scale, std::abs(v));
    for (double& v : ev) {
        if (std::abs(v) < kSpectralTolerance * scale) v = 0.0;
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

SkeletonRecord walk_spectrum(const SimplicialComplex& link, std::vector<Label> face)
{
    SkeletonRecord rec;
    rec.face = std::move(face);
    rec.vertices = link.num_vertices();
    rec.connected = link.num_components() <= 1;
    if (link.dimension() < 1) return rec;
    rec.has_edges = true;
    const auto n = link.num_vertices();
    if (n > kMaxSpectralSize) {
        rec.error = std::to_string(n) + " vertices exceed the eigensolver budget " + std::to_string(kMaxSpectralSize);
        return rec;
    }
    // Walk P(u,v) = m(uv)/deg(u), symmetrized as D^{-1/2} M D^{-1/2}.
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<double> deg(n, 0.0);
    for (std::uint32_t e = 0; e < link.count(1); ++e) {
        auto v = link.simplex(1, e);
        double m = weight_m(link, 1, e).get_d();
        s(v[0], v[1]) += m;
        s(v[1], v[0]) += m;
        deg[v[0]] += m;
        deg[v[1]] += m;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) s(i, j) /= std::sqrt(deg[i] * deg[j]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    rec.lambda_one_sided = n >= 2 ? ev[1] : 0.0;
    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(ev[i]);
    std::sort(mag.begin(), mag.end(), std::greater<>());
    rec.lambda = n >= 2 ? mag[1] : 0.0;
    for (double* v : {&rec.lambda, &rec.lambda_one_sided}) {
        if (std::abs(*v) < kSpectralTolerance) *v = 0.0;
    }
    return rec;
}

namespace {

std::vector<std::vector<Label>> link_faces(const SimplicialComplex& x)
{
    std::vector<std::vector<Label>> out{{}};
    for (int k = 0; k + 2 <= x.dimension(); ++k) {
        for (std::uint32_t s = 0; s < x.count(k); ++s) out.push_back(x.labels(k, s));
    }
    return out;
}

}  // namespace

std::vector<SkeletonRecord> skeleton_expansion(const SimplicialComplex& x)
{
    std::vector<SkeletonRecord> out;
    for (auto& face : link_faces(x)) out.push_back(walk_spectrum(x.link(face), face));
    return out;
}

KmReport km_hypotheses_report(const SimplicialComplex& x, const FiniteAbelianGroup& a, const std::string& scheme,
                              const Rational& beta_target, double mu_target, const SearchOptions& opt)
{
    KmReport out;
    out.beta_target = beta_target;
    out.mu_target = mu_target;
    for (std::uint32_t v = 0; v < x.num_vertices(); ++v) out.degree_bound = std::max(out.degree_bound, x.top_cofaces(0, v));
    out.hypothesis_i = out.hypothesis_ii = true;
    for (auto& face : link_faces(x)) {
        LinkRecord rec;
        auto link = x.link(face);
        rec.skeleton = walk_spectrum(link, face);
        rec.hypothesis_ii = rec.skeleton.error.empty() && rec.skeleton.has_edges &&
                            rec.skeleton.lambda_one_sided <= mu_target;
        if (face.empty()) {
            rec.hypothesis_i = true;  // (i) concerns proper links only
        } else {
            try {
                std::vector<int> dims;
                for (int i = 0; i < link.dimension(); ++i) dims.push_back(i);
                auto space = make_space(link, a, WeightScheme::by_name(link, scheme));
                rec.coboundary = coboundary_expander_check(space, dims, beta_target, opt);
                rec.hypothesis_i = rec.coboundary->verdict;
                out.certified = out.certified && rec.coboundary->certified;
            } catch (const CapacityError& e) {
                rec.error = e.what();
                out.certified = false;
            }
        }
        out.hypothesis_i = out.hypothesis_i && rec.hypothesis_i;
        out.hypothesis_ii = out.hypothesis_ii && rec.hypothesis_ii;
        out.links.push_back(std::move(rec));
    }
    return out;
}

}  // namespace cosys
