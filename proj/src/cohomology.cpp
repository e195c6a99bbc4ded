#include "cosys/cohomology.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cosys/errors.hpp"
#include "cosys/zmod.hpp"

namespace cosys {

namespace {

__extension__ using u128 = unsigned __int128;

// Coordinates of element indices in one cyclic factor, and back.
struct FactorView {
    const FiniteAbelianGroup& group;
    std::size_t factor;
    std::uint64_t m;

    std::uint64_t coord(std::uint32_t index) const { return group.element(index).coords[factor]; }
};

ZmodMatrix dense(const SparseRows& d, std::uint64_t m)
{
    ZmodMatrix out(d.rows, d.cols, m);
    for (std::size_t r = 0; r < d.rows; ++r) {
        for (auto i = d.start[r]; i < d.start[r + 1]; ++i) {
            auto& e = out.at(r, d.col[i]);
            e = (e + (d.coef[i] > 0 ? 1 : m - 1)) % m;
        }
    }
    return out;
}

std::vector<std::uint64_t> project(const Cochain& c, const FactorView& f)
{
    std::vector<std::uint64_t> out(c.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.coord(c.values[i]);
    return out;
}

// Per-factor solutions assembled into one cochain.
Cochain assemble(SpacePtr space, int degree, const std::vector<std::vector<std::uint64_t>>& per_factor)
{
    Cochain c = Cochain::zero(space, degree);
    const auto& g = space->group();
    for (std::size_t cell = 0; cell < c.values.size(); ++cell) {
        AElement e = g.zero();
        for (std::size_t j = 0; j < g.rank(); ++j) e.coords[j] = static_cast<std::uint32_t>(per_factor[j][cell]);
        c.values[cell] = g.index_of(e);
    }
    return c;
}

}  // namespace

std::string CohomologyGroup::order_string() const
{
    mpz_class total = 1;
    for (auto o : orders) total *= static_cast<unsigned long>(o);
    return total.get_str();
}

Cochain CohomologyGroup::combination(const std::vector<std::uint64_t>& coeffs) const
{
    if (coeffs.size() != generators.size()) throw ShapeError("one coefficient per generator required");
    Cochain c = Cochain::zero(space, degree);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] % orders[k] != 0) c = add(c, scale(static_cast<std::int64_t>(coeffs[k]), generators[k]));
    }
    return c;
}

CohomologyGroup cohomology(SpacePtr space, int degree)
{
    if (degree < 0 || degree > space->dimension()) throw ShapeError("cohomology degree out of range");
    const auto& g = space->group();
    CohomologyGroup out;
    out.space = space;
    out.degree = degree;
    const std::size_t n = space->cells(degree);
    for (std::size_t j = 0; j < g.rank(); ++j) {
        const std::uint64_t m = g.factors()[j];
        // Cocycles: u_k = (m/g_k) R e_k of order g_k.
        ZmodMatrix R = ZmodMatrix::identity(n, m), Rinv = ZmodMatrix::identity(n, m);
        std::vector<std::uint64_t> gk(n, m);
        if (degree < space->dimension()) {
            auto f = diagonalize(dense(space->delta(degree), m));
            for (std::size_t k = 0; k < f.diag.size(); ++k) gk[k] = f.diag[k];
            R = std::move(f.R);
            Rinv = std::move(f.Rinv);
        }
        std::vector<std::size_t> zidx;
        for (std::size_t k = 0; k < n; ++k) {
            if (gk[k] > 1) zidx.push_back(k);
        }
        const std::size_t r = zidx.size();
        if (r == 0) continue;

        // Relations: coboundaries in u-coordinates, and g_k u_k = 0.
        std::size_t nb = degree >= 1 ? space->cells(degree - 1) : 0;
        ZmodMatrix rel(r, nb + r, m);
        if (nb) {
            auto d = dense(space->delta(degree - 1), m);
            for (std::size_t col = 0; col < nb; ++col) {
                std::vector<std::uint64_t> b(n);
                for (std::size_t row = 0; row < n; ++row) b[row] = d.at(row, col);
                auto y = Rinv.apply(b);
                for (std::size_t a = 0; a < r; ++a) {
                    auto k = zidx[a];
                    auto step = m / gk[k];
                    if (y[k] % step != 0) throw StructureError("coboundary outside the cocycle lattice");
                    rel.at(a, col) = y[k] / step;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    if (gk[k] == 1 && y[k] != 0) throw StructureError("coboundary outside the cocycle lattice");
                }
            }
        }
        for (std::size_t a = 0; a < r; ++a) rel.at(a, nb + a) = gk[zidx[a]] % m;
        auto q = diagonalize(rel);
        for (std::size_t jj = 0; jj < r; ++jj) {
            std::uint64_t order = jj < q.diag.size() ? q.diag[jj] : m;
            if (order == 1) continue;
            // Cocycle sum_a w_a u_{k_a} with w = Linv e_jj.
            std::vector<std::uint64_t> coords(n, 0);
            for (std::size_t a = 0; a < r; ++a) {
                auto k = zidx[a];
                coords[k] = static_cast<std::uint64_t>(static_cast<u128>(q.Linv.at(a, jj)) * (m / gk[k]) % m);
            }
            auto values = R.apply(coords);
            std::vector<std::vector<std::uint64_t>> per_factor(g.rank(), std::vector<std::uint64_t>(n, 0));
            per_factor[j] = std::move(values);
            out.generators.push_back(assemble(space, degree, per_factor));
            out.orders.push_back(order);
        }
    }
    return out;
}

CoboundaryResult is_coboundary(const Cochain& c)
{
    if (c.degree < 1) throw InputError("primitives exist only for cochains of degree >= 1");
    const auto& g = c.space->group();
    CoboundaryResult out;
    std::vector<std::vector<std::uint64_t>> per_factor;
    for (std::size_t j = 0; j < g.rank(); ++j) {
        FactorView f{g, j, g.factors()[j]};
        auto form = diagonalize(dense(c.space->delta(c.degree - 1), f.m));
        auto s = solve(form, project(c, f));
        if (!s.solution) {
            out.factor = j;
            out.certificate = std::move(s.certificate);
            return out;
        }
        per_factor.push_back(std::move(*s.solution));
    }
    if (g.rank() == 0) per_factor.clear();
    out.primitive = assemble(c.space, c.degree - 1, per_factor);
    if (coboundary(*out.primitive) != c) throw StructureError("linear solve produced a wrong primitive");
    return out;
}

bool verify_certificate(const Cochain& c, const CoboundaryResult& r)
{
    if (r.primitive || c.degree < 1) return false;
    const auto& g = c.space->group();
    if (r.factor >= g.rank()) return false;
    const std::uint64_t m = g.factors()[r.factor];
    const auto& d = c.space->delta(c.degree - 1);
    if (r.certificate.size() != d.rows) return false;
    std::vector<std::uint64_t> acc(d.cols, 0);
    for (std::size_t row = 0; row < d.rows; ++row) {
        for (auto i = d.start[row]; i < d.start[row + 1]; ++i) {
            auto term = r.certificate[row] % m;
            acc[d.col[i]] = (acc[d.col[i]] + (d.coef[i] > 0 ? term : (m - term) % m)) % m;
        }
    }
    for (auto v : acc) {
        if (v != 0) return false;
    }
    FactorView f{g, r.factor, m};
    std::uint64_t pair = 0;
    for (std::size_t row = 0; row < d.rows; ++row) pair = (pair + r.certificate[row] % m * f.coord(c.values[row])) % m;
    return pair != 0;
}

double CosetFrame::log2_space() const
{
    return static_cast<double>(var_cell.size()) * std::log2(static_cast<double>(space->group().order()));
}

std::string format_budget(double budget)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", budget);
    return buf;
}

std::string format_space_size(std::uint64_t base, std::size_t exponent)
{
    return std::to_string(base) + "^" + std::to_string(exponent);
}

std::string CosetFrame::space_string() const
{
    return format_space_size(space->group().order(), var_cell.size());
}

Cochain CosetFrame::primitive(const std::vector<std::uint32_t>& assignment) const
{
    Cochain b = Cochain::zero(space, degree - 1);
    for (std::size_t k = 0; k < var_cell.size(); ++k) b.values[var_cell[k]] = assignment.at(k);
    return b;
}

CosetFrame make_coset_frame(SpacePtr space, int degree)
{
    CosetFrame f;
    f.space = space;
    f.degree = degree;
    std::vector<std::vector<kernels::Incidence>> targets(space->cells(degree));
    if (degree >= 1) {
        auto gauge = space->gauge_cells(degree - 1);
        std::vector<std::int64_t> var_of(space->cells(degree - 1), -1);
        for (std::uint32_t cell = 0; cell < gauge.size(); ++cell) {
            if (!gauge[cell]) {
                var_of[cell] = static_cast<std::int64_t>(f.var_cell.size());
                f.var_cell.push_back(cell);
            }
        }
        const auto& d = space->delta(degree - 1);
        for (std::size_t row = 0; row < d.rows; ++row) {
            for (auto i = d.start[row]; i < d.start[row + 1]; ++i) {
                auto v = var_of[d.col[i]];
                if (v >= 0) targets[row].push_back({static_cast<std::uint32_t>(v), d.coef[i]});
            }
        }
    }
    f.problem = kernels::make_coset_problem(space->tables(), f.var_cell.size(), targets,
                                            space->weights(degree).numerators);
    return f;
}

namespace {

CosetMinimum search_coset(const CosetFrame& frame, const Cochain& rep, const SearchOptions& opt,
                          std::int64_t bound = kernels::kNoBound)
{
    CosetMinimum out;
    const auto& w = rep.space->weights(rep.degree);
    kernels::CosetResult r;
    if (frame.log2_space() > std::log2(opt.budget)) {
        if (!opt.heuristic) {
            throw CapacityError("search space " + frame.space_string() + " exceeds budget " +
                                format_budget(opt.budget) +
                                "; rerun with heuristic mode for an upper bound");
        }
        r = kernels::coset_min_anneal(frame.problem, rep.values, opt.seed, opt.anneal_iterations);
        out.certified = false;
        out.mode = "heuristic";
    } else {
        r = kernels::coset_min_parallel(frame.problem, rep.values, opt.workers, bound);
        out.mode = "exhaustive";
    }
    if (!r.found) {
        out.value = -1;
        return out;
    }
    out.value = w.fraction(r.value);
    out.primitive = frame.primitive(r.assignment);
    out.minimizer = rep.degree >= 1 ? add(rep, coboundary(out.primitive)) : rep;
    return out;
}

}  // namespace

CosetMinimum cosystolic_norm(const Cochain& rep, const SearchOptions& opt)
{
    if (rep.degree < rep.space->dimension() && !coboundary(rep).is_zero()) {
        throw InputError("cosystolic norm needs a cocycle representative");
    }
    if (rep.degree >= 1) {
        auto triv = is_coboundary(rep);
        if (triv.primitive) {
            CosetMinimum out;
            out.value = 0;
            out.mode = "trivial-class";
            out.primitive = negate(*triv.primitive);
            out.minimizer = Cochain::zero(rep.space, rep.degree);
            return out;
        }
    } else if (rep.is_zero()) {
        CosetMinimum out;
        out.value = 0;
        out.mode = "trivial-class";
        out.minimizer = rep;
        return out;
    }
    auto frame = make_coset_frame(rep.space, rep.degree);
    if (rep.degree == 0) {
        CosetMinimum out;
        out.value = norm(rep);
        out.mode = "exhaustive";
        out.minimizer = rep;
        return out;
    }
    return search_coset(frame, rep, opt);
}

CosystoleResult cosystole(SpacePtr space, int degree, const SearchOptions& opt)
{
    auto h = cohomology(space, degree);
    CosystoleResult out;
    if (h.trivial()) {
        out.vacuous = true;
        return out;
    }
    mpz_class total = 1;
    for (auto o : h.orders) total *= static_cast<unsigned long>(o);
    if (total - 1 > mpz_class(static_cast<unsigned long>(opt.class_budget))) {
        throw CapacityError("H^" + std::to_string(degree) + " has " + total.get_str() +
                            " elements, more than the class budget " + std::to_string(opt.class_budget));
    }
    auto frame = make_coset_frame(space, degree);
    const auto& w = space->weights(degree);
    std::vector<std::uint64_t> coeffs(h.orders.size(), 0);
    std::int64_t best = kernels::kNoBound;
    while (true) {
        // Next coefficient vector, last generator fastest.
        std::size_t k = coeffs.size();
        while (k > 0 && ++coeffs[k - 1] == h.orders[k - 1]) coeffs[--k] = 0;
        if (k == 0) break;
        ++out.classes;
        auto rep = h.combination(coeffs);
        CosetMinimum r;
        if (degree == 0) {
            auto v = norm_numerator(rep);
            if (v >= best) continue;
            r.value = w.fraction(v);
            r.minimizer = rep;
            r.mode = "exhaustive";
        } else {
            r = search_coset(frame, rep, opt, best);
            if (r.value < 0) continue;
        }
        mpz_class scaled(Rational(r.value * w.denominator));
        auto num = static_cast<std::int64_t>(scaled.get_si());
        if (num < best) {
            best = num;
            out.value = r.value;
            out.minimizer = r.minimizer;
            out.class_coeffs = coeffs;
        }
        if (!r.certified) out.certified = false;
    }
    return out;
}

}  // namespace cosys
