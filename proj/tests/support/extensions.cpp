#include "support/extensions.hpp"

#include <map>
#include <stdexcept>

namespace cosys::ext {

namespace {

using Matrix = std::vector<std::uint32_t>;

Matrix multiply(const Matrix& x, const Matrix& y, std::size_t k, std::uint32_t p)
{
    Matrix z(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            std::uint64_t s = 0;
            for (std::size_t l = 0; l < k; ++l) s += std::uint64_t{x[i * k + l]} * y[l * k + j];
            z[i * k + j] = static_cast<std::uint32_t>(s % p);
        }
    }
    return z;
}

Example make(std::string name, std::size_t k, std::uint32_t p, std::vector<std::pair<char, Matrix>> gens,
             const std::string& spec_text)
{
    Example e;
    e.name = std::move(name);
    e.phi = regular_action(k, p, gens);
    e.order = e.phi.n;
    e.spec = ExtensionSpec::parse(spec_text, e.name);
    return e;
}

}  // namespace

AlmostHom regular_action(std::size_t k, std::uint32_t p, const std::vector<std::pair<char, Matrix>>& gens)
{
    Matrix id(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) id[i * k + i] = 1;
    std::vector<Matrix> elements{id};
    std::map<Matrix, std::uint32_t> index{{id, 0}};
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const auto& [g, m] : gens) {
            auto y = multiply(m, elements[head], k, p);
            if (index.emplace(y, static_cast<std::uint32_t>(elements.size())).second) elements.push_back(y);
        }
    }
    AlmostHom phi;
    phi.n = elements.size();
    for (const auto& [g, m] : gens) {
        std::vector<std::uint32_t> img(phi.n);
        for (std::size_t x = 0; x < phi.n; ++x) img[x] = index.at(multiply(m, elements[x], k, p));
        phi.images.emplace(g, Permutation(std::move(img)));
    }
    return phi;
}

std::vector<Example> library()
{
    std::vector<Example> out;
    // Q8 in SL(2,3); z = -I.
    out.push_back(make("Q8", 2, 3, {{'i', {0, 1, 2, 0}}, {'j', {1, 1, 1, 2}}, {'z', {2, 0, 0, 2}}},
                       "gens: i j\nrels: ii jj ijIJ\nA: Z/2\ncenter: z\n"
                       "alpha: ii = 1\nalpha: jj = 1\nalpha: ijIJ = 1\n"));
    // D4 over F5, rotation r with r^2 = -I.
    out.push_back(make("D4", 2, 5, {{'r', {0, 4, 1, 0}}, {'s', {1, 0, 0, 4}}, {'z', {4, 0, 0, 4}}},
                       "gens: r s\nrels: rr ss rsRS\nA: Z/2\ncenter: z\nalpha: rr = 1\nalpha: rsRS = 1\n"));
    // Unitriangular 3x3 over F2; z is the corner entry.
    out.push_back(make("Heisenberg2", 3, 2,
                       {{'x', {1, 1, 0, 0, 1, 0, 0, 0, 1}}, {'y', {1, 0, 0, 0, 1, 1, 0, 0, 1}},
                        {'z', {1, 0, 1, 0, 1, 0, 0, 0, 1}}},
                       "gens: x y\nrels: xx yy xyXY\nA: Z/2\ncenter: z\nalpha: xyXY = 1\n"));
    // Z/4 = <2> in F5^*, A = <4>.
    out.push_back(make("Z4", 1, 5, {{'a', {2}}, {'z', {4}}}, "gens: a\nrels: aa\nA: Z/2\ncenter: z\nalpha: aa = 1\n"));
    // Z/8 = <2> in F17^*, A = <16>.
    out.push_back(make("Z8", 1, 17, {{'a', {2}}, {'z', {16}}},
                       "gens: a\nrels: aaaa\nA: Z/2\ncenter: z\nalpha: aaaa = 1\n"));
    // Z/8 over Z/2 quotient with A = Z/4 = <4>.
    out.push_back(make("Z8/Z4", 1, 17, {{'a', {2}}, {'z', {4}}}, "gens: a\nrels: aa\nA: Z/4\ncenter: z\nalpha: aa = 1\n"));
    // (Z/2)^3 as diagonal sign matrices over F3.
    out.push_back(make("Z2^3", 3, 3,
                       {{'a', {2, 0, 0, 0, 1, 0, 0, 0, 1}}, {'b', {1, 0, 0, 0, 2, 0, 0, 0, 1}},
                        {'z', {1, 0, 0, 0, 1, 0, 0, 0, 2}}},
                       "gens: a b\nrels: aa bb abAB\nA: Z/2\ncenter: z\n"));
    // Z/3 x Z/2 in F7^*.
    out.push_back(make("Z3xZ2", 1, 7, {{'a', {2}}, {'z', {6}}}, "gens: a\nrels: aaa\nA: Z/2\ncenter: z\n"));
    // Q16 over F17: a = diag(2, 9), b = [[0,1],[-1,0]].
    out.push_back(make("Q16", 2, 17, {{'a', {2, 0, 0, 9}}, {'b', {0, 1, 16, 0}}, {'z', {16, 0, 0, 16}}},
                       "gens: a b\nrels: aaaa bb abab\nA: Z/2\ncenter: z\n"
                       "alpha: aaaa = 1\nalpha: bb = 1\nalpha: abab = 1\n"));
    // Q8 x Z/2 over F3 with A = <-1> in the Q8 block.
    out.push_back(make("Q8xZ2", 3, 3,
                       {{'i', {0, 1, 0, 2, 0, 0, 0, 0, 1}}, {'j', {1, 1, 0, 1, 2, 0, 0, 0, 1}},
                        {'c', {1, 0, 0, 0, 1, 0, 0, 0, 2}}, {'z', {2, 0, 0, 0, 2, 0, 0, 0, 1}}},
                       "gens: c i j\nrels: ii jj cc ijIJ icIC jcJC\nA: Z/2\ncenter: z\n"
                       "alpha: ii = 1\nalpha: jj = 1\nalpha: ijIJ = 1\n"));
    // Q8 x Z/2 with the whole center Z/2 x Z/2 as A.
    out.push_back(make("Q8xZ2/center", 3, 3,
                       {{'i', {0, 1, 0, 2, 0, 0, 0, 0, 1}}, {'j', {1, 1, 0, 1, 2, 0, 0, 0, 1}},
                        {'z', {2, 0, 0, 0, 2, 0, 0, 0, 1}}, {'w', {1, 0, 0, 0, 1, 0, 0, 0, 2}}},
                       "gens: i j\nrels: ii jj ijIJ\nA: Z/2 x Z/2\ncenter: z w\n"
                       "alpha: ii = (1,0)\nalpha: jj = (1,0)\nalpha: ijIJ = (1,0)\n"));
    return out;
}

Example by_name(const std::string& name)
{
    for (auto& e : library()) {
        if (e.name == name) return e;
    }
    throw std::invalid_argument("no extension named " + name);
}

}  // namespace cosys::ext
