#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cosys/abelian.hpp"
#include "cosys/rational.hpp"
#include "cosys/word.hpp"

namespace cosys {

/// Finite atomic probability algebra. Atoms are 0-based internally and
/// 1-based in text. The optional action assigns a weight-preserving
/// permutation of the atoms to each generator letter.
class MeasuredBoolean {
public:
    MeasuredBoolean() = default;
    explicit MeasuredBoolean(std::vector<Rational> weights, GeneratorImages action = {});

    static MeasuredBoolean uniform(std::size_t atoms);
    static MeasuredBoolean point() { return uniform(1); }

    std::size_t atoms() const { return weights_.size(); }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& weight(std::size_t atom) const { return weights_[atom]; }
    const GeneratorImages& action() const { return action_; }
    bool faithful() const;

    // "atoms N" / "weights w1 ... wN" / "act g 2 3 1"; '#' comments.
    static MeasuredBoolean parse(std::string_view text, const std::string& source = "<input>");
    std::string serialize() const;

    friend bool operator==(const MeasuredBoolean&, const MeasuredBoolean&) = default;

private:
    std::vector<Rational> weights_;
    GeneratorImages action_;
};

/// Normal form of an element of P(A): atoms carrying a nonzero value.
struct PAElement {
    std::map<std::uint32_t, AElement> support;

    friend bool operator==(const PAElement&, const PAElement&) = default;
};

PAElement pa_normalize(const FiniteAbelianGroup& a, std::map<std::uint32_t, AElement> values);
PAElement pa_add(const MeasuredBoolean& p, const FiniteAbelianGroup& a, const PAElement& x, const PAElement& y);
PAElement pa_neg(const FiniteAbelianGroup& a, const PAElement& x);
Rational pa_measure(const MeasuredBoolean& p, const PAElement& x);
Rational pa_dist(const MeasuredBoolean& p, const FiniteAbelianGroup& a, const PAElement& x, const PAElement& y);
PAElement theta_embed(const MeasuredBoolean& p, const FiniteAbelianGroup& a, const AElement& value);

/// (w.x)(atom) = x(pi_w^{-1}(atom)).
PAElement pa_act(const MeasuredBoolean& p, const Word& w, const PAElement& x);

/// Value of x at every atom, zeros included.
std::vector<AElement> pa_dense(const MeasuredBoolean& p, const FiniteAbelianGroup& a, const PAElement& x);

/// "{1:(1,0), 3:2}"; "{}" is zero. Atoms are 1-based.
PAElement parse_pa_element(const MeasuredBoolean& p, const FiniteAbelianGroup& a, std::string_view text);
std::string format_pa_element(const FiniteAbelianGroup& a, const PAElement& x);

/// Measure-preserving Boolean morphism P -> Q presented by the dual atom map
/// pi: atoms(Q) -> atoms(P). The block pi^{-1}(p) is the image of atom p, and
/// its Q-weight equals the P-weight of p.
class AtomMorphism {
public:
    AtomMorphism(MeasuredBoolean source, MeasuredBoolean target, std::vector<std::uint32_t> target_to_source);

    static AtomMorphism identity(const MeasuredBoolean& p);

    const MeasuredBoolean& source() const { return source_; }
    const MeasuredBoolean& target() const { return target_; }
    const std::vector<std::uint32_t>& target_to_source() const { return dual_; }

    // Commutes with every generator both algebras act by.
    bool is_equivariant() const;

private:
    MeasuredBoolean source_;
    MeasuredBoolean target_;
    std::vector<std::uint32_t> dual_;
};

/// Induced map P(A) -> Q(A): X (x) a goes to f(X) (x) a.
PAElement apply_morphism(const AtomMorphism& f, const PAElement& x);

/// Inverse of apply_morphism on its image: y must be constant on every block.
/// Throws MorphismError otherwise.
PAElement descend(const AtomMorphism& f, const FiniteAbelianGroup& a, const PAElement& y);

}  // namespace cosys
