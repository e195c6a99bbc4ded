#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cosys/abelian.hpp"
#include "cosys/rational.hpp"
#include "cosys/word.hpp"

namespace cosys {

/// <S | R>; relators are stored freely reduced and non-empty.
struct Presentation {
    std::vector<char> gens;
    std::vector<Word> relators;

    /// "gens: a b" and "rels: aaa bAbA" lines (several rels lines append).
    static Presentation parse(std::string_view text, const std::string& source = "<input>");
    std::string serialize() const;
};

/// One finite stage: a permutation of {0..n-1} per generator.
struct AlmostHom {
    std::size_t n = 0;
    GeneratorImages images;

    /// First line the point count, then "gen a: one-line permutation".
    static AlmostHom parse(std::string_view text, const std::string& source = "<input>");
    std::string serialize() const;
};

/// Throws InputError on letters without an image.
Permutation word_eval(const AlmostHom& phi, const Word& w);

struct DefectReport {
    std::vector<Rational> relator_defects;  // l_n(phi(r)) per relator
    Rational max_relator_defect;
    std::size_t words = 0;                  // reduced words of length 1..L
    Rational min_freeness;                  // min l_n(phi(w)) over them
    std::optional<Word> least_free_word;    // first word attaining it
};

DefectReport defect_report(const AlmostHom& phi, const Presentation& p, std::size_t max_length,
                           std::size_t word_budget);

/// Central extension data: Gamma = <S | R>, A, the letters acting as the
/// standard generators of A's cyclic factors, and alpha'(r) per relator.
struct ExtensionSpec {
    Presentation quotient;
    FiniteAbelianGroup a;
    std::vector<char> center;
    std::vector<AElement> alpha;

    /// Presentation lines plus "A: Z/2", "center: z" and
    /// "alpha: <relator> = <element>" (one per relator; unlisted ones are 0).
    static ExtensionSpec parse(std::string_view text, const std::string& source = "<input>");
    std::string serialize() const;
};

/// An almost-homomorphism of the extension on a set carrying an exact free
/// A-action by the center letters. Orbits are numbered by smallest point;
/// each point is offset(p) applied to the smallest point of its orbit.
class ExtensionApproximation {
public:
    /// Throws StructureError unless the center letters commute, have orders
    /// dividing the factor orders and generate a free A-action.
    ExtensionApproximation(AlmostHom phi, FiniteAbelianGroup a, std::vector<char> center);

    const AlmostHom& hom() const { return phi_; }
    const FiniteAbelianGroup& group() const { return a_; }
    const std::vector<char>& center() const { return center_; }
    /// Generators of phi that are not center letters.
    const std::vector<char>& quotient_gens() const { return quotient_gens_; }

    std::size_t orbits() const { return base_.size(); }
    std::uint32_t orbit_of(std::uint32_t p) const { return orbit_[p]; }
    std::uint32_t base(std::uint32_t orbit) const { return base_[orbit]; }
    const AElement& offset(std::uint32_t p) const { return offset_[p]; }
    std::uint32_t act(const AElement& a, std::uint32_t p) const;

private:
    AlmostHom phi_;
    FiniteAbelianGroup a_;
    std::vector<char> center_;
    std::vector<char> quotient_gens_;
    std::vector<std::uint32_t> orbit_, base_;
    std::vector<AElement> offset_;
};

struct InducedQuotient {
    AlmostHom quotient;     // on orbits
    Rational ambiguity;     // share of points whose image orbit disagrees
    bool reassigned = false;  // majority vote was not a bijection
};

/// Majority vote over each orbit, smaller target orbit on ties; when the vote
/// is not a bijection the lexicographically first assignment with the most
/// votes is used instead (at most 20 orbits).
InducedQuotient induce_quotient(const ExtensionApproximation& phi);

/// beta(s)(o): the A-element displacing phi(s)(section[o]) from the section
/// point of the orbit it lands in.
struct DefectCocycle {
    std::vector<char> gens;
    std::vector<std::vector<AElement>> beta;  // [generator][orbit]
    std::size_t off_target = 0;  // entries landing outside the induced target orbit
};

/// The smallest point of every orbit.
std::vector<std::uint32_t> base_section(const ExtensionApproximation& phi);

/// Throws InputError unless section has one point in each orbit.
DefectCocycle defect_cocycle(const ExtensionApproximation& phi, const InducedQuotient& q,
                             const std::vector<std::uint32_t>& section);

/// Sum of b along a relator read right to left from orbit o, following the
/// induced permutations; nullopt when the path does not close up.
std::optional<AElement> relator_sum(const FiniteAbelianGroup& a, const AlmostHom& quotient, const DefectCocycle& b,
                                    const Word& r, std::uint32_t orbit);

struct RelatorAgreement {
    Word relator;
    AElement alpha;
    std::size_t agree = 0;
    std::size_t total = 0;
    Rational fraction;
};

std::vector<RelatorAgreement> compare_delta_beta(const ExtensionApproximation& phi, const InducedQuotient& q,
                                                 const ExtensionSpec& spec, const DefectCocycle& beta);

/// alpha'(r) read off an exact action: the element of A by which phi(r)
/// translates every point. PreconditionError when no such element exists.
std::vector<AElement> derive_alpha(const ExtensionApproximation& phi, const Presentation& p);

struct AfreeResult {
    bool consistent = false;
    std::optional<DefectCocycle> primitive;  // b with relator sums alpha'(r)
    bool verified = false;                   // recomputed sums match
    std::size_t factor = 0;                  // infeasible factor of A
    std::vector<std::uint64_t> certificate;  // over (relator, orbit) rows
    bool beta_solves = false;                // the section cocycle is a second solution
};

/// Solves for b: S -> map(orbits, A) whose relator sums are the constants
/// alpha'(r), over Z/m per factor. PreconditionError unless phi is exact
/// and alpha' matches spec.
AfreeResult afree_vanishing_check(const ExtensionApproximation& phi, const ExtensionSpec& spec);

struct StabilityCandidate {
    std::string name;
    AlmostHom action;
};

struct CandidateMatch {
    std::string name;
    std::size_t points = 0;
    std::vector<std::uint32_t> blocks;  // block per point
    Rational discrepancy;
    bool exhaustive = true;
};

struct StabilityOptions {
    std::uint64_t budget = 1u << 22;  // labelings searched exhaustively
    std::size_t max_exhaustive_points = 12;
    int workers = 1;
    std::uint64_t seed = 1;
    std::size_t restarts = 64;
};

struct StabilityResult {
    std::vector<CandidateMatch> candidates;
    std::size_t best = 0;
    bool within_epsilon = false;
    bool certified = true;
};

/// For each candidate, minimizes over labelled partitions B of its points
/// the max over (i, j, w in words) of
///   | |A_i ∩ phi(w) A_j| / n - |B_i ∩ psi(w) B_j| / |X| |.
/// Ties between candidates go to the earlier one.
StabilityResult stability_match(const AlmostHom& phi, const std::vector<std::uint32_t>& partition, std::size_t blocks,
                                const std::vector<StabilityCandidate>& candidates, const std::vector<Word>& words,
                                const Rational& epsilon, const StabilityOptions& opt);

}  // namespace cosys
