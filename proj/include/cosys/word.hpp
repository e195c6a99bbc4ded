#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cosys/permutation.hpp"

namespace cosys {

/// Generators are lowercase ASCII letters; the uppercase letter is the
/// inverse. "1" denotes the empty word.
struct Letter {
    char gen;
    bool inverse;

    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;
using GeneratorImages = std::map<char, Permutation>;

Word parse_word(std::string_view text);
std::string format_word(const Word& w);
Word inverse_word(const Word& w);
Word freely_reduce(const Word& w);

/// Left action: s1 s2 ... sk evaluates to phi(s1) o phi(s2) o ... o phi(sk).
Permutation evaluate_word(const GeneratorImages& images, const Word& w, std::size_t n);

/// All freely reduced non-empty words of length <= max_length over `gens`,
/// ordered by length then lexicographically (lowercase before uppercase).
std::vector<Word> reduced_words(const std::vector<char>& gens, std::size_t max_length,
                                std::size_t budget);

}  // namespace cosys
