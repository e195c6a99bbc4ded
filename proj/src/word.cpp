#include "cosys/word.hpp"

#include <cctype>

#include "cosys/errors.hpp"

namespace cosys {

Word parse_word(std::string_view text)
{
    Word w;
    if (text == "1") return w;
    for (char c : text) {
        auto u = static_cast<unsigned char>(c);
        if (std::isspace(u)) continue;
        if (!std::isalpha(u)) throw InputError("invalid letter '" + std::string(1, c) + "' in word");
        w.push_back({static_cast<char>(std::tolower(u)), static_cast<bool>(std::isupper(u))});
    }
    return w;
}

std::string format_word(const Word& w)
{
    if (w.empty()) return "1";
    std::string out;
    for (const auto& l : w) {
        out.push_back(l.inverse ? static_cast<char>(std::toupper(static_cast<unsigned char>(l.gen))) : l.gen);
    }
    return out;
}

Word inverse_word(const Word& w)
{
    Word out(w.rbegin(), w.rend());
    for (auto& l : out) l.inverse = !l.inverse;
    return out;
}

Word freely_reduce(const Word& w)
{
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().inverse != l.inverse) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

Permutation evaluate_word(const GeneratorImages& images, const Word& w, std::size_t n)
{
    Permutation out = Permutation::identity(n);
    for (const auto& l : w) {
        auto it = images.find(l.gen);
        if (it == images.end()) throw InputError("unknown generator '" + std::string(1, l.gen) + "'");
        if (it->second.size() != n) throw ShapeError("generator image has wrong degree");
        out = out * (l.inverse ? it->second.inverse() : it->second);
    }
    return out;
}

std::vector<Word> reduced_words(const std::vector<char>& gens, std::size_t max_length, std::size_t budget)
{
    std::vector<Letter> alphabet;
    for (char g : gens) alphabet.push_back({g, false});
    for (char g : gens) alphabet.push_back({g, true});
    std::vector<Word> out;
    std::vector<Word> layer{Word{}};
    for (std::size_t len = 1; len <= max_length; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer) {
            for (const auto& l : alphabet) {
                if (!w.empty() && w.back().gen == l.gen && w.back().inverse != l.inverse) continue;
                Word v = w;
                v.push_back(l);
                next.push_back(std::move(v));
                if (out.size() + next.size() > budget) {
                    throw CapacityError("word enumeration exceeds budget " + std::to_string(budget));
                }
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

}  // namespace cosys
