#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cosys {

using Rational = mpq_class;

// Parses "p/q", "p" or a decimal-free integer. Throws InputError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

Rational make_rational(std::int64_t numerator, std::int64_t denominator);

// Common denominator representation: values[i] == numerators[i] / denominator.
// Throws CapacityError when a numerator or the denominator leaves int64 range.
struct IntegerWeights {
    std::vector<std::int64_t> numerators;
    std::int64_t denominator = 1;

    Rational value(std::size_t i) const { return fraction(numerators[i]); }
    Rational fraction(std::int64_t numerator) const;
};

IntegerWeights to_integer_weights(const std::vector<Rational>& values);

}  // namespace cosys
