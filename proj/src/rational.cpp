#include "cosys/rational.hpp"

#include <limits>

#include "cosys/errors.hpp"

namespace cosys {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw InputError("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0) throw InputError("malformed rational '" + s + "'");
    if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational make_rational(std::int64_t numerator, std::int64_t denominator)
{
    Rational q(static_cast<long>(numerator), static_cast<long>(denominator));
    q.canonicalize();
    return q;
}

Rational IntegerWeights::fraction(std::int64_t numerator) const
{
    return make_rational(numerator, denominator);
}

IntegerWeights to_integer_weights(const std::vector<Rational>& values)
{
    mpz_class lcm = 1;
    for (const auto& v : values) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    }
    if (!lcm.fits_slong_p()) throw CapacityError("weight denominator exceeds 64-bit range");
    IntegerWeights out;
    out.denominator = lcm.get_si();
    out.numerators.reserve(values.size());
    mpz_class total = 0;
    for (const auto& v : values) {
        mpz_class n = v.get_num() * (lcm / v.get_den());
        if (!n.fits_slong_p()) throw CapacityError("weight numerator exceeds 64-bit range");
        total += n;
        out.numerators.push_back(n.get_si());
    }
    // Sums of numerators are accumulated in int64 by the search kernels.
    if (total > mpz_class(std::numeric_limits<std::int64_t>::max() / 4)) {
        throw CapacityError("total weight exceeds 64-bit accumulator range");
    }
    return out;
}

}  // namespace cosys
