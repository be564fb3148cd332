#include "ffrad/numeric.hpp"

#include "ffrad/errors.hpp"

#include <cctype>

namespace ffrad {

BigInt big_pow(std::uint64_t base, unsigned exp)
{
    BigInt result = 1;
    for (unsigned i = 0; i < exp; ++i)
        result *= base;
    return result;
}

BigInt pairs(std::uint64_t n)
{
    if (n < 2)
        return 0;
    BigInt b = n;
    return b * (b - 1) / 2;
}

std::string to_fraction_string(const Rational& r)
{
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole)
{
    if (text.empty())
        throw ConfigInvalid("malformed rational '" + std::string(whole) + "'");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size())
        throw ConfigInvalid("malformed rational '" + std::string(whole) + "'");
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ConfigInvalid("malformed rational '" + std::string(whole) + "'");
    return BigInt(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash), text);
        BigInt den = parse_integer(text.substr(slash + 1), text);
        if (den == 0)
            throw ConfigInvalid("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view frac = text.substr(dot + 1);
        std::string digits = std::string(text.substr(0, dot)) + std::string(frac);
        if (digits.empty() || digits == "-" || digits == "+")
            throw ConfigInvalid("malformed rational '" + std::string(text) + "'");
        BigInt num = parse_integer(digits, text);
        return Rational(num, big_pow(10, static_cast<unsigned>(frac.size())));
    }
    return Rational(parse_integer(text, text));
}

BigInt floor_of(const Rational& r)
{
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (num % den != 0 && num < 0)
        q -= 1;
    return q;
}

BigInt ceil_of(const Rational& r)
{
    return -floor_of(-r);
}

}  // namespace ffrad
