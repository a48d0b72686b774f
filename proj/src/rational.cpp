#include "polyrad/rational.hpp"

#include <cctype>
#include <cmath>

#include "polyrad/error.hpp"

namespace polyrad {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Rational parse_integer(std::string_view s)
{
    if (!is_integer_literal(s)) raise(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
    if (s[0] == '+') s.remove_prefix(1);
    return Rational(boost::multiprecision::mpz_int(std::string(s)));
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) raise(ErrorCode::ParseError, "empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_integer(text.substr(0, slash));
        Rational den = parse_integer(text.substr(slash + 1));
        if (den == 0) raise(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        return num / den;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        // "-.5" and ".5" are accepted; the sign stays attached to the digit string.
        std::string digits = std::string(whole);
        if (whole.empty() || whole == "-" || whole == "+") digits += "0";
        digits += std::string(frac);
        Rational scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        return parse_integer(digits) / scale;
    }
    return parse_integer(text);
}

Rational exact_from_double(double value)
{
    if (!std::isfinite(value)) raise(ErrorCode::MalformedProblem, "non-finite value has no rational form");
    return Rational(value);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_string(const Rational& value) { return value.str(); }

}  // namespace polyrad
