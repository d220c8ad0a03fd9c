#include "aspher/rational.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace aspher {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string clean;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            clean += c;
    const auto slash = clean.find('/');
    if (slash == std::string::npos)
        return Rational(parse_int(clean, text));
    const auto den = parse_int(std::string_view(clean).substr(slash + 1), text);
    if (den == 0)
        throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(parse_int(std::string_view(clean).substr(0, slash), text), den);
}

std::string render_rational(const Rational &r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace aspher
