#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace aspher {

using Rational = boost::rational<std::int64_t>;

/// "p/q", "p" or "-p/q". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string render_rational(const Rational &r);

}  // namespace aspher
