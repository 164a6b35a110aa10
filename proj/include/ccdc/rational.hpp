#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace ccdc {

// Communication loads are compared exactly, never as floating point.
using Rational = boost::rational<std::int64_t>;

// "3/4", or "2" when the denominator is one.
std::string to_string(const Rational& value);

}  // namespace ccdc
