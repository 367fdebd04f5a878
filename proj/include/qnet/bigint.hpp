#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qnet {

using BigInt = boost::multiprecision::cpp_int;

// Extended-precision real used for every probability in the library.
using Real = long double;

inline std::string to_decimal(const BigInt& value) { return value.str(); }

// Exact ratio num/den rounded once to Real.
Real ratio_to_real(const BigInt& num, const BigInt& den);

}  // namespace qnet
