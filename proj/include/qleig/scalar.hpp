#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "qleig/errors.hpp"

namespace qleig {

// Exact scalar used by every symbolic path. All symbolic arithmetic is
// rational; floating point appears only in the numeric solver and the
// singular value / eigenvalue kernels.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// Exact conversion: every finite double is a dyadic rational.
Rat rat_from_double(double x);

// Accepts "p/q", plain integers, and decimal strings such as "-1.25" or
// "3e-2". Decimal strings convert exactly in base ten. Throws
// std::invalid_argument on anything else.
Rat rat_from_string(const std::string& s);

// Canonical text form: "p" for integers, "p/q" otherwise.
std::string rat_to_string(const Rat& r);

// Formats a double with 17 significant digits, enough to round-trip.
std::string format_double(double x);

} // namespace qleig
