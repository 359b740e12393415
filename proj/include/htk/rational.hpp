#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace htk {

// Exact rational arithmetic. Cover weights, LP coefficients and widths all
// use this; no floating point is involved in any width computation.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "2" for integers, "3/2" otherwise
std::string rat_str(const Rat& r);

// always "p/q", e.g. "3/2", "1/1"
std::string rat_pq(const Rat& r);

// accepts "3/2", "1.5", "-2", "0.25"
std::optional<Rat> rat_parse(std::string_view s);

}  // namespace htk
