#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include <boost/rational.hpp>

namespace oa {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

/// "3/4", or just "2" for integers.
inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

}  // namespace oa
