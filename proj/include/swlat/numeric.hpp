#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace swlat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

/// Largest integer <= p/q (q > 0 after normalization, which cpp_rational guarantees).
inline Int floor_rat(const Rat& q) {
  Int n = rat_num(q), d = rat_den(q);
  Int quot = n / d, rem = n % d;
  if (rem != 0 && n < 0) --quot;
  return quot;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

/// Floor of sqrt(n) for n >= 0.
inline Int floor_sqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("floor_sqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

/// Smallest integer u >= 0 with u*u >= q (q >= 0).
inline Int ceil_sqrt(const Rat& q) {
  if (q < 0) throw std::invalid_argument("ceil_sqrt: negative argument");
  Int u = floor_sqrt(floor_rat(q));
  while (Rat(u) * u < q) ++u;
  return u;
}

inline Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

inline long long to_ll(const Int& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("integer too large for 64-bit serialization: " + v.str());
  return v.convert_to<long long>();
}

}  // namespace swlat
