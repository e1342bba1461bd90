// Exact rational arithmetic for the critical exponents kappa(p) and s_p.
// The sweep table reports these as reduced fractions so that e.g. p = 4
// yields exactly 3/7 and 5/6 rather than rounded decimals.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

#include "rwave/types.hpp"

namespace rwave {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

inline Rational reduce(std::int64_t num, std::int64_t den) {
  if (den == 0) fail_compute("rational: zero denominator");
  if (den < 0) { num = -num; den = -den; }
  const std::int64_t g = std::gcd(std::abs(num), den);
  return {g ? num / g : num, g ? den / g : den};
}

// Best rational approximation of x by continued fractions, denominator capped.
inline Rational rationalize(double x, std::int64_t max_den = 1000000) {
  const bool neg = x < 0;
  double v = neg ? -x : x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(v);
    const auto ai = static_cast<std::int64_t>(a);
    if (q1 != 0 && ai > (max_den - q0) / q1) break;
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = v - a;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  return reduce(neg ? -p1 : p1, q1);
}

// kappa(p) = 3(5-p)/(p+3) with p = a/b.
inline Rational kappa_critical_exact(Rational p) {
  return reduce(3 * (5 * p.den - p.num), p.num + 3 * p.den);
}

// s_p = 3/2 - 2/(p-1) with p = a/b.
inline Rational s_critical_exact(Rational p) {
  return reduce(3 * p.num - 7 * p.den, 2 * (p.num - p.den));
}

}  // namespace rwave
