#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

#include "ramlift/errors.hpp"

namespace ramlift {

using Z = mpz_class;
using Q = mpq_class;

inline Q make_q(long num, long den = 1) {
  Q r(num, den);
  r.canonicalize();
  return r;
}

/// "num/den" or "num"; whitespace is not accepted.
inline Q parse_q(const std::string& text) {
  if (text.empty()) throw Error(Errc::malformed_input, "empty rational literal");
  Q r;
  if (r.set_str(text, 10) != 0)
    throw Error(Errc::malformed_input, "bad rational literal '" + text + "'");
  if (r.get_den() == 0) throw Error(Errc::malformed_input, "zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string format_q(const Q& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline int sign(const Q& q) { return sgn(q); }

/// Correctly rounded conversion that survives huge numerators and denominators.
inline double to_double(const Q& q) {
  if (q == 0) return 0.0;
  long ne = 0, de = 0;
  const double nm = mpz_get_d_2exp(&ne, q.get_num_mpz_t());
  const double dm = mpz_get_d_2exp(&de, q.get_den_mpz_t());
  return std::ldexp(nm / dm, static_cast<int>(ne - de));
}

inline Z floor_q(const Q& q) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// Smallest-denominator rational in the closed interval [lo, hi] (Stern-Brocot descent).
inline Q simplest_between(Q lo, Q hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return Q(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  const Z fl = floor_q(lo);
  if (Q(fl) == lo) return lo;
  if (Q(fl + 1) <= hi) return Q(fl + 1);
  // lo and hi share the integer part fl; recurse on reciprocals of the fractional parts.
  const Q inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
  Q r = Q(fl) + 1 / inner;
  r.canonicalize();
  return r;
}

inline Q pow_q(const Q& base, unsigned e) {
  Q r(1);
  Q b = base;
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace ramlift
