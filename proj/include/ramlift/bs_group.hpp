#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "ramlift/ratmap.hpp"

namespace ramlift {

/// Element x -> n^k x + m/n^j of BS(1,n), with j minimal (n does not divide m when j > 0).
class BSElement {
 public:
  explicit BSElement(long n, long k = 0, Z m = 0, long j = 0) : n_(n), k_(k), m_(std::move(m)), j_(j) {
    if (n < 2) throw Error(Errc::malformed_input, "BS(1,n) needs n >= 2");
    if (j < 0) throw Error(Errc::malformed_input, "negative n-adic exponent");
    normalize();
  }

  static BSElement a(long n) { return BSElement(n, 1); }
  static BSElement b(long n) { return BSElement(n, 0, 1); }

  long n() const { return n_; }
  long k() const { return k_; }
  const Z& m() const { return m_; }
  long j() const { return j_; }
  Q t() const {
    Q r(m_, npow(j_));
    r.canonicalize();
    return r;
  }
  bool is_identity() const { return k_ == 0 && m_ == 0; }

  /// Product as maps: (g1 g2)(x) = g1(g2(x)).
  friend BSElement operator*(const BSElement& g1, const BSElement& g2) {
    g1.require_same(g2);
    // n^{k1} * m2/n^{j2} + m1/n^{j1} over the common denominator n^J.
    long e2 = g2.j_ - g1.k_;  // g1's slope moves g2's offset to exponent e2
    Z m2 = g2.m_;
    if (e2 < 0) {
      m2 *= g1.npow(-e2);
      e2 = 0;
    }
    const long J = std::max(e2, g1.j_);
    Z m = m2 * g1.npow(J - e2) + g1.m_ * g1.npow(J - g1.j_);
    return BSElement(g1.n_, g1.k_ + g2.k_, m, J);
  }

  BSElement inverse() const {
    // x -> n^{-k} x - n^{-k} t
    return BSElement(n_, -k_) * BSElement(n_, 0, -m_, j_);
  }

  friend bool operator==(const BSElement& x, const BSElement& y) {
    return x.n_ == y.n_ && x.k_ == y.k_ && x.m_ == y.m_ && x.j_ == y.j_;
  }

  /// Standard representation: a -> (x -> n x), b -> (x -> x + 1); infinity is fixed.
  ExactPoint eval(const ExactPoint& p) const {
    if (p.inf) return p;
    Q slope = k_ >= 0 ? Q(npow(k_)) : Q(Z(1), npow(-k_));
    Q r = slope * p.x + t();
    r.canonicalize();
    return ExactPoint::at(r);
  }

  Moebius moebius() const {
    Q slope = k_ >= 0 ? Q(npow(k_)) : Q(Z(1), npow(-k_));
    slope.canonicalize();
    return {slope, t(), Q(0), Q(1)};
  }

 private:
  Z npow(long e) const {
    Z r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(n_), static_cast<unsigned long>(e));
    return r;
  }
  void normalize() {
    if (m_ == 0) {
      j_ = 0;
      return;
    }
    const Z nz(n_);
    while (j_ > 0 && mpz_divisible_p(m_.get_mpz_t(), nz.get_mpz_t())) {
      m_ /= nz;
      --j_;
    }
  }
  void require_same(const BSElement& o) const {
    if (n_ != o.n_) throw Error(Errc::parameter_mismatch, "BS elements with different n");
  }

  long n_;
  long k_;
  Z m_;
  long j_;
};

inline std::string to_string(const BSElement& g) {
  return "(k=" + std::to_string(g.k()) + ", t=" + format_q(g.t()) + ")";
}

/// Word over {a, A, b, B} with A = a^-1, B = b^-1; letters multiply left to right.
inline BSElement word_to_element(const std::string& word, long n) {
  BSElement g(n);
  const BSElement a = BSElement::a(n), b = BSElement::b(n);
  const BSElement ai = a.inverse(), bi = b.inverse();
  for (char c : word) {
    switch (c) {
      case 'a': g = g * a; break;
      case 'A': g = g * ai; break;
      case 'b': g = g * b; break;
      case 'B': g = g * bi; break;
      default: throw Error(Errc::malformed_word, std::string("unexpected letter '") + c + "'");
    }
  }
  return g;
}

inline BSElement bs_mul(const BSElement& x, const BSElement& y) { return x * y; }
inline BSElement bs_inv(const BSElement& x) { return x.inverse(); }

/// x -> c x + d on the real line, fixing infinity.
struct AffineMap {
  double c = 1.0;
  double d = 0.0;
  bool exact = false;
  Q cq{1}, dq{0};

  static AffineMap from_exact(const Q& c, const Q& d) {
    if (c == 0) throw Error(Errc::malformed_input, "affine slope must be nonzero");
    return {to_double(c), to_double(d), true, c, d};
  }
  static AffineMap from_double(double c, double d) {
    if (c == 0.0) throw Error(Errc::malformed_input, "affine slope must be nonzero");
    return {c, d, false, Q(0), Q(0)};
  }

  friend AffineMap operator*(const AffineMap& f, const AffineMap& g) {
    if (f.exact && g.exact) return from_exact(f.cq * g.cq, f.cq * g.dq + f.dq);
    return from_double(f.c * g.c, f.c * g.d + f.d);
  }
};

inline AffineMap affine_of(const BSElement& g) {
  const Moebius m = g.moebius();
  return AffineMap::from_exact(m.a, m.b);
}

inline bool is_orientation_preserving(const AffineMap& f) { return f.c > 0; }

/// Point of the circle R/Z; x = tan(pi u), and u = 1/2 is the tagged point at infinity.
class CirclePoint {
 public:
  static CirclePoint from_u(double u) {
    u -= std::floor(u);
    if (u >= 1.0) u = 0.0;
    return CirclePoint(u);
  }
  static CirclePoint from_x(double x) {
    if (std::isinf(x)) return infinity();
    return from_u(std::atan(x) / std::numbers::pi);
  }
  static CirclePoint infinity() { return CirclePoint(0.5); }

  double u() const { return u_; }
  bool is_infinity() const { return u_ == 0.5; }
  double x() const {
    if (is_infinity()) return std::numeric_limits<double>::infinity();
    return std::tan(std::numbers::pi * u_);
  }

 private:
  explicit CirclePoint(double u) : u_(u) {}
  double u_;
};

/// Shortest distance on R/Z.
inline double circle_distance(double u, double v) {
  double d = std::fmod(std::fabs(u - v), 1.0);
  return std::min(d, 1.0 - d);
}

inline CirclePoint std_rep_eval(const BSElement& g, const CirclePoint& p) {
  if (p.is_infinity()) return p;
  const Moebius m = g.moebius();
  return CirclePoint::from_x(to_double(m.a) * p.x() + to_double(m.b));
}

}  // namespace ramlift
