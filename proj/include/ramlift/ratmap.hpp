#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "ramlift/sturm.hpp"

namespace ramlift {

/// Exact point of the projective line: a rational or infinity.
struct ExactPoint {
  bool inf = false;
  Q x;

  static ExactPoint infinity() { return {true, Q(0)}; }
  static ExactPoint at(const Q& v) { return {false, v}; }
  friend bool operator==(const ExactPoint& a, const ExactPoint& b) {
    return a.inf == b.inf && (a.inf || a.x == b.x);
  }
};

/// Integer-coefficient Möbius transformation x -> (a x + b)/(c x + d), stored exactly.
struct Moebius {
  Q a{1}, b{0}, c{0}, d{1};

  Q det() const { return a * d - b * c; }
  Moebius inverse() const { return {d, -b, -c, a}; }
  friend Moebius operator*(const Moebius& m, const Moebius& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
            m.c * n.b + m.d * n.d};
  }
  ExactPoint operator()(const ExactPoint& p) const {
    Q num, den;
    if (p.inf) {
      num = a;
      den = c;
    } else {
      num = a * p.x + b;
      den = c * p.x + d;
    }
    if (den == 0) return ExactPoint::infinity();
    Q r = num / den;
    r.canonicalize();
    return ExactPoint::at(r);
  }
  bool fixes(const ExactPoint& p) const { return (*this)(p) == p; }
};

/// Reduced quotient num/den of polynomials, viewed as a self-map of the projective line.
class RationalMap {
 public:
  RationalMap() : num_(Poly::x()), den_(Poly::constant(Q(1))) {}
  RationalMap(Poly num, Poly den) {
    if (den.is_zero()) throw Error(Errc::division_by_zero_polynomial, "rational map with zero denominator");
    if (num.is_zero()) throw Error(Errc::zero_polynomial, "rational map with zero numerator");
    const Poly g = gcd(num, den);
    num = exact_div(num, g);
    den = exact_div(den, g);
    // Integer coefficients with no common content, denominator leading coefficient positive.
    Z l(1), content(0);
    for (const Poly* p : {&num, &den})
      for (const auto& v : p->coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    num = Q(l) * num;
    den = Q(l) * den;
    for (const Poly* p : {&num, &den})
      for (const auto& v : p->coeffs())
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_num_mpz_t());
    Q scale = Q(1) / Q(content);
    if (den.leading() < 0) scale = -scale;
    num_ = scale * num;
    den_ = scale * den;
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  /// Projective evaluation; poles map to infinity and infinity uses the degree rule.
  ExactPoint eval(const ExactPoint& p) const {
    if (p.inf) {
      if (num_.degree() > den_.degree()) return ExactPoint::infinity();
      if (num_.degree() < den_.degree()) return ExactPoint::at(Q(0));
      Q r = num_.leading() / den_.leading();
      r.canonicalize();
      return ExactPoint::at(r);
    }
    const Q n = num_.eval(p.x), d = den_.eval(p.x);
    if (d == 0) {
      if (n == 0) throw Error(Errc::indeterminate_form, "0/0 in a reduced rational map");
      return ExactPoint::infinity();
    }
    Q r = n / d;
    r.canonicalize();
    return ExactPoint::at(r);
  }

  /// Exact derivative at a finite non-pole point.
  Q derivative(const Q& x) const {
    const Q d = den_.eval(x);
    if (d == 0) throw Error(Errc::indeterminate_form, "derivative requested at a pole");
    Q r = (num_.derivative().eval(x) * d - num_.eval(x) * den_.derivative().eval(x)) / (d * d);
    r.canonicalize();
    return r;
  }

  double eval(double x) const { return num_.eval(x) / den_.eval(x); }
  double derivative(double x) const {
    const double d = den_.eval(x);
    return (num_.derivative().eval(x) * d - num_.eval(x) * den_.derivative().eval(x)) / (d * d);
  }

  /// Numerator of the derivative: num' den - num den'.
  Poly derivative_numerator() const {
    return num_.derivative() * den_ - num_ * den_.derivative();
  }

  /// m ∘ R.
  RationalMap post(const Moebius& m) const {
    return RationalMap(Q(m.a) * num_ + Q(m.b) * den_, Q(m.c) * num_ + Q(m.d) * den_);
  }

  /// R ∘ m.
  RationalMap pre(const Moebius& m) const {
    const int D = degree();
    const Poly top = Poly(std::vector<Q>{m.b, m.a});
    const Poly bot = Poly(std::vector<Q>{m.d, m.c});
    auto homog = [&](const Poly& p) {
      Poly acc;
      for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k) == 0) continue;
        acc = acc + p.coeff(k) * (top.pow(k) * bot.pow(static_cast<unsigned>(D - k)));
      }
      return acc;
    };
    return RationalMap(homog(num_), homog(den_));
  }

  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Poly num_, den_;
};

}  // namespace ramlift
