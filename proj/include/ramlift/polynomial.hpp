#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "ramlift/rational.hpp"

namespace ramlift {

/// Dense polynomial with exact rational coefficients, ascending degree.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Q> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<long> ints) {
    for (long v : ints) c_.emplace_back(v);
    trim();
  }

  static Poly constant(const Q& v) { return Poly(std::vector<Q>{v}); }
  static Poly x() { return Poly(std::vector<Q>{Q(0), Q(1)}); }
  /// x - r
  static Poly linear_root(const Q& r) { return Poly(std::vector<Q>{-r, Q(1)}); }

  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Q>& coeffs() const { return c_; }
  Q coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Q(0); }
  Q leading() const { return c_.empty() ? Q(0) : c_.back(); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Q> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Q> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(const Q& s, const Poly& p) {
    if (s == 0) return {};
    Poly r = p;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  Poly pow(unsigned e) const {
    Poly r = constant(Q(1));
    Poly b = *this;
    while (e) {
      if (e & 1u) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Q> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(r));
  }

  /// Antiderivative vanishing at 0.
  Poly integral() const {
    std::vector<Q> r(c_.size() + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      r[i + 1] = c_[i] / static_cast<long>(i + 1);
      r[i + 1].canonicalize();
    }
    return Poly(std::move(r));
  }

  Q eval(const Q& x) const {
    Q r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  double eval(double x) const {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + to_double(*it);
    return r;
  }

  /// p(q(x)).
  Poly compose(const Poly& q) const {
    Poly r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + constant(*it);
    return r;
  }

  /// x^D p(-1/x), the chart change at infinity; D must be at least deg p.
  Poly reversed_neg(int D) const {
    std::vector<Q> r(static_cast<std::size_t>(D) + 1);
    for (int k = 0; k <= degree(); ++k) r[D - k] = (k % 2 ? -c_[k] : c_[k]);
    return Poly(std::move(r));
  }

  /// Scales by a positive rational so the coefficients are coprime integers.
  Poly primitive() const {
    if (is_zero()) return {};
    Z l(1), g(0);
    for (const auto& v : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Q> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      r[i] = c_[i] * l;
      r[i].canonicalize();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[i].get_num_mpz_t());
    }
    for (auto& v : r) {
      v /= g;
      v.canonicalize();
    }
    return Poly(std::move(r));
  }

  Poly monic() const {
    if (is_zero()) return {};
    return Q(1 / leading()) * *this;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    for (auto& v : c_) v.canonicalize();
  }

  std::vector<Q> c_;
};

/// Euclidean division; throws on a zero divisor.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Errc::division_by_zero_polynomial, "division by the zero polynomial");
  std::vector<Q> rem = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {Poly{}, a};
  std::vector<Q> quo(static_cast<std::size_t>(da - db) + 1);
  const Q lb = b.leading();
  for (int k = da - db; k >= 0; --k) {
    Q f = rem[k + db] / lb;
    f.canonicalize();
    quo[k] = f;
    if (f == 0) continue;
    for (int i = 0; i <= db; ++i) rem[k + i] -= f * b.coeff(i);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

/// Exact quotient; throws if b does not divide a.
inline Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(Errc::malformed_input, "polynomial division is not exact");
  return q;
}

/// Monic gcd; gcd(0, 0) is 0.
inline Poly gcd(Poly a, Poly b) {
  a = a.primitive();
  b = b.primitive();
  while (!b.is_zero()) {
    Poly r = (a % b).primitive();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Yun's square-free decomposition: p = lc * prod_k f[k]^k, f[0] unused.
/// Each f[k] is monic and square-free, and the f[k] are pairwise coprime.
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
  if (p.is_zero()) throw Error(Errc::zero_polynomial, "square-free decomposition of zero");
  std::vector<Poly> out(1, Poly::constant(Q(1)));
  const Poly m = p.monic();
  if (m.degree() == 0) return out;
  Poly a = gcd(m, m.derivative());
  Poly b = exact_div(m, a);
  Poly c = exact_div(m.derivative(), a);
  Poly dd = c - b.derivative();
  while (b.degree() > 0) {
    Poly g = gcd(b, dd);
    out.push_back(g);
    b = exact_div(b, g);
    c = exact_div(dd, g);
    dd = c - b.derivative();
  }
  while (out.size() > 1 && out.back().degree() == 0) out.pop_back();
  return out;
}

inline Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) throw Error(Errc::zero_polynomial, "square-free part of zero");
  if (p.degree() <= 0) return Poly::constant(Q(1));
  return exact_div(p.monic(), gcd(p, p.derivative()));
}

/// Multiplicity of r as a root of p (p nonzero).
inline int root_multiplicity(Poly p, const Q& r) {
  if (p.is_zero()) throw Error(Errc::zero_polynomial, "multiplicity in the zero polynomial");
  int k = 0;
  const Poly lin = Poly::linear_root(r);
  while (p.degree() > 0 && p.eval(r) == 0) {
    p = exact_div(p, lin);
    ++k;
  }
  return k;
}

}  // namespace ramlift
