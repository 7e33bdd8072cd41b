#pragma once

#include <array>
#include <cstddef>

namespace ramlift {

/// Truncated Taylor series c[0] + c[1] e + ... + c[N] e^N.
template <std::size_t N>
struct Jet {
  std::array<double, N + 1> c{};

  Jet() = default;
  Jet(double v) { c[0] = v; }  // NOLINT: implicit promotion of constants is the point

  static Jet variable(double v) {
    Jet j(v);
    if constexpr (N >= 1) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }
  /// k-th derivative at the expansion point.
  double derivative(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return c[k] * f;
  }

  friend Jet operator+(Jet a, const Jet& b) {
    for (std::size_t i = 0; i <= N; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    for (std::size_t i = 0; i <= N; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c) v = -v;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t i = 0; i <= N; ++i)
      for (std::size_t j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t k = 0; k <= N; ++k) {
      double acc = a.c[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= b.c[j] * r.c[k - j];
      r.c[k] = acc / b.c[0];
    }
    return r;
  }
  Jet& operator+=(const Jet& b) { return *this = *this + b; }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }

  /// f(g(e)) for this f expanded at g(0); the constant term of g is ignored.
  Jet compose(const Jet& g) const {
    Jet dg = g;
    dg.c[0] = 0.0;
    Jet r(c[N]);
    for (std::size_t k = N; k-- > 0;) r = r * dg + Jet(c[k]);
    return r;
  }
};

template <std::size_t N>
Jet<N> ipow(const Jet<N>& x, int e) {
  Jet<N> r(1.0), b = x;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

inline double ipow(double x, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

/// S(f) = f'''/f' - (3/2) (f''/f')^2 at the expansion point.
template <std::size_t N>
double schwarzian(const Jet<N>& f) {
  static_assert(N >= 3);
  const double d1 = f.derivative(1), d2 = f.derivative(2), d3 = f.derivative(3);
  return d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
}

}  // namespace ramlift
