#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "ramlift/bs_group.hpp"
#include "ramlift/cover.hpp"
#include "ramlift/jet.hpp"

namespace ramlift {

inline constexpr double kPi = std::numbers::pi;

/// Wraps an angle into (-pi/2, pi/2], the range of atan on the projective line.
inline double wrap_angle(double t) {
  t = std::remainder(t, kPi);
  if (t <= -kPi / 2) t += kPi;
  return t;
}

/// Fractional part in [0, 1).
inline double frac(double u) {
  u -= std::floor(u);
  return u >= 1.0 ? 0.0 : u;
}

/// Signed circle difference u - v reduced to [-1/2, 1/2).
inline double circle_diff(double u, double v) {
  double r = std::remainder(u - v, 1.0);
  return r == 0.5 ? -0.5 : r;
}

/// Point of the projective line as a pair (y, x) with w = y / x.
struct ProjPoint {
  double y = 0.0, x = 1.0;

  static ProjPoint from_angle(double th) { return {std::sin(th), std::cos(th)}; }
  double angle() const { return wrap_angle(std::atan2(y, x)); }
  ProjPoint normalized() const {
    const double m = std::max(std::fabs(y), std::fabs(x));
    return {y / m, x / m};
  }
};

/// Angle of p relative to q in (-pi/2, pi/2], exact to rounding even when both are near w = infinity.
inline double angle_between(const ProjPoint& p, const ProjPoint& q) {
  const ProjPoint a = p.normalized(), b = q.normalized();
  return wrap_angle(std::atan2(b.x * a.y - b.y * a.x, b.x * a.x + b.y * a.y));
}

/// Polynomial kept as scale * prod (t - r)^k * prod g(t)^k: exact rational real roots become
/// linear factors so values near the fiber keep full relative precision.
class FactoredPoly {
 public:
  FactoredPoly() = default;
  explicit FactoredPoly(const Poly& p) {
    if (p.is_zero()) throw Error(Errc::zero_polynomial, "cannot factor the zero polynomial");
    scale_ = to_double(p.leading());
    const auto parts = squarefree_decomposition(p);
    for (std::size_t k = 1; k < parts.size(); ++k) {
      Poly f = parts[k];
      if (f.degree() <= 0) continue;
      for (const auto& r : real_roots(f)) {
        if (!r.exact) continue;
        linear_.emplace_back(to_double(r.lo), static_cast<int>(k));
        f = exact_div(f, Poly::linear_root(r.lo));
      }
      if (f.degree() > 0) {
        std::vector<double> c;
        for (const auto& v : f.coeffs()) c.push_back(to_double(v));
        rest_.emplace_back(std::move(c), static_cast<int>(k));
      }
    }
  }

  template <class T>
  T eval(const T& t) const {
    T r(scale_);
    for (const auto& [root, k] : linear_) r = r * ipow(t - T(root), k);
    for (const auto& [coeffs, k] : rest_) {
      T h(coeffs.back());
      for (std::size_t i = coeffs.size() - 1; i-- > 0;) h = h * t + T(coeffs[i]);
      r = r * ipow(h, k);
    }
    return r;
  }

 private:
  double scale_ = 1.0;
  std::vector<std::pair<double, int>> linear_;
  std::vector<std::pair<std::vector<double>, int>> rest_;
};

/// Möbius map with double entries; acts on points of the projective line and on atan angles.
struct MobiusD {
  double a = 1, b = 0, c = 0, d = 1;

  static MobiusD from(const Moebius& m) { return {to_double(m.a), to_double(m.b), to_double(m.c), to_double(m.d)}; }
  static MobiusD from(const AffineMap& f) { return {f.c, f.d, 0.0, 1.0}; }

  double det() const { return a * d - b * c; }
  MobiusD inverse() const { return {d, -b, -c, a}; }
  friend MobiusD operator*(const MobiusD& m, const MobiusD& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }

  /// Angle form: theta = atan(w) goes to atan(m(w)); derivative is det / |M v|^2.
  std::pair<double, double> on_angle(double th) const {
    const double s = std::sin(th), co = std::cos(th);
    const double y = a * s + b * co, x = c * s + d * co;
    return {wrap_angle(std::atan2(y, x)), det() / (x * x + y * y)};
  }

  ProjPoint on_proj(const ProjPoint& p) const { return {a * p.y + b * p.x, c * p.y + d * p.x}; }

  template <class T>
  T on_value(const T& w) const {
    return (T(a) * w + T(b)) / (T(c) * w + T(d));
  }
};

/// Floating-point view of a certified cover in the base-relative target chart w, where the
/// base point is w = 0. The domain is covered by the x chart (|x| <= 1) and xi = -1/x.
class NumericCover {
 public:
  struct Theta {
    double theta;     // atan(w) in (-pi/2, pi/2]
    double dtheta_du;
  };

  explicit NumericCover(const RamifiedCover& c) : cover_(c), sig_(signature_of(c)) {
    const BaseRelative w = base_relative(c.map, c.base);
    const int D = std::max(w.wn.degree(), w.wd.degree());
    num_[0] = FactoredPoly(w.wn);
    den_[0] = FactoredPoly(w.wd);
    const Poly nxi = w.wn.reversed_neg(D), dxi = w.wd.reversed_neg(D);
    num_[1] = FactoredPoly(nxi);
    den_[1] = FactoredPoly(dxi);
    for (const auto& p : c.ram) {
      if (p.inf) {
        qu_.push_back(0.5);
        lead_.push_back(std::fabs(to_double(nxi.coeff(p.s) / dxi.eval(Q(0)))) * std::pow(kPi, p.s));
        continue;
      }
      const Q q = p.root.exact ? p.root.lo : simplest_between(p.root.lo, p.root.hi);
      const double qd = to_double(q);
      qu_.push_back(frac(std::atan(qd) / kPi));
      const Q taylor = w.wn.compose(Poly(std::vector<Q>{q, Q(1)})).coeff(p.s);
      lead_.push_back(std::fabs(to_double(taylor / w.wd.eval(q))) * std::pow(kPi * (1 + qd * qd), p.s));
    }
    for (int i = 0; i < d(); ++i) {
      const double next = qu_[(i + 1) % d()];
      double len = frac(next - qu_[i]);
      if (len == 0.0) len = 1.0;
      len_.push_back(len);
    }
  }

  int d() const { return static_cast<int>(qu_.size()); }
  const RamifiedCover& cover() const { return cover_; }
  const SignatureVector& signature() const { return sig_; }
  double fiber_u(int i) const { return qu_[i]; }
  double edge_length(int i) const { return len_[i]; }
  /// |theta| ~ lead_i |u - q_i|^{s_i} near the fiber point q_i.
  double leading(int i) const { return lead_[i]; }

  /// Chart choice for u: 0 is the x chart, 1 the xi chart. Returns the chart coordinate.
  static std::pair<int, double> chart(double u) {
    u = frac(u);
    if (u <= 0.25 || u >= 0.75) return {0, std::tan(kPi * u)};
    return {1, std::tan(kPi * (u - 0.5))};
  }

  template <class T>
  T w(int chart, const T& t) const {
    return num_[chart].eval(t) / den_[chart].eval(t);
  }

  Theta theta(double u) const {
    const auto [ch, t] = chart(u);
    const Jet<1> T = Jet<1>::variable(t);
    const Jet<1> n = num_[ch].eval(T), dd = den_[ch].eval(T);
    const double th = wrap_angle(std::atan2(n.c[0], dd.c[0]));
    const double dth_dt = (n.c[1] * dd.c[0] - n.c[0] * dd.c[1]) / (n.c[0] * n.c[0] + dd.c[0] * dd.c[0]);
    return {th, dth_dt * kPi * (1 + t * t)};
  }

  /// Value of w at u as a projective pair, relatively accurate even where |w| is huge.
  ProjPoint proj(double u) const {
    const auto [ch, t] = chart(u);
    return ProjPoint{num_[ch].eval(t), den_[ch].eval(t)}.normalized();
  }

  /// Fiber index when u is a fiber point, otherwise -(edge index) - 1.
  int locate(double u) const {
    u = frac(u);
    for (int i = 0; i < d(); ++i) {
      const double off = frac(u - qu_[i]);
      if (off == 0.0) return i;
      if (off < len_[i]) return -i - 1;
    }
    // Rounding can leave u a hair before q_1; it then sits on the last edge.
    return -d();
  }

  /// The unique point of edge j where w equals the target (bisection to 1e-13, then Newton).
  /// Comparisons use cross products of projective pairs, so flat stretches of w near infinity
  /// keep full precision.
  double solve_on_edge(int j, const ProjPoint& target) const {
    const int o = sig_.o[j];
    // Along an edge w sweeps half a turn; lift every pair to the upper half-plane to order them.
    auto upper = [](ProjPoint p) {
      p = p.normalized();
      if (p.y < 0 || (p.y == 0 && p.x < 0)) p = {-p.y, -p.x};
      return p;
    };
    // Edge parameter runs from angle 0 towards pi in the positive case: (1, 0) comes first.
    auto pos = [&](ProjPoint p) {
      p = upper(p);
      return ProjPoint{p.y, o > 0 ? p.x : -p.x};
    };
    const ProjPoint t = pos(target);
    double lo = qu_[j], hi = qu_[j] + len_[j];
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      const ProjPoint m = pos(proj(mid));
      const bool below = m.x * t.y - m.y * t.x > 0;
      if (below) lo = mid;
      else hi = mid;
    }
    double u = 0.5 * (lo + hi);
    for (int it = 0; it < 5; ++it) {
      const double r = angle_between(proj(u), target);
      const double dth = theta(u).dtheta_du;
      if (r == 0.0 || dth == 0.0) break;
      const double next = u - r / dth;
      if (next < lo - 1e-13 || next > hi + 1e-13) break;
      if (next == u) break;
      u = next;
    }
    return frac(u);
  }

  double solve_on_edge(int j, double target) const { return solve_on_edge(j, ProjPoint::from_angle(target)); }

 private:
  RamifiedCover cover_;
  SignatureVector sig_;
  FactoredPoly num_[2], den_[2];
  std::vector<double> qu_, len_, lead_;
};

/// f̂(π, ζ): the lift of a Möbius map f fixing the base point, acting on fiber and edges by ζ.
class LiftedMap {
 public:
  LiftedMap(std::shared_ptr<const NumericCover> cover, const MobiusD& f, const Dihedral& zeta)
      : cover_(std::move(cover)), f_(f), zeta_(zeta) {
    if (!admissible(zeta, *cover_, f))
      throw Error(Errc::not_admissible, "no lift for " + to_string(zeta) + " over this base map");
    const MobiusD B = chart_matrix(cover_->cover().base);
    fw_ = B * f_ * B.inverse();
  }

  static MobiusD chart_matrix(BasePoint b) {
    return b == BasePoint::zero ? MobiusD{} : MobiusD{0, -1, 1, 0};  // w = -1/x over infinity
  }

  static bool fixes_base(const MobiusD& f, BasePoint b) { return b == BasePoint::zero ? f.b == 0.0 : f.c == 0.0; }

  /// O(f) = Δ_s(ζ) with ζ in the hash stabilizer, and f fixing the base point.
  static bool admissible(const Dihedral& zeta, const SignatureVector& s, BasePoint base, const MobiusD& f) {
    if (f.det() == 0.0 || !fixes_base(f, base)) return false;
    if (zeta.d != s.d()) return false;
    if (act_hash(zeta, s).s != s.s) return false;
    return delta(s, zeta) == (f.det() < 0 ? 1 : 0);
  }
  static bool admissible(const Dihedral& zeta, const NumericCover& nc, const MobiusD& f) {
    return admissible(zeta, nc.signature(), nc.cover().base, f);
  }

  const NumericCover& cover() const { return *cover_; }
  std::shared_ptr<const NumericCover> cover_ptr() const { return cover_; }
  const MobiusD& base_map() const { return f_; }
  const MobiusD& w_map() const { return fw_; }
  const Dihedral& zeta() const { return zeta_; }
  int orientation() const { return zeta_.flip ? -1 : 1; }

  double eval_u(double u) const {
    const int loc = cover_->locate(u);
    if (loc >= 0) return cover_->fiber_u(zeta_.vertex(loc + 1) - 1);
    const int i = -loc - 1;
    return cover_->solve_on_edge(zeta_.edge(i + 1) - 1, fw_.on_proj(cover_->proj(u)));
  }

  CirclePoint operator()(const CirclePoint& p) const { return CirclePoint::from_u(eval_u(p.u())); }

  /// Derivative in the u coordinate. Fiber points use the closed form.
  double derivative_u(double u) const {
    const int loc = cover_->locate(u);
    if (loc >= 0) {
      const int j = zeta_.vertex(loc + 1) - 1;
      const int s = cover_->signature().s[loc];
      const double ratio = fw_.on_angle(0.0).second * cover_->leading(loc) / cover_->leading(j);
      return orientation() * std::pow(std::fabs(ratio), 1.0 / s);
    }
    const auto th = cover_->theta(u);
    const double img = eval_u(u);
    return fw_.on_angle(th.theta).second * th.dtheta_du / cover_->theta(img).dtheta_du;
  }

 private:
  std::shared_ptr<const NumericCover> cover_;
  MobiusD f_, fw_;
  Dihedral zeta_;
};

inline CirclePoint lift_eval(const LiftedMap& L, const CirclePoint& p) { return L(p); }
inline double lift_derivative(const LiftedMap& L, const CirclePoint& p) { return L.derivative_u(p.u()); }

/// Deterministic sample of n points of the circle; seed 0 gives cell midpoints.
inline std::vector<double> sample_grid(int n, std::uint64_t seed) {
  std::vector<double> g(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  for (int k = 0; k < n; ++k) g[k] = (k + (seed == 0 ? 0.5 : jitter(rng))) / n;
  return g;
}

/// sup over the grid of the distance between pi(f̂(u)) and f(pi(u)), in the u metric.
inline double square_residual(const LiftedMap& L, const std::vector<double>& grid) {
  double worst = 0.0;
  for (double u : grid) {
    const ProjPoint lhs = L.cover().proj(L.eval_u(u));
    const ProjPoint rhs = L.w_map().on_proj(L.cover().proj(u));
    worst = std::max(worst, std::fabs(angle_between(lhs, rhs)) / kPi);
  }
  return worst;
}

/// f̂₂ ∘ f̂₁ against the direct lift of f₂ ∘ f₁ with ζ₂ζ₁.
inline double compose_check(const LiftedMap& L1, const LiftedMap& L2, const std::vector<double>& grid) {
  if (L1.cover_ptr() != L2.cover_ptr()) throw Error(Errc::not_admissible, "lifts live on different covers");
  const LiftedMap direct(L1.cover_ptr(), L2.base_map() * L1.base_map(), L2.zeta() * L1.zeta());
  double worst = 0.0;
  for (double u : grid) worst = std::max(worst, circle_distance(L2.eval_u(L1.eval_u(u)), direct.eval_u(u)));
  return worst;
}

/// Images (ζ_a, ζ_b) of the generators, lifted over a cover with base point infinity.
class LiftedRep {
 public:
  LiftedRep(long n, std::shared_ptr<const NumericCover> cover, const Dihedral& za, const Dihedral& zb)
      : n_(n), za_(za), zb_(zb) {
    if (n < 2) throw Error(Errc::malformed_input, "BS(1,n) needs n >= 2");
    if (cover->cover().base != BasePoint::infinity)
      throw Error(Errc::base_point_not_fixed, "the standard representation fixes infinity, not 0");
    if (za * zb * za.inverse() != zb.pow(n))
      throw Error(Errc::hom_constraint_violated, "ζ_a ζ_b ζ_a^-1 differs from ζ_b^n");
    a_ = std::make_unique<LiftedMap>(cover, MobiusD{static_cast<double>(n), 0, 0, 1}, za);
    b_ = std::make_unique<LiftedMap>(cover, MobiusD{1, 1, 0, 1}, zb);
  }

  long n() const { return n_; }
  const LiftedMap& a() const { return *a_; }
  const LiftedMap& b() const { return *b_; }
  const NumericCover& cover() const { return a_->cover(); }

 private:
  long n_;
  Dihedral za_, zb_;
  std::unique_ptr<LiftedMap> a_, b_;
};

/// sup over the grid of dist(f̂_a ĝ_b (u), ĝ_b^n f̂_a (u)).
inline double relation_residual(const LiftedRep& R, const std::vector<double>& grid) {
  double worst = 0.0;
  for (double u : grid) {
    const double lhs = R.a().eval_u(R.b().eval_u(u));
    double rhs = R.a().eval_u(u);
    for (long k = 0; k < R.n(); ++k) rhs = R.b().eval_u(rhs);
    worst = std::max(worst, circle_distance(lhs, rhs));
  }
  return worst;
}

/// Exact rotation number of the fiber permutation: b^k moves q_i to q_{i-k}.
inline Q rotation_number_combinatorial(const LiftedMap& L) {
  if (L.zeta().flip) throw Error(Errc::orientation_reversing, "rotation number needs an orientation-preserving lift");
  const int d = L.zeta().d;
  Q r(static_cast<long>((d - L.zeta().rot) % d), d);
  r.canonicalize();
  return r;
}

/// Birkhoff estimate (F^N(u0) - u0)/N of a lift F to R, reduced to [0, 1).
/// F is pinned on the fiber, where the image is exact, and continued across each edge by the
/// offset of the image inside its target edge; steep lifts need no displacement grid.
inline double rotation_number_numeric(const LiftedMap& L, long iterations = 100000, double u0 = 0.1234567) {
  if (L.zeta().flip) throw Error(Errc::orientation_reversing, "rotation number needs an orientation-preserving lift");
  const NumericCover& nc = L.cover();
  const int d = nc.d();
  // shift[i] = F(q_i) - q_i, continuous across every fiber point.
  std::vector<double> shift(d);
  shift[0] = frac(nc.fiber_u(L.zeta().vertex(1) - 1) - nc.fiber_u(0));
  for (int i = 1; i < d; ++i) shift[i] = shift[i - 1] + nc.edge_length(L.zeta().edge(i) - 1) - nc.edge_length(i - 1);
  auto step = [&](double x) {
    const double f = frac(x);
    const int loc = nc.locate(f);
    const int i = loc >= 0 ? loc : -loc - 1;
    const double t = frac(f - nc.fiber_u(i));
    const int j = L.zeta().edge(i + 1) - 1;
    double off = frac(L.eval_u(f) - nc.fiber_u(j));
    if (off > nc.edge_length(j)) off -= 1.0;  // rounding just before the start of the target edge
    return x + shift[i] + off - t;
  };
  double x = u0;
  for (long k = 0; k < iterations; ++k) x = step(x);
  return frac((x - u0) / static_cast<double>(iterations));
}

struct SpectralRadius {
  double closed_form = 0.0;
  double numeric = 0.0;
  bool zeta_a_nontrivial = false;  // numeric search space not proven complete in this case
  int candidates = 0;
};

namespace detail {

inline double iterate(const LiftedMap& L, double u, int k) {
  for (int i = 0; i < k; ++i) u = L.eval_u(u);
  return u;
}

// Richardson-extrapolated central difference of u -> F(u), differences taken on the circle.
inline double fd_derivative(const LiftedMap& L, double u, int k, double h) {
  auto D = [&](double hh) { return circle_diff(iterate(L, u + hh, k), iterate(L, u - hh, k)) / (2 * hh); };
  return (4 * D(h / 2) - D(h)) / 3;
}

}  // namespace detail

/// Sup of |(f̂^k)'|^{1/k} over candidate periodic points of f̂ = lift of a, k = order of ζ_a,
/// keeping contracting values only. Candidates: the fiber and Newton-refined fixed points of
/// f̂^k inside each edge.
inline SpectralRadius inner_spectral_radius(const LiftedRep& R) {
  const LiftedMap& A = R.a();
  const NumericCover& nc = R.cover();
  const int k = A.zeta().order();
  SpectralRadius out;
  out.closed_form = std::pow(1.0 / static_cast<double>(R.n()), 1.0 / nc.signature().max_s());
  out.zeta_a_nontrivial = !A.zeta().is_identity();

  std::vector<double> cands;
  for (int i = 0; i < nc.d(); ++i) cands.push_back(nc.fiber_u(i));
  for (int e = 0; e < nc.d(); ++e) {
    const double start = nc.fiber_u(e), len = nc.edge_length(e);
    auto g = [&](double s) { return frac(detail::iterate(A, start + s, k) - start) - s; };
    constexpr int M = 64;
    double prev_s = len / (M + 1), prev_g = g(prev_s);
    for (int m = 2; m <= M; ++m) {
      const double s = len * m / (M + 1), gs = g(s);
      if ((gs > 0) != (prev_g > 0) && std::fabs(gs - prev_g) < 0.5 * len) {
        double lo = prev_s, hi = s, glo = prev_g;
        while (hi - lo > 1e-12) {
          const double mid = 0.5 * (lo + hi), gm = g(mid);
          if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
          } else {
            hi = mid;
          }
        }
        double x = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) {
          double dF = 1.0, y = start + x;
          for (int i = 0; i < k; ++i) {
            dF *= A.derivative_u(frac(y));
            y = A.eval_u(y);
          }
          if (dF == 1.0) break;
          const double nx = x - g(x) / (dF - 1.0);
          if (nx <= lo - 1e-9 || nx >= hi + 1e-9) break;
          x = nx;
        }
        cands.push_back(frac(start + x));
      }
      prev_s = s;
      prev_g = gs;
    }
  }
  out.candidates = static_cast<int>(cands.size());
  for (double u : cands) {
    const double m = std::pow(std::fabs(detail::fd_derivative(A, u, k, 1e-4)), 1.0 / k);
    if (m <= 1.0 + 1e-9) out.numeric = std::max(out.numeric, m);
  }
  return out;
}

/// Local model G^t(x) = x / (1 + t x^s)^{1/s}, defined when 1 + t x^s > 0.
inline double local_flow_eval(double t, double x, int s) {
  if (s < 1) throw Error(Errc::malformed_input, "flow order s must be >= 1");
  const double base = 1.0 + t * ipow(x, s);
  if (!(base > 0.0)) throw Error(Errc::out_of_domain, "1 + t x^s must be positive");
  return x / std::pow(base, 1.0 / s);
}

enum class SchwarzianMethod { jet, finite_difference };

struct SchwarzianOptions {
  int samples_per_side = 10;
  double y_min = 0.02;  // sample band in the base-relative chart, |w| in [y_min, y_max]
  double y_max = 0.2;
  double fd_step = 3e-3;  // stencil reaches y0 +- 3h, so keep 3h < y_min
};

namespace detail {

// Chart coordinate jet T with w(T) = Y, T(0) = t0, by Newton with a frozen derivative.
template <std::size_t N>
Jet<N> invert_w(const NumericCover& nc, int ch, double t0, const Jet<N>& Y) {
  const Jet<1> d1 = nc.w(ch, Jet<1>::variable(t0));
  Jet<N> T(t0);
  for (std::size_t it = 0; it <= N; ++it) {
    T = T - (nc.w(ch, T) - Y) / Jet<N>(d1.c[1]);
    T.c[0] = t0;
  }
  return T;
}

inline double w_of_u(const NumericCover& nc, double u) { return std::tan(nc.theta(u).theta); }

}  // namespace detail

/// Max |S(G)| over samples near fiber point i, with G = π_w ∘ f̂ ∘ (π_w restricted to an
/// adjacent edge)^-1. G coincides with the Möbius map f in the w chart, so S(G) should vanish.
inline double schwarzian_check(const LiftedMap& L, int i, SchwarzianMethod method = SchwarzianMethod::jet,
                               const SchwarzianOptions& opt = {}) {
  const NumericCover& nc = L.cover();
  if (i < 0 || i >= nc.d()) throw Error(Errc::chart_unavailable, "no ramification point with that index");
  const MobiusD& fw = L.w_map();
  const int d = nc.d();
  const int prev = (i + d - 1) % d;
  const SignatureVector& s = nc.signature();
  // Near q_i: edge i starts with w of sign o_i, edge i-1 ends with w of sign -o_{i-1}.
  const std::pair<int, int> sides[2] = {{i, s.o[i]}, {prev, -s.o[prev]}};
  double worst = 0.0;
  for (const auto& [edge, sg] : sides) {
    for (int m = 0; m < opt.samples_per_side; ++m) {
      const double mag = opt.y_min + (opt.y_max - opt.y_min) * m / std::max(1, opt.samples_per_side - 1);
      const double y0 = sg * mag;
      if (std::fabs(fw.c * y0 + fw.d) < 1e-6) throw Error(Errc::chart_unavailable, "f has a pole in the sample band");
      double S = 0.0;
      if (method == SchwarzianMethod::jet) {
        const double u0 = nc.solve_on_edge(edge, std::atan(y0));
        const auto [c1, t0] = NumericCover::chart(u0);
        const Jet<3> Y = Jet<3>::variable(nc.w(c1, Jet<1>(t0)).c[0]);
        const Jet<3> X = detail::invert_w(nc, c1, t0, Y);
        const double v0 = L.eval_u(u0);
        const auto [c2, z0] = NumericCover::chart(v0);
        // Lift as a jet in t: w2(F(t0 + e)) = f_w(w1(t0 + e)), F(0) = z0.
        const Jet<3> target = fw.on_value(nc.w(c1, Jet<3>::variable(t0)));
        const Jet<1> dz = nc.w(c2, Jet<1>::variable(z0));
        Jet<3> F(z0);
        for (int it = 0; it < 4; ++it) {
          F = F - (nc.w(c2, F) - target) / Jet<3>(dz.c[1]);
          F.c[0] = z0;
        }
        const Jet<3> G = nc.w(c2, F.compose(X));
        S = schwarzian(G);
      } else {
        const double h = opt.fd_step;
        auto G = [&](double y) {
          const double u = nc.solve_on_edge(edge, std::atan(y));
          return detail::w_of_u(nc, L.eval_u(u));
        };
        double f[7];
        for (int k = -3; k <= 3; ++k) f[k + 3] = G(y0 + k * h);
        const double d1 = (f[1] - 8 * f[2] + 8 * f[4] - f[5]) / (12 * h);
        const double d2 = (-f[1] + 16 * f[2] - 30 * f[3] + 16 * f[4] - f[5]) / (12 * h * h);
        const double d3 = (-f[6] + 8 * f[5] - 13 * f[4] + 13 * f[2] - 8 * f[1] + f[0]) / (8 * h * h * h);
        S = d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
      }
      worst = std::max(worst, std::fabs(S));
    }
  }
  return worst;
}

}  // namespace ramlift
