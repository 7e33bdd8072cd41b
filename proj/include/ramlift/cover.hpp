#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramlift/ratmap.hpp"
#include "ramlift/signature.hpp"

namespace ramlift {

enum class BasePoint { zero, infinity };

inline ExactPoint base_exact(BasePoint b) {
  return b == BasePoint::zero ? ExactPoint::at(Q(0)) : ExactPoint::infinity();
}

/// A point of the fiber over the base: infinity, or a real root known exactly or by an interval.
struct RamPoint {
  bool inf = false;
  RealRoot root;
  int s = 1;
  int o = 1;  // orientation of the edge that starts here

  double approx() const { return inf ? std::numeric_limits<double>::infinity() : root.approx(); }
  bool exact() const { return inf || root.exact; }
  Q exact_value() const {
    if (!root.exact) throw Error(Errc::malformed_input, "ramification point is not rational");
    return root.lo;
  }
};

struct RamifiedCover {
  RationalMap map;
  BasePoint base = BasePoint::zero;
  std::vector<RamPoint> ram;  // q_1 < ... < q_d, infinity first when present
  bool certified = false;
  std::string failure;        // why certification failed, empty when certified

  int d() const { return static_cast<int>(ram.size()); }
};

/// The map written in a chart of the target where the base point is 0: w = Wn / Wd.
struct BaseRelative {
  Poly wn, wd;
};

inline BaseRelative base_relative(const RationalMap& m, BasePoint b) {
  if (b == BasePoint::zero) return {m.num(), m.den()};
  return {-m.den(), m.num()};  // w = -1/pi
}

namespace detail {

struct FiberRoot {
  RealRoot r;
  int mult;
  Poly factor;
};

// Orders roots of distinct coprime square-free factors, refining interval roots until they
// separate. Roots are distinct, so a.hi <= b.lo already places a strictly before b.
inline void separate(std::vector<FiberRoot>& roots) {
  auto by_lo = [](const FiberRoot& a, const FiberRoot& b) { return a.r.lo < b.r.lo; };
  for (int guard = 0; guard < 4096; ++guard) {
    std::sort(roots.begin(), roots.end(), by_lo);
    bool clean = true;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      if (roots[i].r.hi <= roots[i + 1].r.lo) continue;
      clean = false;
      for (auto* fr : {&roots[i], &roots[i + 1]})
        fr->r = refine(fr->factor, fr->r, (fr->r.hi - fr->r.lo) / 2);
    }
    if (clean) return;
  }
  throw Error(Errc::uncertified_cover, "could not separate fiber points");
}

inline int sign_of_derivative_at_infinity(const BaseRelative& w) {
  const int D = std::max(w.wn.degree(), w.wd.degree());
  const Poly n = w.wn.reversed_neg(D), dd = w.wd.reversed_neg(D);
  return sign(n.derivative().eval(Q(0)) * dd.eval(Q(0)) - n.eval(Q(0)) * dd.derivative().eval(Q(0)));
}

}  // namespace detail

/// Exact certification: fiber points and orders from square-free factors of Wn, no real
/// critical points off the fiber (Sturm), no multiple poles, orientation per edge by sign.
inline RamifiedCover certify(const RationalMap& map, BasePoint base) {
  RamifiedCover c{map, base, {}, false, {}};
  auto fail = [&](const std::string& why) {
    c.ram.clear();
    c.failure = why;
    return c;
  };
  const BaseRelative w = base_relative(map, base);
  const int dn = w.wn.degree(), dd = w.wd.degree();

  const auto nf = squarefree_decomposition(w.wn);
  std::vector<detail::FiberRoot> roots;
  Poly removable = Poly::constant(Q(1));
  for (std::size_t k = 1; k < nf.size(); ++k) {
    if (nf[k].degree() <= 0) continue;
    for (const auto& r : real_roots(nf[k])) roots.push_back({r, static_cast<int>(k), nf[k]});
    if (k >= 2) removable = removable * nf[k].pow(static_cast<unsigned>(k - 1));
  }
  detail::separate(roots);

  const bool inf_in_fiber = dn < dd;
  if (inf_in_fiber) {
    RamPoint p;
    p.inf = true;
    p.s = dd - dn;
    c.ram.push_back(p);
  }
  for (const auto& fr : roots) c.ram.push_back({false, fr.r, fr.mult, 1});
  if (c.ram.empty()) return fail("empty fiber over the base point");

  const Poly wc = w.wn.derivative() * w.wd - w.wn * w.wd.derivative();
  const Poly wc_free = exact_div(wc, removable);
  if (real_root_count(wc_free) != 0) return fail("real critical point off the fiber");

  const auto df = squarefree_decomposition(w.wd);
  for (std::size_t k = 2; k < df.size(); ++k)
    if (df[k].degree() > 0 && real_root_count(df[k]) != 0) return fail("multiple real pole");

  if (!inf_in_fiber) {
    if (dn > dd + 1) return fail("multiple pole at infinity");
    if (dn == dd && detail::sign_of_derivative_at_infinity(w) == 0) return fail("critical point at infinity");
  }

  // Orientation: sign of Wc at a rational point inside each edge.
  const int d = c.d();
  for (int i = 0; i < d; ++i) {
    const RamPoint& a = c.ram[i];
    const RamPoint& b = c.ram[(i + 1) % d];
    Q sample;
    if (d == 1) sample = a.inf ? Q(0) : a.root.hi + 1;
    else if (a.inf) sample = b.root.lo - 1;
    else if (b.inf || i == d - 1) sample = a.root.hi + 1;
    else sample = (a.root.hi + b.root.lo) / 2;
    const int sg = sign(wc.eval(sample));
    if (sg == 0) return fail("orientation sample hit a critical point");
    c.ram[i].o = sg;
  }

  std::vector<long> s, o;
  for (const auto& p : c.ram) {
    s.push_back(p.s);
    o.push_back(p.o);
  }
  try {
    validate_signature(s, o);
  } catch (const Error& e) {
    return fail(std::string("extracted labels are inconsistent: ") + e.what());
  }
  c.certified = true;
  return c;
}

inline SignatureVector signature_of(const RamifiedCover& c) {
  if (!c.certified) throw Error(Errc::uncertified_cover, c.failure.empty() ? "cover is not certified" : c.failure);
  std::vector<long> s, o;
  for (const auto& p : c.ram) {
    s.push_back(p.s);
    o.push_back(p.o);
  }
  return validate_signature(s, o);
}

struct BuildOptions {
  int n_cap = 64;   // N runs over 1, 2, 4, ... up to this
  int j_cap = 128;  // epsilon = 2^-j for j = 1..j_cap
};

struct BuildTrace {
  int n = 0, j = 0, attempts = 0;
  std::string last_failure;
};

namespace detail {

inline const Moebius& inversion() {
  static const Moebius m{Q(0), Q(-1), Q(1), Q(0)};  // x -> -1/x
  return m;
}
inline const Moebius& negation() {
  static const Moebius m{Q(-1), Q(0), Q(0), Q(1)};
  return m;
}

// Pieces of the base-0 construction that do not depend on epsilon.
struct Skeleton {
  Poly p_h_n;  // P h^N
  Poly q;      // poles at the odd nodes
  int m = 0;   // pole order at infinity is 2m + 1 before the correction
};

inline Skeleton skeleton(const SignatureVector& target, int N) {
  const int d = target.d();
  Poly P = Poly::constant(Q(1)), Qp = Poly::constant(Q(1)), hp = Poly::constant(Q(1));
  for (int i = 0; i <= 2 * d - 2; ++i) {
    const Poly lin = Poly::linear_root(Q(i));
    hp = hp * lin;
    if (i % 2 == 0) P = P * lin.pow(static_cast<unsigned>(target.s[i / 2]));
    else Qp = Qp * lin;
  }
  Poly H = hp.integral();
  Q lowest = H.eval(Q(0));
  for (int i = 1; i <= 2 * d - 2; ++i) lowest = std::min<Q>(lowest, H.eval(Q(i)));
  const Poly h = H + Poly::constant(Q(1) - lowest);  // even degree, minimum 1, no real zeros
  Skeleton sk{P * h.pow(static_cast<unsigned>(N)), Qp, 0};
  const int pole = sk.p_h_n.degree() - Qp.degree();
  sk.m = (pole - 1) / 2;
  return sk;
}

}  // namespace detail

/// Searches N then epsilon, certifying every candidate; the first exact match wins.
inline RamifiedCover build_cover(const SignatureVector& target, BasePoint base, const BuildOptions& opt = {},
                                 BuildTrace* trace = nullptr) {
  BuildTrace local;
  BuildTrace& tr = trace ? *trace : local;
  for (int N = 1; N <= opt.n_cap; N *= 2) {
    const detail::Skeleton sk = detail::skeleton(target, N);
    for (int j = 1; j <= opt.j_cap; ++j) {
      ++tr.attempts;
      tr.n = N;
      tr.j = j;
      std::vector<Q> corr(static_cast<std::size_t>(2 * sk.m) + 1);
      corr[0] = 1;
      corr[2 * sk.m] += Q(Z(1), Z(1) << j);  // 1 + eps x^{2m}
      RationalMap pi(sk.p_h_n, sk.q * Poly(std::move(corr)));
      if (base == BasePoint::infinity) pi = pi.pre(detail::inversion()).post(detail::inversion());
      RamifiedCover c = certify(pi, base);
      if (!c.certified) {
        tr.last_failure = c.failure;
        continue;
      }
      const SignatureVector got = signature_of(c);
      if (got == target) return c;
      if (got == sign_involution(target)) {
        c = certify(pi.post(detail::negation()), base);
        if (c.certified && signature_of(c) == target) return c;
      }
      tr.last_failure = "certified signature " + to_string(got) + " is not the target";
    }
  }
  throw Error(Errc::construction_failed,
              "no certified cover for " + to_string(target) + " after " + std::to_string(tr.attempts) +
                  " candidates (last N=" + std::to_string(tr.n) + ", j=" + std::to_string(tr.j) +
                  "): " + tr.last_failure);
}

/// pi -> pi ∘ (x -> -x).
inline RamifiedCover pre_negate(const RamifiedCover& c) {
  return certify(c.map.pre(detail::negation()), c.base);
}

/// pi -> m ∘ pi for a Möbius map m fixing the base point.
inline RamifiedCover post_moebius(const RamifiedCover& c, const Moebius& m) {
  if (!m.fixes(base_exact(c.base))) throw Error(Errc::base_point_not_fixed, "Möbius map moves the base point");
  if (m.det() == 0) throw Error(Errc::malformed_input, "singular Möbius map");
  return certify(c.map.post(m), c.base);
}

/// pi -> pi ∘ m^-1, moving the fiber by m.
inline RamifiedCover pre_moebius(const RamifiedCover& c, const Moebius& m) {
  if (m.det() == 0) throw Error(Errc::malformed_input, "singular Möbius map");
  return certify(c.map.pre(m.inverse()), c.base);
}

/// Conjugates by x -> -1/x, exchanging base points 0 and infinity.
inline RamifiedCover change_base(const RamifiedCover& c) {
  const BasePoint nb = c.base == BasePoint::zero ? BasePoint::infinity : BasePoint::zero;
  return certify(c.map.pre(detail::inversion()).post(detail::inversion()), nb);
}

/// The dihedral element by which pre_negate moves the signature.
inline Dihedral pre_negate_element(const RamifiedCover& c) {
  const bool inf_first = !c.ram.empty() && c.ram.front().inf;
  return inf_first ? Dihedral::a(c.d()) : Dihedral::make(c.d(), 1, true);
}

}  // namespace ramlift
