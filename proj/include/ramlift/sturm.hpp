#pragma once

#include <optional>
#include <vector>

#include "ramlift/polynomial.hpp"

namespace ramlift {

/// Interval endpoint on the extended real line.
struct Bound {
  enum Kind { neg_inf, finite, pos_inf } kind = finite;
  Q value;

  static Bound minus_infinity() { return {neg_inf, Q(0)}; }
  static Bound plus_infinity() { return {pos_inf, Q(0)}; }
  static Bound at(const Q& v) { return {finite, v}; }
};

/// Sign of p at a bound (limits at the infinite ends).
inline int sign_at(const Poly& p, const Bound& b) {
  if (p.is_zero()) return 0;
  switch (b.kind) {
    case Bound::finite: return sign(p.eval(b.value));
    case Bound::pos_inf: return sign(p.leading());
    case Bound::neg_inf: return sign(p.leading()) * (p.degree() % 2 ? -1 : 1);
  }
  return 0;
}

class SturmSequence {
 public:
  /// Built on the square-free part, so counts are of distinct roots.
  explicit SturmSequence(const Poly& p) {
    if (p.is_zero()) throw Error(Errc::zero_polynomial, "Sturm sequence of the zero polynomial");
    seq_.push_back(squarefree_part(p).primitive());
    if (seq_[0].degree() <= 0) return;
    seq_.push_back(seq_[0].derivative().primitive());
    while (seq_.back().degree() > 0) {
      Poly r = (-(seq_[seq_.size() - 2] % seq_.back())).primitive();
      if (r.is_zero()) break;
      seq_.push_back(std::move(r));
    }
  }

  int variations(const Bound& b) const {
    int count = 0, prev = 0;
    for (const auto& q : seq_) {
      const int s = sign_at(q, b);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }

  /// Distinct real roots in (lo, hi].
  int count(const Bound& lo, const Bound& hi) const { return variations(lo) - variations(hi); }

  const Poly& squarefree() const { return seq_.front(); }

 private:
  std::vector<Poly> seq_;
};

/// Distinct real roots of p in (lo, hi]; ±infinity allowed at either end.
inline int sturm_count(const Poly& p, const Bound& lo, const Bound& hi) {
  return SturmSequence(p).count(lo, hi);
}

inline int real_root_count(const Poly& p) {
  return sturm_count(p, Bound::minus_infinity(), Bound::plus_infinity());
}

/// A real root either known exactly or isolated in the open interval (lo, hi).
struct RealRoot {
  Q lo, hi;
  bool exact = false;

  double approx() const { return to_double((lo + hi) / 2); }
};

namespace detail {

inline Q cauchy_bound(const Poly& p) {
  Q m(0);
  const Q lc = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Q v = abs(p.coeff(i)) / lc;
    if (v > m) m = v;
  }
  return m + 1;
}

// Bisects a single-root interval (lo, hi] of the square-free f until it either
// lands on the root or is narrower than width.
inline RealRoot refine_single(const Poly& f, Q lo, Q hi, const Q& width) {
  if (f.eval(hi) == 0) return {hi, hi, true};
  int shi = sign(f.eval(hi));
  while (true) {
    Q mid = (lo + hi) / 2;
    const int sm = sign(f.eval(mid));
    if (sm == 0) return {mid, mid, true};
    if (sm == shi) hi = mid;
    else lo = mid;
    if (hi - lo < width && sign(f.eval(lo)) != 0) return {lo, hi, false};
  }
}

}  // namespace detail

/// All distinct real roots of p in increasing order. Rational roots are found
/// exactly; the remaining ones come back as isolating intervals.
inline std::vector<RealRoot> real_roots(const Poly& p) {
  SturmSequence ss(p);
  const Poly& f = ss.squarefree();
  std::vector<RealRoot> out;
  if (f.degree() <= 0) return out;

  // Rational roots of the primitive f have denominators dividing its leading coefficient,
  // so two of them are at least 1/L^2 apart.
  const Z L = abs(f.leading().get_num());
  const Q sep = Q(1) / Q(L * L * 4);

  const Q B = detail::cauchy_bound(f);
  struct Pending { Q lo, hi; int n; };
  std::vector<Pending> stack{{-B, B, ss.count(Bound::at(-B), Bound::at(B))}};
  std::vector<std::pair<Q, Q>> isolated;
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    if (cur.n == 0) continue;
    if (cur.n == 1) {
      isolated.emplace_back(cur.lo, cur.hi);
      continue;
    }
    Q mid = (cur.lo + cur.hi) / 2;
    const int left = ss.count(Bound::at(cur.lo), Bound::at(mid));
    stack.push_back({mid, cur.hi, cur.n - left});
    stack.push_back({cur.lo, mid, left});
  }
  std::sort(isolated.begin(), isolated.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [lo, hi] : isolated) {
    RealRoot r = detail::refine_single(f, lo, hi, sep);
    if (!r.exact) {
      const Q cand = simplest_between(r.lo, r.hi);
      if (f.eval(cand) == 0) r = {cand, cand, true};
    }
    out.push_back(r);
  }
  return out;
}

/// Shrinks an interval root until its width is below w (no-op for exact roots).
inline RealRoot refine(const Poly& p, RealRoot r, const Q& w) {
  if (r.exact) return r;
  return detail::refine_single(squarefree_part(p).primitive(), r.lo, r.hi, w);
}

}  // namespace ramlift
