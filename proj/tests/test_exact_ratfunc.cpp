#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "ramlift/ratmap.hpp"

using namespace ramlift;

namespace {

struct RootedPoly {
  Poly p;
  std::set<Q> roots;  // distinct real roots
};

// Product of (x - r)^m over small random rationals r, times a constant and possibly a
// quadratic without real roots, so the real roots are known in advance.
RootedPoly random_rooted(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nroots(0, 5), num(-12, 12), den(1, 4), mult(1, 3), coin(0, 1);
  RootedPoly r{Poly::constant(Q(1 + std::abs(num(rng)))), {}};
  int degree = 0;
  const int k = nroots(rng);
  for (int i = 0; i < k && degree < 8; ++i) {
    Q root(num(rng), den(rng));
    root.canonicalize();
    const int m = std::min(mult(rng), 8 - degree);
    r.p = r.p * Poly::linear_root(root).pow(m);
    r.roots.insert(root);
    degree += m;
  }
  if (degree <= 6 && coin(rng)) {
    const long b = num(rng) % 5, c = b * b / 4 + 1 + std::abs(num(rng));  // b^2 < 4c
    r.p = r.p * Poly{c, b, 1};
  }
  return r;
}

// Naive isolator: exact signs of the square-free part on a uniform rational grid fine
// enough to contain every candidate root; a root on a node is counted once.
int naive_count(const Poly& p, long lo, long hi, long per_unit) {
  const Poly f = squarefree_part(p);
  int count = 0;
  int prev = sign(f.eval(Q(lo)));
  for (long k = 1; k <= (hi - lo) * per_unit; ++k) {
    Q x(k, per_unit);
    x.canonicalize();
    const int s = sign(f.eval(x + lo));
    if (s == 0 || (prev != 0 && s != prev)) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

TEST_CASE("polynomial arithmetic examples") {
  CHECK(Poly{0, 0, 0, 1}.derivative() == Poly{0, 0, 3});
  CHECK(gcd(Poly{-1, 0, 1}, Poly{-1, 1}) == Poly{-1, 1});
  CHECK(Poly{0, 0, 1}.compose(Poly{1, 1}) == Poly{1, 2, 1});
  CHECK((Poly{1, 1} * Poly{-1, 1}) == Poly{-1, 0, 1});
  CHECK((Poly{1, 2} + Poly{-1, -2}).is_zero());
  CHECK(Poly{}.degree() == -1);
  CHECK_THROWS_AS(divmod(Poly{1, 1}, Poly{}), Error);
  try {
    divmod(Poly{1}, Poly{});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::division_by_zero_polynomial);
  }
  const auto [q, r] = divmod(Poly{1, 0, 0, 1}, Poly{1, 1});
  CHECK(q == Poly{1, -1, 1});
  CHECK(r.is_zero());
  CHECK(root_multiplicity(Poly{-1, 1}.pow(3) * Poly{1, 1}, Q(1)) == 3);
  const auto sq = squarefree_decomposition(Poly{-1, 1}.pow(3) * Poly{2, 1}.pow(2) * Poly{5, 1});
  REQUIRE(sq.size() >= 4);
  CHECK(sq[1] == Poly{5, 1});
  CHECK(sq[2] == Poly{2, 1});
  CHECK(sq[3] == Poly{-1, 1});
}

TEST_CASE("sturm_count examples") {
  CHECK(sturm_count(Poly{-1, 0, 1}, Bound::at(Q(-2)), Bound::at(Q(2))) == 2);
  CHECK(real_root_count(Poly{1, 0, 1}) == 0);
  CHECK(sturm_count(Poly{-1, 0, 1}, Bound::at(Q(-1)), Bound::at(Q(1))) == 1);  // half-open (lo, hi]
  CHECK(sturm_count(Poly{-1, 1}.pow(4), Bound::minus_infinity(), Bound::plus_infinity()) == 1);
  try {
    sturm_count(Poly{}, Bound::minus_infinity(), Bound::plus_infinity());
    FAIL("expected ZeroPolynomial");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_polynomial);
  }
}

TEST_CASE("sturm_count agrees with known roots and a naive isolator") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> end(-14, 14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rp = random_rooted(rng);
    if (rp.p.degree() < 1) continue;
    int a = end(rng), b = end(rng);
    if (a == b) ++b;
    if (a > b) std::swap(a, b);
    const Q lo(a), hi(b);
    int expected = 0;
    for (const auto& r : rp.roots) expected += (r > lo && r <= hi);
    CHECK(sturm_count(rp.p, Bound::at(lo), Bound::at(hi)) == expected);
    CHECK(real_root_count(rp.p) == static_cast<int>(rp.roots.size()));
    CHECK(naive_count(rp.p, a, b, 24) == expected);  // roots lie on the 1/12 lattice
    const auto rr = real_roots(rp.p);
    REQUIRE(rr.size() == rp.roots.size());
    auto it = rp.roots.begin();
    for (const auto& r : rr) {
      CHECK(r.exact);
      CHECK(r.lo == *it++);
    }
  }
}

TEST_CASE("sturm_count agrees with double-precision bisection on random coefficients") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-9, 9), deg(1, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = deg(rng);
    std::vector<Q> c(n + 1);
    for (auto& v : c) v = coef(rng);
    if (c[n] == 0) c[n] = 1;
    const Poly p(c);
    // Generic integer polynomials are square-free; count sign changes on a fine double grid.
    if (gcd(p, p.derivative()).degree() > 0) continue;
    const double B = to_double(Q(10));
    int changes = 0;
    double prev = p.eval(-B);
    for (int k = 1; k <= 200000; ++k) {
      const double x = -B + 2 * B * k / 200000.0;
      const double v = p.eval(x);
      if ((v > 0) != (prev > 0) && v != 0.0) ++changes;
      if (v != 0.0) prev = v;
    }
    CHECK(sturm_count(p, Bound::at(Q(-10)), Bound::at(Q(10))) == changes);
  }
}

TEST_CASE("real_roots isolates irrational roots") {
  const auto rr = real_roots(Poly{-2, 0, 1});
  REQUIRE(rr.size() == 2);
  CHECK_FALSE(rr[0].exact);
  CHECK(rr[0].lo * rr[0].lo > 2);
  CHECK(rr[0].hi * rr[0].hi < 2);
  CHECK(rr[0].hi < 0);
  const auto fine = refine(Poly{-2, 0, 1}, rr[1], Q(1, 1000000));
  CHECK(fine.hi - fine.lo < Q(1, 1000000));
  CHECK(fine.lo * fine.lo < 2);
  CHECK(fine.hi * fine.hi > 2);
}

TEST_CASE("ratmap_eval on the pi2 example") {
  const RationalMap pi2(Poly{1, 0, -2, 0, 1}, Poly{0, 1, 0, 1});
  CHECK(pi2.eval(ExactPoint::at(Q(1))) == ExactPoint::at(Q(0)));
  CHECK(pi2.eval(ExactPoint::at(Q(-1))) == ExactPoint::at(Q(0)));
  CHECK(pi2.eval(ExactPoint::at(Q(0))).inf);
  CHECK(pi2.eval(ExactPoint::infinity()).inf);
  CHECK(pi2.eval(ExactPoint::at(Q(2))) == ExactPoint::at(make_q(9, 10)));
  const RationalMap id;
  CHECK(id.eval(ExactPoint::infinity()).inf);
  const RationalMap flat(Poly{1, 0, 3}, Poly{2, 1, 5});
  CHECK(flat.eval(ExactPoint::infinity()) == ExactPoint::at(make_q(3, 5)));
  const RationalMap decay(Poly{1}, Poly{0, 1});
  CHECK(decay.eval(ExactPoint::infinity()) == ExactPoint::at(Q(0)));
  CHECK_THROWS_AS(RationalMap(Poly{1}, Poly{}), Error);
}

TEST_CASE("rational maps are stored reduced") {
  const RationalMap r(Poly{-1, 0, 1} * Poly{3, 1}, Poly{-1, 1} * Poly{1, 0, 1});
  CHECK(gcd(r.num(), r.den()).degree() == 0);
  CHECK(r.num().degree() == 2);
  CHECK(r.den().degree() == 2);
  CHECK(r.den().leading() > 0);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const Poly common{c(rng), 1};
    const Poly a{c(rng), c(rng), 1}, b{c(rng) | 1, 1};
    const RationalMap m(a * common, b * common);
    CHECK(gcd(m.num(), m.den()).degree() == 0);
    const RationalMap sq(m.num() * m.num() + m.den() * m.den(), m.num() * m.den());
    CHECK(gcd(sq.num(), sq.den()).degree() == 0);
  }
}

TEST_CASE("ratmap_derivative matches central differences") {
  const RationalMap pi2(Poly{1, 0, -2, 0, 1}, Poly{0, 1, 0, 1});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-4.0, 4.0);
  int tested = 0;
  while (tested < 100) {
    const double x = U(rng);
    if (std::fabs(x) < 0.05) continue;
    const double h = 1e-5 * std::max(1.0, std::fabs(x));
    const double fd = (pi2.eval(x + h) - pi2.eval(x - h)) / (2 * h);
    const double exact = pi2.derivative(x);
    CHECK(std::fabs(fd - exact) <= 1e-6 * std::max(1.0, std::fabs(exact)));
    ++tested;
  }
  // Exact path: pi2'(x) = (x^2 - 1)(x^4 + 6x^2 + 1) / (x^2 (x^2 + 1)^2).
  for (int k = 1; k <= 10; ++k) {
    const Q x(k, 3);
    const Q x2 = x * x;
    Q expected = (x2 - 1) * (x2 * x2 + 6 * x2 + 1) / (x2 * (x2 + 1) * (x2 + 1));
    expected.canonicalize();
    CHECK(pi2.derivative(x) == expected);
  }
  CHECK_THROWS_AS(pi2.derivative(Q(0)), Error);
}

TEST_CASE("Moebius pre and post composition") {
  const RationalMap pi2(Poly{1, 0, -2, 0, 1}, Poly{0, 1, 0, 1});
  const Moebius inv{Q(0), Q(-1), Q(1), Q(0)};  // x -> -1/x
  const RationalMap conj = pi2.pre(inv).post(inv);
  for (int k = -5; k <= 5; ++k) {
    if (k == 0) continue;
    const ExactPoint x = ExactPoint::at(Q(k, 2));
    CHECK(conj.eval(x) == inv(pi2.eval(inv(x))));
  }
}
