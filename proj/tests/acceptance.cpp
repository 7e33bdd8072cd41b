// Acceptance run: one PASS/FAIL line per criterion, measured value against a pinned tolerance.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "ramlift/ramlift.hpp"
#include "ramlift/json_io.hpp"

using namespace ramlift;

namespace {

constexpr double kRelationTol = 1e-8;
constexpr double kSquareTol = 1e-9;
constexpr double kFiberDerivTol = 1e-6;
constexpr double kSigmaTol = 1e-6;
constexpr double kComposeTol = 1e-9;
constexpr double kSchwarzianTol = 1e-4;
constexpr double kSchwarzianMobiusTol = 1e-10;
constexpr double kFlowTol = 1e-12;
constexpr double kRotationTol = 1e-3;
constexpr long kRotationIterations = 100000;
constexpr int kGrid = 512;
constexpr int kComposePairs = 50;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += "; over time budget";
  }
  if (!o.pass) ++failures;
  std::printf("C%-2d %s  %s: %s [%.2fs / %.0fs]\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs,
              limit_s);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::set<std::pair<int, bool>> elems(const std::vector<Dihedral>& H) {
  std::set<std::pair<int, bool>> r;
  for (const auto& z : H) r.emplace(z.rot, z.flip);
  return r;
}

// Subgroup generated by gens, written out by closure.
std::set<std::pair<int, bool>> gen(int d, std::vector<Dihedral> gens) {
  std::vector<Dihedral> H{Dihedral::identity(d)};
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < H.size(); ++i)
      for (const auto& g : gens)
        if (std::find(H.begin(), H.end(), H[i] * g) == H.end()) {
          H.push_back(H[i] * g);
          grew = true;
        }
  }
  return elems(H);
}

std::shared_ptr<const NumericCover> cover_over_inf(const SignatureVector& s) {
  static std::map<std::vector<int>, std::shared_ptr<const NumericCover>> cache;
  auto& slot = cache[s.flat()];
  if (!slot) slot = std::make_shared<const NumericCover>(build_cover(s, BasePoint::infinity));
  return slot;
}

std::vector<SignatureVector> family() {
  std::vector<SignatureVector> out;
  for (int d = 1; d <= 3; ++d)
    for (const auto& s : enumerate_canonical(d, 3, Group::C)) out.push_back(s);
  return out;
}

// Class descriptors of both orientation classes, without repeats.
std::vector<ClassDescriptor> descriptors(long n) {
  std::vector<ClassDescriptor> out;
  std::set<std::vector<int>> seen;
  for (auto oc : {OrientationClass::full, OrientationClass::orientation_preserving})
    for (int d = 1; d <= 3; ++d)
      for (const auto& c : enumerate_classes(n, d, 3, oc)) {
        auto key = c.signature.flat();
        for (int v : {c.hom.first.rot, int(c.hom.first.flip), c.hom.second.rot, int(c.hom.second.flip)}) key.push_back(v);
        if (seen.insert(key).second) out.push_back(c);
      }
  return out;
}

Outcome c1() {
  const auto b = [](int d) { return Dihedral::b(d); };
  const auto a = [](int d) { return Dihedral::a(d); };
  bool ok = true;
  std::string bad;
  auto expect = [&](const std::string& what, const std::vector<Dihedral>& got, const std::set<std::pair<int, bool>>& want) {
    if (elems(got) != want) {
      ok = false;
      bad += " " + what;
    }
  };
  const auto s1 = parse_signature("2,2,1,-1");
  expect("s1 D", stabilizer(s1, Group::D, Action::plain), gen(2, {a(2)}));
  expect("s1 C", stabilizer(s1, Group::C, Action::plain), gen(2, {}));
  const auto s2 = parse_signature("2,2,-1,1");
  expect("s2 D", stabilizer(s2, Group::D, Action::plain), gen(2, {a(2)}));
  expect("s2 C", stabilizer(s2, Group::C, Action::plain), gen(2, {}));

  const auto s8 = parse_signature("2,1,2,1,2,1,2,1,1,1,-1,-1,1,1,-1,-1");
  expect("s8 C", stabilizer(s8, Group::C, Action::plain), gen(8, {b(8).pow(4)}));
  expect("s8 D", stabilizer(s8, Group::D, Action::plain), gen(8, {a(8), b(8).pow(4)}));
  expect("s8 C#", stabilizer(s8, Group::C, Action::hash), gen(8, {b(8).pow(2)}));
  expect("s8 D#", stabilizer(s8, Group::D, Action::hash), gen(8, {a(8), b(8).pow(2)}));
  if (stabilizer_report(s8).delta_image_size != 2) ok = false, bad += " s8 delta";

  const auto t8 = parse_signature("2,1,4,1,2,1,4,1,1,1,-1,-1,1,1,-1,-1");
  expect("t8 D", stabilizer(t8, Group::D, Action::plain), gen(8, {a(8), b(8).pow(4)}));
  expect("t8 D#", stabilizer(t8, Group::D, Action::hash), gen(8, {a(8), b(8).pow(4)}));
  expect("t8 C", stabilizer(t8, Group::C, Action::plain), gen(8, {b(8).pow(4)}));
  expect("t8 C#", stabilizer(t8, Group::C, Action::hash), gen(8, {b(8).pow(4)}));
  if (stabilizer_report(t8).delta_image_size != 1) ok = false, bad += " t8 delta";

  const auto s6 = parse_signature("2,3,1,2,3,1,-1,-1,-1,1,1,1");
  const auto b3 = Dihedral::make(6, 3, false);
  expect("s6 D", stabilizer(s6, Group::D, Action::plain), gen(6, {}));
  expect("s6 C#", stabilizer(s6, Group::C, Action::hash), gen(6, {b3}));
  expect("s6 D#", stabilizer(s6, Group::D, Action::hash), gen(6, {b3}));
  if (delta(s6, b3) != 1) ok = false, bad += " s6 delta";

  const auto r6 = parse_signature("2,1,4,2,1,4,-1,-1,1,-1,-1,1");
  expect("r6 C", stabilizer(r6, Group::C, Action::plain), gen(6, {b3}));
  expect("r6 D", stabilizer(r6, Group::D, Action::plain), gen(6, {b3}));
  return {ok, ok ? "all worked stabilizers equal the stated subgroups" : "mismatch:" + bad};
}

Outcome c2() {
  const auto c = load_cover(RAMLIFT_FIXTURE_DIR "/pi2_over_0.json");
  const bool sig = c.certified && signature_of(c) == parse_signature("2,2,-1,1");
  const bool pts = c.d() == 2 && c.ram[0].exact_value() == Q(-1) && c.ram[1].exact_value() == Q(1) &&
                   c.ram[0].s == 2 && c.ram[1].s == 2;
  return {sig && pts, "signature " + to_string(signature_of(c)) + ", points {-1, 1} of order 2: " +
                          (pts ? "yes" : "no")};
}

Outcome c3() {
  int total = 0, ok = 0;
  std::string first_bad;
  for (int d = 1; d <= 3; ++d)
    for (Group g : {Group::C, Group::D})
      for (const auto& s : enumerate_canonical(d, 3, g))
        for (BasePoint b : {BasePoint::zero, BasePoint::infinity}) {
          ++total;
          try {
            const auto c = build_cover(s, b);
            if (c.certified && signature_of(c) == s) {
              ++ok;
              continue;
            }
          } catch (const Error&) {
          }
          if (first_bad.empty()) first_bad = to_string(s);
        }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " round trips exact" +
                           (first_bad.empty() ? "" : ", first failure " + first_bad)};
}

Outcome c4() {
  const auto grid = sample_grid(kGrid, 0);
  double rel = 0.0, sq = 0.0;
  std::size_t count = 0;
  std::string worst;
  for (long n : {2L, 3L})
    for (const auto& c : descriptors(n)) {
      const LiftedRep R(n, cover_over_inf(c.signature), c.hom.first, c.hom.second);
      const double r = relation_residual(R, grid);
      if (r > rel) rel = r, worst = to_string(c.signature);
      sq = std::max({sq, square_residual(R.a(), grid), square_residual(R.b(), grid)});
      ++count;
    }
  return {rel < kRelationTol && sq < kSquareTol, std::to_string(count) + " descriptors; relation " + fmt(rel) +
                                                      " (worst " + worst + ") < " + fmt(kRelationTol) + ", square " +
                                                      fmt(sq) + " < " + fmt(kSquareTol)};
}

Outcome c5() {
  double worst = 0.0;
  int points = 0;
  for (long n : {2L, 3L})
    for (const auto& s : family()) {
      const auto nc = cover_over_inf(s);
      const LiftedMap A(nc, MobiusD{static_cast<double>(n), 0, 0, 1}, Dihedral::identity(s.d()));
      for (int i = 0; i < s.d(); ++i) {
        const double expected = std::pow(1.0 / n, 1.0 / s.s[i]);
        const double q = nc->fiber_u(i);
        worst = std::max(worst, std::fabs(lift_derivative(A, CirclePoint::from_u(q)) - expected));
        worst = std::max(worst, std::fabs(detail::fd_derivative(A, q, 1, 1e-4) - expected));
        ++points;
      }
    }
  return {worst < kFiberDerivTol, std::to_string(points) + " fiber points, closed form and difference quotient; max error " +
                                      fmt(worst) + " < " + fmt(kFiberDerivTol)};
}

Outcome c6() {
  double worst = 0.0;
  int count = 0;
  for (long n : {2L, 3L})
    for (const auto& s : family()) {
      const auto id = Dihedral::identity(s.d());
      const auto sr = inner_spectral_radius(LiftedRep(n, cover_over_inf(s), id, id));
      const double expected = std::pow(1.0 / n, 1.0 / s.max_s());
      worst = std::max({worst, std::fabs(sr.numeric - expected), std::fabs(sr.closed_form - expected)});
      ++count;
    }
  bool exact = true;
  for (long n : {2L, 3L, 5L}) {
    const auto nc = std::make_shared<const NumericCover>(certify(RationalMap(), BasePoint::infinity));
    exact = exact && inner_spectral_radius(LiftedRep(n, nc, Dihedral::identity(1), Dihedral::identity(1))).closed_form ==
                         1.0 / static_cast<double>(n);
  }
  return {worst < kSigmaTol && exact, std::to_string(count) + " trivial-hom classes, max |sigma - (1/n)^(1/max s)| " +
                                          fmt(worst) + " < " + fmt(kSigmaTol) + "; standard rep closed form 1/n " +
                                          (exact ? "exact" : "inexact")};
}

Outcome c7() {
  const auto grid = sample_grid(kGrid, 0);
  std::mt19937_64 rng(20240);
  std::uniform_real_distribution<double> mag(0.3, 3.0), shift(-2.0, 2.0);
  std::bernoulli_distribution coin(0.5);
  double worst = 0.0;
  int pairs = 0, reversing = 0;
  std::string where;
  for (const auto& s : family()) {
    const auto nc = cover_over_inf(s);
    const auto H = stabilizer(s, Group::D, Action::hash);
    auto random_lift = [&]() {
      const Dihedral& z = H[std::uniform_int_distribution<std::size_t>(0, H.size() - 1)(rng)];
      const double sign = delta(s, z) == 1 ? -1.0 : 1.0;
      return LiftedMap(nc, MobiusD{sign * mag(rng), shift(rng), 0, 1}, z);
    };
    for (int k = 0; k < kComposePairs; ++k) {
      const LiftedMap L1 = random_lift(), L2 = random_lift();
      reversing += (L1.base_map().det() < 0) + (L2.base_map().det() < 0);
      const double r = compose_check(L1, L2, grid);
      if (r > worst) worst = r, where = to_string(s);
      ++pairs;
    }
  }
  return {worst < kComposeTol && reversing > 0, std::to_string(pairs) + " pairs (" + std::to_string(reversing) +
                                                    " orientation-reversing factors); max residual " + fmt(worst) +
                                                    " (at " + where + ") < " + fmt(kComposeTol)};
}

Outcome c8() {
  double worst = 0.0, worst_mobius = 0.0;
  int points = 0;
  for (const auto& s : family()) {
    const auto nc = cover_over_inf(s);
    const LiftedMap g(nc, MobiusD{1, 1, 0, 1}, Dihedral::identity(s.d()));
    for (int i = 0; i < s.d(); ++i) {
      const double S = schwarzian_check(g, i);
      if (s.s[i] == 1) worst_mobius = std::max(worst_mobius, S);
      else worst = std::max(worst, S);
      ++points;
    }
  }
  return {worst < kSchwarzianTol && worst_mobius < kSchwarzianMobiusTol,
          std::to_string(points) + " ramification points x 20 samples; s > 1 max |S| " + fmt(worst) + " < " +
              fmt(kSchwarzianTol) + ", s = 1 max |S| " + fmt(worst_mobius) + " < " + fmt(kSchwarzianMobiusTol)};
}

Outcome c9() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> X(0.01, 0.8), T(0.0, 2.0);
  double conj = 0.0, semi = 0.0;
  for (int s = 1; s <= 3; ++s)
    for (double lambda : {2.0, 3.0})
      for (int k = 0; k < 100; ++k) {
        const double x = X(rng), t = T(rng), t2 = T(rng);
        // F(x) = lambda^(-1/s) x conjugates G^t to G^(lambda t).
        const double c = std::pow(lambda, -1.0 / s);
        conj = std::max(conj, std::fabs(c * local_flow_eval(t, x / c, s) - local_flow_eval(lambda * t, x, s)));
        semi = std::max(semi, std::fabs(local_flow_eval(t, local_flow_eval(t2, x, s), s) - local_flow_eval(t + t2, x, s)));
      }
  return {conj < kFlowTol && semi < kFlowTol,
          "conjugation " + fmt(conj) + ", semigroup " + fmt(semi) + " < " + fmt(kFlowTol)};
}

Outcome c10() {
  int runs = 0;
  std::string bad;
  for (long n : {2L, 3L})
    for (int d = 1; d <= 3; ++d)
      for (int max_s = 1; max_s <= 3; ++max_s)
        for (auto oc : {OrientationClass::full, OrientationClass::orientation_preserving}) {
          const auto r = cross_check(n, d, max_s, oc);
          ++runs;
          if (!r.match && bad.empty())
            bad = "mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d) + " max_s=" + std::to_string(max_s);
        }
  bool d1 = true;
  for (long n : {2L, 3L})
    for (int max_s = 1; max_s <= 9; ++max_s) {
      const auto cl = enumerate_classes(n, 1, max_s, OrientationClass::full);
      std::set<int> orders;
      for (const auto& c : cl) orders.insert(c.signature.s[0]);
      std::set<int> odd;
      for (int s = 1; s <= max_s; s += 2) odd.insert(s);
      d1 = d1 && orders == odd && cl.size() == odd.size();
    }
  return {bad.empty() && d1, std::to_string(runs) + " cross checks " + (bad.empty() ? "match" : bad) +
                                 "; d = 1 one full class per odd s: " + (d1 ? "yes" : "no")};
}

Outcome c11() {
  double worst = 0.0;
  int rotations = 0;
  bool zero = true;
  for (const auto& s : family()) {
    const auto nc = cover_over_inf(s);
    for (const auto& z : stabilizer(s, Group::C, Action::plain)) {
      const LiftedMap L(nc, MobiusD{1, 1, 0, 1}, z);
      const Q comb = rotation_number_combinatorial(L);
      if (z.is_identity()) zero = zero && comb == 0;
      worst = std::max(worst, circle_distance(to_double(comb), rotation_number_numeric(L, kRotationIterations)));
      ++rotations;
    }
  }
  return {worst < kRotationTol && zero, std::to_string(rotations) + " lifts; |comb - Birkhoff| " + fmt(worst) + " < " +
                                            fmt(kRotationTol) + "; identity lifts exactly 0: " + (zero ? "yes" : "no")};
}

}  // namespace

int main() {
  report(1, "worked stabilizers", 1, c1);
  report(2, "pi2 fixture signature", 1, c2);
  report(3, "cover round trip d<=3 max_s=3", 300, c3);
  report(4, "lifted BS relation", 600, c4);
  report(5, "fiber derivatives", 120, c5);
  report(6, "inner spectral radius", 300, c6);
  report(7, "composition law", 600, c7);
  report(8, "Schwarzian", 120, c8);
  report(9, "flow model", 1, c9);
  report(10, "classifier oracle", 60, c10);
  report(11, "rotation numbers", 600, c11);
  std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
