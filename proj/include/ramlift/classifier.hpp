#pragma once

#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ramlift/signature.hpp"

namespace ramlift {

using Hom = std::pair<Dihedral, Dihedral>;  // images of the generators a and b

inline bool hom_less(const Hom& x, const Hom& y) {
  return std::tie(x.first.rot, x.first.flip, x.second.rot, x.second.flip) <
         std::tie(y.first.rot, y.first.flip, y.second.rot, y.second.flip);
}

namespace detail {

inline bool contains(const std::vector<Dihedral>& H, const Dihedral& z) {
  return std::find(H.begin(), H.end(), z) != H.end();
}

inline void require_group(const std::vector<Dihedral>& H) {
  if (H.empty()) throw Error(Errc::not_a_group, "empty element list");
  const int d = H.front().d;
  if (!contains(H, Dihedral::identity(d))) throw Error(Errc::not_a_group, "identity missing");
  for (const auto& x : H) {
    if (!contains(H, x.inverse())) throw Error(Errc::not_a_group, "not closed under inverses");
    for (const auto& y : H)
      if (!contains(H, x * y)) throw Error(Errc::not_a_group, "not closed under multiplication");
  }
  // Associativity spot check on the first few triples.
  const std::size_t m = std::min<std::size_t>(H.size(), 4);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if ((H[i] * H[j]) * H[k] != H[i] * (H[j] * H[k])) throw Error(Errc::not_a_group, "not associative");
}

}  // namespace detail

/// All (A, B) in H x H with A B A^-1 = B^n.
inline std::vector<Hom> enumerate_homs(long n, const std::vector<Dihedral>& H) {
  detail::require_group(H);
  std::vector<Hom> out;
  for (const auto& A : H)
    for (const auto& B : H)
      if (A * B * A.inverse() == B.pow(n)) out.emplace_back(A, B);
  std::sort(out.begin(), out.end(), hom_less);
  return out;
}

/// Lexicographically least member of the simultaneous-conjugation orbit of h in H.
inline Hom canonical_hom(const std::vector<Dihedral>& H, const Hom& h) {
  Hom best = h;
  for (const auto& g : H) {
    const Hom c{g * h.first * g.inverse(), g * h.second * g.inverse()};
    if (hom_less(c, best)) best = c;
  }
  return best;
}

inline std::vector<Hom> hom_classes(const std::vector<Dihedral>& H, const std::vector<Hom>& homs) {
  std::vector<Hom> reps;
  for (const auto& h : homs) {
    const Hom c = canonical_hom(H, h);
    if (std::find(reps.begin(), reps.end(), c) == reps.end()) reps.push_back(c);
  }
  std::sort(reps.begin(), reps.end(), hom_less);
  return reps;
}

enum class OrientationClass { full, orientation_preserving };

inline Group group_for(OrientationClass oc) { return oc == OrientationClass::full ? Group::D : Group::C; }

struct ClassDescriptor {
  long n = 2;
  SignatureVector signature;
  Hom hom;
  OrientationClass orientation_class = OrientationClass::full;
};

/// Canonical signatures (D-orbits for full, C-orbits for orientation-preserving) with their hom
/// classes into the stabilizer. quotient=false lists homs without the conjugacy quotient.
inline std::vector<ClassDescriptor> enumerate_classes(long n, int d, int max_s, OrientationClass oc,
                                                      bool quotient = true) {
  if (n < 2) throw Error(Errc::malformed_input, "BS(1,n) needs n >= 2");
  const Group g = group_for(oc);
  std::vector<ClassDescriptor> out;
  for (const auto& s : enumerate_canonical(d, max_s, g)) {
    const auto H = stabilizer(s, g, Action::plain);
    const auto homs = enumerate_homs(n, H);
    for (const auto& h : quotient ? hom_classes(H, homs) : homs) out.push_back({n, s, h, oc});
  }
  return out;
}

struct CrossCheck {
  bool match = false;
  std::size_t classifier_count = 0;
  std::size_t oracle_count = 0;
  std::string witness;  // first signature whose class count disagrees
};

namespace detail {

// D_d as maps i -> sigma i + tau on vertex indices, with sigma kept as a signed integer so
// that reflections stay distinct from rotations when d <= 2.
struct AffineIdx {
  int sigma, tau, d;
  static AffineIdx of(const Dihedral& z) {
    return {z.flip ? -1 : 1, wrap((z.flip ? 2 : 0) - z.rot, z.d), z.d};
  }
  AffineIdx operator*(const AffineIdx& o) const { return {sigma * o.sigma, wrap(sigma * o.tau + tau, d), d}; }
  AffineIdx inverse() const { return {sigma, wrap(-sigma * tau, d), d}; }
  AffineIdx pow(long e) const {
    AffineIdx r{1, 0, d};
    for (long i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  bool operator==(const AffineIdx&) const = default;
  auto key() const { return std::pair{sigma, tau}; }
};

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Brute force: every valid signature with every hom into its stabilizer, quotiented by
/// (s, h) ~ (ζ s, ζ h ζ^-1) for ζ in D_d (full) or C_d (orientation-preserving).
inline CrossCheck cross_check(long n, int d, int max_s, OrientationClass oc) {
  using detail::AffineIdx;
  const Group g = group_for(oc);
  const auto G = group_elements(d, g);
  using Key = std::tuple<std::vector<int>, std::pair<int, int>, std::pair<int, int>>;
  std::map<Key, std::size_t> index;
  std::vector<std::tuple<SignatureVector, AffineIdx, AffineIdx>> nodes;
  for (const auto& s : enumerate_all(d, max_s)) {
    for (const auto& x : G) {
      if (act(x, s) != s) continue;
      for (const auto& y : G) {
        if (act(y, s) != s) continue;
        const AffineIdx A = AffineIdx::of(x), B = AffineIdx::of(y);
        if (A * B * A.inverse() != B.pow(n)) continue;
        index.emplace(Key{s.flat(), A.key(), B.key()}, nodes.size());
        nodes.emplace_back(s, A, B);
      }
    }
  }
  detail::UnionFind uf(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& [s, A, B] = nodes[i];
    for (const auto& z : G) {
      const AffineIdx Z = AffineIdx::of(z);
      const Key k{act(z, s).flat(), (Z * A * Z.inverse()).key(), (Z * B * Z.inverse()).key()};
      const auto it = index.find(k);
      if (it == index.end()) throw Error(Errc::mismatch_detected, "conjugate of a hom left the node set");
      uf.unite(i, it->second);
    }
  }
  CrossCheck r;
  std::map<std::vector<int>, std::size_t> per_sig_oracle;  // keyed by canonical signature
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (uf.find(i) == i) {
      ++r.oracle_count;
      ++per_sig_oracle[canonical_rep(std::get<0>(nodes[i]), g).flat()];
    }
  const auto classes = enumerate_classes(n, d, max_s, oc);
  r.classifier_count = classes.size();
  std::map<std::vector<int>, std::size_t> per_sig;
  for (const auto& c : classes) ++per_sig[c.signature.flat()];
  r.match = r.classifier_count == r.oracle_count && per_sig == per_sig_oracle;
  if (!r.match) {
    for (const auto& [k, v] : per_sig_oracle)
      if (per_sig[k] != v) {
        SignatureVector w{{k.begin(), k.begin() + d}, {k.begin() + d, k.end()}};
        r.witness = to_string(w);
        break;
      }
  }
  return r;
}

inline CrossCheck require_cross_check(long n, int d, int max_s, OrientationClass oc) {
  CrossCheck r = cross_check(n, d, max_s, oc);
  if (!r.match)
    throw Error(Errc::mismatch_detected, "classifier " + std::to_string(r.classifier_count) + " vs oracle " +
                                             std::to_string(r.oracle_count) + ", witness " + r.witness);
  return r;
}

}  // namespace ramlift
