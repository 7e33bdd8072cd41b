#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ramlift/errors.hpp"

namespace ramlift {

/// (s_1..s_d ; o_1..o_d): vertex orders and edge orientations of a ramified cover.
struct SignatureVector {
  std::vector<int> s;
  std::vector<int> o;

  int d() const { return static_cast<int>(s.size()); }

  /// Concatenation (s_1..s_d, o_1..o_d), the key for lexicographic order.
  std::vector<int> flat() const {
    std::vector<int> v = s;
    v.insert(v.end(), o.begin(), o.end());
    return v;
  }
  int max_s() const { return s.empty() ? 0 : *std::max_element(s.begin(), s.end()); }

  friend bool operator==(const SignatureVector&, const SignatureVector&) = default;
  friend bool operator<(const SignatureVector& a, const SignatureVector& b) {
    return a.flat() < b.flat();
  }
};

inline std::string to_string(const SignatureVector& sv) {
  std::string r = "(";
  const auto f = sv.flat();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) r += ',';
    r += std::to_string(f[i]);
  }
  return r + ")";
}

namespace detail {
inline int wrap(long i, int d) { return static_cast<int>(((i % d) + d) % d); }
}  // namespace detail

/// b^rot a^flip in D_d. The same type serves C_d (flip always false).
struct Dihedral {
  int d = 1;
  int rot = 0;
  bool flip = false;

  static Dihedral identity(int d) { return {d, 0, false}; }
  static Dihedral b(int d) { return {d, detail::wrap(1, d), false}; }
  static Dihedral a(int d) { return {d, 0, true}; }
  static Dihedral make(int d, long rot, bool flip) { return {d, detail::wrap(rot, d), flip}; }

  bool is_identity() const { return rot == 0 && !flip; }

  Dihedral inverse() const { return flip ? *this : make(d, -rot, false); }

  Dihedral pow(long e) const {
    Dihedral r = identity(d), base = *this;
    if (e < 0) {
      base = inverse();
      e = -e;
    }
    for (long i = 0; i < e; ++i) r = r * base;
    return r;
  }

  int order() const {
    if (flip) return 2;
    int k = 1;
    Dihedral x = *this;
    while (!x.is_identity()) {
      x = x * *this;
      ++k;
    }
    return k;
  }

  /// Image of the 1-based vertex index i: b sends q_i to q_{i-1}, a sends q_i to q_{2-i}.
  int vertex(int i) const { return detail::wrap((flip ? 2 - i : i) - rot - 1, d) + 1; }
  /// Image of the 1-based edge index i (edge i joins q_i and q_{i+1}).
  int edge(int i) const { return detail::wrap((flip ? 1 - i : i) - rot - 1, d) + 1; }

  friend Dihedral operator*(const Dihedral& x, const Dihedral& y) {
    if (x.d != y.d) throw Error(Errc::dimension_mismatch, "dihedral elements of different d");
    return make(x.d, x.rot + (x.flip ? -y.rot : y.rot), x.flip != y.flip);
  }
  friend bool operator==(const Dihedral&, const Dihedral&) = default;
  /// Fixed element order: rotation index first, then the flip bit.
  friend bool operator<(const Dihedral& x, const Dihedral& y) {
    return std::tie(x.rot, x.flip) < std::tie(y.rot, y.flip);
  }
};

inline std::string to_string(const Dihedral& z) {
  if (z.is_identity()) return "id";
  std::string r;
  if (z.rot) r += z.rot == 1 ? "b" : "b^" + std::to_string(z.rot);
  if (z.flip) r += "a";
  return r;
}

enum class Group { C, D };
enum class Action { plain, hash };

/// Validates raw labels; property (2) is checked at i = 2..d before the closing index 1.
inline SignatureVector validate_signature(const std::vector<long>& raw_s, const std::vector<long>& raw_o) {
  if (raw_s.empty()) throw Error(Errc::malformed_input, "signature needs d >= 1");
  if (raw_s.size() != raw_o.size())
    throw Error(Errc::malformed_input, "vertex and edge label lists differ in length");
  SignatureVector sv;
  for (long v : raw_s) {
    if (v < 1 || v > 1'000'000) throw Error(Errc::malformed_input, "vertex label out of range: " + std::to_string(v));
    sv.s.push_back(static_cast<int>(v));
  }
  for (long v : raw_o) {
    if (v != 1 && v != -1) throw Error(Errc::malformed_input, "edge label must be +1 or -1, got " + std::to_string(v));
    sv.o.push_back(static_cast<int>(v));
  }
  const long evens = std::count_if(sv.s.begin(), sv.s.end(), [](int v) { return v % 2 == 0; });
  if (evens % 2) throw Error(Errc::property_one_violation, "odd number of even vertex labels");
  const int d = sv.d();
  for (int step = 0; step < d; ++step) {
    const int i = (step + 1) % d;  // 0-based: 1, 2, ..., d-1, then 0
    const int prev = (i + d - 1) % d;
    const int lhs = (sv.s[i] % 2) ? 1 : -1;  // (-1)^(s_i + 1)
    if (lhs != sv.o[prev] * sv.o[i])
      throw PropertyTwoError(static_cast<std::size_t>(i + 1),
                             "edge parity mismatch at vertex " + std::to_string(i + 1));
  }
  return sv;
}

inline SignatureVector complete_from_prefix(const std::vector<long>& raw_s, int o1) {
  if (raw_s.empty()) throw Error(Errc::malformed_input, "signature needs d >= 1");
  if (o1 != 1 && o1 != -1) throw Error(Errc::malformed_input, "o_1 must be +1 or -1");
  const long evens = std::count_if(raw_s.begin(), raw_s.end(), [](long v) { return v % 2 == 0; });
  if (evens % 2) throw Error(Errc::property_one_violation, "odd number of even vertex labels");
  std::vector<long> o(raw_s.size());
  o[0] = o1;
  for (std::size_t i = 1; i < raw_s.size(); ++i) o[i] = o[i - 1] * ((raw_s[i] % 2) ? 1 : -1);
  return validate_signature(raw_s, o);
}

inline void require_same_d(const Dihedral& z, const SignatureVector& sv) {
  if (z.d != sv.d()) throw Error(Errc::dimension_mismatch, "dihedral element and signature differ in d");
}

/// b^k a^f applied to s: b shifts labels left, a reverses s_2..s_d and negates reversed edges.
inline SignatureVector act(const Dihedral& z, const SignatureVector& sv) {
  require_same_d(z, sv);
  const int d = sv.d();
  SignatureVector r{std::vector<int>(d), std::vector<int>(d)};
  for (int i = 0; i < d; ++i) {
    const int j = detail::wrap(i + z.rot, d);  // 0-based index into a^f(s)
    if (z.flip) {
      r.s[i] = sv.s[detail::wrap(-j, d)];
      r.o[i] = -sv.o[detail::wrap(-j - 1, d)];
    } else {
      r.s[i] = sv.s[j];
      r.o[i] = sv.o[j];
    }
  }
  return r;
}

/// Like act, but edge labels ride along unchanged.
inline SignatureVector act_hash(const Dihedral& z, const SignatureVector& sv) {
  SignatureVector r = act(z, sv);
  r.o = sv.o;
  return r;
}

/// I(s): every edge label negated.
inline SignatureVector sign_involution(const SignatureVector& sv) {
  SignatureVector r = sv;
  for (auto& v : r.o) v = -v;
  return r;
}

inline std::vector<Dihedral> group_elements(int d, Group g) {
  std::vector<Dihedral> out;
  for (int k = 0; k < d; ++k) {
    out.push_back({d, k, false});
    if (g == Group::D) out.push_back({d, k, true});
  }
  return out;
}

inline std::vector<Dihedral> stabilizer(const SignatureVector& sv, Group g, Action a) {
  std::vector<Dihedral> out;
  for (const auto& z : group_elements(sv.d(), g)) {
    const bool fixed = a == Action::plain ? act(z, sv) == sv : act_hash(z, sv).s == sv.s;
    if (fixed) out.push_back(z);
  }
  return out;
}

struct StabilizerReport {
  SignatureVector signature;
  std::vector<Dihedral> stab_C, stab_D, stab_C_hash, stab_D_hash;
  int delta_image_size = 1;
};

inline int delta(const SignatureVector& sv, const Dihedral& z) {
  const SignatureVector img = act(z, sv);
  if (img.s != sv.s) throw Error(Errc::not_in_hash_stabilizer, to_string(z) + " moves the vertex labels");
  if (img == sv) return 0;
  if (img == sign_involution(sv)) return 1;
  throw Error(Errc::not_in_hash_stabilizer, "image is neither s nor I(s)");
}

inline StabilizerReport stabilizer_report(const SignatureVector& sv) {
  StabilizerReport r{sv,
                     stabilizer(sv, Group::C, Action::plain),
                     stabilizer(sv, Group::D, Action::plain),
                     stabilizer(sv, Group::C, Action::hash),
                     stabilizer(sv, Group::D, Action::hash),
                     1};
  for (const auto& z : r.stab_D_hash)
    if (delta(sv, z) == 1) r.delta_image_size = 2;
  return r;
}

inline SignatureVector canonical_rep(const SignatureVector& sv, Group g) {
  SignatureVector best = sv;
  for (const auto& z : group_elements(sv.d(), g)) {
    SignatureVector c = act(z, sv);
    if (c < best) best = std::move(c);
  }
  return best;
}

/// Every valid signature of length d with vertex labels at most max_s, sorted.
inline std::vector<SignatureVector> enumerate_all(int d, int max_s) {
  if (d < 1 || max_s < 1) throw Error(Errc::malformed_input, "enumeration needs d >= 1 and max_s >= 1");
  std::vector<SignatureVector> out;
  std::vector<long> s(d, 1);
  while (true) {
    const long evens = std::count_if(s.begin(), s.end(), [](long v) { return v % 2 == 0; });
    if (evens % 2 == 0) {
      out.push_back(complete_from_prefix(s, -1));
      out.push_back(complete_from_prefix(s, 1));
    }
    int i = d - 1;
    while (i >= 0 && s[i] == max_s) s[i--] = 1;
    if (i < 0) break;
    ++s[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<SignatureVector> enumerate_canonical(int d, int max_s, Group g) {
  std::set<std::vector<int>> seen;
  std::vector<SignatureVector> out;
  for (const auto& sv : enumerate_all(d, max_s)) {
    SignatureVector c = canonical_rep(sv, g);
    if (seen.insert(c.flat()).second) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Parses "s_1,..,s_d,o_1,..,o_d".
inline SignatureVector parse_signature(const std::string& text) {
  std::vector<long> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      vals.push_back(v);
    } catch (const std::logic_error&) {
      throw Error(Errc::malformed_input, "bad signature entry '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (vals.empty() || vals.size() % 2)
    throw Error(Errc::malformed_input, "signature literal needs 2d comma-separated entries");
  const std::size_t d = vals.size() / 2;
  return validate_signature({vals.begin(), vals.begin() + d}, {vals.begin() + d, vals.end()});
}

}  // namespace ramlift
