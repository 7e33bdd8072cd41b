#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ramlift/classifier.hpp"
#include "ramlift/cover.hpp"

namespace ramlift {

using json = nlohmann::json;

inline json to_json(const SignatureVector& s) { return {{"d", s.d()}, {"s", s.s}, {"o", s.o}}; }

inline SignatureVector signature_from_json(const json& j) {
  try {
    const auto s = j.at("s").get<std::vector<long>>();
    const auto o = j.at("o").get<std::vector<long>>();
    if (j.contains("d") && j.at("d").get<long>() != static_cast<long>(s.size()))
      throw Error(Errc::malformed_input, "field d disagrees with the label count");
    return validate_signature(s, o);
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_input, std::string("signature JSON: ") + e.what());
  }
}

inline json to_json(const Dihedral& z) { return {{"rot", z.rot}, {"flip", z.flip}}; }

inline Dihedral dihedral_from_json(const json& j, int d) {
  try {
    return Dihedral::make(d, j.at("rot").get<long>(), j.at("flip").get<bool>());
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_input, std::string("dihedral JSON: ") + e.what());
  }
}

inline json to_json(const Poly& p) {
  json c = json::array();
  for (const auto& v : p.coeffs()) c.push_back(format_q(v));
  return {{"coeffs", c}};
}

inline Poly poly_from_json(const json& j) {
  try {
    std::vector<Q> c;
    for (const auto& v : j.at("coeffs")) c.push_back(parse_q(v.get<std::string>()));
    return Poly(std::move(c));
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_input, std::string("polynomial JSON: ") + e.what());
  }
}

inline std::string point_text(const RamPoint& p) {
  if (p.inf) return "inf";
  if (p.root.exact) return format_q(p.root.lo);
  return "[" + format_q(p.root.lo) + "," + format_q(p.root.hi) + "]";
}

inline json to_json(const RamifiedCover& c) {
  json ram = json::array();
  for (const auto& p : c.ram) ram.push_back({{"q", point_text(p)}, {"s", p.s}, {"o", p.o}});
  json j = {{"base", c.base == BasePoint::zero ? "0" : "inf"},
            {"num", to_json(c.map.num())},
            {"den", to_json(c.map.den())},
            {"ram", ram},
            {"certified", c.certified}};
  if (!c.certified) j["failure"] = c.failure;
  return j;
}

/// Reads num, den and base; certification is always recomputed rather than trusted.
inline RamifiedCover cover_from_json(const json& j) {
  try {
    const std::string b = j.at("base").get<std::string>();
    if (b != "0" && b != "inf") throw Error(Errc::malformed_input, "base must be \"0\" or \"inf\"");
    RationalMap m(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
    return certify(m, b == "0" ? BasePoint::zero : BasePoint::infinity);
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_input, std::string("cover JSON: ") + e.what());
  }
}

inline RamifiedCover load_cover(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::malformed_input, "cannot open " + path);
  try {
    return cover_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(Errc::malformed_input, std::string("cover file: ") + e.what());
  }
}

inline json to_json(const std::vector<Dihedral>& H) {
  json a = json::array();
  for (const auto& z : H) a.push_back(to_json(z));
  return a;
}

inline json to_json(const StabilizerReport& r) {
  return {{"signature", to_json(r.signature)}, {"stab_C", to_json(r.stab_C)},
          {"stab_D", to_json(r.stab_D)},       {"stab_C_hash", to_json(r.stab_C_hash)},
          {"stab_D_hash", to_json(r.stab_D_hash)}, {"delta_image_size", r.delta_image_size}};
}

inline json to_json(const ClassDescriptor& c) {
  return {{"n", c.n},
          {"signature", to_json(c.signature)},
          {"hom", {{"a", to_json(c.hom.first)}, {"b", to_json(c.hom.second)}}},
          {"orientation_class", c.orientation_class == OrientationClass::full ? "full" : "orientation_preserving"}};
}

}  // namespace ramlift
