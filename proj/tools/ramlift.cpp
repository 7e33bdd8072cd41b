// Command-line front end: enumerate, stabilizer, classify, build-cover, verify.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ramlift/ramlift.hpp"

using namespace ramlift;

namespace {

enum Exit { ok = 0, usage = 2, oracle_mismatch = 3, construction_failure = 4, verification_failure = 5 };

struct Common {
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(Errc::malformed_input, "cannot write " + c.out);
  f << text;
}

std::string join(const std::vector<int>& v, char sep = ',') {
  std::string r;
  for (std::size_t i = 0; i < v.size(); ++i) r += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return r;
}

std::string group_text(const std::vector<Dihedral>& H) {
  std::string r = "{";
  for (std::size_t i = 0; i < H.size(); ++i) r += (i ? ", " : "") + to_string(H[i]);
  return r + "}";
}

/// "id", "a", "b", "b^k", "b^ka", "ba" (b^k a^f), or "k:f".
Dihedral parse_dihedral(const std::string& t, int d) {
  const auto colon = t.find(':');
  if (colon != std::string::npos) {
    try {
      return Dihedral::make(d, std::stol(t.substr(0, colon)), std::stol(t.substr(colon + 1)) != 0);
    } catch (const std::logic_error&) {
      throw Error(Errc::malformed_input, "bad dihedral literal '" + t + "'");
    }
  }
  if (t == "id") return Dihedral::identity(d);
  std::size_t p = 0;
  long k = 0;
  if (p < t.size() && t[p] == 'b') {
    ++p;
    k = 1;
    if (p < t.size() && t[p] == '^') {
      ++p;
      std::size_t used = 0;
      try {
        k = std::stol(t.substr(p), &used);
      } catch (const std::logic_error&) {
        throw Error(Errc::malformed_input, "bad dihedral literal '" + t + "'");
      }
      p += used;
    }
  }
  bool flip = false;
  if (p < t.size() && t[p] == 'a') {
    flip = true;
    ++p;
  }
  if (p != t.size() || t.empty()) throw Error(Errc::malformed_input, "bad dihedral literal '" + t + "'");
  return Dihedral::make(d, k, flip);
}

Group parse_group(const std::string& g) {
  if (g == "C") return Group::C;
  if (g == "D") return Group::D;
  throw Error(Errc::malformed_input, "group must be C or D");
}

BasePoint parse_base(const std::string& b) {
  if (b == "0") return BasePoint::zero;
  if (b == "inf") return BasePoint::infinity;
  throw Error(Errc::malformed_input, "base must be 0 or inf");
}

int cmd_enumerate(const Common& c, int d, int max_s, const std::string& group) {
  if (d < 1 || max_s < 1) throw Error(Errc::malformed_input, "--d and --max-s must be >= 1");
  const auto sigs = enumerate_canonical(d, max_s, parse_group(group));
  std::ostringstream os;
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& s : sigs) arr.push_back(to_json(s));
    os << json{{"d", d}, {"max_s", max_s}, {"group", group}, {"signatures", arr}}.dump() << "\n";
  } else if (c.format == "csv") {
    for (int i = 1; i <= d; ++i) os << "s" << i << ",";
    for (int i = 1; i <= d; ++i) os << "o" << i << (i < d ? "," : "\n");
    for (const auto& s : sigs) os << join(s.flat()) << "\n";
  } else {
    for (const auto& s : sigs) os << to_string(s) << "\n";
    os << sigs.size() << " signature(s)\n";
  }
  emit(c, os.str());
  return ok;
}

int cmd_stabilizer(const Common& c, const std::string& literal) {
  const auto rep = stabilizer_report(parse_signature(literal));
  std::ostringstream os;
  if (c.format == "json") {
    json j = to_json(rep);
    json deltas = json::array();
    for (const auto& z : rep.stab_D_hash) deltas.push_back({{"element", to_json(z)}, {"delta", delta(rep.signature, z)}});
    j["delta"] = deltas;
    os << j.dump() << "\n";
  } else if (c.format == "csv") {
    os << "subgroup,elements\n";
    os << "stab_C,\"" << group_text(rep.stab_C) << "\"\n";
    os << "stab_D,\"" << group_text(rep.stab_D) << "\"\n";
    os << "stab_C_hash,\"" << group_text(rep.stab_C_hash) << "\"\n";
    os << "stab_D_hash,\"" << group_text(rep.stab_D_hash) << "\"\n";
  } else {
    os << "signature   " << to_string(rep.signature) << "\n";
    os << "Stab_C      " << group_text(rep.stab_C) << "\n";
    os << "Stab_D      " << group_text(rep.stab_D) << "\n";
    os << "Stab#_C     " << group_text(rep.stab_C_hash) << "\n";
    os << "Stab#_D     " << group_text(rep.stab_D_hash) << "\n";
    os << "|im Delta|  " << rep.delta_image_size << "\n";
  }
  emit(c, os.str());
  return ok;
}

int cmd_classify(const Common& c, long n, int d, int max_s, bool oracle, bool no_quotient_plus,
                 const std::string& which) {
  if (n < 2) throw Error(Errc::malformed_input, "--n must be >= 2");
  if (d < 1 || max_s < 1) throw Error(Errc::malformed_input, "--d and --max-s must be >= 1");
  if (which != "full" && which != "plus" && which != "both")
    throw Error(Errc::malformed_input, "--orientation must be full, plus or both");
  const auto full = enumerate_classes(n, d, max_s, OrientationClass::full);
  const auto plus = enumerate_classes(n, d, max_s, OrientationClass::orientation_preserving, !no_quotient_plus);
  if (oracle) {
    for (auto oc : {OrientationClass::full, OrientationClass::orientation_preserving}) {
      const auto r = cross_check(n, d, max_s, oc);
      if (!r.match) {
        std::cerr << "oracle mismatch (" << (oc == OrientationClass::full ? "full" : "plus")
                  << "): classifier " << r.classifier_count << ", oracle " << r.oracle_count << ", witness "
                  << r.witness << "\n";
        return oracle_mismatch;
      }
    }
  }
  std::vector<ClassDescriptor> rows;
  if (which != "plus") rows.insert(rows.end(), full.begin(), full.end());
  if (which != "full") rows.insert(rows.end(), plus.begin(), plus.end());
  std::ostringstream os;
  if (c.format == "json") {
    for (const auto& r : rows) os << to_json(r).dump() << "\n";
  } else if (c.format == "csv") {
    os << "n,d,max_s,classes_full,classes_plus\n"
       << n << "," << d << "," << max_s << "," << full.size() << "," << plus.size() << "\n";
  } else {
    for (const auto& r : rows)
      os << (r.orientation_class == OrientationClass::full ? "full  " : "plus  ") << to_string(r.signature)
         << "  a->" << to_string(r.hom.first) << "  b->" << to_string(r.hom.second) << "\n";
    os << full.size() << " full class(es), " << plus.size() << " orientation-preserving class(es)\n";
  }
  emit(c, os.str());
  return ok;
}

int cmd_build_cover(const Common& c, const std::string& literal, const std::string& base, int n_cap, int j_cap) {
  const SignatureVector s = parse_signature(literal);
  const BasePoint b = parse_base(base);
  if (n_cap < 1 || j_cap < 1) throw Error(Errc::malformed_input, "search caps must be >= 1");
  BuildTrace trace;
  RamifiedCover cover;
  try {
    cover = build_cover(s, b, {n_cap, j_cap}, &trace);
  } catch (const Error& e) {
    if (e.code() != Errc::construction_failed) throw;
    std::cerr << e.what() << "\n";
    return construction_failure;
  }
  std::ostringstream os;
  if (c.format == "json") {
    json j = to_json(cover);
    j["search"] = {{"N", trace.n}, {"j", trace.j}, {"attempts", trace.attempts}};
    os << j.dump() << "\n";
  } else if (c.format == "csv") {
    os << "q,s,o\n";
    for (const auto& p : cover.ram) os << point_text(p) << "," << p.s << "," << p.o << "\n";
  } else {
    os << "signature  " << to_string(signature_of(cover)) << "\n";
    os << "degree     " << cover.map.degree() << " (N=" << trace.n << ", eps=2^-" << trace.j << ")\n";
    for (const auto& p : cover.ram) os << "q=" << point_text(p) << "  s=" << p.s << "  o=" << p.o << "\n";
  }
  emit(c, os.str());
  return ok;
}

int cmd_verify(const Common& c, VerifyConfig cfg, const std::string& literal, const std::string& cover_file,
               const std::string& za, const std::string& zb) {
  if (cfg.n < 2) throw Error(Errc::malformed_input, "--n must be >= 2");
  if (cfg.grid < 16) throw Error(Errc::malformed_input, "--grid must be >= 16");
  if (literal.empty() == cover_file.empty()) throw Error(Errc::malformed_input, "give exactly one of --sig and --cover-file");
  cfg.seed = c.seed;
  RamifiedCover cover;
  if (!literal.empty()) {
    try {
      cover = build_cover(parse_signature(literal), BasePoint::infinity);
    } catch (const Error& e) {
      if (e.code() != Errc::construction_failed) throw;
      std::cerr << e.what() << "\n";
      return construction_failure;
    }
  } else {
    cover = load_cover(cover_file);
    if (!cover.certified) {
      std::cerr << "verification failed: certification (" << cover.failure << ")\n";
      return verification_failure;
    }
  }
  const int d = cover.d();
  VerifyReport rep;
  try {
    rep = run_verify(cover, {parse_dihedral(za, d), parse_dihedral(zb, d)}, cfg);
  } catch (const Error& e) {
    if (e.code() == Errc::not_admissible || e.code() == Errc::hom_constraint_violated ||
        e.code() == Errc::base_point_not_fixed) {
      std::cerr << "verification failed: admissibility (" << e.what() << ")\n";
      return verification_failure;
    }
    throw;
  }
  std::ostringstream os;
  if (c.format == "json") {
    os << to_json(rep).dump(2) << "\n";
  } else if (c.format == "csv") {
    os << "check,value\n";
    os << "relation_residual," << rep.relation_residual << "\n";
    os << "square_residual," << rep.square_residual << "\n";
    os << "sigma_closed_form," << rep.sigma.closed_form << "\n";
    os << "sigma_numeric," << rep.sigma.numeric << "\n";
    if (rep.rotation_comb) os << "rotation_comb," << format_q(*rep.rotation_comb) << "\n";
    if (rep.rotation_comb) os << "rotation_numeric," << rep.rotation_numeric << "\n";
    os << "schwarzian_max," << rep.schwarzian_max << "\n";
    os << "pass," << (rep.pass ? 1 : 0) << "\n";
  } else {
    os << "signature          " << to_string(rep.signature) << "\n";
    os << "relation residual  " << rep.relation_residual << "\n";
    os << "square residual    " << rep.square_residual << "\n";
    for (const auto& f : rep.fiber_derivatives)
      os << "f'(" << f.q << ")  expected " << f.expected << "  got " << f.got << "\n";
    os << "sigma              " << rep.sigma.numeric << " (closed form " << rep.sigma.closed_form << ")\n";
    if (rep.rotation_comb)
      os << "rotation number    " << format_q(*rep.rotation_comb) << " vs " << rep.rotation_numeric << "\n";
    os << "Schwarzian max     " << rep.schwarzian_max << "\n";
    os << (rep.pass ? "PASS" : "FAIL: " + rep.first_failure) << "\n";
  }
  emit(c, os.str());
  if (!rep.pass) {
    std::cerr << "verification failed: " << rep.first_failure << "\n";
    return verification_failure;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramified lifts of BS(1,n) actions: signatures, covers, verification"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", common.out, "Write output to PATH instead of stdout");
    sub->add_option("--seed", common.seed, "Seed for sampled grids (0 = cell midpoints)");
  };

  int d = 0, max_s = 0;
  long n = 0;
  std::string group = "D", sig, base = "inf", cover_file, za = "id", zb = "id", which = "full";
  bool oracle = false, no_quotient_plus = false;
  int n_cap = 64, j_cap = 128;
  VerifyConfig vcfg;

  auto* en = app.add_subcommand("enumerate", "Canonical orbit representatives");
  en->add_option("--d", d, "Number of vertices")->required();
  en->add_option("--max-s", max_s, "Largest vertex label")->required();
  en->add_option("--group", group, "C or D")->required();
  add_common(en);

  auto* st = app.add_subcommand("stabilizer", "Stabilizers and the Delta homomorphism");
  st->add_option("signature,--sig", sig, "Signature literal s_1,..,s_d,o_1,..,o_d")->required();
  add_common(st);

  auto* cl = app.add_subcommand("classify", "Conjugacy-class descriptors (s, [h])");
  cl->add_option("--n", n, "BS(1,n) parameter")->required();
  cl->add_option("--d", d, "Number of vertices")->required();
  cl->add_option("--max-s", max_s, "Largest vertex label")->required();
  cl->add_flag("--oracle", oracle, "Cross-check against brute force (exit 3 on mismatch)");
  cl->add_flag("--no-quotient-plus", no_quotient_plus, "List orientation-preserving homs without conjugacy quotient");
  cl->add_option("--orientation", which, "Rows to list: full, plus or both");
  add_common(cl);

  auto* bc = app.add_subcommand("build-cover", "Certified rational cover realizing a signature");
  bc->add_option("--sig", sig, "Signature literal")->required();
  bc->add_option("--base", base, "0 or inf");
  bc->add_option("--n-cap", n_cap, "Largest N tried (powers of two)");
  bc->add_option("--j-cap", j_cap, "Largest j tried, eps = 2^-j");
  add_common(bc);

  auto* ve = app.add_subcommand("verify", "Lift the standard representation and check the identities");
  ve->add_option("--n", vcfg.n, "BS(1,n) parameter")->required();
  ve->add_option("--sig", sig, "Signature literal (cover is built over infinity)");
  ve->add_option("--cover-file", cover_file, "Cover JSON");
  ve->add_option("--za", za, "Image of a: id, a, b, b^k, b^ka or k:f");
  ve->add_option("--zb", zb, "Image of b");
  ve->add_option("--grid", vcfg.grid, "Grid size");
  ve->add_option("--rotation-iterations", vcfg.rotation_iterations, "Birkhoff iterations");
  ve->add_option("--tol-relation", vcfg.tol_relation);
  ve->add_option("--tol-square", vcfg.tol_square);
  ve->add_option("--tol-fiber", vcfg.tol_fiber_derivative);
  ve->add_option("--tol-sigma", vcfg.tol_sigma);
  ve->add_option("--tol-rotation", vcfg.tol_rotation);
  ve->add_option("--tol-schwarzian", vcfg.tol_schwarzian);
  add_common(ve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  if (const char* bits = std::getenv("RAMLIFT_PRECISION_BITS")) {
    if (std::string(bits) != "53") {
      std::cerr << "RAMLIFT_PRECISION_BITS: only 53 (IEEE double) is supported\n";
      return usage;
    }
  }
  for (double t : {vcfg.tol_relation, vcfg.tol_square, vcfg.tol_fiber_derivative, vcfg.tol_sigma,
                   vcfg.tol_rotation, vcfg.tol_schwarzian})
    if (!(t > 0)) {
      std::cerr << "tolerances must be positive\n";
      return usage;
    }

  try {
    if (*en) return cmd_enumerate(common, d, max_s, group);
    if (*st) return cmd_stabilizer(common, sig);
    if (*cl) return cmd_classify(common, n, d, max_s, oracle, no_quotient_plus, which);
    if (*bc) return cmd_build_cover(common, sig, base, n_cap, j_cap);
    if (*ve) return cmd_verify(common, vcfg, sig, cover_file, za, zb);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case Errc::construction_failed: return construction_failure;
      case Errc::mismatch_detected: return oracle_mismatch;
      case Errc::malformed_input:
      case Errc::property_one_violation:
      case Errc::property_two_violation:
      case Errc::dimension_mismatch:
      case Errc::malformed_word: return usage;
      default: return verification_failure;
    }
  }
  return usage;
}
