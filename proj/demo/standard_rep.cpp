// Lifts the standard BS(1,4) action through a degree-3 cover and prints the checks.
#include <iostream>

#include "ramlift/ramlift.hpp"

using namespace ramlift;

int main() {
  const SignatureVector s = parse_signature("1,1,1,1,1,1");
  const RamifiedCover c = build_cover(s, BasePoint::infinity);
  VerifyConfig cfg;
  cfg.n = 4;
  cfg.grid = 256;
  cfg.rotation_iterations = 20000;
  const auto rep = run_verify(c, {Dihedral::identity(3), Dihedral::b(3)}, cfg);
  std::cout << to_json(rep).dump(2) << "\n";
  return rep.pass ? 0 : 1;
}
