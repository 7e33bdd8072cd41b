// Signature of (x+1)^2 (x-1)^2 / (x (x^2+1)) over 0, then a certified rebuild over infinity.
#include <iostream>

#include "ramlift/ramlift.hpp"

using namespace ramlift;

int main() {
  const RationalMap pi2(Poly{1, 0, -2, 0, 1}, Poly{0, 1, 0, 1});
  const RamifiedCover c = certify(pi2, BasePoint::zero);
  if (!c.certified) {
    std::cerr << c.failure << "\n";
    return 1;
  }
  std::cout << "signature " << to_string(signature_of(c)) << "\n";
  for (const auto& p : c.ram) std::cout << "  q=" << point_text(p) << " s=" << p.s << " o=" << p.o << "\n";

  const RamifiedCover built = build_cover(signature_of(c), BasePoint::infinity);
  std::cout << "rebuilt over inf: " << to_json(built).dump() << "\n";
}
