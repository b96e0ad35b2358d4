// Walks through the library on the two-dimensional non-abelian Lie algebra:
// derivation spaces, a quasiderivation witness, and the t-extension.

#include <iostream>

#include "nhom/extension.hpp"
#include "nhom/fixtures.hpp"

int main() {
  using namespace nhom;
  const NHomAlgebra alg = fixtures::aff1();
  std::cout << "aff1 validates: " << std::boolalpha << validate(alg).ok() << "\n";

  SpaceAtlas atlas(alg);
  for (auto kind : kAllKinds) std::cout << "  dim " << to_string(kind) << " = " << atlas.dim(kind, 0, 0) << "\n";

  const auto& der = atlas.get(Kind::Der, 0, 0);
  std::cout << "Der basis:\n";
  for (const auto& D : der.basis) {
    for (std::size_t r = 0; r < D.mat.rows(); ++r) {
      std::cout << "  ";
      for (std::size_t c = 0; c < D.mat.cols(); ++c) std::cout << to_string(D.mat(r, c)) << " ";
      std::cout << "\n";
    }
    std::cout << "\n";
  }

  const auto& q = atlas.get(Kind::QDer, 0, 0);
  std::cout << "first QDer element has witness D' with D'(e2) column: ";
  const Vec w = q.witnesses[0][0].col(1);
  for (const auto& x : w) std::cout << to_string(x) << " ";
  std::cout << "\n";

  const auto rep = check_prop43(alg);
  std::cout << "extension decomposition: " << (rep.passed() ? "holds" : "FAILS") << " (phi(QDer) "
            << rep.dims.at({"phi(QDer)", 0, 0}) << " + ZDer " << rep.dims.at({"ext.ZDer", 0, 0}) << " = Der "
            << rep.dims.at({"ext.Der", 0, 0}) << ")\n";
  return rep.passed() ? 0 : 1;
}
