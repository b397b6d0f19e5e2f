#include <doctest.h>

#include "camps/pauli.hpp"

using namespace camps;

TEST_CASE("single-site products reproduce the algebra") {
  const Cplx i(0, 1);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      auto [c, k] = pauli_product(static_cast<Pauli>(a), static_cast<Pauli>(b));
      Mat2 lhs = pauli_matrix(static_cast<Pauli>(a)) * pauli_matrix(static_cast<Pauli>(b));
      Mat2 rhs = std::pow(i, k) * pauli_matrix(c);
      CHECK((lhs - rhs).norm() < 1e-14);
    }
}

TEST_CASE("string multiplication tracks phases") {
  auto xy = PauliString::parse("XY") * PauliString::parse("YX");
  // (X Y) x (Y X) = (XY) (YX) = (iZ)(-iZ) sitewise: X*Y = iZ, Y*X = -iZ.
  CHECK(xy.to_string() == "+ZZ");

  auto p = PauliString::parse("-iXZ");
  CHECK(p.phase() == Cplx(0, -1));
  CHECK(p.phase_pow() == 3);
  CHECK(!p.is_hermitian());

  auto q = PauliString::parse("XZ") * PauliString::parse("XZ");
  CHECK(q.is_identity());
  CHECK(q.phase_pow() == 0);
}

TEST_CASE("commutation") {
  CHECK(PauliString::parse("XX").commutes_with(PauliString::parse("ZZ")));
  CHECK(!PauliString::parse("XI").commutes_with(PauliString::parse("ZI")));
  CHECK(PauliString::parse("XYZ").commutes_with(PauliString::parse("XYZ")));
}

TEST_CASE("parse round trip and weight") {
  auto p = PauliString::parse("+iIXYZ");
  CHECK(p.size() == 4);
  CHECK(p.weight() == 3);
  CHECK(p.to_string() == "+iIXYZ");
  CHECK_THROWS_AS(PauliString::parse("AB"), ValidationError);
}
