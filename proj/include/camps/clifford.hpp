#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camps/common.hpp"
#include "camps/pauli.hpp"

namespace camps {

// A Hermitian two-qubit Pauli with sign, in symplectic (x, z) bit form.
struct SignedPauli2 {
  std::uint8_t x1 = 0, z1 = 0, x2 = 0, z2 = 0;
  int sign = +1;  // +1 or -1

  bool operator==(const SignedPauli2&) const = default;
  std::string to_string() const;
};

SignedPauli2 signed_pauli2(Pauli p, Pauli q, int sign = +1);

// Conjugation tableau of a two-qubit Clifford: images of X1, Z1, X2, Z2,
// with exact sign tracking.
struct CliffordTableau2 {
  std::array<SignedPauli2, 4> image;  // of XI, ZI, IX, IZ

  bool operator==(const CliffordTableau2&) const = default;

  // C P C^dag for an arbitrary signed two-qubit Pauli (phase i^k allowed;
  // Hermitian in, Hermitian out).
  SignedPauli2 conjugate(const SignedPauli2& p) const;

  // Composition: (this after other), the tableau of U_this * U_other.
  CliffordTableau2 after(const CliffordTableau2& other) const;

  static CliffordTableau2 identity();

  // Deterministic encoding: per image a byte ((l1 * 4 + l2) << 1) | signbit
  // with letter order I < X < Z < Y, images in the order XI, ZI, IX, IZ.
  // The identity gate is the strict minimum within its local coset.
  std::uint32_t key() const;
};

// One two-qubit Clifford element, tableau plus cached unitary.
struct CliffordGate2 {
  CliffordTableau2 tableau;
  Mat4 unitary;      // phase-canonical: first nonzero entry real positive
  int id = -1;       // stable index within its GateSet
};

// Extracts the tableau from a numerically Clifford 4x4 unitary; throws
// ValidationError if some conjugated generator is not a signed Pauli.
CliffordTableau2 tableau_from_unitary(const Mat4& u, double tol = 1e-8);

// The 24 single-qubit Cliffords (modulo phase), closed under multiplication.
const std::vector<Mat2>& single_qubit_cliffords();

// All 11520 projectively distinct two-qubit Cliffords, generated by
// {H1, H2, S1, S2, CNOT}; tableau-keyed, deterministic order.
const std::vector<CliffordGate2>& two_qubit_cliffords();

// Number of classes modulo left Pauli factors (720).
int count_mod_pauli_classes();

enum class GateSetKind { Full, CosetReduced };

struct GateSet {
  GateSetKind kind = GateSetKind::CosetReduced;
  std::vector<CliffordGate2> gates;
  int identity_id = 0;

  int size() const { return static_cast<int>(gates.size()); }
  const CliffordGate2& operator[](int id) const { return gates.at(id); }
};

// The 20 left-coset representatives of (C1 x C1) in C2: one gate per class
// of identical singular-value action. Element 0 is the identity; the rest
// are ordered by their canonical tableau key. Every element of the full
// group factors as (S1 x S2) * representative (verified at construction).
const GateSet& coset_gate_set();

GateSet full_gate_set();

// Conjugates a length-L Pauli string through an ordered list of
// (bond, gate) pairs: C P C^dag with exact sign tracking.
struct GateApplication {
  int bond;
  CliffordTableau2 tableau;
};
PauliString conjugate_through(const std::vector<GateApplication>& log, PauliString p);

}  // namespace camps
