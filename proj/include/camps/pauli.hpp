#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camps/common.hpp"

namespace camps {

// Single-site Pauli letters. The order fixes the letter codes used in
// strings, samplers and serialized gate logs.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

const Mat2& pauli_matrix(Pauli p);

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// sigma_a * sigma_b = i^k sigma_c; returns (c, k) with k in 0..3.
std::pair<Pauli, int> pauli_product(Pauli a, Pauli b);

inline bool pauli_commute(Pauli a, Pauli b) {
  return a == Pauli::I || b == Pauli::I || a == b;
}

// A length-L Pauli string with a global phase i^k. Projective comparisons
// ignore the phase.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int length) : letters_(length, Pauli::I) {}
  PauliString(std::vector<Pauli> letters, int phase_pow = 0)
      : letters_(std::move(letters)), phase_pow_(((phase_pow % 4) + 4) % 4) {}

  // Parses e.g. "XIZY", "-XX", "+iYZ", "-iZZ".
  static PauliString parse(const std::string& text);

  int size() const { return static_cast<int>(letters_.size()); }
  Pauli letter(int site) const { return letters_.at(site); }
  void set_letter(int site, Pauli p) { letters_.at(site) = p; }
  const std::vector<Pauli>& letters() const { return letters_; }

  // Phase as i^k, k in 0..3.
  int phase_pow() const { return phase_pow_; }
  Cplx phase() const;
  void multiply_phase(int pow4) { phase_pow_ = (phase_pow_ + pow4 % 4 + 4) % 4; }

  bool is_identity() const;
  bool is_hermitian() const { return phase_pow_ % 2 == 0; }
  int weight() const;  // number of non-identity letters

  bool commutes_with(const PauliString& other) const;

  PauliString operator*(const PauliString& other) const;

  bool equals_projective(const PauliString& other) const {
    return letters_ == other.letters_;
  }
  bool operator==(const PauliString& other) const {
    return phase_pow_ == other.phase_pow_ && letters_ == other.letters_;
  }

  std::string to_string() const;

 private:
  std::vector<Pauli> letters_;
  int phase_pow_ = 0;
};

}  // namespace camps
