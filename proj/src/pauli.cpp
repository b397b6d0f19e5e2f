#include "camps/pauli.hpp"

#include <array>

namespace camps {

namespace {

std::array<Mat2, 4> make_pauli_matrices() {
  std::array<Mat2, 4> m;
  const Cplx i(0.0, 1.0);
  m[0] << 1, 0, 0, 1;
  m[1] << 0, 1, 1, 0;
  m[2] << 0, -i, i, 0;
  m[3] << 1, 0, 0, -1;
  return m;
}

// (x, z) symplectic bits and the i-power delta in sigma = i^delta X^x Z^z.
constexpr int kX[4] = {0, 1, 1, 0};
constexpr int kZ[4] = {0, 0, 1, 1};
constexpr int kDelta[4] = {0, 0, 1, 0};

Pauli from_bits(int x, int z) {
  if (x == 0 && z == 0) return Pauli::I;
  if (x == 1 && z == 0) return Pauli::X;
  if (x == 1 && z == 1) return Pauli::Y;
  return Pauli::Z;
}

}  // namespace

const Mat2& pauli_matrix(Pauli p) {
  static const std::array<Mat2, 4> mats = make_pauli_matrices();
  return mats[static_cast<int>(p)];
}

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ValidationError(std::string("not a Pauli letter: ") + c);
  }
}

std::pair<Pauli, int> pauli_product(Pauli a, Pauli b) {
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  const int x = kX[ia] ^ kX[ib];
  const int z = kZ[ia] ^ kZ[ib];
  const Pauli c = from_bits(x, z);
  // i^da X^xa Z^za i^db X^xb Z^zb = i^(da+db+2 za xb) X^x Z^z
  int k = kDelta[ia] + kDelta[ib] + 2 * (kZ[ia] & kX[ib]) - kDelta[static_cast<int>(c)];
  return {c, ((k % 4) + 4) % 4};
}

PauliString PauliString::parse(const std::string& text) {
  std::size_t pos = 0;
  int phase = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase += 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  std::vector<Pauli> letters;
  letters.reserve(text.size() - pos);
  for (; pos < text.size(); ++pos) letters.push_back(pauli_from_char(text[pos]));
  if (letters.empty()) throw ValidationError("empty Pauli string");
  return PauliString(std::move(letters), phase);
}

Cplx PauliString::phase() const {
  static const Cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[phase_pow_];
}

bool PauliString::is_identity() const {
  for (Pauli p : letters_)
    if (p != Pauli::I) return false;
  return true;
}

int PauliString::weight() const {
  int w = 0;
  for (Pauli p : letters_)
    if (p != Pauli::I) ++w;
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (size() != other.size()) throw ValidationError("Pauli string length mismatch");
  int anti = 0;
  for (int j = 0; j < size(); ++j)
    if (!pauli_commute(letters_[j], other.letters_[j])) ++anti;
  return anti % 2 == 0;
}

PauliString PauliString::operator*(const PauliString& other) const {
  if (size() != other.size()) throw ValidationError("Pauli string length mismatch");
  std::vector<Pauli> letters(letters_.size());
  int k = phase_pow_ + other.phase_pow_;
  for (int j = 0; j < size(); ++j) {
    auto [c, p] = pauli_product(letters_[j], other.letters_[j]);
    letters[j] = c;
    k += p;
  }
  return PauliString(std::move(letters), k);
}

std::string PauliString::to_string() const {
  static const char* prefix[4] = {"+", "+i", "-", "-i"};
  std::string out = prefix[phase_pow_];
  for (Pauli p : letters_) out += pauli_char(p);
  return out;
}

}  // namespace camps
