#include "camps/clifford.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace camps {

namespace {

Pauli letter_from_bits(int x, int z) {
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

// Letter order I < X < Z < Y for canonical keys.
int key_code(int x, int z) { return x + 2 * z; }

Mat4 kron22(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

template <typename Mat>
void canonical_phase(Mat& u) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const Cplx z = u(i / u.cols(), i % u.cols());
    if (std::abs(z) > 0.3) {
      u *= std::conj(z) / std::abs(z);
      return;
    }
  }
}

struct C1Element {
  Mat2 u;
  // images of X and Z under conjugation
  std::array<std::pair<Pauli, int>, 2> image;
};

std::pair<Pauli, int> match_signed_pauli1(const Mat2& m, double tol) {
  for (int letter = 1; letter < 4; ++letter)
    for (int sign : {+1, -1}) {
      if ((m - double(sign) * pauli_matrix(static_cast<Pauli>(letter))).norm() < tol)
        return {static_cast<Pauli>(letter), sign};
    }
  throw ValidationError("not a single-qubit Clifford image");
}

std::uint32_t c1_key(const C1Element& e) {
  std::uint32_t key = 0;
  for (const auto& [letter, sign] : e.image) {
    const int x = (letter == Pauli::X || letter == Pauli::Y);
    const int z = (letter == Pauli::Z || letter == Pauli::Y);
    key = (key << 4) | (key_code(x, z) << 1) | (sign < 0);
  }
  return key;
}

const std::vector<C1Element>& c1_elements() {
  static const std::vector<C1Element> table = [] {
    const Cplx i(0, 1);
    Mat2 h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Mat2 s;
    s << 1, 0, 0, i;
    auto to_element = [&](const Mat2& u) {
      C1Element e;
      e.u = u;
      canonical_phase(e.u);
      e.image[0] = match_signed_pauli1(u * pauli_matrix(Pauli::X) * u.adjoint(), 1e-8);
      e.image[1] = match_signed_pauli1(u * pauli_matrix(Pauli::Z) * u.adjoint(), 1e-8);
      return e;
    };
    std::map<std::uint32_t, C1Element> seen;
    std::deque<C1Element> queue{to_element(Mat2::Identity())};
    seen[c1_key(queue.front())] = queue.front();
    while (!queue.empty()) {
      C1Element cur = queue.front();
      queue.pop_front();
      for (const Mat2* g : {&h, &s}) {
        C1Element next = to_element((*g) * cur.u);
        const std::uint32_t key = c1_key(next);
        if (!seen.count(key)) {
          seen[key] = next;
          queue.push_back(next);
        }
      }
    }
    std::vector<C1Element> out;
    for (auto& [key, e] : seen) out.push_back(e);
    if (out.size() != 24)
      throw std::logic_error("single-qubit Clifford closure gave " +
                             std::to_string(out.size()) + " elements");
    return out;
  }();
  return table;
}

}  // namespace

std::string SignedPauli2::to_string() const {
  std::string out = sign < 0 ? "-" : "+";
  out += pauli_char(letter_from_bits(x1, z1));
  out += pauli_char(letter_from_bits(x2, z2));
  return out;
}

SignedPauli2 signed_pauli2(Pauli p, Pauli q, int sign) {
  SignedPauli2 out;
  out.x1 = (p == Pauli::X || p == Pauli::Y);
  out.z1 = (p == Pauli::Z || p == Pauli::Y);
  out.x2 = (q == Pauli::X || q == Pauli::Y);
  out.z2 = (q == Pauli::Z || q == Pauli::Y);
  out.sign = sign;
  return out;
}

SignedPauli2 CliffordTableau2::conjugate(const SignedPauli2& p) const {
  // Work in un-normalized form i^k X1^x1 Z1^z1 X2^x2 Z2^z2.
  int k = (p.sign < 0 ? 2 : 0) + (p.x1 & p.z1) + (p.x2 & p.z2);
  int x1 = 0, z1 = 0, x2 = 0, z2 = 0;
  auto mul = [&](const SignedPauli2& q) {
    k += (q.sign < 0 ? 2 : 0) + (q.x1 & q.z1) + (q.x2 & q.z2);
    k += 2 * ((z1 & q.x1) + (z2 & q.x2));
    x1 ^= q.x1;
    z1 ^= q.z1;
    x2 ^= q.x2;
    z2 ^= q.z2;
  };
  if (p.x1) mul(image[0]);
  if (p.z1) mul(image[1]);
  if (p.x2) mul(image[2]);
  if (p.z2) mul(image[3]);
  k -= (x1 & z1) + (x2 & z2);
  k = ((k % 4) + 4) % 4;
  if (k % 2 != 0) throw std::logic_error("conjugation broke Hermiticity");
  SignedPauli2 out;
  out.x1 = x1;
  out.z1 = z1;
  out.x2 = x2;
  out.z2 = z2;
  out.sign = (k == 0) ? +1 : -1;
  return out;
}

CliffordTableau2 CliffordTableau2::after(const CliffordTableau2& other) const {
  CliffordTableau2 out;
  for (int g = 0; g < 4; ++g) out.image[g] = conjugate(other.image[g]);
  return out;
}

CliffordTableau2 CliffordTableau2::identity() {
  CliffordTableau2 t;
  t.image[0] = signed_pauli2(Pauli::X, Pauli::I);
  t.image[1] = signed_pauli2(Pauli::Z, Pauli::I);
  t.image[2] = signed_pauli2(Pauli::I, Pauli::X);
  t.image[3] = signed_pauli2(Pauli::I, Pauli::Z);
  return t;
}

std::uint32_t CliffordTableau2::key() const {
  std::uint32_t key = 0;
  for (const SignedPauli2& p : image) {
    const int code = key_code(p.x1, p.z1) * 4 + key_code(p.x2, p.z2);
    key = (key << 8) | std::uint32_t((code << 1) | (p.sign < 0));
  }
  return key;
}

CliffordTableau2 tableau_from_unitary(const Mat4& u, double tol) {
  if ((u.adjoint() * u - Mat4::Identity()).norm() > 1e-10)
    throw ValidationError("tableau_from_unitary: not unitary");
  static const std::array<std::pair<Pauli, Pauli>, 4> gens = {
      {{Pauli::X, Pauli::I}, {Pauli::Z, Pauli::I}, {Pauli::I, Pauli::X}, {Pauli::I, Pauli::Z}}};
  CliffordTableau2 t;
  for (int g = 0; g < 4; ++g) {
    const Mat4 m = u * kron22(pauli_matrix(gens[g].first), pauli_matrix(gens[g].second)) *
                   u.adjoint();
    bool found = false;
    for (int l1 = 0; l1 < 4 && !found; ++l1)
      for (int l2 = 0; l2 < 4 && !found; ++l2) {
        if (l1 == 0 && l2 == 0) continue;
        const Mat4 cand =
            kron22(pauli_matrix(static_cast<Pauli>(l1)), pauli_matrix(static_cast<Pauli>(l2)));
        for (int sign : {+1, -1}) {
          if ((m - double(sign) * cand).norm() < tol) {
            t.image[g] = signed_pauli2(static_cast<Pauli>(l1), static_cast<Pauli>(l2), sign);
            found = true;
            break;
          }
        }
      }
    if (!found) throw ValidationError("unitary is not Clifford");
  }
  return t;
}

const std::vector<Mat2>& single_qubit_cliffords() {
  static const std::vector<Mat2> table = [] {
    std::vector<Mat2> out;
    for (const auto& e : c1_elements()) out.push_back(e.u);
    return out;
  }();
  return table;
}

const std::vector<CliffordGate2>& two_qubit_cliffords() {
  static const std::vector<CliffordGate2> table = [] {
    const Cplx i(0, 1);
    Mat2 h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Mat2 s;
    s << 1, 0, 0, i;
    Mat4 cnot = Mat4::Zero();
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;  // control on the left site
    std::vector<Mat4> gen_u = {kron22(h, Mat2::Identity()), kron22(Mat2::Identity(), h),
                               kron22(s, Mat2::Identity()), kron22(Mat2::Identity(), s), cnot};
    std::vector<CliffordTableau2> gen_t;
    for (const Mat4& u : gen_u) gen_t.push_back(tableau_from_unitary(u));

    struct Entry {
      CliffordTableau2 tab;
      Mat4 u;
    };
    std::unordered_map<std::uint32_t, Entry> seen;
    std::deque<Entry> queue;
    Entry id{CliffordTableau2::identity(), Mat4::Identity()};
    seen[id.tab.key()] = id;
    queue.push_back(id);
    while (!queue.empty()) {
      Entry cur = queue.front();
      queue.pop_front();
      for (std::size_t g = 0; g < gen_u.size(); ++g) {
        Entry next{gen_t[g].after(cur.tab), gen_u[g] * cur.u};
        const std::uint32_t key = next.tab.key();
        if (!seen.count(key)) {
          canonical_phase(next.u);
          seen.emplace(key, next);
          queue.push_back(next);
        }
      }
    }
    if (seen.size() != 11520)
      throw std::logic_error("two-qubit Clifford closure gave " +
                             std::to_string(seen.size()) + " elements");
    std::vector<std::uint32_t> keys;
    keys.reserve(seen.size());
    for (const auto& [key, entry] : seen) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    std::vector<CliffordGate2> out;
    out.reserve(keys.size());
    for (std::size_t idx = 0; idx < keys.size(); ++idx) {
      const Entry& e = seen.at(keys[idx]);
      out.push_back({e.tab, e.u, static_cast<int>(idx)});
    }
    return out;
  }();
  return table;
}

int count_mod_pauli_classes() {
  std::unordered_set<std::uint32_t> letter_keys;
  for (const auto& g : two_qubit_cliffords())
    letter_keys.insert(g.tableau.key() & 0xfefefefeU);  // drop sign bits
  return static_cast<int>(letter_keys.size());
}

namespace {

std::vector<CliffordTableau2> local_tableaus() {
  std::vector<CliffordTableau2> out;
  const auto& c1 = c1_elements();
  for (const auto& a : c1)
    for (const auto& b : c1) {
      CliffordTableau2 t;
      t.image[0] = signed_pauli2(a.image[0].first, Pauli::I, a.image[0].second);
      t.image[1] = signed_pauli2(a.image[1].first, Pauli::I, a.image[1].second);
      t.image[2] = signed_pauli2(Pauli::I, b.image[0].first, b.image[0].second);
      t.image[3] = signed_pauli2(Pauli::I, b.image[1].first, b.image[1].second);
      out.push_back(t);
    }
  return out;
}

}  // namespace

const GateSet& coset_gate_set() {
  static const GateSet set = [] {
    const auto& full = two_qubit_cliffords();
    const auto locals = local_tableaus();
    std::unordered_map<std::uint32_t, int> key_to_index;
    for (std::size_t i = 0; i < full.size(); ++i)
      key_to_index[full[i].tableau.key()] = static_cast<int>(i);

    // Canonical coset key: minimum over left-multiplication by locals.
    std::unordered_map<std::uint32_t, std::vector<int>> cosets;
    for (std::size_t i = 0; i < full.size(); ++i) {
      std::uint32_t best = 0xffffffffU;
      for (const auto& l : locals)
        best = std::min(best, l.after(full[i].tableau).key());
      cosets[best].push_back(static_cast<int>(i));
    }
    if (cosets.size() != 20)
      throw std::logic_error("coset reduction gave " + std::to_string(cosets.size()) +
                             " classes");
    GateSet set;
    set.kind = GateSetKind::CosetReduced;
    std::vector<std::uint32_t> keys;
    for (const auto& [key, members] : cosets) {
      if (members.size() != 576)
        throw std::logic_error("coset of unexpected size " +
                               std::to_string(members.size()));
      keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    const std::uint32_t id_key = CliffordTableau2::identity().key();
    std::stable_partition(keys.begin(), keys.end(),
                          [&](std::uint32_t k) { return k == id_key; });
    if (keys.front() != id_key)
      throw std::logic_error("identity coset representative is not the identity");
    std::unordered_set<std::uint32_t> covered;
    for (std::size_t idx = 0; idx < keys.size(); ++idx) {
      const CliffordGate2& rep = full[key_to_index.at(keys[idx])];
      // Factorization check: the 576 left multiples of this representative
      // must tile its coset exactly.
      for (const auto& l : locals) covered.insert(l.after(rep.tableau).key());
      CliffordGate2 gate = rep;
      gate.id = static_cast<int>(idx);
      set.gates.push_back(gate);
    }
    if (covered.size() != full.size())
      throw std::logic_error("coset representatives do not tile the group");
    return set;
  }();
  return set;
}

GateSet full_gate_set() {
  GateSet set;
  set.kind = GateSetKind::Full;
  set.gates = two_qubit_cliffords();
  const std::uint32_t id_key = CliffordTableau2::identity().key();
  for (const auto& g : set.gates)
    if (g.tableau.key() == id_key) set.identity_id = g.id;
  return set;
}

PauliString conjugate_through(const std::vector<GateApplication>& log, PauliString p) {
  for (const auto& app : log) {
    if (app.bond < 0 || app.bond + 1 >= p.size())
      throw ValidationError("gate log bond out of range");
    const SignedPauli2 in = signed_pauli2(p.letter(app.bond), p.letter(app.bond + 1));
    const SignedPauli2 out = app.tableau.conjugate(in);
    p.set_letter(app.bond, letter_from_bits(out.x1, out.z1));
    p.set_letter(app.bond + 1, letter_from_bits(out.x2, out.z2));
    if (out.sign < 0) p.multiply_phase(2);
  }
  return p;
}

}  // namespace camps
