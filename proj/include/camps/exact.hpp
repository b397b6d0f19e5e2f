#pragma once

#include <functional>
#include <vector>

#include "camps/models.hpp"
#include "camps/pauli.hpp"

// Dense exact-diagonalization references. Everything here enumerates basis
// states or Pauli strings directly and is guarded to small sizes; it exists
// to validate the tensor-network estimators, not to be fast.
namespace camps::exact {

inline constexpr int kMaxDenseQubits = 14;
inline constexpr int kMaxPauliSumQubits = 12;

// One product of single-site Paulis with a real coefficient.
struct Term {
  double coeff;
  std::vector<std::pair<int, Pauli>> factors;  // (site, letter)
};

// Literal term-by-term transcription of each Hamiltonian; an independent
// route from the MPO builders.
std::vector<Term> hamiltonian_terms(const ModelSpec& spec);

// Dense 2^L x 2^L Hamiltonian (L <= 10).
MatC dense_hamiltonian(const ModelSpec& spec);

// y += H x without forming the matrix.
void apply_terms(const std::vector<Term>& terms, int length, const VecC& x, VecC& y);

// P |psi> via bit arithmetic; site 0 is the most significant bit.
VecC apply_pauli(const VecC& psi, int length, const PauliString& p);
Cplx pauli_expectation(const VecC& psi, int length, const PauliString& p);

struct GroundState {
  double energy = 0.0;
  VecC psi;
  bool converged = false;
  int iterations = 0;
};

// Lanczos ground state of the dense Hamiltonian (L <= 14). Deterministic
// given the seed; the global phase is fixed by making the first
// non-negligible amplitude real positive.
GroundState exact_ground_state(const ModelSpec& spec, std::uint64_t seed = 7,
                               double tol = 1e-12, int max_iter = 400);

// Generic Lanczos on a Hermitian operator given as a matvec.
GroundState lanczos_ground(const std::function<void(const VecC&, VecC&)>& matvec,
                           Eigen::Index dim, const VecC& start, double tol, int max_iter);

// Schmidt-based entropies across the cut after `cut_sites` sites.
double cut_entropy(const VecC& psi, int length, int cut_sites, double renyi_index);

// Reduced density matrix on `region` (any subset of sites), 2^|R| x 2^|R|.
MatC dense_rdm(const VecC& psi, int length, const std::vector<int>& region);

double entropy_of_rdm(const MatC& rho, double renyi_index);

// Brute-force stabilizer Renyi entropy M_n: sum over all 4^L projective
// Pauli strings of <P>^(2n) / 2^L.
double sre(const VecC& psi, int length, int renyi_index);

// Mixed-state M2 of a density matrix: -log(sum c^4 / sum c^2) over the
// region's Pauli group, c = Tr(rho P).
double mixed_sre2(const MatC& rho);

struct MutualSre {
  double l2 = 0.0;   // mutual SRE
  double i2 = 0.0;   // Renyi-2 mutual information
  double w2 = 0.0;   // l2 = i2 - w2
  double m2_ab = 0.0, m2_a = 0.0, m2_b = 0.0;
};

MutualSre mutual_sre2(const VecC& psi, int length, const std::vector<int>& region_a,
                      const std::vector<int>& region_b);

}  // namespace camps::exact
