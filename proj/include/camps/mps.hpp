#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "camps/common.hpp"
#include "camps/mpo.hpp"
#include "camps/pauli.hpp"

namespace camps {

// Thrown when an operation needs bond singular values that are no longer
// current; re-canonicalize first.
struct StaleCanonicalForm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One rank-3 MPS tensor A^s(l, r), stored as a matrix per physical state.
struct SiteTensor {
  std::array<MatC, 2> m;

  Eigen::Index chi_left() const { return m[0].rows(); }
  Eigen::Index chi_right() const { return m[0].cols(); }
};

// Open-chain matrix product state for qubits. Sites left of the canonical
// center are left-isometric, sites right of it right-isometric; the center
// tensor carries the norm. Values are immutable through the public API:
// operations return new states.
class Mps {
 public:
  Mps() = default;
  Mps(std::vector<SiteTensor> sites, int center);

  int length() const { return static_cast<int>(sites_.size()); }
  const SiteTensor& site(int j) const { return sites_.at(j); }
  int canonical_center() const { return center_; }

  int bond_dim(int bond) const {
    return static_cast<int>(sites_.at(bond).chi_right());
  }
  int max_bond_dim() const;

  bool lambdas_valid(int bond) const { return lambda_valid_.at(bond) != 0; }
  bool all_lambdas_valid() const;
  // Schmidt coefficients at `bond` (between sites bond, bond+1), sorted
  // non-increasing, normalized to unit two-norm. Throws StaleCanonicalForm
  // if not current.
  const VecD& bond_singular_values(int bond) const;

  // Internal mutators used by the algorithms in this library. They keep the
  // center/lambda bookkeeping coherent.
  SiteTensor& site_mut(int j) { return sites_.at(j); }
  void set_center(int c) { center_ = c; }
  void set_lambda(int bond, VecD lam);
  void invalidate_lambdas();
  void invalidate_lambdas_except(int bond);

 private:
  std::vector<SiteTensor> sites_;
  std::vector<VecD> lambdas_;
  std::vector<char> lambda_valid_;
  int center_ = 0;
};

// --- construction -----------------------------------------------------------

// chi = 1 product state from normalized local two-vectors.
Mps product_state(const std::vector<Eigen::Vector2cd>& local_states);
Mps all_zeros(int length);

// Random normalized MPS with bond dimension <= chi.
Mps random_mps(int length, int chi, std::uint64_t seed);

// --- gauge ------------------------------------------------------------------

// Mixed-canonical form with the stated center site (0 = right-normalized).
// Refreshes every bond's singular values and normalizes the state.
Mps canonicalize(const Mps& state, int center = 0);

// Moves the canonical center by QR steps; the state and all Schmidt spectra
// are unchanged. Requires a state whose isometry structure matches its
// recorded center.
void move_center(Mps& state, int target);

// --- scalar quantities ------------------------------------------------------

Cplx overlap(const Mps& a, const Mps& b);  // <a|b>
double norm(const Mps& state);

// Renyi entropy at a bond from its Schmidt coefficients, natural logs;
// renyi_index 1 gives the von Neumann entropy.
double entanglement_entropy(const Mps& state, int bond, double renyi_index = 1.0);
double entropy_from_schmidt(const VecD& lambdas, double renyi_index);
std::vector<double> entropy_profile(const Mps& state, double renyi_index = 1.0);

double expectation_pauli(const Mps& state, const PauliString& p);
Cplx expectation_mpo(const Mps& state, const Mpo& mpo);

// --- two-site gates ---------------------------------------------------------

struct GateResult {
  Mps state;
  double discarded_weight = 0.0;
  bool truncated_over_cutoff = false;
};

// Applies a 4x4 unitary to sites (bond, bond + 1); basis order |s_bond,
// s_bond+1> with the left site major. chi_max = 0 means unbounded. The
// returned state has its center at bond + 1 and its norm restored.
GateResult apply_two_site_gate(const Mps& state, int bond, const Mat4& gate,
                               int chi_max = 0, double svd_cutoff = kDefaultSvdCutoff);

// In-place variant used by sweeping algorithms; leaves the center at the
// bond's left (-1) or right (+1) site. Exact when cutoff 0 / chi_max 0.
struct GateStats {
  double discarded_weight = 0.0;
  bool truncated_over_cutoff = false;
  VecD schmidt;  // new values at the bond
};
GateStats apply_gate_at_bond(Mps& state, int bond, const Mat4& gate, int direction,
                             int chi_max, double svd_cutoff);

// Two-site wavefunction blocks theta[s1*2+s2] at a bond (center must sit on
// one of the two sites), and the squared Schmidt spectrum a gate would
// produce there. Used for candidate search without modifying the state.
std::array<MatC, 4> two_site_blocks(const Mps& state, int bond);
std::array<MatC, 4> gate_on_blocks(const std::array<MatC, 4>& theta, const Mat4& gate);
VecD schmidt_squared(const std::array<MatC, 4>& theta);

// --- reduced density matrices ----------------------------------------------

// Tr(rho_region^n) for an arbitrary site subset. Exact for the given MPS.
// Contiguous-at-the-boundary regions come from Schmidt values; contiguous
// interior regions and complements use a doubled-layer transfer (n = 2) or a
// dense reduced density matrix (n >= 3, small regions). Throws
// SizeGuardError when the contraction would exceed mem_budget bytes.
double rdm_purity(const Mps& state, const std::vector<int>& region, int renyi_order = 2,
                  std::size_t mem_budget = std::size_t(2) << 30);

// --- compression ------------------------------------------------------------

struct CompressionResult {
  Mps state;
  double fidelity = 0.0;  // |<out|in>|^2
  bool converged = false;
  int sweeps = 0;
};

// Variational projection onto bond dimension chi_target, seeded by SVD
// truncation; fidelity is non-decreasing over sweeps.
CompressionResult compress_to_chi(const Mps& state, int chi_target, int max_sweeps = 8,
                                  double tol = 1e-12);

// --- dense conversion (small chains) ----------------------------------------

VecC mps_to_dense(const Mps& state);
Mps mps_from_dense(const VecC& psi, int length);

// --- shared SVD helper ------------------------------------------------------

struct SvdOutcome {
  MatC u;
  VecD s;  // kept singular values, unnormalized
  MatC vdag;
  double discarded_weight = 0.0;
  bool truncated_over_cutoff = false;
};

// Thin SVD with deterministic phases (largest-magnitude entry of each left
// singular vector made real positive), exact-zero floor at kSingularZero,
// then optional truncation to chi_max / discarded-weight cutoff.
SvdOutcome svd_truncated(const MatC& m, int chi_max, double cutoff_weight);

}  // namespace camps
