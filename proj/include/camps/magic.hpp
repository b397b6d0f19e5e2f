#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "camps/mps.hpp"

namespace camps {

enum class MagicEstimator { Exact, PerfectSampling, PauliMarkov };

struct MagicReport {
  double value = 0.0;  // M_n, total (natural log)
  double std_error = 0.0;
  int n_samples = 0;
  MagicEstimator estimator = MagicEstimator::Exact;
  int renyi_index = 2;
  int n_qubits = 0;
  bool resample_flag = false;          // a numerically dead conditional was hit
  double max_normalization_error = 0.0;  // worst per-site conditional-sum defect
  double compression_fidelity = 1.0;   // for the chi = 2 proxy

  double density() const { return value / n_qubits; }
  double density_error() const { return std_error / n_qubits; }
};

// Exact stabilizer Renyi entropy M_n by a dense Pauli-basis transform of
// |psi><psi| (L <= 12).
MagicReport sre_exact(const Mps& state, int renyi_index = 2);

// Perfect sampling of Pauli strings P ~ <P>^2 / 2^L by sequential
// conditionals; M2 = -log mean(<P>^2) with jackknife errors. Samples are
// seeded independently, so the result does not depend on `threads`.
MagicReport sre_sample(const Mps& state, int n_samples, std::uint64_t seed,
                       int threads = 1);

// M2 of the closest chi = 2 state: variational compression, then sampling.
MagicReport local_magic_chi2(const Mps& state, int n_samples, std::uint64_t seed,
                             int threads = 1);

// Exact mixed-state M2 of a reduced density matrix on `region`
// (|region| <= 12): -log(sum c^4 / sum c^2) over the region's Pauli group.
MagicReport sre_mixed_exact(const Mps& state, const std::vector<int>& region);

struct MutualSreOptions {
  int n_samples = 10000;  // per chain, after burn-in and thinning
  int n_chains = 8;
  int burn_in = 1000;  // steps
  int thinning = 10;   // steps between samples
  int n_batches = 16;  // batch-means error estimate
  int threads = 2;
  std::uint64_t seed = 1;
};

struct ChainDiagnostics {
  double acceptance = 0.0;
  bool acceptance_flag = false;  // outside [0.1, 0.7]
  double mean = 0.0;             // E_pi[Tr(rho P)^2]
  double mean_error = 0.0;
};

// Mutual stabilizer Renyi entropy of two disjoint regions. The Renyi-2
// mutual information part is exact (MPS purities); the Pauli-sum part runs
// three Metropolis chains with stationary law pi(P) ~ Tr(rho P)^2 on A, B
// and AB. Assembled as l_ab = i_ab - w_ab.
struct MutualSreReport {
  double l_ab = 0.0, l_ab_err = 0.0;
  double i_ab = 0.0;  // exact
  double w_ab = 0.0, w_ab_err = 0.0;
  std::vector<int> region_a, region_b;
  std::array<ChainDiagnostics, 3> chains;  // A, B, AB
  long n_samples_total = 0;
};

MutualSreReport mutual_sre(const Mps& state, std::vector<int> region_a,
                           std::vector<int> region_b, const MutualSreOptions& opts = {});

// Pauli coefficients c_P = Tr(rho P) of a dense density matrix, ordered by
// the base-4 string code with site 0 the most significant digit.
VecD pauli_coefficients(const MatC& rho, int n_qubits);

// Dense reduced density matrix of an MPS region. Contiguous regions use the
// native contraction; disconnected ones require L <= 14.
MatC mps_dense_rdm(const Mps& state, const std::vector<int>& region);

}  // namespace camps
