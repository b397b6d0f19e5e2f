#pragma once

#include <cstdint>
#include <vector>

#include "camps/mpo.hpp"
#include "camps/mps.hpp"

namespace camps {

struct DmrgOptions {
  int chi_max = 64;
  int n_sweeps = 14;
  double energy_tol = 1e-10;
  double svd_cutoff = 1e-12;
  std::uint64_t seed = 1;
  int lanczos_max_iter = 60;
  double lanczos_tol = 1e-13;
  // Splices eps * sigma_x onto the first and last site to select a unique
  // state out of an exactly degenerate manifold (cluster chain at h = 0).
  // The reported energy is always that of the unmodified Hamiltonian.
  double boundary_pinning = 0.0;
};

struct DmrgResult {
  Mps state;
  double energy = 0.0;
  bool converged = false;
  int sweeps = 0;
  double max_truncation_error = 0.0;  // during the last sweep
  std::vector<double> sweep_energies;
  // Heuristic: the two largest Schmidt values at the central cut nearly
  // coincide, as happens for cat-like states in a degenerate manifold.
  bool degenerate_spectrum_flag = false;
};

// Two-site DMRG with a Lanczos local solver. Deterministic given the seed
// and sweep schedule; the returned energy is a variational upper bound.
DmrgResult ground_state(const Mpo& mpo, const DmrgOptions& opts = {});

}  // namespace camps
