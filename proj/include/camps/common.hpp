#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace camps {

using Cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Singular values below this are treated as exact zeros (entropies, exact
// gate application). Squared, this is far below eigensolver noise on a
// normalized density matrix.
inline constexpr double kSingularZero = 1e-14;

// Default truncation cutoff (discarded weight) for non-exact gate application
// and DMRG sweeps.
inline constexpr double kDefaultSvdCutoff = 1e-12;

// Isometry / gauge-invariance checks.
inline constexpr double kOrthoTol = 1e-10;

struct SizeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// splitmix64; used to derive independent sub-seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace camps
