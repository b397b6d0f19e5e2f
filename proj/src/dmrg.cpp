#include "camps/dmrg.hpp"

#include <algorithm>
#include <cmath>

#include "camps/exact.hpp"
#include "camps/pauli.hpp"

namespace camps {

namespace {

using EnvStack = std::vector<std::vector<MatC>>;  // env[mpo_bond] per position

// env'[b] = sum_{a,t,s} W[a][b](t,s) A^t(dag) env[a] A^s
std::vector<MatC> grow_left(const std::vector<MatC>& env, const Mpo& mpo, int j,
                            const SiteTensor& a) {
  std::vector<MatC> next(mpo.right_dim(j), MatC::Zero(a.chi_right(), a.chi_right()));
  for (int bi = 0; bi < mpo.left_dim(j); ++bi) {
    if (env[bi].size() == 0) continue;
    std::array<MatC, 2> half;
    for (int s = 0; s < 2; ++s) half[s].noalias() = env[bi] * a.m[s];
    for (int bo = 0; bo < mpo.right_dim(j); ++bo) {
      const Mat2& w = mpo.block(j, bi, bo);
      if (w.isZero(0.0)) continue;
      for (int t = 0; t < 2; ++t)
        for (int s = 0; s < 2; ++s) {
          if (w(t, s) == Cplx(0.0)) continue;
          next[bo].noalias() += w(t, s) * (a.m[t].adjoint() * half[s]);
        }
    }
  }
  return next;
}

std::vector<MatC> grow_right(const std::vector<MatC>& env, const Mpo& mpo, int j,
                             const SiteTensor& a) {
  std::vector<MatC> next(mpo.left_dim(j), MatC::Zero(a.chi_left(), a.chi_left()));
  for (int bo = 0; bo < mpo.right_dim(j); ++bo) {
    if (env[bo].size() == 0) continue;
    std::array<MatC, 2> half;
    for (int s = 0; s < 2; ++s) half[s].noalias() = a.m[s] * env[bo];
    for (int bi = 0; bi < mpo.left_dim(j); ++bi) {
      const Mat2& w = mpo.block(j, bi, bo);
      if (w.isZero(0.0)) continue;
      for (int t = 0; t < 2; ++t)
        for (int s = 0; s < 2; ++s) {
          if (w(t, s) == Cplx(0.0)) continue;
          next[bi].noalias() += w(t, s) * (half[s] * a.m[t].adjoint());
        }
    }
  }
  return next;
}

// Effective two-site Hamiltonian acting on theta blocks [s1*2+s2].
struct TwoSiteOp {
  const std::vector<MatC>* left;
  const std::vector<MatC>* right;
  const Mpo* mpo;
  int site;  // left site of the pair
  Eigen::Index chi_l, chi_r;

  Eigen::Index dim() const { return 4 * chi_l * chi_r; }

  void apply(const VecC& x, VecC& y) const {
    const int dl = mpo->left_dim(site), dm = mpo->right_dim(site),
              dr = mpo->right_dim(site + 1);
    auto block = [&](const VecC& v, int k) {
      return Eigen::Map<const MatC>(v.data() + k * chi_l * chi_r, chi_l, chi_r);
    };
    auto yblock = [&](VecC& v, int k) {
      return Eigen::Map<MatC>(v.data() + k * chi_l * chi_r, chi_l, chi_r);
    };
    y.setZero();
    // stage 1: p[a][s1 s2] = L_a x[s1 s2]
    std::vector<MatC> p(dl * 4);
    for (int a = 0; a < dl; ++a) {
      if ((*left)[a].size() == 0) continue;
      for (int k = 0; k < 4; ++k) p[a * 4 + k].noalias() = (*left)[a] * block(x, k);
    }
    // stage 2: q[b][s1' s2] = sum W1[a][b](s1',s1) p[a][s1 s2]
    std::vector<MatC> q(dm * 4);
    for (int b = 0; b < dm; ++b)
      for (int k = 0; k < 4; ++k) q[b * 4 + k] = MatC::Zero(chi_l, chi_r);
    for (int a = 0; a < dl; ++a) {
      if ((*left)[a].size() == 0) continue;
      for (int b = 0; b < dm; ++b) {
        const Mat2& w = mpo->block(site, a, b);
        if (w.isZero(0.0)) continue;
        for (int t = 0; t < 2; ++t)
          for (int s = 0; s < 2; ++s) {
            if (w(t, s) == Cplx(0.0)) continue;
            for (int s2 = 0; s2 < 2; ++s2)
              q[b * 4 + 2 * t + s2] += w(t, s) * p[a * 4 + 2 * s + s2];
          }
      }
    }
    // stage 3: r[c][s1' s2'] = sum W2[b][c](s2',s2) q[b][s1' s2]
    std::vector<MatC> r(dr * 4);
    for (int c = 0; c < dr; ++c)
      for (int k = 0; k < 4; ++k) r[c * 4 + k] = MatC::Zero(chi_l, chi_r);
    for (int b = 0; b < dm; ++b)
      for (int c = 0; c < dr; ++c) {
        const Mat2& w = mpo->block(site + 1, b, c);
        if (w.isZero(0.0)) continue;
        for (int t = 0; t < 2; ++t)
          for (int s = 0; s < 2; ++s) {
            if (w(t, s) == Cplx(0.0)) continue;
            for (int s1 = 0; s1 < 2; ++s1)
              r[c * 4 + 2 * s1 + t] += w(t, s) * q[b * 4 + 2 * s1 + s];
          }
      }
    // stage 4: y[k] += r[c][k] R_c
    for (int c = 0; c < dr; ++c) {
      if ((*right)[c].size() == 0) continue;
      for (int k = 0; k < 4; ++k) yblock(y, k).noalias() += r[c * 4 + k] * (*right)[c];
    }
  }
};

VecC blocks_to_vec(const std::array<MatC, 4>& blocks) {
  const Eigen::Index n = blocks[0].size();
  VecC v(4 * n);
  for (int k = 0; k < 4; ++k)
    Eigen::Map<MatC>(v.data() + k * n, blocks[0].rows(), blocks[0].cols()) = blocks[k];
  return v;
}

int sweep_chi(const DmrgOptions& opts, int sweep) {
  // Ramp the bond dimension up over the first sweeps.
  const int ramp = 16 << sweep;  // 16, 32, 64, ...
  return std::min(opts.chi_max, std::max(2, ramp));
}

}  // namespace

DmrgResult ground_state(const Mpo& mpo, const DmrgOptions& opts) {
  if (opts.chi_max < 2) throw ValidationError("dmrg: chi_max >= 2");
  const int length = mpo.length();
  Mpo run_mpo = mpo;
  if (opts.boundary_pinning != 0.0) {
    run_mpo.add_onsite(0, pauli_matrix(Pauli::X), opts.boundary_pinning);
    run_mpo.add_onsite(length - 1, pauli_matrix(Pauli::X), opts.boundary_pinning);
  }

  Mps state = random_mps(length, std::min(opts.chi_max, 8), opts.seed);
  move_center(state, 0);

  EnvStack lenv(length), renv(length + 1);
  renv[length] = {};  // sentinel
  std::vector<MatC> right_boundary(run_mpo.right_dim(length - 1), MatC::Ones(1, 1));
  std::vector<MatC> left_boundary(run_mpo.left_dim(0), MatC::Ones(1, 1));
  // Right environments for sites L-1 .. 1.
  {
    std::vector<MatC> cur = right_boundary;
    for (int j = length - 1; j >= 1; --j) {
      cur = grow_right(cur, run_mpo, j, state.site(j));
      renv[j] = cur;
    }
  }

  DmrgResult result;
  double prev_energy = 0.0;
  double energy = 0.0;
  for (int sweep = 0; sweep < opts.n_sweeps; ++sweep) {
    const int chi = sweep_chi(opts, sweep);
    double max_trunc = 0.0;
    auto solve_bond = [&](int b, int direction) {
      const std::vector<MatC>& le = (b == 0) ? left_boundary : lenv[b - 1];
      const std::vector<MatC>& re = (b + 2 >= length) ? right_boundary : renv[b + 2];
      TwoSiteOp op{&le, &re, &run_mpo, b, state.site(b).chi_left(),
                   state.site(b + 1).chi_right()};
      const VecC start = blocks_to_vec(two_site_blocks(state, b));
      auto matvec = [&](const VecC& x, VecC& y) { op.apply(x, y); };
      exact::GroundState local =
          exact::lanczos_ground(matvec, op.dim(), start, opts.lanczos_tol,
                                opts.lanczos_max_iter);
      energy = local.energy;
      // Split the optimized pair and truncate.
      MatC m(2 * op.chi_l, 2 * op.chi_r);
      for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
          m.block(s1 * op.chi_l, s2 * op.chi_r, op.chi_l, op.chi_r) =
              Eigen::Map<const MatC>(local.psi.data() + (2 * s1 + s2) * op.chi_l * op.chi_r,
                                     op.chi_l, op.chi_r);
      SvdOutcome svd = svd_truncated(m, chi, opts.svd_cutoff);
      max_trunc = std::max(max_trunc, svd.discarded_weight);
      VecD lam = svd.s / svd.s.norm();
      SiteTensor left_site, right_site;
      const Eigen::Index k = lam.size();
      left_site.m[0] = svd.u.topRows(op.chi_l);
      left_site.m[1] = svd.u.bottomRows(op.chi_l);
      MatC v = svd.vdag;
      right_site.m[0] = v.leftCols(op.chi_r);
      right_site.m[1] = v.rightCols(op.chi_r);
      if (direction > 0) {
        for (int s = 0; s < 2; ++s) right_site.m[s] = lam.asDiagonal() * right_site.m[s];
        state.site_mut(b) = left_site;
        state.site_mut(b + 1) = right_site;
        state.set_center(b + 1);
        lenv[b] = grow_left((b == 0) ? left_boundary : lenv[b - 1], run_mpo, b,
                            state.site(b));
      } else {
        for (int s = 0; s < 2; ++s) left_site.m[s] = left_site.m[s] * lam.asDiagonal();
        state.site_mut(b) = left_site;
        state.site_mut(b + 1) = right_site;
        state.set_center(b);
        renv[b + 1] = grow_right((b + 2 >= length) ? right_boundary : renv[b + 2],
                                 run_mpo, b + 1, state.site(b + 1));
      }
      state.set_lambda(b, lam);
      (void)k;
    };
    for (int b = 0; b + 1 < length; ++b) solve_bond(b, +1);
    for (int b = length - 2; b >= 0; --b) solve_bond(b, -1);
    result.sweep_energies.push_back(energy);
    result.sweeps = sweep + 1;
    result.max_truncation_error = max_trunc;
    if (sweep > 0 && std::abs(energy - prev_energy) < opts.energy_tol &&
        chi == sweep_chi(opts, sweep - 1)) {
      result.converged = true;
      break;
    }
    prev_energy = energy;
  }

  state.invalidate_lambdas();
  result.state = canonicalize(state, 0);
  result.energy = (opts.boundary_pinning != 0.0)
                      ? std::real(expectation_mpo(result.state, mpo))
                      : energy;
  const int hbond = (length - 1) / 2;
  const VecD& lam = result.state.bond_singular_values(hbond);
  if (lam.size() >= 2 && lam[0] - lam[1] < 1e-6 * lam[0])
    result.degenerate_spectrum_flag = true;
  return result;
}

}  // namespace camps
