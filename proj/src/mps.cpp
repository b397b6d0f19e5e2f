#include "camps/mps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace camps {

namespace {

// [A^0; A^1], rows (s * chi_l + l).
MatC stack_tensor(const SiteTensor& t) {
  MatC m(2 * t.chi_left(), t.chi_right());
  m.topRows(t.chi_left()) = t.m[0];
  m.bottomRows(t.chi_left()) = t.m[1];
  return m;
}

SiteTensor unstack_tensor(const MatC& m) {
  const Eigen::Index chi_l = m.rows() / 2;
  SiteTensor t;
  t.m[0] = m.topRows(chi_l);
  t.m[1] = m.bottomRows(chi_l);
  return t;
}

// [A^0, A^1], cols (s * chi_r + r).
MatC widen_tensor(const SiteTensor& t) {
  MatC m(t.chi_left(), 2 * t.chi_right());
  m.leftCols(t.chi_right()) = t.m[0];
  m.rightCols(t.chi_right()) = t.m[1];
  return m;
}

SiteTensor unwiden_tensor(const MatC& m) {
  const Eigen::Index chi_r = m.cols() / 2;
  SiteTensor t;
  t.m[0] = m.leftCols(chi_r);
  t.m[1] = m.rightCols(chi_r);
  return t;
}

double frob_norm(const SiteTensor& t) {
  return std::sqrt(t.m[0].squaredNorm() + t.m[1].squaredNorm());
}

// Thin QR; returns Q, writes R.
MatC thin_qr(const MatC& m, MatC& r) {
  const Eigen::Index k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<MatC> qr(m);
  MatC q = qr.householderQ() * MatC::Identity(m.rows(), k);
  r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
  return q;
}

void left_orthonormalize_step(Mps& st, int j) {
  MatC r;
  const MatC q = thin_qr(stack_tensor(st.site(j)), r);
  st.site_mut(j) = unstack_tensor(q);
  for (int s = 0; s < 2; ++s) st.site_mut(j + 1).m[s] = r * st.site(j + 1).m[s];
}

void right_orthonormalize_step(Mps& st, int j) {
  // LQ via QR of the adjoint.
  const MatC wide = widen_tensor(st.site(j));
  MatC r;
  const MatC q = thin_qr(wide.adjoint(), r);
  st.site_mut(j) = unwiden_tensor(q.adjoint());
  const MatC l = r.adjoint();
  for (int s = 0; s < 2; ++s) st.site_mut(j - 1).m[s] = st.site(j - 1).m[s] * l;
}

VecD descending_clamped(VecD v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<double>());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::max(v[i], 0.0);
  return v;
}

}  // namespace

// --- Mps basics --------------------------------------------------------------

Mps::Mps(std::vector<SiteTensor> sites, int center)
    : sites_(std::move(sites)), center_(center) {
  const int length = static_cast<int>(sites_.size());
  if (length < 1) throw ValidationError("empty MPS");
  if (sites_.front().chi_left() != 1 || sites_.back().chi_right() != 1)
    throw ValidationError("boundary bond dimensions must be 1");
  for (int j = 0; j + 1 < length; ++j)
    if (sites_[j].chi_right() != sites_[j + 1].chi_left())
      throw ValidationError("adjacent bond dimensions do not match");
  if (center_ < 0 || center_ >= length) throw ValidationError("center out of range");
  lambdas_.assign(length - 1, VecD());
  lambda_valid_.assign(length - 1, 0);
}

int Mps::max_bond_dim() const {
  int chi = 1;
  for (int b = 0; b + 1 < length(); ++b) chi = std::max(chi, bond_dim(b));
  return chi;
}

bool Mps::all_lambdas_valid() const {
  for (char v : lambda_valid_)
    if (!v) return false;
  return true;
}

const VecD& Mps::bond_singular_values(int bond) const {
  if (!lambda_valid_.at(bond))
    throw StaleCanonicalForm("bond " + std::to_string(bond) +
                             " singular values are stale; canonicalize first");
  return lambdas_[bond];
}

void Mps::set_lambda(int bond, VecD lam) {
  lambdas_.at(bond) = std::move(lam);
  lambda_valid_[bond] = 1;
}

void Mps::invalidate_lambdas() {
  std::fill(lambda_valid_.begin(), lambda_valid_.end(), char(0));
}

void Mps::invalidate_lambdas_except(int bond) {
  for (int b = 0; b < static_cast<int>(lambda_valid_.size()); ++b)
    if (b != bond) lambda_valid_[b] = 0;
}

// --- construction ------------------------------------------------------------

Mps product_state(const std::vector<Eigen::Vector2cd>& local_states) {
  if (local_states.size() < 2) throw ValidationError("product_state needs L >= 2");
  std::vector<SiteTensor> sites;
  for (const auto& v : local_states) {
    if (std::abs(v.norm() - 1.0) > 1e-10)
      throw ValidationError("local state is not normalized");
    SiteTensor t;
    t.m[0] = MatC::Constant(1, 1, v[0]);
    t.m[1] = MatC::Constant(1, 1, v[1]);
    sites.push_back(std::move(t));
  }
  Mps st(std::move(sites), 0);
  for (int b = 0; b + 1 < st.length(); ++b) st.set_lambda(b, VecD::Ones(1));
  return st;
}

Mps all_zeros(int length) {
  return product_state(std::vector<Eigen::Vector2cd>(length, Eigen::Vector2cd(1, 0)));
}

Mps random_mps(int length, int chi, std::uint64_t seed) {
  if (length < 2 || chi < 1) throw ValidationError("random_mps: bad arguments");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<SiteTensor> sites(length);
  auto bond = [&](int j) {  // bond dim right of site j
    const double cap_l = std::pow(2.0, j + 1), cap_r = std::pow(2.0, length - 1 - j);
    return static_cast<int>(std::min({double(chi), cap_l, cap_r}));
  };
  for (int j = 0; j < length; ++j) {
    const int dl = (j == 0) ? 1 : bond(j - 1);
    const int dr = (j == length - 1) ? 1 : bond(j);
    for (int s = 0; s < 2; ++s) {
      sites[j].m[s].resize(dl, dr);
      for (int a = 0; a < dl; ++a)
        for (int b = 0; b < dr; ++b) sites[j].m[s](a, b) = Cplx(gauss(rng), gauss(rng));
    }
  }
  return canonicalize(Mps(std::move(sites), 0), 0);
}

// --- gauge -------------------------------------------------------------------

SvdOutcome svd_truncated(const MatC& m, int chi_max, double cutoff_weight) {
  SvdOutcome out;
  MatC u, v;
  VecD s;
  if (std::max(m.rows(), m.cols()) <= 32) {
    Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  } else {
    Eigen::BDCSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  }
  const double total = s.squaredNorm();
  // Exact-zero floor, then truncation by weight / chi_max.
  int keep = 0;
  while (keep < s.size() && s[keep] >= kSingularZero) ++keep;
  double discarded = 0.0;
  for (Eigen::Index i = keep; i < s.size(); ++i) discarded += s[i] * s[i];
  while (keep > 1) {
    const double w = s[keep - 1] * s[keep - 1];
    if (discarded + w <= cutoff_weight * total) {
      discarded += w;
      --keep;
    } else {
      break;
    }
  }
  out.truncated_over_cutoff = false;
  if (chi_max > 0 && keep > chi_max) {
    for (int i = chi_max; i < keep; ++i) discarded += s[i] * s[i];
    keep = chi_max;
    if (discarded > cutoff_weight * total) out.truncated_over_cutoff = true;
  }
  keep = std::max(keep, 1);
  out.u = u.leftCols(keep);
  out.s = s.head(keep);
  out.vdag = v.leftCols(keep).adjoint();
  out.discarded_weight = total > 0 ? discarded / total : 0.0;
  // Deterministic phases: largest-magnitude entry of each left singular
  // vector made real positive.
  for (int k = 0; k < keep; ++k) {
    Eigen::Index imax = 0;
    out.u.col(k).cwiseAbs().maxCoeff(&imax);
    const Cplx z = out.u(imax, k);
    if (std::abs(z) > 0) {
      const Cplx phase = z / std::abs(z);
      out.u.col(k) *= std::conj(phase);
      out.vdag.row(k) *= phase;
    }
  }
  return out;
}

Mps canonicalize(const Mps& state, int center) {
  const int length = state.length();
  if (center < 0 || center >= length) throw ValidationError("center out of range");
  Mps st = state;
  st.invalidate_lambdas();
  for (int j = 0; j + 1 < length; ++j) left_orthonormalize_step(st, j);
  const double nrm = frob_norm(st.site(length - 1));
  if (nrm < 1e-300) throw ValidationError("cannot canonicalize a zero state");
  for (int s = 0; s < 2; ++s) st.site_mut(length - 1).m[s] /= nrm;
  // Right sweep with SVDs; collects every bond's Schmidt coefficients.
  for (int j = length - 1; j >= 1; --j) {
    SvdOutcome svd = svd_truncated(widen_tensor(st.site(j)), 0, 0.0);
    st.site_mut(j) = unwiden_tensor(svd.vdag);
    VecD lam = svd.s;
    const double lnorm = lam.norm();
    st.set_lambda(j - 1, lam / lnorm);
    const MatC carry = svd.u * svd.s.asDiagonal();
    for (int s = 0; s < 2; ++s) st.site_mut(j - 1).m[s] = st.site(j - 1).m[s] * carry;
  }
  const double n0 = frob_norm(st.site(0));
  for (int s = 0; s < 2; ++s) st.site_mut(0).m[s] /= n0;
  st.set_center(0);
  move_center(st, center);
  return st;
}

void move_center(Mps& st, int target) {
  if (target < 0 || target >= st.length()) throw ValidationError("center out of range");
  while (st.canonical_center() < target) {
    left_orthonormalize_step(st, st.canonical_center());
    st.set_center(st.canonical_center() + 1);
  }
  while (st.canonical_center() > target) {
    right_orthonormalize_step(st, st.canonical_center());
    st.set_center(st.canonical_center() - 1);
  }
}

// --- scalar quantities -------------------------------------------------------

Cplx overlap(const Mps& a, const Mps& b) {
  if (a.length() != b.length()) throw ValidationError("overlap: length mismatch");
  MatC env = MatC::Ones(1, 1);
  for (int j = 0; j < a.length(); ++j) {
    MatC next = MatC::Zero(a.site(j).chi_right(), b.site(j).chi_right());
    for (int s = 0; s < 2; ++s)
      next.noalias() += a.site(j).m[s].adjoint() * env * b.site(j).m[s];
    env = std::move(next);
  }
  return env(0, 0);
}

double norm(const Mps& state) { return std::sqrt(std::abs(overlap(state, state))); }

double entropy_from_schmidt(const VecD& lambdas, double renyi_index) {
  double s = 0.0, z = 0.0;
  for (double lam : lambdas) {
    if (lam < kSingularZero) continue;
    const double p = lam * lam;
    if (std::abs(renyi_index - 1.0) < 1e-12)
      s -= p * std::log(p);
    else
      z += std::pow(p, renyi_index);
  }
  if (std::abs(renyi_index - 1.0) < 1e-12) return std::max(s, 0.0);
  return std::log(z) / (1.0 - renyi_index);
}

double entanglement_entropy(const Mps& state, int bond, double renyi_index) {
  return entropy_from_schmidt(state.bond_singular_values(bond), renyi_index);
}

std::vector<double> entropy_profile(const Mps& state, double renyi_index) {
  std::vector<double> out(state.length() - 1);
  for (int b = 0; b + 1 < state.length(); ++b)
    out[b] = entanglement_entropy(state, b, renyi_index);
  return out;
}

double expectation_pauli(const Mps& state, const PauliString& p) {
  if (p.size() != state.length()) throw ValidationError("Pauli string length mismatch");
  MatC env = MatC::Ones(1, 1);
  for (int j = 0; j < state.length(); ++j) {
    const Mat2& sigma = pauli_matrix(p.letter(j));
    const SiteTensor& a = state.site(j);
    MatC next = MatC::Zero(a.chi_right(), a.chi_right());
    for (int t = 0; t < 2; ++t)
      for (int s = 0; s < 2; ++s) {
        if (sigma(t, s) == Cplx(0.0)) continue;
        next.noalias() += sigma(t, s) * (a.m[t].adjoint() * env * a.m[s]);
      }
    env = std::move(next);
  }
  return std::real(p.phase() * env(0, 0));
}

Cplx expectation_mpo(const Mps& state, const Mpo& mpo) {
  if (mpo.length() != state.length()) throw ValidationError("MPO length mismatch");
  std::vector<MatC> env(1, MatC::Ones(1, 1));
  for (int j = 0; j < state.length(); ++j) {
    const SiteTensor& a = state.site(j);
    std::vector<MatC> next(mpo.right_dim(j),
                           MatC::Zero(a.chi_right(), a.chi_right()));
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
    env = std::move(next);
  }
  return env[0](0, 0);
}

// --- two-site gates ----------------------------------------------------------

std::array<MatC, 4> two_site_blocks(const Mps& state, int bond) {
  if (bond < 0 || bond + 1 >= state.length()) throw ValidationError("bond out of range");
  if (state.canonical_center() != bond && state.canonical_center() != bond + 1)
    throw ValidationError("two_site_blocks: center must sit on the bond");
  std::array<MatC, 4> theta;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      theta[2 * s1 + s2].noalias() = state.site(bond).m[s1] * state.site(bond + 1).m[s2];
  return theta;
}

std::array<MatC, 4> gate_on_blocks(const std::array<MatC, 4>& theta, const Mat4& gate) {
  std::array<MatC, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = MatC::Zero(theta[0].rows(), theta[0].cols());
    for (int k = 0; k < 4; ++k) {
      if (gate(i, k) == Cplx(0.0)) continue;
      out[i] += gate(i, k) * theta[k];
    }
  }
  return out;
}

VecD schmidt_squared(const std::array<MatC, 4>& theta) {
  const Eigen::Index chi_l = theta[0].rows(), chi_r = theta[0].cols();
  MatC gram;
  if (chi_l <= chi_r) {
    gram = MatC::Zero(2 * chi_l, 2 * chi_l);
    for (int s1 = 0; s1 < 2; ++s1)
      for (int t1 = 0; t1 < 2; ++t1)
        for (int s2 = 0; s2 < 2; ++s2)
          gram.block(s1 * chi_l, t1 * chi_l, chi_l, chi_l).noalias() +=
              theta[2 * s1 + s2] * theta[2 * t1 + s2].adjoint();
  } else {
    gram = MatC::Zero(2 * chi_r, 2 * chi_r);
    for (int s2 = 0; s2 < 2; ++s2)
      for (int t2 = 0; t2 < 2; ++t2)
        for (int s1 = 0; s1 < 2; ++s1)
          gram.block(s2 * chi_r, t2 * chi_r, chi_r, chi_r).noalias() +=
              theta[2 * s1 + s2].adjoint() * theta[2 * s1 + t2];
  }
  Eigen::SelfAdjointEigenSolver<MatC> es(gram, Eigen::EigenvaluesOnly);
  return descending_clamped(es.eigenvalues());
}

GateStats apply_gate_at_bond(Mps& st, int bond, const Mat4& gate, int direction,
                             int chi_max, double svd_cutoff) {
  if (bond < 0 || bond + 1 >= st.length()) throw ValidationError("bond out of range");
  if (st.canonical_center() != bond && st.canonical_center() != bond + 1)
    move_center(st, bond);
  const auto theta = gate_on_blocks(two_site_blocks(st, bond), gate);
  const Eigen::Index chi_l = theta[0].rows(), chi_r = theta[0].cols();
  MatC m(2 * chi_l, 2 * chi_r);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      m.block(s1 * chi_l, s2 * chi_r, chi_l, chi_r) = theta[2 * s1 + s2];
  SvdOutcome svd = svd_truncated(m, chi_max, svd_cutoff);
  VecD lam = svd.s / svd.s.norm();
  GateStats stats;
  stats.discarded_weight = svd.discarded_weight;
  stats.truncated_over_cutoff = svd.truncated_over_cutoff;
  stats.schmidt = lam;
  if (direction >= 0) {
    st.site_mut(bond) = unstack_tensor(svd.u);
    st.site_mut(bond + 1) = unwiden_tensor(lam.asDiagonal() * svd.vdag);
    st.set_center(bond + 1);
  } else {
    st.site_mut(bond) = unstack_tensor(svd.u * lam.asDiagonal());
    st.site_mut(bond + 1) = unwiden_tensor(svd.vdag);
    st.set_center(bond);
  }
  if (stats.discarded_weight > 1e-24) st.invalidate_lambdas();
  st.set_lambda(bond, lam);
  return stats;
}

GateResult apply_two_site_gate(const Mps& state, int bond, const Mat4& gate, int chi_max,
                               double svd_cutoff) {
  if ((gate.adjoint() * gate - Mat4::Identity()).norm() > 1e-10)
    throw ValidationError("apply_two_site_gate: gate is not unitary");
  GateResult out;
  out.state = state;
  GateStats stats = apply_gate_at_bond(out.state, bond, gate, +1, chi_max, svd_cutoff);
  out.discarded_weight = stats.discarded_weight;
  out.truncated_over_cutoff = stats.truncated_over_cutoff;
  return out;
}

// --- reduced density matrices ------------------------------------------------

namespace {

struct Tensor4 {
  std::array<Eigen::Index, 4> dim;
  std::vector<Cplx> v;  // row-major over (leg0, leg1, leg2, leg3)

  Eigen::Index size() const { return dim[0] * dim[1] * dim[2] * dim[3]; }
};

using RowMat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// out(..., b, ...) = sum_a mat(a, b)^(conj?) e(..., a, ...)
Tensor4 apply_leg(const Tensor4& e, int leg, const MatC& mat, bool conjugate) {
  Tensor4 out;
  out.dim = e.dim;
  out.dim[leg] = mat.cols();
  out.v.assign(out.size(), Cplx(0.0));
  Eigen::Index pre = 1, suf = 1;
  for (int i = 0; i < leg; ++i) pre *= e.dim[i];
  for (int i = leg + 1; i < 4; ++i) suf *= e.dim[i];
  const Eigen::Index da = e.dim[leg], db = mat.cols();
  const MatC coeff = conjugate ? MatC(mat.adjoint()) : MatC(mat.transpose());  // (b, a)
  for (Eigen::Index p = 0; p < pre; ++p) {
    Eigen::Map<const RowMat> in(e.v.data() + p * da * suf, da, suf);
    Eigen::Map<RowMat> outm(out.v.data() + p * db * suf, db, suf);
    outm.noalias() = coeff * in;
  }
  return out;
}

// One doubled-layer transfer step. `kept` sites use the Tr(rho^2) crossing
// pattern (ket1 s, bra1 t, ket2 t, bra2 s); traced sites pair bra with ket
// inside each copy.
Tensor4 purity_step(const Tensor4& e, const SiteTensor& a, bool kept) {
  Tensor4 acc;
  acc.dim = {a.chi_right(), a.chi_right(), a.chi_right(), a.chi_right()};
  acc.v.assign(acc.size(), Cplx(0.0));
  for (int s = 0; s < 2; ++s) {
    const Tensor4 e1 = apply_leg(e, 0, a.m[s], false);
    for (int t = 0; t < 2; ++t) {
      const Tensor4 e2 = apply_leg(e1, 1, a.m[kept ? t : s], true);
      const Tensor4 e3 = apply_leg(e2, 2, a.m[t], false);
      const Tensor4 e4 = apply_leg(e3, 3, a.m[kept ? s : t], true);
      for (Eigen::Index i = 0; i < acc.size(); ++i) acc.v[i] += e4.v[i];
    }
  }
  return acc;
}

double close_with_deltas(const Tensor4& e) {
  Cplx acc = 0.0;
  const auto& d = e.dim;
  for (Eigen::Index b1 = 0; b1 < d[0]; ++b1)
    for (Eigen::Index b2 = 0; b2 < d[2]; ++b2)
      acc += e.v[((b1 * d[1] + b1) * d[2] + b2) * d[3] + b2];
  return std::real(acc);
}

void check_purity_budget(int chi, std::size_t budget) {
  const double bytes = 3.0 * 16.0 * std::pow(double(chi), 4.0) * 4.0;
  if (bytes > double(budget))
    throw SizeGuardError("rdm_purity: doubled-layer contraction over memory budget");
}

// Tr(rho^2) of the contiguous interior region [i, j) for a state whose
// center lies inside the region; left/right closures are identity by the
// isometry structure.
double purity_contiguous2(const Mps& st, int i, int j, std::size_t budget) {
  const int chi_l = static_cast<int>(st.site(i).chi_left());
  int chi_max = chi_l;
  for (int k = i; k < j; ++k)
    chi_max = std::max(chi_max, static_cast<int>(st.site(k).chi_right()));
  check_purity_budget(chi_max, budget);
  Tensor4 e;
  e.dim = {chi_l, chi_l, chi_l, chi_l};
  e.v.assign(e.size(), Cplx(0.0));
  for (Eigen::Index a = 0; a < chi_l; ++a)
    for (Eigen::Index b = 0; b < chi_l; ++b)
      e.v[((a * chi_l + a) * chi_l + b) * chi_l + b] = 1.0;
  for (int k = i; k < j; ++k) e = purity_step(e, st.site(k), true);
  return close_with_deltas(e);
}

// Full-chain doubled transfer for an arbitrary membership pattern.
double purity_general2(const Mps& st, const std::vector<bool>& in_region,
                       std::size_t budget) {
  check_purity_budget(st.max_bond_dim(), budget);
  Tensor4 e;
  e.dim = {1, 1, 1, 1};
  e.v.assign(1, Cplx(1.0));
  for (int k = 0; k < st.length(); ++k) e = purity_step(e, st.site(k), in_region[k]);
  return std::real(e.v[0]);
}

// Dense rho of a contiguous region via stacked tensor products; for
// Renyi orders >= 3.
double purity_dense_contiguous(const Mps& st, int i, int j, int order,
                               std::size_t budget) {
  const int m = j - i;
  if (m > 12) throw SizeGuardError("rdm_purity: region too large for dense route");
  const double bytes =
      16.0 * (std::pow(2.0, m) * std::pow(double(st.max_bond_dim()), 2.0) +
              std::pow(4.0, m));
  if (bytes > double(budget))
    throw SizeGuardError("rdm_purity: dense reduced density matrix over memory budget");
  std::vector<MatC> x{MatC::Identity(st.site(i).chi_left(), st.site(i).chi_left())};
  for (int k = i; k < j; ++k) {
    std::vector<MatC> next(x.size() * 2);
    for (std::size_t p = 0; p < x.size(); ++p)
      for (int s = 0; s < 2; ++s) next[2 * p + s].noalias() = x[p] * st.site(k).m[s];
    x = std::move(next);
  }
  const Eigen::Index dim = Eigen::Index(1) << m;
  MatC flat(dim, x[0].size());
  for (Eigen::Index p = 0; p < dim; ++p)
    flat.row(p) = Eigen::Map<const VecC>(x[p].data(), x[p].size());
  MatC rho = flat * flat.adjoint();
  Eigen::SelfAdjointEigenSolver<MatC> es(rho, Eigen::EigenvaluesOnly);
  double z = 0.0;
  for (double p : es.eigenvalues())
    if (p > 0) z += std::pow(p, order);
  return z;
}

}  // namespace

double rdm_purity(const Mps& state, const std::vector<int>& region, int renyi_order,
                  std::size_t mem_budget) {
  if (renyi_order < 2) throw ValidationError("rdm_purity: order must be >= 2");
  const int length = state.length();
  std::vector<bool> member(length, false);
  for (int site : region) {
    if (site < 0 || site >= length) throw ValidationError("region site out of range");
    member[site] = true;
  }
  int count = 0;
  for (bool b : member) count += b;
  if (count == 0 || count == length) return 1.0;

  int first = 0, last = length - 1;
  while (!member[first]) ++first;
  while (!member[last]) --last;
  const bool contiguous = (last - first + 1) == count;

  // Boundary-contiguous regions follow from a single cut's Schmidt values.
  if (contiguous && (first == 0 || last == length - 1)) {
    const int bond = (first == 0) ? last : first - 1;
    const Mps* st = &state;
    Mps canon;
    if (!state.lambdas_valid(bond)) {
      canon = canonicalize(state, 0);
      st = &canon;
    }
    double z = 0.0;
    for (double lam : st->bond_singular_values(bond))
      if (lam >= kSingularZero) z += std::pow(lam * lam, double(renyi_order));
    return z;
  }

  if (contiguous) {
    Mps st = canonicalize(state, first);
    if (renyi_order == 2) return purity_contiguous2(st, first, last + 1, mem_budget);
    return purity_dense_contiguous(st, first, last + 1, renyi_order, mem_budget);
  }

  // For a pure global state, complementary regions share every Renyi entropy.
  std::vector<int> complement;
  for (int j = 0; j < length; ++j)
    if (!member[j]) complement.push_back(j);
  int cfirst = complement.front(), clast = complement.back();
  if ((clast - cfirst + 1) == static_cast<int>(complement.size()))
    return rdm_purity(state, complement, renyi_order, mem_budget);

  if (renyi_order != 2)
    throw SizeGuardError(
        "rdm_purity: orders >= 3 need a contiguous region (or complement)");
  Mps st = canonicalize(state, 0);
  return purity_general2(st, member, mem_budget);
}

// --- compression ---------------------------------------------------------

CompressionResult compress_to_chi(const Mps& state, int chi_target, int max_sweeps,
                                  double tol) {
  if (chi_target < 1) throw ValidationError("compress_to_chi: chi_target >= 1");
  Mps psi = canonicalize(state, 0);
  CompressionResult out;
  if (psi.max_bond_dim() <= chi_target) {
    out.state = psi;
    out.fidelity = 1.0;
    out.converged = true;
    return out;
  }
  const int length = psi.length();
  // Seed: plain SVD truncation, left to right.
  Mps phi = psi;
  for (int b = 0; b + 1 < length; ++b) {
    SvdOutcome svd = svd_truncated(stack_tensor(phi.site(b)), chi_target, 0.0);
    phi.site_mut(b) = unstack_tensor(svd.u);
    VecD lam = svd.s / svd.s.norm();
    const MatC carry = lam.asDiagonal() * svd.vdag;
    for (int s = 0; s < 2; ++s)
      phi.site_mut(b + 1).m[s] = (carry * phi.site(b + 1).m[s]).eval();
    phi.set_center(b + 1);
  }
  phi.invalidate_lambdas();
  {
    const double n = frob_norm(phi.site(length - 1));
    for (int s = 0; s < 2; ++s) phi.site_mut(length - 1).m[s] /= n;
  }
  if (max_sweeps == 0) {
    out.state = canonicalize(phi, 0);
    out.fidelity = std::norm(overlap(phi, psi));
    return out;
  }

  // One-site fitting sweeps; fidelity is |<phi|psi>|^2 and never decreases.
  std::vector<MatC> lo(length), ro(length);
  auto lo_at = [&](int j) -> MatC {
    MatC env = (j == 0) ? MatC::Ones(1, 1) : lo[j - 1];
    MatC next = MatC::Zero(phi.site(j).chi_right(), psi.site(j).chi_right());
    for (int s = 0; s < 2; ++s)
      next.noalias() += phi.site(j).m[s].adjoint() * env * psi.site(j).m[s];
    return next;
  };
  auto ro_at = [&](int j) -> MatC {
    MatC env = (j == length - 1) ? MatC::Ones(1, 1) : ro[j + 1];
    MatC next = MatC::Zero(psi.site(j).chi_left(), phi.site(j).chi_left());
    for (int s = 0; s < 2; ++s)
      next.noalias() += psi.site(j).m[s] * env * phi.site(j).m[s].adjoint();
    return next;
  };
  for (int j = 0; j + 1 < length; ++j) lo[j] = lo_at(j);

  double fid = 0.0, prev_fid = -1.0;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    // Right-to-left.
    for (int j = length - 1; j >= 0; --j) {
      const MatC left = (j == 0) ? MatC::Ones(1, 1) : lo[j - 1];
      const MatC right = (j == length - 1) ? MatC::Ones(1, 1) : ro[j + 1];
      double g2 = 0.0;
      for (int s = 0; s < 2; ++s) {
        phi.site_mut(j).m[s].noalias() = left * psi.site(j).m[s] * right;
        g2 += phi.site(j).m[s].squaredNorm();
      }
      const double g = std::sqrt(g2);
      for (int s = 0; s < 2; ++s) phi.site_mut(j).m[s] /= g;
      fid = g2;
      if (j > 0) {
        MatC r;
        const MatC q = thin_qr(widen_tensor(phi.site(j)).adjoint(), r);
        phi.site_mut(j) = unwiden_tensor(q.adjoint());
        ro[j] = ro_at(j);
      }
    }
    phi.set_center(0);
    // Left-to-right.
    for (int j = 0; j < length; ++j) {
      const MatC left = (j == 0) ? MatC::Ones(1, 1) : lo[j - 1];
      const MatC right = (j == length - 1) ? MatC::Ones(1, 1) : ro[j + 1];
      double g2 = 0.0;
      for (int s = 0; s < 2; ++s) {
        phi.site_mut(j).m[s].noalias() = left * psi.site(j).m[s] * right;
        g2 += phi.site(j).m[s].squaredNorm();
      }
      const double g = std::sqrt(g2);
      for (int s = 0; s < 2; ++s) phi.site_mut(j).m[s] /= g;
      fid = g2;
      if (j + 1 < length) {
        MatC r;
        const MatC q = thin_qr(stack_tensor(phi.site(j)), r);
        phi.site_mut(j) = unstack_tensor(q);
        lo[j] = lo_at(j);
      }
    }
    phi.set_center(length - 1);
    if (std::abs(fid - prev_fid) < tol) {
      ++sweep;
      break;
    }
    prev_fid = fid;
  }
  phi.invalidate_lambdas();
  out.state = canonicalize(phi, 0);
  out.fidelity = fid;
  out.converged = std::abs(fid - prev_fid) < tol;
  out.sweeps = sweep;
  return out;
}

// --- dense conversion ----------------------------------------------------

VecC mps_to_dense(const Mps& state) {
  const int length = state.length();
  if (length > 20) throw SizeGuardError("mps_to_dense: L > 20");
  MatC acc = MatC::Ones(1, 1);
  for (int j = 0; j < length; ++j) {
    const SiteTensor& a = state.site(j);
    MatC next(acc.rows() * 2, a.chi_right());
    for (int s = 0; s < 2; ++s) {
      MatC part = acc * a.m[s];  // (rows x chi_r)
      for (Eigen::Index rr = 0; rr < acc.rows(); ++rr) next.row(2 * rr + s) = part.row(rr);
    }
    acc = std::move(next);
  }
  return VecC(acc.col(0));
}

Mps mps_from_dense(const VecC& psi, int length) {
  if ((Eigen::Index(1) << length) != psi.size())
    throw ValidationError("mps_from_dense: dimension is not 2^L");
  std::vector<SiteTensor> sites(length);
  MatC cur = psi.transpose();  // (1 x 2^L), cols ordered with site 0 major
  Eigen::Index chi_l = 1;
  for (int j = 0; j + 1 < length; ++j) {
    const Eigen::Index rest = cur.cols() / 2;
    MatC m(chi_l * 2, rest);
    for (Eigen::Index l = 0; l < chi_l; ++l)
      for (int s = 0; s < 2; ++s)
        m.row(2 * l + s) = cur.row(l).segment(s * rest, rest);
    SvdOutcome svd = svd_truncated(m, 0, 0.0);
    const Eigen::Index k = svd.s.size();
    for (int s = 0; s < 2; ++s) {
      sites[j].m[s].resize(chi_l, k);
      for (Eigen::Index l = 0; l < chi_l; ++l) sites[j].m[s].row(l) = svd.u.row(2 * l + s);
    }
    cur = svd.s.asDiagonal() * svd.vdag;
    chi_l = k;
  }
  for (int s = 0; s < 2; ++s) {
    sites[length - 1].m[s].resize(chi_l, 1);
    const Eigen::Index rest = 1;
    for (Eigen::Index l = 0; l < chi_l; ++l)
      sites[length - 1].m[s](l, 0) = cur(l, s * rest);
  }
  return canonicalize(Mps(std::move(sites), length - 1), 0);
}

}  // namespace camps
