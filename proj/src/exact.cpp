#include "camps/exact.hpp"

#include <bit>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace camps::exact {

namespace {

// P|s> = factor(s) |s ^ xmask>. Masks use bit (L-1-j) for site j.
struct PauliMasks {
  std::uint64_t xmask = 0;   // letters X, Y flip the bit
  std::uint64_t zymask = 0;  // letters Z, Y pick up (-1)^bit
  Cplx base = 1.0;           // i^(phase + #Y)
};

PauliMasks make_masks(int length, const PauliString& p) {
  if (p.size() != length) throw ValidationError("Pauli string length mismatch");
  PauliMasks m;
  int k = p.phase_pow();
  for (int j = 0; j < length; ++j) {
    const std::uint64_t bit = 1ULL << (length - 1 - j);
    switch (p.letter(j)) {
      case Pauli::I: break;
      case Pauli::X: m.xmask |= bit; break;
      case Pauli::Y: m.xmask |= bit; m.zymask |= bit; k += 1; break;
      case Pauli::Z: m.zymask |= bit; break;
    }
  }
  static const Cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  m.base = ipow[k % 4];
  return m;
}

inline double sign_of(std::uint64_t b, std::uint64_t mask) {
  return (std::popcount(b & mask) & 1) ? -1.0 : 1.0;
}

void append_nn(std::vector<Term>& terms, int length, double coeff, Pauli a, Pauli b) {
  for (int i = 0; i + 1 < length; ++i)
    terms.push_back({coeff, {{i, a}, {i + 1, b}}});
}

void append_three(std::vector<Term>& terms, int length, double coeff, Pauli a, Pauli b,
                  Pauli c) {
  for (int i = 0; i + 2 < length; ++i)
    terms.push_back({coeff, {{i, a}, {i + 1, b}, {i + 2, c}}});
}

void append_field(std::vector<Term>& terms, int length, double coeff, Pauli a) {
  for (int i = 0; i < length; ++i) terms.push_back({coeff, {{i, a}}});
}

}  // namespace

std::vector<Term> hamiltonian_terms(const ModelSpec& spec) {
  spec.validate();
  const int length = spec.length;
  std::vector<Term> terms;
  switch (spec.family) {
    case ModelFamily::XXZ: {
      const double jz = spec.require("Jz");
      append_nn(terms, length, -0.25, Pauli::X, Pauli::X);
      append_nn(terms, length, -0.25, Pauli::Y, Pauli::Y);
      append_nn(terms, length, -0.25 * jz, Pauli::Z, Pauli::Z);
      break;
    }
    case ModelFamily::TCI: {
      const double lambda = spec.require("lambda");
      append_nn(terms, length, -1.0, Pauli::Z, Pauli::Z);
      append_field(terms, length, -1.0, Pauli::X);
      append_three(terms, length, lambda, Pauli::X, Pauli::Z, Pauli::Z);
      append_three(terms, length, lambda, Pauli::Z, Pauli::Z, Pauli::X);
      break;
    }
    case ModelFamily::Cluster1: {
      const double h = spec.require("h");
      append_three(terms, length, -1.0, Pauli::X, Pauli::Z, Pauli::X);
      append_field(terms, length, h, Pauli::Z);
      break;
    }
    case ModelFamily::Cluster2: {
      const double h = spec.require("h"), d = spec.require("D");
      append_three(terms, length, -1.0, Pauli::X, Pauli::Z, Pauli::X);
      append_field(terms, length, h, Pauli::Z);
      append_nn(terms, length, d, Pauli::Z, Pauli::Z);
      break;
    }
    case ModelFamily::Cluster3: {
      const double v = spec.require("V");
      append_three(terms, length, -1.0, Pauli::X, Pauli::Z, Pauli::X);
      append_nn(terms, length, v, Pauli::Y, Pauli::Y);
      break;
    }
    case ModelFamily::IsingTF: {
      const double h = spec.require("h");
      append_nn(terms, length, -1.0, Pauli::Z, Pauli::Z);
      append_field(terms, length, -h, Pauli::X);
      break;
    }
  }
  return terms;
}

MatC dense_hamiltonian(const ModelSpec& spec) {
  if (spec.length > 10) throw SizeGuardError("dense_hamiltonian: L > 10");
  const Eigen::Index dim = Eigen::Index(1) << spec.length;
  MatC h = MatC::Zero(dim, dim);
  for (const Term& term : hamiltonian_terms(spec)) {
    MatC acc = MatC::Constant(1, 1, term.coeff);
    for (int j = 0; j < spec.length; ++j) {
      Mat2 op = Mat2::Identity();
      for (const auto& [site, letter] : term.factors)
        if (site == j) op = pauli_matrix(letter);
      MatC next(acc.rows() * 2, acc.cols() * 2);
      for (Eigen::Index r = 0; r < acc.rows(); ++r)
        for (Eigen::Index c = 0; c < acc.cols(); ++c)
          next.block(2 * r, 2 * c, 2, 2) = acc(r, c) * op;
      acc = std::move(next);
    }
    h += acc;
  }
  return h;
}

void apply_terms(const std::vector<Term>& terms, int length, const VecC& x, VecC& y) {
  const std::uint64_t dim = 1ULL << length;
  for (const Term& term : terms) {
    PauliString p(length);
    for (const auto& [site, letter] : term.factors) p.set_letter(site, letter);
    const PauliMasks m = make_masks(length, p);
    const Cplx pref = term.coeff * m.base;
    for (std::uint64_t b = 0; b < dim; ++b)
      y[b ^ m.xmask] += pref * sign_of(b, m.zymask) * x[b];
  }
}

VecC apply_pauli(const VecC& psi, int length, const PauliString& p) {
  const PauliMasks m = make_masks(length, p);
  const std::uint64_t dim = 1ULL << length;
  VecC out(dim);
  for (std::uint64_t b = 0; b < dim; ++b)
    out[b ^ m.xmask] = m.base * sign_of(b, m.zymask) * psi[b];
  return out;
}

Cplx pauli_expectation(const VecC& psi, int length, const PauliString& p) {
  const PauliMasks m = make_masks(length, p);
  const std::uint64_t dim = 1ULL << length;
  Cplx acc = 0.0;
  for (std::uint64_t b = 0; b < dim; ++b)
    acc += std::conj(psi[b ^ m.xmask]) * sign_of(b, m.zymask) * psi[b];
  return m.base * acc;
}

GroundState lanczos_ground(const std::function<void(const VecC&, VecC&)>& matvec,
                           Eigen::Index dim, const VecC& start, double tol, int max_iter) {
  GroundState out;
  std::vector<VecC> basis;
  std::vector<double> alphas, betas;
  VecC v = start.normalized();
  VecC w(dim);
  double prev_eval = 0.0;
  const int m_max = std::min<Eigen::Index>(max_iter, dim);
  for (int it = 0; it < m_max; ++it) {
    basis.push_back(v);
    w.setZero();
    matvec(v, w);
    if (it > 0) w -= betas.back() * basis[it - 1];
    double alpha = std::real(v.dot(w));
    w -= alpha * v;
    // Full reorthogonalization, twice.
    for (int pass = 0; pass < 2; ++pass)
      for (const VecC& b : basis) w -= b.dot(w) * b;
    alphas.push_back(alpha);
    const int k = static_cast<int>(alphas.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      tri(i, i) = alphas[i];
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = betas[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const double eval = es.eigenvalues()(0);
    const double beta = w.norm();
    const double resid = beta * std::abs(es.eigenvectors()(k - 1, 0));
    if ((it > 0 && resid < tol && std::abs(eval - prev_eval) < tol) || beta < 1e-14 ||
        it == m_max - 1) {
      out.energy = eval;
      out.psi = VecC::Zero(dim);
      for (int i = 0; i < k; ++i) out.psi += es.eigenvectors()(i, 0) * basis[i];
      out.psi.normalize();
      out.converged = resid < tol || beta < 1e-14;
      out.iterations = it + 1;
      break;
    }
    prev_eval = eval;
    betas.push_back(beta);
    v = w / beta;
  }
  // Global phase: first non-negligible amplitude made real positive.
  const double big = out.psi.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (std::abs(out.psi[i]) > 1e-8 * big) {
      out.psi *= std::conj(out.psi[i]) / std::abs(out.psi[i]);
      break;
    }
  }
  return out;
}

GroundState exact_ground_state(const ModelSpec& spec, std::uint64_t seed, double tol,
                               int max_iter) {
  if (spec.length > kMaxDenseQubits)
    throw SizeGuardError("exact_ground_state: L > " + std::to_string(kMaxDenseQubits));
  const auto terms = hamiltonian_terms(spec);
  const Eigen::Index dim = Eigen::Index(1) << spec.length;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  VecC start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) start[i] = Cplx(gauss(rng), gauss(rng));
  auto matvec = [&](const VecC& x, VecC& y) { apply_terms(terms, spec.length, x, y); };
  return lanczos_ground(matvec, dim, start, tol, max_iter);
}

double cut_entropy(const VecC& psi, int length, int cut_sites, double renyi_index) {
  if (cut_sites < 1 || cut_sites >= length) throw ValidationError("cut out of range");
  const Eigen::Index rows = Eigen::Index(1) << cut_sites;
  const Eigen::Index cols = Eigen::Index(1) << (length - cut_sites);
  Eigen::Map<const Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      psi.data(), rows, cols);
  Eigen::JacobiSVD<MatC> svd(m);
  double s = 0.0, z = 0.0;
  for (double lam : svd.singularValues()) {
    const double p = lam * lam;
    if (lam < kSingularZero) continue;
    if (std::abs(renyi_index - 1.0) < 1e-12)
      s -= p * std::log(p);
    else
      z += std::pow(p, renyi_index);
  }
  if (std::abs(renyi_index - 1.0) < 1e-12) return s;
  return std::log(z) / (1.0 - renyi_index);
}

MatC dense_rdm(const VecC& psi, int length, const std::vector<int>& region) {
  const int m = static_cast<int>(region.size());
  if (m > kMaxPauliSumQubits) throw SizeGuardError("dense_rdm: region too large");
  std::vector<bool> in_region(length, false);
  for (int site : region) {
    if (site < 0 || site >= length) throw ValidationError("region site out of range");
    if (in_region[site]) throw ValidationError("duplicate site in region");
    in_region[site] = true;
  }
  // Scatter tables: region bits (in the order given by ascending site index)
  // and environment bits into full basis indices.
  std::vector<int> region_sites, env_sites;
  for (int j = 0; j < length; ++j) (in_region[j] ? region_sites : env_sites).push_back(j);
  const std::uint64_t rdim = 1ULL << m, edim = 1ULL << (length - m);
  std::vector<std::uint64_t> rscatter(rdim), escatter(edim);
  for (std::uint64_t a = 0; a < rdim; ++a) {
    std::uint64_t idx = 0;
    for (int k = 0; k < m; ++k)
      if (a & (1ULL << (m - 1 - k))) idx |= 1ULL << (length - 1 - region_sites[k]);
    rscatter[a] = idx;
  }
  for (std::uint64_t e = 0; e < edim; ++e) {
    std::uint64_t idx = 0;
    for (int k = 0; k < length - m; ++k)
      if (e & (1ULL << (length - m - 1 - k))) idx |= 1ULL << (length - 1 - env_sites[k]);
    escatter[e] = idx;
  }
  MatC rho = MatC::Zero(rdim, rdim);
  for (std::uint64_t e = 0; e < edim; ++e)
    for (std::uint64_t a = 0; a < rdim; ++a) {
      const Cplx va = psi[rscatter[a] | escatter[e]];
      if (va == Cplx(0.0)) continue;
      for (std::uint64_t b = 0; b < rdim; ++b)
        rho(a, b) += va * std::conj(psi[rscatter[b] | escatter[e]]);
    }
  return rho;
}

double entropy_of_rdm(const MatC& rho, double renyi_index) {
  Eigen::SelfAdjointEigenSolver<MatC> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0, z = 0.0;
  for (double p : es.eigenvalues()) {
    if (p < kSingularZero * kSingularZero) continue;
    if (std::abs(renyi_index - 1.0) < 1e-12)
      s -= p * std::log(p);
    else
      z += std::pow(p, renyi_index);
  }
  if (std::abs(renyi_index - 1.0) < 1e-12) return s;
  return std::log(z) / (1.0 - renyi_index);
}

double sre(const VecC& psi, int length, int renyi_index) {
  if (length > kMaxPauliSumQubits) throw SizeGuardError("sre: L > 12");
  if (renyi_index < 1) throw ValidationError("sre: Renyi index must be >= 1");
  const std::uint64_t nstrings = 1ULL << (2 * length);
  PauliString p(length);
  double accum = 0.0;
  const double norm = std::pow(2.0, -length);
  for (std::uint64_t code = 0; code < nstrings; ++code) {
    std::uint64_t c = code;
    for (int j = 0; j < length; ++j) {
      p.set_letter(j, static_cast<Pauli>(c & 3));
      c >>= 2;
    }
    const double ev = std::real(pauli_expectation(psi, length, p));
    const double xi = ev * ev * norm;
    if (renyi_index == 1) {
      if (xi > 0) accum -= xi * std::log(xi);
    } else {
      accum += std::pow(ev * ev, renyi_index) * norm;
    }
  }
  if (renyi_index == 1) return accum - length * std::log(2.0);
  return std::log(accum) / (1.0 - renyi_index);
}

double mixed_sre2(const MatC& rho) {
  const int m = static_cast<int>(std::round(std::log2(static_cast<double>(rho.rows()))));
  if ((Eigen::Index(1) << m) != rho.rows()) throw ValidationError("rho dimension not 2^m");
  if (m > kMaxPauliSumQubits) throw SizeGuardError("mixed_sre2: region > 12 qubits");
  const std::uint64_t nstrings = 1ULL << (2 * m), dim = 1ULL << m;
  PauliString p(m);
  double sum2 = 0.0, sum4 = 0.0;
  for (std::uint64_t code = 0; code < nstrings; ++code) {
    std::uint64_t c = code;
    for (int j = 0; j < m; ++j) {
      p.set_letter(j, static_cast<Pauli>(c & 3));
      c >>= 2;
    }
    const PauliMasks masks = make_masks(m, p);
    Cplx tr = 0.0;
    for (std::uint64_t s = 0; s < dim; ++s)
      tr += rho(s, s ^ masks.xmask) * sign_of(s, masks.zymask);
    tr *= masks.base;
    const double c2 = std::norm(tr);
    sum2 += c2;
    sum4 += c2 * c2;
  }
  return -std::log(sum4 / sum2);
}

MutualSre mutual_sre2(const VecC& psi, int length, const std::vector<int>& region_a,
                      const std::vector<int>& region_b) {
  if (region_a.size() + region_b.size() > kMaxPauliSumQubits)
    throw SizeGuardError("mutual_sre2: |A|+|B| > 12");
  std::vector<int> region_ab = region_a;
  region_ab.insert(region_ab.end(), region_b.begin(), region_b.end());
  const MatC rho_a = dense_rdm(psi, length, region_a);
  const MatC rho_b = dense_rdm(psi, length, region_b);
  const MatC rho_ab = dense_rdm(psi, length, region_ab);
  MutualSre out;
  out.m2_a = mixed_sre2(rho_a);
  out.m2_b = mixed_sre2(rho_b);
  out.m2_ab = mixed_sre2(rho_ab);
  out.l2 = out.m2_ab - out.m2_a - out.m2_b;
  const double pa = std::real((rho_a * rho_a).trace());
  const double pb = std::real((rho_b * rho_b).trace());
  const double pab = std::real((rho_ab * rho_ab).trace());
  out.i2 = -std::log(pa) - std::log(pb) + std::log(pab);
  out.w2 = out.i2 - out.l2;
  return out;
}

}  // namespace camps::exact
