#include "camps/magic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "camps/exact.hpp"

namespace camps {

namespace {

constexpr int kMaxExactQubits = 12;

double vec_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

// Jackknife error of -log(mean).
double jackknife_neglog_mean(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  if (n < 2) return 0.0;
  double total = 0.0;
  for (double v : x) total += v;
  std::vector<double> theta(n);
  for (int i = 0; i < n; ++i) theta[i] = -std::log((total - x[i]) / double(n - 1));
  const double mean = vec_mean(theta);
  double var = 0.0;
  for (double t : theta) var += (t - mean) * (t - mean);
  return std::sqrt(var * double(n - 1) / double(n));
}

}  // namespace

// --- exact transforms ---------------------------------------------------

VecD pauli_coefficients(const MatC& rho, int n_qubits) {
  if (n_qubits > kMaxExactQubits)
    throw SizeGuardError("pauli_coefficients: more than 12 qubits");
  const std::uint64_t dim = 1ULL << n_qubits;
  if (rho.rows() != Eigen::Index(dim)) throw ValidationError("rho dimension mismatch");
  // Interleaved layout: two bits per site, (s_j t_j), site 0 most significant.
  std::vector<std::uint64_t> spread(dim, 0);
  for (std::uint64_t s = 0; s < dim; ++s) {
    std::uint64_t out = 0;
    for (int j = 0; j < n_qubits; ++j)
      if (s & (1ULL << j)) out |= 1ULL << (2 * j);
    spread[s] = out;
  }
  std::vector<Cplx> work(dim * dim);
  for (std::uint64_t s = 0; s < dim; ++s)
    for (std::uint64_t t = 0; t < dim; ++t)
      work[(spread[s] << 1) | spread[t]] = rho(s, t);
  // Per-site transform (s_j, t_j) -> Pauli letter slot {I, X, Y, Z}.
  const Cplx im(0, 1);
  for (int j = 0; j < n_qubits; ++j) {
    const std::uint64_t step = 1ULL << (2 * j);
    const std::uint64_t groups = (dim * dim) >> 2;
    for (std::uint64_t g = 0; g < groups; ++g) {
      const std::uint64_t low = g & (step - 1);
      const std::uint64_t idx = ((g >> (2 * j)) << (2 * j + 2)) | low;
      const Cplx e0 = work[idx], e1 = work[idx + step], e2 = work[idx + 2 * step],
                 e3 = work[idx + 3 * step];
      work[idx] = e0 + e3;                    // I
      work[idx + step] = e1 + e2;             // X
      work[idx + 2 * step] = im * (e1 - e2);  // Y
      work[idx + 3 * step] = e0 - e3;         // Z
    }
  }
  // Reorder from per-site little-endian slots to site-0-major string codes.
  VecD out(Eigen::Index(1) << (2 * n_qubits));
  for (std::uint64_t code = 0; code < (dim * dim); ++code) {
    std::uint64_t rev = 0;
    for (int j = 0; j < n_qubits; ++j)
      rev |= ((code >> (2 * j)) & 3ULL) << (2 * (n_qubits - 1 - j));
    out[rev] = std::real(work[code]);
  }
  return out;
}

MatC mps_dense_rdm(const Mps& state, const std::vector<int>& region) {
  if (region.empty()) throw ValidationError("empty region");
  std::vector<int> sorted = region;
  std::sort(sorted.begin(), sorted.end());
  if (std::unique(sorted.begin(), sorted.end()) != sorted.end())
    throw ValidationError("duplicate region site");
  const int m = static_cast<int>(sorted.size());
  if (m > kMaxExactQubits) throw SizeGuardError("region larger than 12 qubits");
  const bool contiguous = sorted.back() - sorted.front() + 1 == m;
  if (contiguous) {
    Mps st = canonicalize(state, sorted.front());
    std::vector<MatC> x{
        MatC::Identity(st.site(sorted.front()).chi_left(),
                       st.site(sorted.front()).chi_left())};
    for (int k = sorted.front(); k <= sorted.back(); ++k) {
      std::vector<MatC> next(x.size() * 2);
      for (std::size_t p = 0; p < x.size(); ++p)
        for (int s = 0; s < 2; ++s) next[2 * p + s].noalias() = x[p] * st.site(k).m[s];
      x = std::move(next);
    }
    const Eigen::Index dim = Eigen::Index(1) << m;
    MatC flat(dim, x[0].size());
    for (Eigen::Index p = 0; p < dim; ++p)
      flat.row(p) = Eigen::Map<const VecC>(x[p].data(), x[p].size());
    return flat * flat.adjoint();
  }
  if (state.length() > 14)
    throw SizeGuardError("disconnected regions need L <= 14 for the dense route");
  return exact::dense_rdm(mps_to_dense(state), state.length(), sorted);
}

MagicReport sre_exact(const Mps& state, int renyi_index) {
  const int length = state.length();
  if (length > kMaxExactQubits)
    throw SizeGuardError("sre_exact: L > 12; use sre_sample");
  if (renyi_index < 1) throw ValidationError("sre_exact: Renyi index >= 1");
  const VecC psi = mps_to_dense(canonicalize(state, 0));
  const MatC rho = psi * psi.adjoint();
  const VecD c = pauli_coefficients(rho, length);
  MagicReport report;
  report.estimator = MagicEstimator::Exact;
  report.renyi_index = renyi_index;
  report.n_qubits = length;
  const double norm = std::pow(2.0, -length);
  if (renyi_index == 1) {
    double acc = 0.0;
    for (double v : c) {
      const double xi = v * v * norm;
      if (xi > 0) acc -= xi * std::log(xi);
    }
    report.value = acc - length * std::log(2.0);
  } else {
    double acc = 0.0;
    for (double v : c) acc += std::pow(v * v, renyi_index) * norm;
    report.value = std::log(acc) / (1.0 - renyi_index);
  }
  return report;
}

MagicReport sre_mixed_exact(const Mps& state, const std::vector<int>& region) {
  const MatC rho = mps_dense_rdm(state, region);
  const int m = static_cast<int>(std::round(std::log2(double(rho.rows()))));
  const VecD c = pauli_coefficients(rho, m);
  double sum2 = 0.0, sum4 = 0.0;
  for (double v : c) {
    sum2 += v * v;
    sum4 += v * v * v * v;
  }
  MagicReport report;
  report.estimator = MagicEstimator::Exact;
  report.renyi_index = 2;
  report.n_qubits = m;
  report.value = -std::log(sum4 / sum2);
  return report;
}

// --- perfect Pauli sampling ----------------------------------------------

namespace {

struct SampleOutcome {
  double weight = 0.0;  // <P>^2
  double norm_defect = 0.0;
  bool resampled = false;
};

// One perfect sample from Xi_P = <P>^2 / 2^L; requires a right-normalized
// state so the marginalized future contracts to a crossing delta.
SampleOutcome draw_pauli_sample(const Mps& st, std::uint64_t seed) {
  SampleOutcome out;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::mt19937_64 rng(mix_seed(seed, attempt));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    MatC env = MatC::Ones(1, 1);
    double w_prev = 1.0;
    bool dead = false;
    for (int j = 0; j < st.length() && !dead; ++j) {
      const SiteTensor& a = st.site(j);
      std::array<MatC, 2> half;
      for (int s = 0; s < 2; ++s) half[s].noalias() = env * a.m[s];
      std::array<MatC, 4> c;  // c[2t+s] = A^t(dag) half[s]
      for (int t = 0; t < 2; ++t)
        for (int s = 0; s < 2; ++s) c[2 * t + s].noalias() = a.m[t].adjoint() * half[s];
      std::array<MatC, 4> cand;
      cand[0] = c[0] + c[3];                    // I
      cand[1] = c[1] + c[2];                    // X
      cand[2] = Cplx(0, 1) * (c[2] - c[1]);     // Y: -i c01 + i c10
      cand[3] = c[0] - c[3];                    // Z
      std::array<double, 4> w;
      double total = 0.0;
      for (int p = 0; p < 4; ++p) {
        w[p] = cand[p].squaredNorm();  // Tr(E^2) for Hermitian E
        total += w[p];
      }
      if (!(total > 1e-300) || !std::isfinite(total)) {
        dead = true;
        break;
      }
      out.norm_defect = std::max(out.norm_defect,
                                 std::abs(total / (2.0 * w_prev) - 1.0));
      const double r = uni(rng) * total;
      int pick = 0;
      double acc = w[0];
      while (pick < 3 && r > acc) acc += w[++pick];
      env = std::move(cand[pick]);
      w_prev = w[pick];
    }
    if (!dead) {
      out.weight = w_prev;  // Tr(E^2) of a 1x1 env = <P>^2
      return out;
    }
    out.resampled = true;
  }
  throw std::runtime_error("pauli sampling: repeated dead conditionals");
}

}  // namespace

MagicReport sre_sample(const Mps& state, int n_samples, std::uint64_t seed, int threads) {
  if (n_samples < 2) throw ValidationError("sre_sample: need at least 2 samples");
  const Mps st = canonicalize(state, 0);
  std::vector<double> values(n_samples, 0.0);
  std::vector<char> resampled(n_samples, 0);
  std::vector<double> defects(n_samples, 0.0);
  std::atomic<int> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const int i = cursor.fetch_add(1);
      if (i >= n_samples) return;
      SampleOutcome s = draw_pauli_sample(st, mix_seed(seed, std::uint64_t(i)));
      values[i] = s.weight;
      resampled[i] = s.resampled;
      defects[i] = s.norm_defect;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  MagicReport report;
  report.estimator = MagicEstimator::PerfectSampling;
  report.renyi_index = 2;
  report.n_qubits = st.length();
  report.n_samples = n_samples;
  report.value = -std::log(vec_mean(values));
  report.std_error = jackknife_neglog_mean(values);
  for (int i = 0; i < n_samples; ++i) {
    report.resample_flag |= resampled[i] != 0;
    report.max_normalization_error = std::max(report.max_normalization_error, defects[i]);
  }
  return report;
}

MagicReport local_magic_chi2(const Mps& state, int n_samples, std::uint64_t seed,
                             int threads) {
  CompressionResult compressed = compress_to_chi(state, 2, 8);
  MagicReport report = sre_sample(compressed.state, n_samples, seed, threads);
  report.compression_fidelity = compressed.fidelity;
  return report;
}

// --- Pauli-Markov chains ---------------------------------------------------

namespace {

// Metropolis chain over Pauli strings on `region` with stationary law
// pi(P) ~ Tr(rho_R P)^2, evaluated through MPS transfer environments with a
// valid-prefix / valid-suffix cache. The state must be canonicalized with
// its center at the first span site.
class PauliChain {
 public:
  PauliChain(const Mps& st, const std::vector<int>& region, std::uint64_t seed)
      : st_(&st), rng_(seed) {
    region_ = region;
    std::sort(region_.begin(), region_.end());
    s0_ = region_.front();
    span_ = region_.back() - s0_ + 1;
    if (st.canonical_center() != s0_)
      throw ValidationError("PauliChain: center must sit at the span start");
    letters_.assign(span_, Pauli::I);
    lenv_.assign(span_ + 1, MatC());
    renv_.assign(span_ + 1, MatC());
    const Eigen::Index chi0 = st.site(s0_).chi_left();
    const Eigen::Index chi1 = st.site(s0_ + span_ - 1).chi_right();
    lenv_[0] = MatC::Identity(chi0, chi0);
    renv_[span_] = MatC::Identity(chi1, chi1);
    lp_ = 0;
    rp_ = span_;
    amp_ = 1.0;  // all-identity string on a normalized state
  }

  void step() {
    ++proposals_;
    const int k = (rng_() & 1) ? 1 : 2;
    int i1 = region_[pick_site_(rng_, region_.size())] - s0_;
    int i2 = i1;
    if (k == 2) {
      do {
        i2 = region_[pick_site_(rng_, region_.size())] - s0_;
      } while (i2 == i1 && region_.size() > 1);
    }
    if (i2 < i1) std::swap(i1, i2);
    const Pauli n1 = static_cast<Pauli>(rng_() & 3);
    const Pauli n2 = static_cast<Pauli>(rng_() & 3);
    if (n1 == letters_[i1] && (k == 1 || n2 == letters_[i2])) {
      ++accepted_;  // proposal equals the current string
      return;
    }
    ensure_left(i1);
    ensure_right(i2 + 1);
    // Walk the modified stretch, keeping the partial environments.
    scratch_.resize(i2 + 1 - i1);
    MatC cur = lenv_[i1];
    for (int i = i1; i <= i2; ++i) {
      Pauli letter = letters_[i];
      if (i == i1) letter = n1;
      if (i == i2 && k == 2) letter = n2;
      if (i == i1 && i == i2) letter = n1;
      cur = transfer(cur, i, letter);
      scratch_[i - i1] = cur;
    }
    const double amp_new = std::real((cur * renv_[i2 + 1]).trace());
    const double ratio = (amp_ == 0.0) ? 1.0 : (amp_new * amp_new) / (amp_ * amp_);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    if (ratio >= 1.0 || uni(rng_) < ratio) {
      ++accepted_;
      letters_[i1] = n1;
      if (k == 2) letters_[i2] = n2;
      for (int i = i1; i <= i2; ++i) lenv_[i + 1] = scratch_[i - i1];
      lp_ = i2 + 1;
      rp_ = std::max(rp_, i2 + 1);
      amp_ = amp_new;
    }
  }

  double observable() const { return amp_ * amp_; }  // Tr(rho_R P)^2
  double acceptance() const {
    return proposals_ > 0 ? double(accepted_) / double(proposals_) : 0.0;
  }

 private:
  MatC transfer(const MatC& env, int i, Pauli letter) const {
    const SiteTensor& a = st_->site(s0_ + i);
    const Mat2& sigma = pauli_matrix(letter);
    MatC next = MatC::Zero(a.chi_right(), a.chi_right());
    for (int t = 0; t < 2; ++t)
      for (int s = 0; s < 2; ++s) {
        if (sigma(t, s) == Cplx(0.0)) continue;
        next.noalias() += sigma(t, s) * (a.m[t].adjoint() * env * a.m[s]);
      }
    return next;
  }

  void ensure_left(int target) {  // make lenv_[target] valid
    for (; lp_ < target; ++lp_) lenv_[lp_ + 1] = transfer(lenv_[lp_], lp_, letters_[lp_]);
  }
  void ensure_right(int target) {  // make renv_[target] valid
    for (; rp_ > target; --rp_) {
      const int i = rp_ - 1;
      const SiteTensor& a = st_->site(s0_ + i);
      const Mat2& sigma = pauli_matrix(letters_[i]);
      MatC next = MatC::Zero(a.chi_left(), a.chi_left());
      for (int t = 0; t < 2; ++t)
        for (int s = 0; s < 2; ++s) {
          if (sigma(t, s) == Cplx(0.0)) continue;
          next.noalias() += sigma(t, s) * (a.m[s] * renv_[rp_] * a.m[t].adjoint());
        }
      renv_[i] = std::move(next);
    }
  }

  static std::size_t pick_site_(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }

  const Mps* st_;
  std::vector<int> region_;
  int s0_ = 0, span_ = 0;
  std::vector<Pauli> letters_;
  std::vector<MatC> lenv_, renv_, scratch_;
  int lp_ = 0, rp_ = 0;
  double amp_ = 1.0;
  long proposals_ = 0, accepted_ = 0;
  std::mt19937_64 rng_;
};

struct RegionEstimate {
  double mean = 0.0;
  double err = 0.0;
  double acceptance = 0.0;
  long n_samples = 0;
};

RegionEstimate run_chains(const Mps& gauged, const std::vector<int>& region,
                          const MutualSreOptions& opts, std::uint64_t region_salt) {
  const int replicas = opts.n_chains;
  std::vector<std::vector<double>> samples(replicas);
  std::vector<double> acceptance(replicas, 0.0);
  std::atomic<int> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const int r = cursor.fetch_add(1);
      if (r >= replicas) return;
      PauliChain chain(gauged, region, mix_seed(opts.seed, region_salt * 1000 + r));
      for (int i = 0; i < opts.burn_in; ++i) chain.step();
      auto& out = samples[r];
      out.reserve(opts.n_samples);
      for (int i = 0; i < opts.n_samples; ++i) {
        for (int t = 0; t < opts.thinning; ++t) chain.step();
        out.push_back(chain.observable());
      }
      acceptance[r] = chain.acceptance();
    }
  };
  const int nthreads = std::max(1, std::min(opts.threads, replicas));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  // Batch means across all chains.
  std::vector<double> batch_means;
  double grand = 0.0;
  long count = 0;
  for (const auto& chain_samples : samples) {
    const int per_batch = std::max<int>(1, int(chain_samples.size()) / opts.n_batches);
    for (std::size_t start = 0; start + per_batch <= chain_samples.size();
         start += per_batch) {
      double acc = 0.0;
      for (int i = 0; i < per_batch; ++i) acc += chain_samples[start + i];
      batch_means.push_back(acc / per_batch);
    }
    for (double v : chain_samples) grand += v;
    count += long(chain_samples.size());
  }
  RegionEstimate est;
  est.mean = grand / double(count);
  est.n_samples = count;
  double var = 0.0;
  if (batch_means.size() >= 2) {
    for (double b : batch_means) var += (b - est.mean) * (b - est.mean);
    var /= double(batch_means.size() - 1);
    var /= double(batch_means.size());
  }
  est.err = std::sqrt(var);
  est.acceptance = vec_mean(acceptance);
  return est;
}

}  // namespace

MutualSreReport mutual_sre(const Mps& state, std::vector<int> region_a,
                           std::vector<int> region_b, const MutualSreOptions& opts) {
  std::sort(region_a.begin(), region_a.end());
  std::sort(region_b.begin(), region_b.end());
  for (int site : region_a)
    if (std::binary_search(region_b.begin(), region_b.end(), site))
      throw ValidationError("mutual_sre: regions overlap");
  std::vector<int> region_ab = region_a;
  region_ab.insert(region_ab.end(), region_b.begin(), region_b.end());
  std::sort(region_ab.begin(), region_ab.end());

  MutualSreReport report;
  report.region_a = region_a;
  report.region_b = region_b;

  // Exact Renyi-2 mutual information from purities.
  const double pur_a = rdm_purity(state, region_a);
  const double pur_b = rdm_purity(state, region_b);
  const double pur_ab = rdm_purity(state, region_ab);
  report.i_ab = -std::log(pur_a) - std::log(pur_b) + std::log(pur_ab);

  // Markov estimates of E_pi[Tr(rho P)^2] per region.
  const std::array<const std::vector<int>*, 3> regions = {&region_a, &region_b,
                                                          &region_ab};
  std::array<RegionEstimate, 3> est;
  for (int r = 0; r < 3; ++r) {
    Mps gauged = canonicalize(state, regions[r]->front());
    est[r] = run_chains(gauged, *regions[r], opts, std::uint64_t(r + 1));
    report.chains[r].acceptance = est[r].acceptance;
    report.chains[r].acceptance_flag =
        est[r].acceptance < 0.1 || est[r].acceptance > 0.7;
    report.chains[r].mean = est[r].mean;
    report.chains[r].mean_error = est[r].err;
    report.n_samples_total += est[r].n_samples;
  }

  // W = -log(D4(A) D4(B) / D4(AB)) with D4 = D2 * E_pi and the 2^N factors
  // of D2 cancelling between numerator and denominator.
  report.w_ab = report.i_ab -
                (std::log(est[0].mean) + std::log(est[1].mean) - std::log(est[2].mean));
  report.l_ab = report.i_ab - report.w_ab;
  double var = 0.0;
  for (int r = 0; r < 3; ++r) {
    const double rel = est[r].err / est[r].mean;
    var += rel * rel;
  }
  report.w_ab_err = std::sqrt(var);
  report.l_ab_err = report.w_ab_err;
  return report;
}

}  // namespace camps
