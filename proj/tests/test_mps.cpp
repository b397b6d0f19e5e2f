#include <doctest.h>

#include <cmath>
#include <random>

#include "camps/exact.hpp"
#include "camps/mps.hpp"

using namespace camps;

namespace {

Mat4 cz_gate() {
  Mat4 g = Mat4::Identity();
  g(3, 3) = -1;
  return g;
}

Mat4 swap_gate() {
  Mat4 g = Mat4::Zero();
  g(0, 0) = g(3, 3) = 1;
  g(1, 2) = g(2, 1) = 1;
  return g;
}

Eigen::Vector2cd plus() { return Eigen::Vector2cd(1, 1) / std::sqrt(2.0); }
Eigen::Vector2cd ket0() { return Eigen::Vector2cd(1, 0); }
Eigen::Vector2cd ket1() { return Eigen::Vector2cd(0, 1); }

Mat2 haar_u2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Mat2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = Cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat2> qr(a);
  Mat2 q = qr.householderQ();
  Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 2; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

Mps bell_pair() {
  VecC psi(4);
  psi << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  return mps_from_dense(psi, 2);
}

}  // namespace

TEST_CASE("product states") {
  Mps st = all_zeros(4);
  for (int b = 0; b < 3; ++b)
    CHECK(entanglement_entropy(st, b, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(overlap(st, st) - Cplx(1, 0)) < 1e-14);

  Mps pp = product_state({plus(), plus()});
  CHECK(expectation_pauli(pp, PauliString::parse("XX")) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(product_state({Eigen::Vector2cd(1, 1), ket0()}), ValidationError);
}

TEST_CASE("canonicalize is a gauge transformation") {
  Mps st = random_mps(8, 4, 42);
  CHECK(norm(st) == doctest::Approx(1.0).epsilon(1e-12));
  for (int center : {0, 3, 7}) {
    Mps can = canonicalize(st, center);
    CHECK(can.canonical_center() == center);
    CHECK(std::abs(std::abs(overlap(st, can)) - 1.0) < 1e-10);
    // Isometry conditions on both sides of the center.
    for (int j = 0; j < center; ++j) {
      const auto& t = can.site(j);
      MatC acc = t.m[0].adjoint() * t.m[0] + t.m[1].adjoint() * t.m[1];
      CHECK((acc - MatC::Identity(acc.rows(), acc.cols())).norm() < 1e-10);
    }
    for (int j = center + 1; j < 8; ++j) {
      const auto& t = can.site(j);
      MatC acc = t.m[0] * t.m[0].adjoint() + t.m[1] * t.m[1].adjoint();
      CHECK((acc - MatC::Identity(acc.rows(), acc.cols())).norm() < 1e-10);
    }
  }
}

TEST_CASE("bell pair schmidt values") {
  Mps bell = canonicalize(bell_pair(), 0);
  const VecD& lam = bell.bond_singular_values(0);
  REQUIRE(lam.size() == 2);
  CHECK(lam[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(lam[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(entanglement_entropy(bell, 0, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("entropy requires current singular values") {
  Mps st = random_mps(6, 4, 3);
  GateResult res = apply_two_site_gate(st, 2, cz_gate());
  CHECK_NOTHROW(entanglement_entropy(res.state, 2, 1.0));
  Mps fresh(std::vector<SiteTensor>(
                {st.site(0), st.site(1), st.site(2), st.site(3), st.site(4), st.site(5)}),
            0);
  CHECK_THROWS_AS(entanglement_entropy(fresh, 1, 1.0), StaleCanonicalForm);
}

TEST_CASE("half-chain entropy matches dense diagonalization") {
  ModelSpec spec{ModelFamily::XXZ, 12, {{"Jz", 0.5}}};
  auto gs = exact::exact_ground_state(spec);
  Mps st = mps_from_dense(gs.psi, 12);
  const double s_mps = entanglement_entropy(st, 5, 1.0);
  const double s_ed = exact::cut_entropy(gs.psi, 12, 6, 1.0);
  CHECK(s_mps == doctest::Approx(s_ed).epsilon(1e-8));
  // Renyi-2 as well.
  CHECK(entanglement_entropy(st, 5, 2.0) ==
        doctest::Approx(exact::cut_entropy(gs.psi, 12, 6, 2.0)).epsilon(1e-8));
}

TEST_CASE("two-site gates") {
  SUBCASE("cz entangles plus-plus") {
    Mps pp = product_state({plus(), plus()});
    GateResult res = apply_two_site_gate(pp, 0, cz_gate());
    CHECK(entanglement_entropy(res.state, 0, 1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(res.discarded_weight < 1e-20);
  }
  SUBCASE("identity leaves the state alone") {
    Mps st = random_mps(6, 4, 11);
    GateResult res = apply_two_site_gate(st, 3, Mat4::Identity());
    CHECK(std::abs(std::abs(overlap(st, res.state)) - 1.0) < 1e-12);
  }
  SUBCASE("swap moves product states") {
    Mps st = product_state({ket0(), ket1()});
    GateResult res = apply_two_site_gate(st, 0, swap_gate());
    Mps expect = product_state({ket1(), ket0()});
    CHECK(std::abs(overlap(expect, res.state) - Cplx(1, 0)) < 1e-12);
  }
  SUBCASE("non-unitary gates are rejected") {
    Mat4 g = Mat4::Identity();
    g(0, 0) = 2.0;
    CHECK_THROWS_AS(apply_two_site_gate(all_zeros(3), 0, g), ValidationError);
  }
}

TEST_CASE("pauli expectations") {
  Mps zeros = all_zeros(5);
  PauliString allz(5);
  for (int j = 0; j < 5; ++j) allz.set_letter(j, Pauli::Z);
  CHECK(expectation_pauli(zeros, allz) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(expectation_pauli(zeros, PauliString::parse("XIIII")) ==
        doctest::Approx(0.0).epsilon(1e-14));
  VecC g = VecC::Zero(16);
  g[0] = g[15] = 1.0 / std::sqrt(2.0);
  Mps ghz = mps_from_dense(g, 4);
  CHECK(expectation_pauli(ghz, PauliString::parse("XXXX")) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauge invariance of expectations") {
  Mps st = random_mps(7, 6, 99);
  PauliString p = PauliString::parse("XZIYIZX");
  const double ref = expectation_pauli(st, p);
  for (int center : {0, 2, 6}) {
    Mps can = canonicalize(st, center);
    CHECK(expectation_pauli(can, p) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("local unitaries leave every schmidt spectrum unchanged") {
  std::mt19937_64 rng(5);
  Mps st = canonicalize(random_mps(8, 8, 17), 0);
  std::vector<VecD> before;
  for (int b = 0; b < 7; ++b) before.push_back(st.bond_singular_values(b));
  Mat4 u = Mat4::Zero();
  const Mat2 u1 = haar_u2(rng), u2 = haar_u2(rng);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) u(2 * a + c, 2 * b + d) = u1(a, b) * u2(c, d);
  GateResult res = apply_two_site_gate(st, 3, u, 0, 0.0);
  Mps can = canonicalize(res.state, 0);
  for (int b = 0; b < 7; ++b) {
    const VecD& after = can.bond_singular_values(b);
    REQUIRE(after.size() == before[b].size());
    CHECK((after - before[b]).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("entropy bounded by log chi") {
  Mps st = canonicalize(random_mps(9, 5, 31), 0);
  for (int b = 0; b < 8; ++b)
    CHECK(entanglement_entropy(st, b, 1.0) <= std::log(double(st.bond_dim(b))) + 1e-12);
}

TEST_CASE("rdm purities") {
  SUBCASE("product state") {
    Mps st = all_zeros(6);
    CHECK(rdm_purity(st, {0, 3, 5}) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("bell pair single site") {
    CHECK(rdm_purity(bell_pair(), {0}) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("ground state regions match dense partial traces") {
    ModelSpec spec{ModelFamily::XXZ, 10, {{"Jz", 0.5}}};
    auto gs = exact::exact_ground_state(spec);
    Mps st = mps_from_dense(gs.psi, 10);
    auto purity_ed = [&](const std::vector<int>& region) {
      MatC rho = exact::dense_rdm(gs.psi, 10, region);
      return std::real((rho * rho).trace());
    };
    // Boundary blocks (complement is a contiguous interior block).
    CHECK(rdm_purity(st, {0, 1, 8, 9}) ==
          doctest::Approx(purity_ed({0, 1, 8, 9})).epsilon(1e-8));
    // Interior contiguous.
    CHECK(rdm_purity(st, {3, 4, 5}) == doctest::Approx(purity_ed({3, 4, 5})).epsilon(1e-8));
    // Fully general pattern (complement also disconnected).
    CHECK(rdm_purity(st, {1, 2, 5, 6}) ==
          doctest::Approx(purity_ed({1, 2, 5, 6})).epsilon(1e-8));
    // Renyi-3 on a contiguous region.
    MatC rho = exact::dense_rdm(gs.psi, 10, {3, 4, 5});
    Eigen::SelfAdjointEigenSolver<MatC> es(rho, Eigen::EigenvaluesOnly);
    double z3 = 0.0;
    for (double p : es.eigenvalues())
      if (p > 0) z3 += p * p * p;
    CHECK(rdm_purity(st, {3, 4, 5}, 3) == doctest::Approx(z3).epsilon(1e-8));
  }
  SUBCASE("purity equals exp(-S2) across a cut") {
    Mps st = canonicalize(random_mps(8, 6, 7), 0);
    for (int cut : {2, 4}) {
      std::vector<int> region(cut);
      for (int j = 0; j < cut; ++j) region[j] = j;
      CHECK(rdm_purity(st, region) ==
            doctest::Approx(std::exp(-entanglement_entropy(st, cut - 1, 2.0))).epsilon(1e-10));
    }
  }
  SUBCASE("memory guard") {
    Mps st = random_mps(10, 8, 21);
    CHECK_THROWS_AS(rdm_purity(st, {1, 2, 5, 6}, 2, 1024), SizeGuardError);
  }
}

TEST_CASE("variational compression") {
  SUBCASE("already on the manifold") {
    Mps st = random_mps(8, 2, 13);
    auto res = compress_to_chi(st, 2);
    CHECK(res.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("bell pair to a product state") {
    auto res = compress_to_chi(bell_pair(), 1);
    CHECK(res.fidelity == doctest::Approx(0.5).epsilon(1e-10));
  }
  SUBCASE("beats plain truncation") {
    ModelSpec spec{ModelFamily::TCI, 12, {{"lambda", 0.428}}};
    auto gs = exact::exact_ground_state(spec);
    Mps st = mps_from_dense(gs.psi, 12);
    auto seed_only = compress_to_chi(st, 2, 0);
    auto optimized = compress_to_chi(st, 2, 8);
    CHECK(optimized.fidelity >= seed_only.fidelity - 1e-12);
    CHECK(optimized.fidelity > 0.5);
  }
}

TEST_CASE("dense round trip") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss;
  VecC psi(64);
  for (int i = 0; i < 64; ++i) psi[i] = Cplx(gauss(rng), gauss(rng));
  psi.normalize();
  Mps st = mps_from_dense(psi, 6);
  VecC back = mps_to_dense(st);
  // Up to a global phase.
  Cplx ph = back.dot(psi) / std::abs(back.dot(psi));
  CHECK((psi - ph * back).cwiseAbs().maxCoeff() < 1e-12);
}
