#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "camps/exact.hpp"

using namespace camps;

namespace {

VecC t_plus_state() {
  VecC psi(2);
  psi << Cplx(1.0 / std::sqrt(2.0), 0),
      std::polar(1.0 / std::sqrt(2.0), M_PI / 4.0);
  return psi;
}

VecC ghz(int length) {
  VecC psi = VecC::Zero(Eigen::Index(1) << length);
  psi[0] = 1.0 / std::sqrt(2.0);
  psi[psi.size() - 1] = 1.0 / std::sqrt(2.0);
  return psi;
}

}  // namespace

TEST_CASE("apply_pauli bit conventions") {
  VecC zero(2);
  zero << 1, 0;
  VecC y = exact::apply_pauli(zero, 1, PauliString::parse("Y"));
  CHECK(std::abs(y[1] - Cplx(0, 1)) < 1e-15);  // Y|0> = i|1>
  VecC two(4);
  two << 0, 1, 0, 0;  // |01>
  VecC flipped = exact::apply_pauli(two, 2, PauliString::parse("XI"));
  CHECK(std::abs(flipped[3] - 1.0) < 1e-15);  // site 0 is the high bit
  CHECK(std::abs(exact::pauli_expectation(ghz(4), 4, PauliString::parse("XXXX")) -
                 Cplx(1, 0)) < 1e-12);
  CHECK(std::abs(exact::pauli_expectation(ghz(4), 4, PauliString::parse("ZIIZ")) -
                 Cplx(1, 0)) < 1e-12);
}

TEST_CASE("xxz two-site spectrum") {
  ModelSpec spec{ModelFamily::XXZ, 2, {{"Jz", 0.5}}};
  const MatC h = exact::dense_hamiltonian(spec);
  Eigen::SelfAdjointEigenSolver<MatC> es(h);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-0.375).epsilon(1e-12));

  auto gs = exact::exact_ground_state(spec);
  CHECK(gs.converged);
  CHECK(gs.energy == doctest::Approx(-0.375).epsilon(1e-10));

  ModelSpec heis{ModelFamily::XXZ, 2, {{"Jz", 1.0}}};
  Eigen::SelfAdjointEigenSolver<MatC> es2(exact::dense_hamiltonian(heis));
  bool has_triplet = false;
  for (double e : es2.eigenvalues())
    if (std::abs(e + 0.25) < 1e-12) has_triplet = true;
  CHECK(has_triplet);
}

TEST_CASE("xxz at Jz=0 is symmetric under global spin flip") {
  ModelSpec spec{ModelFamily::XXZ, 6, {{"Jz", 0.0}}};
  const MatC h = exact::dense_hamiltonian(spec);
  // Conjugating by X...X flips all spins about z.
  PauliString flip(6);
  for (int j = 0; j < 6; ++j) flip.set_letter(j, Pauli::X);
  MatC x = MatC::Identity(64, 64);
  // Build the flip operator by applying it to basis columns.
  for (int c = 0; c < 64; ++c) x.col(c) = exact::apply_pauli(MatC::Identity(64, 64).col(c), 6, flip);
  CHECK((x * h * x - h).norm() < 1e-10);
}

TEST_CASE("dense Hamiltonians are Hermitian") {
  std::vector<ModelSpec> specs = {
      {ModelFamily::XXZ, 6, {{"Jz", 0.3}}},
      {ModelFamily::TCI, 6, {{"lambda", 0.428}}},
      {ModelFamily::Cluster1, 6, {{"h", 0.7}}},
      {ModelFamily::Cluster2, 6, {{"h", 0.9}, {"D", 0.1}}},
      {ModelFamily::Cluster3, 6, {{"V", 1.0}}},
      {ModelFamily::IsingTF, 6, {{"h", 1.0}}},
  };
  for (const auto& spec : specs) {
    const MatC h = exact::dense_hamiltonian(spec);
    CHECK((h - h.adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("cluster chain at h=0 has a stabilizer ground state") {
  ModelSpec spec{ModelFamily::Cluster1, 8, {{"h", 0.0}}};
  auto gs = exact::exact_ground_state(spec);
  CHECK(gs.energy == doctest::Approx(-6.0).epsilon(1e-10));
  // Every cluster term sits at its extremal value.
  for (int i = 0; i + 2 < 8; ++i) {
    PauliString term(8);
    term.set_letter(i, Pauli::X);
    term.set_letter(i + 1, Pauli::Z);
    term.set_letter(i + 2, Pauli::X);
    CHECK(std::real(exact::pauli_expectation(gs.psi, 8, term)) ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("tci at lambda=0 reduces to the critical Ising chain") {
  ModelSpec tci{ModelFamily::TCI, 8, {{"lambda", 0.0}}};
  ModelSpec ising{ModelFamily::IsingTF, 8, {{"h", 1.0}}};
  CHECK((exact::dense_hamiltonian(tci) - exact::dense_hamiltonian(ising)).norm() < 1e-13);
  auto a = exact::exact_ground_state(tci);
  auto b = exact::exact_ground_state(ising);
  CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-10));
}

TEST_CASE("cluster variants reduce to variant 1") {
  ModelSpec c1{ModelFamily::Cluster1, 6, {{"h", 0.0}}};
  ModelSpec c2{ModelFamily::Cluster2, 6, {{"h", 0.0}, {"D", 0.0}}};
  ModelSpec c3{ModelFamily::Cluster3, 6, {{"V", 0.0}}};
  const MatC h1 = exact::dense_hamiltonian(c1);
  CHECK((exact::dense_hamiltonian(c2) - h1).norm() < 1e-13);
  CHECK((exact::dense_hamiltonian(c3) - h1).norm() < 1e-13);
}

TEST_CASE("lanczos matches the dense solver") {
  ModelSpec spec{ModelFamily::TCI, 8, {{"lambda", 0.3}}};
  Eigen::SelfAdjointEigenSolver<MatC> es(exact::dense_hamiltonian(spec));
  auto gs = exact::exact_ground_state(spec);
  CHECK(gs.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));
}

TEST_CASE("cut entropies on closed forms") {
  VecC bell(4);
  bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  CHECK(exact::cut_entropy(bell, 2, 1, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  VecC prod = VecC::Zero(8);
  prod[0] = 1.0;
  CHECK(exact::cut_entropy(prod, 3, 1, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(exact::cut_entropy(ghz(6), 6, 3, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("reduced density matrices") {
  VecC bell(4);
  bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  MatC rho = exact::dense_rdm(bell, 2, {0});
  CHECK(std::real((rho * rho).trace()) == doctest::Approx(0.5).epsilon(1e-12));
  // Disconnected region of a GHZ state: rho on {0, 3} is the two-bit mixture.
  MatC rho2 = exact::dense_rdm(ghz(4), 4, {0, 3});
  CHECK(std::real(rho2(0, 0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::real(rho2(3, 3)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(exact::entropy_of_rdm(rho2, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("brute-force sre on closed forms") {
  VecC zeros = VecC::Zero(16);
  zeros[0] = 1.0;
  CHECK(exact::sre(zeros, 4, 2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(exact::sre(ghz(6), 6, 2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(exact::sre(t_plus_state(), 1, 2) ==
        doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
  // n = 3 on the T state: sum <P>^6 = 1 + 1/8 + 1/8 = 5/4.
  CHECK(exact::sre(t_plus_state(), 1, 3) ==
        doctest::Approx(-0.5 * std::log(5.0 / 8.0)).epsilon(1e-12));
}

TEST_CASE("mixed-state sre") {
  // Pure stabilizer region.
  MatC rho = MatC::Zero(4, 4);
  rho(0, 0) = 1.0;
  CHECK(exact::mixed_sre2(rho) == doctest::Approx(0.0).epsilon(1e-12));
  // Maximally mixed single site: only the identity survives.
  MatC mixed = 0.5 * MatC::Identity(2, 2);
  CHECK(exact::mixed_sre2(mixed) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mutual sre vanishes on product states") {
  ModelSpec spec{ModelFamily::IsingTF, 4, {{"h", 0.35}}};
  auto gs = exact::exact_ground_state(spec);
  // A product of two copies: psi x psi on 8 sites.
  VecC prod(256);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) prod[16 * a + b] = gs.psi[a] * gs.psi[b];
  auto m = exact::mutual_sre2(prod, 8, {0, 1}, {4, 5});
  CHECK(std::abs(m.l2) < 1e-10);
  CHECK(m.w2 == doctest::Approx(m.i2 - m.l2).epsilon(1e-12));
  // T state x stabilizer: additivity of the pure-state SRE.
  VecC tz(4);
  const VecC t = t_plus_state();
  tz << t[0], 0, t[1], 0;  // T|+> on site 0, |0> on site 1
  CHECK(exact::sre(tz, 2, 2) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("size guards") {
  ModelSpec spec{ModelFamily::XXZ, 16, {{"Jz", 0.5}}};
  CHECK_THROWS_AS(exact::exact_ground_state(spec), SizeGuardError);
  CHECK_THROWS_AS(exact::dense_hamiltonian(spec), SizeGuardError);
}
