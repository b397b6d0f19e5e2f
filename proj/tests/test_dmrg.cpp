#include <doctest.h>

#include "camps/dmrg.hpp"
#include "camps/exact.hpp"
#include "camps/models.hpp"

using namespace camps;

TEST_CASE("two-site chain reproduces the exact pair energy") {
  ModelSpec spec{ModelFamily::XXZ, 2, {{"Jz", 0.5}}};
  DmrgOptions opts;
  opts.chi_max = 4;
  auto res = ground_state(build_mpo(spec), opts);
  CHECK(res.energy == doctest::Approx(-0.375).epsilon(1e-10));
  CHECK(res.converged);
}

TEST_CASE("dmrg matches dense diagonalization at L=12") {
  ModelSpec spec{ModelFamily::XXZ, 12, {{"Jz", 0.5}}};
  auto ed = exact::exact_ground_state(spec);
  DmrgOptions opts;
  opts.chi_max = 64;
  auto res = ground_state(build_mpo(spec), opts);
  CHECK(res.converged);
  CHECK(res.energy == doctest::Approx(ed.energy).epsilon(1e-8));
  // Variational bound.
  for (double e : res.sweep_energies) CHECK(e >= ed.energy - 1e-9);
  // Energies non-increasing across sweeps (slack for truncation noise).
  for (std::size_t s = 1; s < res.sweep_energies.size(); ++s)
    CHECK(res.sweep_energies[s] <= res.sweep_energies[s - 1] + 1e-9);
}

TEST_CASE("dmrg handles three-site couplings") {
  ModelSpec spec{ModelFamily::TCI, 10, {{"lambda", 0.428}}};
  auto ed = exact::exact_ground_state(spec);
  DmrgOptions opts;
  opts.chi_max = 48;
  auto res = ground_state(build_mpo(spec), opts);
  CHECK(res.energy == doctest::Approx(ed.energy).epsilon(1e-8));
}

TEST_CASE("determinism given the seed") {
  ModelSpec spec{ModelFamily::IsingTF, 8, {{"h", 1.0}}};
  DmrgOptions opts;
  opts.chi_max = 16;
  opts.seed = 9;
  auto a = ground_state(build_mpo(spec), opts);
  auto b = ground_state(build_mpo(spec), opts);
  CHECK(a.energy == b.energy);
  CHECK(std::abs(std::abs(overlap(a.state, b.state)) - 1.0) < 1e-12);
}

TEST_CASE("pinned cluster chain selects a stabilizer ground state") {
  ModelSpec spec{ModelFamily::Cluster1, 10, {{"h", 0.0}}};
  DmrgOptions opts;
  opts.chi_max = 16;
  opts.boundary_pinning = 1e-6;
  auto res = ground_state(build_mpo(spec), opts);
  // Energy reported without the pinning term.
  CHECK(res.energy == doctest::Approx(-8.0).epsilon(1e-7));
  // The selected state is an eigenstate of every cluster term.
  for (int i = 0; i + 2 < 10; ++i) {
    PauliString term(10);
    term.set_letter(i, Pauli::X);
    term.set_letter(i + 1, Pauli::Z);
    term.set_letter(i + 2, Pauli::X);
    CHECK(expectation_pauli(res.state, term) == doctest::Approx(1.0).epsilon(1e-6));
  }
  // Without pinning the degeneracy is flagged.
  DmrgOptions plain = opts;
  plain.boundary_pinning = 0.0;
  auto res2 = ground_state(build_mpo(spec), plain);
  CHECK(res2.degenerate_spectrum_flag);
}
