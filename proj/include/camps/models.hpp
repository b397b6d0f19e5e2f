#pragma once

#include <map>
#include <string>

#include "camps/mpo.hpp"

namespace camps {

enum class ModelFamily { XXZ, TCI, Cluster1, Cluster2, Cluster3, IsingTF };

std::string family_name(ModelFamily f);
ModelFamily family_from_name(const std::string& name);

// One Hamiltonian instance; the unit of experiment configs.
//
// Operator conventions, chosen so the critical couplings quoted in the
// literature hold as-is:
//   XXZ            H = -sum_i (Sx Sx + Sy Sy + Jz Sz Sz),  S = sigma/2
//   TCI            H = -sum (sz sz) - sum sx + lambda * sum (sx sz sz + sz sz sx)
//   Cluster1       H = -sum (sx sz sx) + h sum sz
//   Cluster2       H = Cluster1 + D sum (sz sz)
//   Cluster3       H = -sum (sx sz sx) + V sum (sy sy)
//   IsingTF        H = -sum (sz sz) - h sum sx
// where lowercase s denotes bare Pauli matrices. The TCI point sits at
// lambda = 0.428, Cluster1 is critical at h = 1, Cluster3 at V = 1.
struct ModelSpec {
  ModelFamily family = ModelFamily::XXZ;
  int length = 0;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const;
  double require(const std::string& key) const;

  // Throws ValidationError if the chain is shorter than the longest
  // interaction term or a required coupling is missing.
  void validate() const;
};

Mpo build_xxz(int length, double jz);
Mpo build_tci(int length, double lambda);
Mpo build_cluster(int variant, int length, const std::map<std::string, double>& params);
Mpo build_ising_tf(int length, double h);

Mpo build_mpo(const ModelSpec& spec);

}  // namespace camps
