#include "camps/models.hpp"

#include "camps/pauli.hpp"

namespace camps {

namespace {

const Mat2& sx() { return pauli_matrix(Pauli::X); }
const Mat2& sy() { return pauli_matrix(Pauli::Y); }
const Mat2& sz() { return pauli_matrix(Pauli::Z); }
const Mat2& id2() { return pauli_matrix(Pauli::I); }

using Bulk = std::vector<std::vector<Mat2>>;

Bulk zero_bulk(int d) { return Bulk(d, std::vector<Mat2>(d, Mat2::Zero())); }

}  // namespace

std::string family_name(ModelFamily f) {
  switch (f) {
    case ModelFamily::XXZ: return "xxz";
    case ModelFamily::TCI: return "tci";
    case ModelFamily::Cluster1: return "cluster1";
    case ModelFamily::Cluster2: return "cluster2";
    case ModelFamily::Cluster3: return "cluster3";
    case ModelFamily::IsingTF: return "ising_tf";
  }
  throw ValidationError("unknown model family");
}

ModelFamily family_from_name(const std::string& name) {
  if (name == "xxz") return ModelFamily::XXZ;
  if (name == "tci") return ModelFamily::TCI;
  if (name == "cluster1") return ModelFamily::Cluster1;
  if (name == "cluster2") return ModelFamily::Cluster2;
  if (name == "cluster3") return ModelFamily::Cluster3;
  if (name == "ising_tf") return ModelFamily::IsingTF;
  throw ValidationError("unknown model family: " + name);
}

double ModelSpec::param(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double ModelSpec::require(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end())
    throw ValidationError("model " + family_name(family) + " needs parameter '" + key + "'");
  return it->second;
}

void ModelSpec::validate() const {
  const bool three_site = family == ModelFamily::TCI || family == ModelFamily::Cluster1 ||
                          family == ModelFamily::Cluster2 || family == ModelFamily::Cluster3;
  const int min_len = three_site ? 3 : 2;
  if (length < min_len)
    throw ValidationError("model " + family_name(family) + " needs L >= " +
                          std::to_string(min_len));
  switch (family) {
    case ModelFamily::XXZ: require("Jz"); break;
    case ModelFamily::TCI: require("lambda"); break;
    case ModelFamily::Cluster1: require("h"); break;
    case ModelFamily::Cluster2: require("h"); require("D"); break;
    case ModelFamily::Cluster3: require("V"); break;
    case ModelFamily::IsingTF: require("h"); break;
  }
}

Mpo build_xxz(int length, double jz) {
  if (length < 2) throw ValidationError("xxz needs L >= 2");
  // S = sigma/2 throughout.
  const Mat2 Sx = 0.5 * sx(), Sy = 0.5 * sy(), Sz = 0.5 * sz();
  Bulk w = zero_bulk(5);
  w[0][0] = id2();
  w[0][1] = Sx;
  w[0][2] = Sy;
  w[0][3] = Sz;
  w[1][4] = -Sx;
  w[2][4] = -Sy;
  w[3][4] = -jz * Sz;
  w[4][4] = id2();
  return Mpo::from_bulk(length, w);
}

Mpo build_tci(int length, double lambda) {
  if (length < 3) throw ValidationError("tci needs L >= 3");
  // States: 0 free, 1 z placed, 2 zz placed, 3 x placed, 4 xz placed, 5 done.
  Bulk w = zero_bulk(6);
  w[0][0] = id2();
  w[0][1] = sz();
  w[0][3] = sx();
  w[0][5] = -sx();
  w[1][5] = -sz();
  w[1][2] = sz();
  w[2][5] = lambda * sx();
  w[3][4] = sz();
  w[4][5] = lambda * sz();
  w[5][5] = id2();
  return Mpo::from_bulk(length, w);
}

Mpo build_cluster(int variant, int length, const std::map<std::string, double>& params) {
  if (length < 3) throw ValidationError("cluster models need L >= 3");
  auto get = [&](const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw ValidationError("cluster" + std::to_string(variant) +
                                                  " needs parameter '" + key + "'");
    return it->second;
  };
  switch (variant) {
    case 1: {
      const double h = get("h");
      Bulk w = zero_bulk(4);
      w[0][0] = id2();
      w[0][1] = sx();
      w[1][2] = sz();
      w[2][3] = -sx();
      w[0][3] = h * sz();
      w[3][3] = id2();
      return Mpo::from_bulk(length, w);
    }
    case 2: {
      const double h = get("h"), d = get("D");
      Bulk w = zero_bulk(5);
      w[0][0] = id2();
      w[0][1] = sx();
      w[1][2] = sz();
      w[2][4] = -sx();
      w[0][3] = sz();
      w[3][4] = d * sz();
      w[0][4] = h * sz();
      w[4][4] = id2();
      return Mpo::from_bulk(length, w);
    }
    case 3: {
      const double v = get("V");
      Bulk w = zero_bulk(5);
      w[0][0] = id2();
      w[0][1] = sx();
      w[1][2] = sz();
      w[2][4] = -sx();
      w[0][3] = sy();
      w[3][4] = v * sy();
      w[4][4] = id2();
      return Mpo::from_bulk(length, w);
    }
    default:
      throw ValidationError("unknown cluster variant " + std::to_string(variant));
  }
}

Mpo build_ising_tf(int length, double h) {
  if (length < 2) throw ValidationError("ising_tf needs L >= 2");
  Bulk w = zero_bulk(3);
  w[0][0] = id2();
  w[0][1] = sz();
  w[1][2] = -sz();
  w[0][2] = -h * sx();
  w[2][2] = id2();
  return Mpo::from_bulk(length, w);
}

Mpo build_mpo(const ModelSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case ModelFamily::XXZ: return build_xxz(spec.length, spec.require("Jz"));
    case ModelFamily::TCI: return build_tci(spec.length, spec.require("lambda"));
    case ModelFamily::Cluster1: return build_cluster(1, spec.length, spec.params);
    case ModelFamily::Cluster2: return build_cluster(2, spec.length, spec.params);
    case ModelFamily::Cluster3: return build_cluster(3, spec.length, spec.params);
    case ModelFamily::IsingTF: return build_ising_tf(spec.length, spec.require("h"));
  }
  throw ValidationError("unknown model family");
}

}  // namespace camps
