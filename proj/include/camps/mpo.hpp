#pragma once

#include <vector>

#include "camps/common.hpp"

namespace camps {

// Matrix product operator for a spin-1/2 chain, open boundaries. Site j
// carries a (Dl x Dr) array of 2x2 operator blocks; the first site has
// Dl = 1 (initial automaton state) and the last Dr = 1 (final state).
class Mpo {
 public:
  Mpo() = default;

  int length() const { return static_cast<int>(sites_.size()); }
  int left_dim(int site) const { return static_cast<int>(sites_[site].size()); }
  int right_dim(int site) const {
    return static_cast<int>(sites_[site].empty() ? 0 : sites_[site][0].size());
  }
  const Mat2& block(int site, int a, int b) const { return sites_[site][a][b]; }
  Mat2& block(int site, int a, int b) { return sites_[site][a][b]; }

  void resize(int length) { sites_.assign(length, {}); }
  void set_site(int site, int dl, int dr) {
    sites_[site].assign(dl, std::vector<Mat2>(dr, Mat2::Zero()));
  }

  // Builds an L-site MPO from one bulk automaton matrix. State 0 is the
  // initial state, the last state is the final one; boundary sites keep the
  // matching row/column.
  static Mpo from_bulk(int length, const std::vector<std::vector<Mat2>>& bulk);

  // Adds eps * op acting on a single site (spliced into the 0 -> final slot).
  void add_onsite(int site, const Mat2& op, double eps);

 private:
  std::vector<std::vector<std::vector<Mat2>>> sites_;
};

// Dense 2^L x 2^L matrix of the MPO; for small-L consistency checks.
MatC mpo_to_dense(const Mpo& mpo);

}  // namespace camps
