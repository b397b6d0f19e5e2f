#include "camps/mpo.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace camps {

Mpo Mpo::from_bulk(int length, const std::vector<std::vector<Mat2>>& bulk) {
  const int d = static_cast<int>(bulk.size());
  Mpo mpo;
  mpo.resize(length);
  for (int j = 0; j < length; ++j) {
    const int dl = (j == 0) ? 1 : d;
    const int dr = (j == length - 1) ? 1 : d;
    mpo.set_site(j, dl, dr);
    for (int a = 0; a < dl; ++a)
      for (int b = 0; b < dr; ++b) {
        const int ba = (j == 0) ? 0 : a;
        const int bb = (j == length - 1) ? d - 1 : b;
        mpo.sites_[j][a][b] = bulk[ba][bb];
      }
  }
  return mpo;
}

void Mpo::add_onsite(int site, const Mat2& op, double eps) {
  auto& row = sites_.at(site)[0];
  row[row.size() - 1] += eps * op;
}

MatC mpo_to_dense(const Mpo& mpo) {
  const int length = mpo.length();
  if (length > 10) throw SizeGuardError("mpo_to_dense: L > 10");
  std::vector<MatC> acc(mpo.right_dim(0));
  for (int b = 0; b < mpo.right_dim(0); ++b) acc[b] = mpo.block(0, 0, b);
  for (int j = 1; j < length; ++j) {
    std::vector<MatC> next(mpo.right_dim(j));
    const Eigen::Index dim = acc[0].rows() * 2;
    for (int c = 0; c < mpo.right_dim(j); ++c) {
      next[c] = MatC::Zero(dim, dim);
      for (int b = 0; b < mpo.left_dim(j); ++b) {
        if (mpo.block(j, b, c).isZero(0.0) || acc[b].isZero(0.0)) continue;
        next[c] += Eigen::kroneckerProduct(acc[b], mpo.block(j, b, c)).eval();
      }
    }
    acc = std::move(next);
  }
  return acc[0];
}

}  // namespace camps
