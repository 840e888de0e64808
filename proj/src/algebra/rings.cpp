#include "scrollrec/algebra/rings.hpp"

namespace scrollrec::algebra {

const RingPtr& plane_ring() {
  static const RingPtr r = Ring::make({"x0", "x1", "x2"});
  return r;
}

const RingPtr& space_ring() {
  static const RingPtr r = Ring::make({"x0", "x1", "x2", "x3"});
  return r;
}

const RingPtr& scroll_ring() {
  static const RingPtr r = Ring::make({"s", "t"});
  return r;
}

const RingPtr& param_ring() {
  static const RingPtr r = Ring::make({"t0", "t1"});
  return r;
}

const RingPtr& line_ring() {
  static const RingPtr r = Ring::make({"t"});
  return r;
}

MPoly substitute_linear(const MPoly& F, const Mat& M, const RingPtr& target) {
  std::vector<MPoly> images;
  for (const auto& row : M) {
    MPoly img(target);
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) img += MPoly::variable(target, static_cast<int>(j)) * row[j];
    images.push_back(std::move(img));
  }
  while (static_cast<int>(images.size()) < F.ring()->size()) images.emplace_back(target);
  return F.compose(images);
}

Mat random_invertible(Prng& rng, int n, long bound) {
  while (true) {
    Mat M(n, Vec(n, Rat(0)));
    for (auto& row : M)
      for (auto& x : row) x = rng.uniform(-bound, bound);
    if (determinant(M) != 0) return M;
  }
}

}  // namespace scrollrec::algebra
