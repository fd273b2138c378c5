#pragma once

#include <cstddef>
#include <vector>

namespace hehucc {

/// Dense rank-4 tensor with equal extents, row-major.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int extent() const noexcept { return n_; }

  double& operator()(int p, int q, int r, int s) { return data_[index(p, q, r, s)]; }
  double operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }

  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t index(int p, int q, int r, int s) const {
    return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
  }

  int n_ = 0;
  std::vector<double> data_;
};

}  // namespace hehucc
