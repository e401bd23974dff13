#pragma once

#include <cstddef>
#include <vector>

namespace hcp {

// Dense row-major square matrix of doubles; just enough for the symmetric
// eigenproblems in feature extraction and PCA.
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t size = 0) : size_(size), data_(size * size, 0.0) {}

  std::size_t size() const { return size_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * size_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * size_ + c]; }

 private:
  std::size_t size_;
  std::vector<double> data_;
};

struct SymmetricEigen {
  std::vector<double> values;  // descending
  SquareMatrix vectors;        // column k is the eigenvector of values[k]
  int sweeps = 0;
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
// tolerance (or max_sweeps is hit). Input must be symmetric.
SymmetricEigen jacobi_eigen(SquareMatrix a, double tolerance = 1e-10, int max_sweeps = 100);

}  // namespace hcp
