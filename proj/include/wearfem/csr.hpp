#pragma once

// Symmetric sparse matrices in CSR layout. Both triangles are stored so the
// matvec is a plain row sweep. Triplet merging sorts first, then sums in
// index order, so assembly output does not depend on insertion order.

#include <cstdint>
#include <vector>

namespace wearfem {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;
  static SparseSymMatrix from_triplets(int n, std::vector<Triplet> entries);

  int rows() const { return rows_; }
  std::int64_t nonzeros() const {
    return static_cast<std::int64_t>(val_.size());
  }

  // y = A x
  void multiply(const double* x, double* y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;

  std::vector<double> diagonal() const;
  // entry lookup, 0 when structurally absent
  double coeff(int i, int j) const;

  const std::vector<std::int32_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::int32_t>& col_index() const { return col_; }
  const std::vector<double>& values() const { return val_; }

 private:
  int rows_ = 0;
  std::vector<std::int32_t> row_ptr_;
  std::vector<std::int32_t> col_;
  std::vector<double> val_;
};

}  // namespace wearfem
