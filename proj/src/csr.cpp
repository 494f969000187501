#include "wearfem/csr.hpp"

#include <algorithm>
#include <stdexcept>

#include "wearfem/kernels.hpp"

namespace wearfem {

SparseSymMatrix SparseSymMatrix::from_triplets(int n,
                                               std::vector<Triplet> entries) {
  for (const auto& t : entries)
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw std::out_of_range("from_triplets: index outside matrix");

  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

  SparseSymMatrix m;
  m.rows_ = n;
  m.row_ptr_.assign(n + 1, 0);
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < entries.size() && entries[j].row == entries[i].row &&
           entries[j].col == entries[i].col)
      sum += entries[j++].value;
    m.col_.push_back(entries[i].col);
    m.val_.push_back(sum);
    ++m.row_ptr_[entries[i].row + 1];
    i = j;
  }
  for (int r = 0; r < n; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

void SparseSymMatrix::multiply(const double* x, double* y) const {
  kernels::csr_matvec(row_ptr_.data(), col_.data(), val_.data(),
                      static_cast<std::size_t>(rows_), x, y);
}

std::vector<double> SparseSymMatrix::multiply(
    const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != rows_)
    throw std::invalid_argument("multiply: size mismatch");
  std::vector<double> y(rows_, 0.0);
  multiply(x.data(), y.data());
  return y;
}

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(rows_, 0.0);
  for (int r = 0; r < rows_; ++r)
    for (std::int32_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      if (col_[k] == r) d[r] = val_[k];
  return d;
}

double SparseSymMatrix::coeff(int i, int j) const {
  for (std::int32_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    if (col_[k] == j) return val_[k];
  return 0.0;
}

}  // namespace wearfem
