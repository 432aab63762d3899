// Copyright 2026 The ccabic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ccabic {

using cplx = std::complex<double>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  cplx value;
};

/// Complex sparse matrix in compressed-row form.
///
/// Entries are sorted by (row, col); no duplicates and no explicit zeros are
/// stored. Rows and columns refer to the dense indices of a target and a
/// source SectorBasis respectively.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::size_t rows, std::size_t cols);

  /// Sums duplicates in insertion order, then drops exact zeros.
  static SparseOperator from_triplets(std::size_t rows, std::size_t cols,
                                      std::vector<Triplet> triplets);
  static SparseOperator identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t nnz() const { return values_.size(); }
  [[nodiscard]] std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  [[nodiscard]] std::span<const std::size_t> col_index() const { return col_index_; }
  [[nodiscard]] std::span<const cplx> values() const { return values_; }

  [[nodiscard]] cplx coeff(std::size_t row, std::size_t col) const;
  [[nodiscard]] std::vector<Triplet> entries() const;

  [[nodiscard]] SparseOperator adjoint() const;
  [[nodiscard]] SparseOperator scaled(cplx factor) const;
  [[nodiscard]] Eigen::MatrixXcd to_dense() const;

  [[nodiscard]] Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

  /// Exact entrywise test entry(i,j) == conj(entry(j,i)).
  [[nodiscard]] bool is_hermitian() const;
  [[nodiscard]] double max_abs() const;

  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_index_;
  std::vector<cplx> values_;
};

/// out = a * dense, with `out` already sized a.rows() x dense.cols().
/// Columns are distributed over OpenMP threads.
void multiply_dense(const SparseOperator& a, Eigen::Ref<const Eigen::MatrixXcd> dense,
                    Eigen::Ref<Eigen::MatrixXcd> out);

/// Single-threaded version of multiply_dense, kept as the reference kernel.
void multiply_dense_serial(const SparseOperator& a, Eigen::Ref<const Eigen::MatrixXcd> dense,
                           Eigen::Ref<Eigen::MatrixXcd> out);

}  // namespace ccabic
