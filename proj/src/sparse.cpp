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

#include "ccabic/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ccabic {

SparseOperator::SparseOperator(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseOperator SparseOperator::from_triplets(std::size_t rows, std::size_t cols,
                                             std::vector<Triplet> triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  SparseOperator op(rows, cols);
  op.col_index_.reserve(triplets.size());
  op.values_.reserve(triplets.size());
  std::size_t i = 0;
  while (i < triplets.size()) {
    const Triplet& t = triplets[i];
    if (t.row >= rows || t.col >= cols) throw std::out_of_range("triplet outside operator shape");
    cplx sum = t.value;
    std::size_t j = i + 1;
    for (; j < triplets.size() && triplets[j].row == t.row && triplets[j].col == t.col; ++j) {
      sum += triplets[j].value;
    }
    if (sum != cplx{0.0, 0.0}) {
      op.col_index_.push_back(t.col);
      op.values_.push_back(sum);
      ++op.row_ptr_[t.row + 1];
    }
    i = j;
  }
  for (std::size_t r = 0; r < rows; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
  return op;
}

SparseOperator SparseOperator::identity(std::size_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

cplx SparseOperator::coeff(std::size_t row, std::size_t col) const {
  const auto begin = col_index_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto end = col_index_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_index_.begin())];
}

std::vector<Triplet> SparseOperator::entries() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      out.push_back({r, col_index_[e], values_[e]});
    }
  }
  return out;
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (const auto& e : entries()) t.push_back({e.col, e.row, std::conj(e.value)});
  return from_triplets(cols_, rows_, std::move(t));
}

SparseOperator SparseOperator::scaled(cplx factor) const {
  SparseOperator out = *this;
  for (auto& v : out.values_) v *= factor;
  if (factor == cplx{0.0, 0.0}) return SparseOperator(rows_, cols_);
  return out;
}

Eigen::MatrixXcd SparseOperator::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows_),
                                              static_cast<Eigen::Index>(cols_));
  for (const auto& e : entries()) {
    m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  }
  return m;
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& x) const {
  if (static_cast<std::size_t>(x.size()) != cols_) {
    throw std::invalid_argument("vector size does not match operator columns");
  }
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rows_));
  for (std::size_t r = 0; r < rows_; ++r) {
    cplx acc = 0.0;
    for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      acc += values_[e] * x[static_cast<Eigen::Index>(col_index_[e])];
    }
    y[static_cast<Eigen::Index>(r)] = acc;
  }
  return y;
}

bool SparseOperator::is_hermitian() const {
  if (rows_ != cols_) return false;
  for (const auto& e : entries()) {
    if (coeff(e.col, e.row) != std::conj(e.value)) return false;
  }
  return true;
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("operator shapes do not compose");
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t e = a.row_ptr_[r]; e < a.row_ptr_[r + 1]; ++e) {
      const std::size_t mid = a.col_index_[e];
      for (std::size_t f = b.row_ptr_[mid]; f < b.row_ptr_[mid + 1]; ++f) {
        t.push_back({r, b.col_index_[f], a.values_[e] * b.values_[f]});
      }
    }
  }
  return SparseOperator::from_triplets(a.rows_, b.cols_, std::move(t));
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
  auto t = a.entries();
  auto tb = b.entries();
  t.insert(t.end(), tb.begin(), tb.end());
  return SparseOperator::from_triplets(a.rows_, a.cols_, std::move(t));
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
  return a + b.scaled(-1.0);
}

void multiply_dense(const SparseOperator& a, Eigen::Ref<const Eigen::MatrixXcd> dense,
                    Eigen::Ref<Eigen::MatrixXcd> out) {
  assert(static_cast<std::size_t>(dense.rows()) == a.cols());
  const auto rows = static_cast<Eigen::Index>(a.rows());
  const Eigen::Index cols = dense.cols();
  assert(out.rows() == rows && out.cols() == cols);
  const auto row_ptr = a.row_ptr();
  const auto col_index = a.col_index();
  const auto values = a.values();
#pragma omp parallel for schedule(static) if (cols * static_cast<Eigen::Index>(a.nnz()) > 4096)
  for (Eigen::Index c = 0; c < cols; ++c) {
    const cplx* src = dense.col(c).data();
    cplx* dst = out.col(c).data();
    for (Eigen::Index r = 0; r < rows; ++r) {
      cplx acc = 0.0;
      for (std::size_t e = row_ptr[static_cast<std::size_t>(r)];
           e < row_ptr[static_cast<std::size_t>(r) + 1]; ++e) {
        acc += values[e] * src[col_index[e]];
      }
      dst[r] = acc;
    }
  }
}

void multiply_dense_serial(const SparseOperator& a, Eigen::Ref<const Eigen::MatrixXcd> dense,
                           Eigen::Ref<Eigen::MatrixXcd> out) {
  out.setZero();
  for (const auto& e : a.entries()) {
    out.row(static_cast<Eigen::Index>(e.row)) +=
        e.value * dense.row(static_cast<Eigen::Index>(e.col));
  }
}

}  // namespace ccabic
