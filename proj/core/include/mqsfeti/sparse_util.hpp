#pragma once

#include "mqsfeti/types.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace mqsfeti {

/// Deterministic triplet accumulator. Duplicate entries are summed in
/// emission order (stable sort by column, then row), so the assembled matrix
/// is bit-identical for a fixed emission sequence and exactly symmetric when
/// the emitted triplets are.
template <typename Scalar>
class TripletBuffer {
public:
  void reserve(std::size_t n) {
    rows_.reserve(n);
    cols_.reserve(n);
    vals_.reserve(n);
  }

  void add(Index row, Index col, Scalar value) {
    rows_.push_back(row);
    cols_.push_back(col);
    vals_.push_back(value);
  }

  void append(TripletBuffer&& other) {
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
    cols_.insert(cols_.end(), other.cols_.begin(), other.cols_.end());
    vals_.insert(vals_.end(), other.vals_.begin(), other.vals_.end());
    other.rows_.clear();
    other.cols_.clear();
    other.vals_.clear();
  }

  std::size_t size() const { return vals_.size(); }

  Eigen::SparseMatrix<Scalar> build(Index n_rows, Index n_cols) const {
    std::vector<std::size_t> order(vals_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
      if (cols_[a] != cols_[b]) return cols_[a] < cols_[b];
      return rows_[a] < rows_[b];
    });

    std::vector<Eigen::Triplet<Scalar>> unique;
    unique.reserve(vals_.size());
    for (std::size_t k : order) {
      if (!unique.empty() && unique.back().col() == cols_[k] && unique.back().row() == rows_[k]) {
        unique.back() = Eigen::Triplet<Scalar>(rows_[k], cols_[k], unique.back().value() + vals_[k]);
      } else {
        unique.emplace_back(rows_[k], cols_[k], vals_[k]);
      }
    }

    Eigen::SparseMatrix<Scalar> m(n_rows, n_cols);
    m.setFromTriplets(unique.begin(), unique.end());
    m.makeCompressed();
    return m;
  }

private:
  std::vector<Index> rows_, cols_;
  std::vector<Scalar> vals_;
};

/// Max absolute entry of a sparse matrix.
template <typename Scalar>
double max_abs(const Eigen::SparseMatrix<Scalar>& m) {
  double v = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(m, k); it; ++it)
      v = std::max(v, static_cast<double>(std::abs(it.value())));
  return v;
}

} // namespace mqsfeti
