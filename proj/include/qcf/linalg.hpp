#pragma once

#include "qcf/cyclotomic.hpp"

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <type_traits>
#include <utility>
#include <vector>

namespace qcf::linalg {

/// Sorted by column; never stores a zero.
template <class F>
using SparseRow = std::vector<std::pair<std::size_t, F>>;

template <class F>
using Matrix = std::vector<std::vector<F>>;

namespace detail {

/// a*x - b*y, entrywise over sparse rows.
template <class F>
SparseRow<F> cross_combine(const F& a, const SparseRow<F>& x, const F& b, const SparseRow<F>& y) {
  SparseRow<F> out;
  out.reserve(x.size() + y.size());
  auto i = x.begin(), j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      out.emplace_back(i->first, a * i->second);
      ++i;
    } else if (i == x.end() || j->first < i->first) {
      out.emplace_back(j->first, -(b * j->second));
      ++j;
    } else {
      F v = a * i->second - b * j->second;
      if (!is_zero(v)) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
const F* entry(const SparseRow<F>& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

/// Rational rows are kept as primitive integer vectors with positive lead.
template <class F>
void normalize(SparseRow<F>& row) {
  if constexpr (std::is_same_v<F, Rational>) {
    if (row.empty()) return;
    BigInt den = 1, num = 0;
    for (auto& [c, v] : row) {
      den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
      num = boost::multiprecision::gcd(num, boost::multiprecision::numerator(v));
    }
    Rational scale(den, num);
    if (row.front().second < 0) scale = -scale;
    if (scale != 1)
      for (auto& [c, v] : row) v *= scale;
  }
}

}  // namespace detail

/// Incrementally maintained row-echelon basis. Rows are reduced by
/// cross-multiplication against the pivot row at their leading column, so no
/// division happens until a nullspace vector is read off.
template <class F>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ncols) : ncols_(ncols) {}

  std::size_t columns() const { return ncols_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Returns true when the row was independent of the rows already inserted.
  bool insert(SparseRow<F> row) {
    reduce(row);
    if (row.empty()) return false;
    detail::normalize(row);
    pivots_.emplace(row.front().first, std::move(row));
    return true;
  }

  bool insert_dense(const std::vector<F>& v) { return insert(sparse(v)); }

  bool in_row_space(const std::vector<F>& v) const {
    auto row = sparse(v);
    reduce(row);
    return row.empty();
  }

  /// Basis of {x : r.x = 0 for every inserted row r}, one vector per free
  /// column in increasing column order.
  Matrix<F> nullspace() const {
    std::map<std::size_t, SparseRow<F>> reduced;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      SparseRow<F> row = it->second;
      for (const auto& [col, prow] : reduced) {
        const F* e = detail::entry(row, col);
        if (!e) continue;
        F coeff = *e;
        row = detail::cross_combine(prow.front().second, row, coeff, prow);
        detail::normalize(row);
      }
      reduced.emplace(it->first, std::move(row));
    }
    Matrix<F> basis;
    for (std::size_t f = 0; f < ncols_; ++f) {
      if (pivots_.count(f)) continue;
      std::vector<F> v(ncols_, F(0));
      v[f] = F(1);
      for (const auto& [col, row] : reduced) {
        if (const F* e = detail::entry(row, f)) v[col] = -(*e) / row.front().second;
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  static SparseRow<F> sparse(const std::vector<F>& v) {
    SparseRow<F> row;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!is_zero(v[i])) row.emplace_back(i, v[i]);
    return row;
  }

  void reduce(SparseRow<F>& row) const {
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) return;
      F lead = row.front().second;
      row = detail::cross_combine(it->second.front().second, row, lead, it->second);
      detail::normalize(row);
    }
  }

  std::size_t ncols_;
  std::map<std::size_t, SparseRow<F>> pivots_;
};

template <class F>
Matrix<F> transpose(const Matrix<F>& m) {
  if (m.empty()) return {};
  Matrix<F> t(m[0].size(), std::vector<F>(m.size(), F(0)));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

/// Right kernel {y : M y = 0} of a matrix with `ncols` columns.
template <class F>
Matrix<F> kernel(const Matrix<F>& m, std::size_t ncols) {
  EchelonBasis<F> eb(ncols);
  for (const auto& row : m) eb.insert_dense(row);
  return eb.nullspace();
}

template <class F>
std::size_t rank(const Matrix<F>& m, std::size_t ncols) {
  EchelonBasis<F> eb(ncols);
  for (const auto& row : m) eb.insert_dense(row);
  return eb.rank();
}

}  // namespace qcf::linalg
