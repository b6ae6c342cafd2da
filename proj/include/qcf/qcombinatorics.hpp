#pragma once

#include "qcf/cyclotomic.hpp"

#include <stdexcept>
#include <vector>

namespace qcf {

/// (n)_q = 1 + q + ... + q^(n-1)
inline Scalar q_integer(unsigned n, const Scalar& q) {
  Scalar sum(0), power(1);
  for (unsigned i = 0; i < n; ++i) {
    sum += power;
    power *= q;
  }
  return sum;
}

inline Scalar q_factorial(unsigned n, const Scalar& q) {
  Scalar out(1);
  for (unsigned i = 1; i <= n; ++i) out *= q_integer(i, q);
  return out;
}

/// Rows 0..n of the Gaussian binomial triangle, built with
/// C(n,k) = C(n-1,k-1) + q^k C(n-1,k). No division is ever performed, so the
/// values stay correct at roots of unity where q-integers vanish.
inline std::vector<std::vector<Scalar>> q_binomial_triangle(unsigned n, const Scalar& q) {
  std::vector<Scalar> qpow{Scalar(1)};
  for (unsigned k = 1; k <= n; ++k) qpow.push_back(qpow.back() * q);
  std::vector<std::vector<Scalar>> rows{{Scalar(1)}};
  for (unsigned m = 1; m <= n; ++m) {
    std::vector<Scalar> row(m + 1);
    row[0] = Scalar(1);
    row[m] = Scalar(1);
    for (unsigned k = 1; k < m; ++k) row[k] = rows[m - 1][k - 1] + qpow[k] * rows[m - 1][k];
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Scalar q_binomial(unsigned n, unsigned k, const Scalar& q) {
  if (k > n) throw std::domain_error("q_binomial: k > n");
  return q_binomial_triangle(n, q)[n][k];
}

}  // namespace qcf
