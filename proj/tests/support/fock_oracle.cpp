/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "fock_oracle.hpp"

#include <cmath>

namespace gsteer::testsupport {

namespace {

// L_k^{(a)}(x) by upward recurrence; stable for the small x used here.
double associated_laguerre(int k, int a, double x) {
  if (k == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + a - x;
  for (int i = 1; i < k; ++i) {
    const double lp1 = ((2.0 * i + 1.0 + a - x) * l - (i + a) * lm1) / (i + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

Complex ipow(Complex base, int n) {
  Complex out = 1.0;
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

double sqrt_factorial_ratio(int smaller, int larger) {
  // sqrt(smaller! / larger!) for smaller <= larger.
  return std::exp(0.5 * (std::lgamma(smaller + 1.0) - std::lgamma(larger + 1.0)));
}

}  // namespace

Eigen::VectorXcd fock_coherent(Complex alpha, int cutoff) {
  Eigen::VectorXcd v(cutoff + 1);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) {
    v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return v;
}

Eigen::VectorXcd fock_superposition(const osc::CoherentSuperposition& state,
                                    int cutoff) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff + 1);
  for (const auto& term : state.terms) {
    v += term.coeff * fock_coherent(term.alpha, cutoff);
  }
  return v;
}

Eigen::MatrixXcd displacement_matrix(Complex eta, int cutoff) {
  const int d = cutoff + 1;
  const double x = std::norm(eta);
  const double gauss = std::exp(-0.5 * x);
  Eigen::MatrixXcd m(d, d);
  for (int row = 0; row < d; ++row) {
    for (int col = 0; col < d; ++col) {
      if (row >= col) {
        m(row, col) = gauss * sqrt_factorial_ratio(col, row) *
                      ipow(eta, row - col) *
                      associated_laguerre(col, row - col, x);
      } else {
        m(row, col) = gauss * sqrt_factorial_ratio(row, col) *
                      ipow(-std::conj(eta), col - row) *
                      associated_laguerre(row, col - row, x);
      }
    }
  }
  return m;
}

}  // namespace gsteer::testsupport
