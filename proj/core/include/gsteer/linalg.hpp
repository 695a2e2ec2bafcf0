/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef GSTEER_LINALG_HPP
#define GSTEER_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

namespace gsteer {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Hard cap on dense dimensions. Every Hilbert space in this library is
/// tiny (qubit pairs, truncated oscillators); anything larger is a bug.
inline constexpr Eigen::Index kMaxDim = 128;

enum class Subsystem { A, B };

bool all_finite(const ComplexMatrix& m);
bool all_finite(const StateVector& v);
void require_finite(const ComplexMatrix& m, const char* what);
void require_finite(const StateVector& v, const char* what);

/// Kronecker product a (x) b. Rejects results whose dimensions exceed kMaxDim.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out one subsystem of a (dim_a * dim_b) square matrix.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Eigen::Index dim_a,
                            Eigen::Index dim_b, Subsystem keep);

ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& m);

/// |v><w|
ComplexMatrix outer(const StateVector& v, const StateVector& w);

/// <v|w>, conjugate-linear in the first argument.
Complex inner(const StateVector& v, const StateVector& w);

ComplexMatrix scale(Complex c, const ComplexMatrix& m);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix identity(Eigen::Index d);

double max_abs(const ComplexMatrix& m);

}  // namespace gsteer

#endif
