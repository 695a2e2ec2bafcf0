/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "gsteer/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsteer {

bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

bool all_finite(const StateVector& v) {
  return v.allFinite();
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void require_finite(const StateVector& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_finite(a, "kron lhs");
  require_finite(b, "kron rhs");
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim) {
    throw std::invalid_argument("kron: result dimension " + std::to_string(rows) +
                                "x" + std::to_string(cols) + " exceeds cap " +
                                std::to_string(kMaxDim));
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Eigen::Index dim_a,
                            Eigen::Index dim_b, Subsystem keep) {
  const Eigen::Index d = dim_a * dim_b;
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("partial_trace: matrix is not (dim_a*dim_b) square");
  }
  if (keep == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (Eigen::Index i = 0; i < dim_b; ++i) {
      for (Eigen::Index j = 0; j < dim_b; ++j) {
        Complex s = 0;
        for (Eigen::Index k = 0; k < dim_a; ++k) {
          s += rho(k * dim_b + i, k * dim_b + j);
        }
        out(i, j) = s;
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index j = 0; j < dim_a; ++j) {
      Complex s = 0;
      for (Eigen::Index k = 0; k < dim_b; ++k) {
        s += rho(i * dim_b + k, j * dim_b + k);
      }
      out(i, j) = s;
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  return m.adjoint();
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions disagree");
  }
  return a * b;
}

Complex trace(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("trace: matrix not square");
  }
  return m.trace();
}

ComplexMatrix outer(const StateVector& v, const StateVector& w) {
  return v * w.adjoint();
}

Complex inner(const StateVector& v, const StateVector& w) {
  if (v.size() != w.size()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  return v.adjoint() * w;
}

ComplexMatrix scale(Complex c, const ComplexMatrix& m) {
  return c * m;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("add: dimension mismatch");
  }
  return a + b;
}

ComplexMatrix identity(Eigen::Index d) {
  return ComplexMatrix::Identity(d, d);
}

double max_abs(const ComplexMatrix& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace gsteer
