/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "gsteer/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace gsteer {

namespace {

// Branch probabilities this small are treated as exactly unheralded.
constexpr double kZeroProbability = 1e-14;

void require_rank1_projector(const ComplexMatrix& p) {
  if (p.rows() != p.cols()) {
    throw std::invalid_argument("projector must be square");
  }
  if (std::abs(p.trace().real() - 1.0) > kStateTol ||
      std::abs(p.trace().imag()) > kStateTol) {
    throw std::invalid_argument("projector trace != 1 (not rank-1)");
  }
  if (max_abs(p * p - p) > kStateTol) {
    throw std::invalid_argument("matrix is not idempotent (not a projector)");
  }
}

}  // namespace

PureState::PureState(StateVector v) : vec_(std::move(v)) {
  require_finite(vec_, "PureState");
  if (std::abs(vec_.norm() - 1.0) > kStateTol) {
    throw std::invalid_argument("PureState: vector is not normalized");
  }
}

PureState PureState::normalized(StateVector v) {
  require_finite(v, "PureState");
  const double n = v.norm();
  if (n == 0.0) {
    throw std::invalid_argument("PureState: cannot normalize the zero vector");
  }
  return PureState(StateVector(v / n));
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
  require_finite(mat_, "DensityMatrix");
  if (mat_.rows() != mat_.cols()) {
    throw std::invalid_argument("DensityMatrix: not square");
  }
  if (max_abs(mat_ - mat_.adjoint()) > kStateTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(mat_.trace().real() - 1.0) > kStateTol ||
      std::abs(mat_.trace().imag()) > kStateTol) {
    throw std::invalid_argument("DensityMatrix: trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.density());
}

double DensityMatrix::purity() const {
  return (mat_ * mat_).trace().real();
}

DepolarizingNoise::DepolarizingNoise(double q_in) : q(q_in) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("DepolarizingNoise: q must lie in [0,1]");
  }
}

double SteeringEnsemble::probability(std::size_t i) const {
  return branches.at(i).probability;
}

bool SteeringEnsemble::defined(std::size_t i) const {
  return branches.at(i).conditional.has_value();
}

const DensityMatrix& SteeringEnsemble::conditional(std::size_t i) const {
  const auto& b = branches.at(i);
  if (!b.conditional) {
    throw std::domain_error("undefined conditional for zero-probability branch '" +
                            b.label + "'");
  }
  return *b.conditional;
}

SteeringEnsemble steer(const DensityMatrix& rho_ab,
                       const std::vector<ComplexMatrix>& basis_a,
                       const std::vector<std::string>& labels) {
  if (basis_a.empty()) {
    throw std::invalid_argument("steer: empty basis");
  }
  const Eigen::Index dim_a = basis_a.front().rows();
  const Eigen::Index d = rho_ab.dim();
  if (d % dim_a != 0) {
    throw std::invalid_argument("steer: joint dimension not divisible by dim(A)");
  }
  const Eigen::Index dim_b = d / dim_a;

  ComplexMatrix sum = ComplexMatrix::Zero(dim_a, dim_a);
  for (const auto& p : basis_a) {
    require_rank1_projector(p);
    sum += p;
  }
  if (max_abs(sum - identity(dim_a)) > kStateTol) {
    throw std::invalid_argument("steer: projectors do not resolve the identity");
  }

  SteeringEnsemble out;
  const ComplexMatrix eye_b = identity(dim_b);
  for (std::size_t i = 0; i < basis_a.size(); ++i) {
    SteeringBranch branch;
    branch.label = i < labels.size() ? labels[i] : std::to_string(i);
    branch.projector_a = basis_a[i];
    const ComplexMatrix big = kron(basis_a[i], eye_b) * rho_ab.matrix();
    const double p = big.trace().real();
    branch.probability = p;
    if (p > kZeroProbability) {
      ComplexMatrix cond = partial_trace(big, dim_a, dim_b, Subsystem::B) / p;
      // Symmetrize away the last-bit Hermiticity residue of the product form.
      cond = ((cond + cond.adjoint()) / 2.0).eval();
      branch.conditional = DensityMatrix(cond);
    }
    out.branches.push_back(std::move(branch));
  }
  return out;
}

StateVector conditional_ket(const PureState& joint, const StateVector& bra_a,
                            Eigen::Index dim_a, Eigen::Index dim_b) {
  if (joint.dim() != dim_a * dim_b || bra_a.size() != dim_a) {
    throw std::invalid_argument("conditional_ket: dimension mismatch");
  }
  const auto& v = joint.vector();
  StateVector out = StateVector::Zero(dim_b);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    const Complex c = std::conj(bra_a(i));
    for (Eigen::Index j = 0; j < dim_b; ++j) {
      out(j) += c * v(i * dim_b + j);
    }
  }
  return out;
}

SteeringEnsemble steer(const PureState& joint,
                       const std::vector<StateVector>& basis_a,
                       const std::vector<std::string>& labels) {
  if (basis_a.empty()) {
    throw std::invalid_argument("steer: empty basis");
  }
  const Eigen::Index dim_a = basis_a.front().size();
  if (joint.dim() % dim_a != 0) {
    throw std::invalid_argument("steer: joint dimension not divisible by dim(A)");
  }
  const Eigen::Index dim_b = joint.dim() / dim_a;

  ComplexMatrix sum = ComplexMatrix::Zero(dim_a, dim_a);
  for (const auto& a : basis_a) {
    sum += outer(a, a);
  }
  if (max_abs(sum - identity(dim_a)) > kStateTol) {
    throw std::invalid_argument("steer: kets do not resolve the identity");
  }

  SteeringEnsemble out;
  for (std::size_t i = 0; i < basis_a.size(); ++i) {
    SteeringBranch branch;
    branch.label = i < labels.size() ? labels[i] : std::to_string(i);
    branch.projector_a = projector_onto(basis_a[i]);
    const StateVector m = conditional_ket(joint, basis_a[i], dim_a, dim_b);
    const double p = m.squaredNorm();
    branch.probability = p;
    if (p > kZeroProbability) {
      const StateVector unit = m / m.norm();
      branch.conditional = DensityMatrix(outer(unit, unit));
    }
    out.branches.push_back(std::move(branch));
  }
  return out;
}

double visibility(const DensityMatrix& rho, const ComplexMatrix& projector) {
  require_rank1_projector(projector);
  if (projector.rows() != rho.dim()) {
    throw std::invalid_argument("visibility: dimension mismatch");
  }
  return (projector * rho.matrix()).trace().real();
}

DensityMatrix depolarize(const DensityMatrix& rho, DepolarizingNoise noise) {
  const Eigen::Index d = rho.dim();
  ComplexMatrix m =
      (1.0 - noise.q) * rho.matrix() + (noise.q / static_cast<double>(d)) * identity(d);
  return DensityMatrix(std::move(m));
}

double concurrence(const PureState& psi) {
  if (psi.dim() != 4) {
    throw std::invalid_argument("concurrence: requires a two-qubit pure state");
  }
  const auto& v = psi.vector();
  // C = 2 |a d - b c| for amplitudes (a,b,c,d) in the computational basis.
  return 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
}

double ppt_min_eigenvalue(const DensityMatrix& rho_ab) {
  if (rho_ab.dim() != 4) {
    throw std::invalid_argument("ppt_min_eigenvalue: requires a 4x4 state");
  }
  const auto& r = rho_ab.matrix();
  ComplexMatrix pt(4, 4);
  // Transpose subsystem B: (ia,jb) -> (ib,ja) with composite index 2i+a.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          pt(2 * i + a, 2 * j + b) = r(2 * i + b, 2 * j + a);
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

StateVector ket0() {
  StateVector v(2);
  v << 1.0, 0.0;
  return v;
}

StateVector ket1() {
  StateVector v(2);
  v << 0.0, 1.0;
  return v;
}

StateVector ket_plus() {
  StateVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

StateVector ket_minus() {
  StateVector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return v;
}

ComplexMatrix pauli_z() {
  ComplexMatrix z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  return z;
}

ComplexMatrix identity2() {
  return identity(2);
}

ComplexMatrix projector_onto(const StateVector& v) {
  const double n = v.norm();
  if (n == 0.0) {
    throw std::invalid_argument("projector_onto: zero vector");
  }
  return outer(v, v) / (n * n);
}

}  // namespace gsteer
