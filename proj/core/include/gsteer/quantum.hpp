/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef GSTEER_QUANTUM_HPP
#define GSTEER_QUANTUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "gsteer/linalg.hpp"

namespace gsteer {

/// Tolerances used by the state validity checks. Construction rejects
/// anything outside these bands instead of silently repairing it.
inline constexpr double kStateTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;

class PureState {
 public:
  /// Requires ||v|| = 1 within kStateTol.
  explicit PureState(StateVector v);

  /// Normalizes first; rejects the zero vector.
  static PureState normalized(StateVector v);

  const StateVector& vector() const { return vec_; }
  Eigen::Index dim() const { return vec_.size(); }
  ComplexMatrix density() const { return outer(vec_, vec_); }

 private:
  StateVector vec_;
};

class DensityMatrix {
 public:
  /// Requires Hermiticity and unit trace within kStateTol and all
  /// eigenvalues >= kEigenvalueFloor. Never clips.
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix from_pure(const PureState& psi);

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  double purity() const;

 private:
  ComplexMatrix mat_;
};

/// rho -> (1-q) rho + q I/d
struct DepolarizingNoise {
  double q;
  explicit DepolarizingNoise(double q_in);
};

/// One conditional branch of a steering ensemble. Zero-probability branches
/// carry no conditional state; asking for one is an error, not a zero.
struct SteeringBranch {
  std::string label;
  ComplexMatrix projector_a;
  double probability = 0.0;
  std::optional<DensityMatrix> conditional;
};

struct SteeringEnsemble {
  std::vector<SteeringBranch> branches;

  double probability(std::size_t i) const;
  const DensityMatrix& conditional(std::size_t i) const;
  bool defined(std::size_t i) const;
};

/// Condition rho_AB on a complete orthonormal measurement of subsystem A.
/// p_i = Tr((P_i (x) I) rho); conditional_i = Tr_A((P_i (x) I) rho) / p_i.
SteeringEnsemble steer(const DensityMatrix& rho_ab,
                       const std::vector<ComplexMatrix>& basis_a,
                       const std::vector<std::string>& labels = {});

/// <a|_A psi: the unnormalized conditional ket of B for a joint pure state.
StateVector conditional_ket(const PureState& joint, const StateVector& bra_a,
                            Eigen::Index dim_a, Eigen::Index dim_b);

/// Pure-state steering through the state vector. Exactly rank-1 conditionals
/// even for heralds near the floor, where projecting the assembled density
/// matrix first would drown the branch in roundoff.
SteeringEnsemble steer(const PureState& joint,
                       const std::vector<StateVector>& basis_a,
                       const std::vector<std::string>& labels = {});

/// V = Tr(P rho) for a rank-1 projector P.
double visibility(const DensityMatrix& rho, const ComplexMatrix& projector);

DensityMatrix depolarize(const DensityMatrix& rho, DepolarizingNoise noise);

/// Two-qubit pure-state concurrence, C = |<psi| sigma_y(x)sigma_y |psi*>|.
double concurrence(const PureState& psi);

/// Minimum eigenvalue of the partial transpose of a two-qubit state.
/// >= -1e-10 certifies separability at this dimension.
double ppt_min_eigenvalue(const DensityMatrix& rho_ab);

// Elementary qubit objects shared across the library.
StateVector ket0();
StateVector ket1();
StateVector ket_plus();
StateVector ket_minus();
ComplexMatrix pauli_z();
ComplexMatrix identity2();
ComplexMatrix projector_onto(const StateVector& v);

}  // namespace gsteer

#endif
