/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "gsteer/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gsteer/classical.hpp"

namespace gsteer::osc {

namespace {

constexpr double kQuadratureTol = 1e-8;

// Kahan-compensated accumulator for order-independent sums.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct Kahan2x2 {
  Kahan re[2][2];
  Kahan im[2][2];
  void add(const Eigen::Matrix2cd& m) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        re[i][j].add(m(i, j).real());
        im[i][j].add(m(i, j).imag());
      }
    }
  }
  Eigen::Matrix2cd value() const {
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        m(i, j) = Complex(re[i][j].sum, im[i][j].sum);
      }
    }
    return m;
  }
};

// <v| expressed over the pair {<eta|, <-eta|}: coefficients of the steering
// ket before conjugation. Both are real for real cat coefficients.
struct VCoefficients {
  double on_eta;
  double on_minus_eta;
};

VCoefficients v_coefficients(double theta_v, const CatPair& cats) {
  const double s = std::sin(theta_v);
  const double c = std::cos(theta_v);
  return {s * cats.c_plus + c * cats.c_minus, s * cats.c_plus - c * cats.c_minus};
}

// Atom ket (components on |L>, |R>) conditioned on <v| for the coherent-form
// joint state built from the displaced amplitude zeta (thermal offset).
Eigen::Vector2cd conditional_atom_ket(const VCoefficients& vc, Complex eta,
                                      Complex zeta) {
  const Complex ov_p = vc.on_eta * coherent_overlap(eta, zeta + eta) +
                       vc.on_minus_eta * coherent_overlap(-eta, zeta + eta);
  const Complex ov_m = vc.on_eta * coherent_overlap(eta, zeta - eta) +
                       vc.on_minus_eta * coherent_overlap(-eta, zeta - eta);
  Eigen::Vector2cd m;
  m(0) = 0.5 * (ov_p + ov_m);
  m(1) = 0.5 * (ov_p - ov_m);
  return m;
}

// Declared check projector: the zero-temperature conditional atom state.
Eigen::Vector2cd mu_ket(double theta_v, const CatPair& cats) {
  Eigen::Vector2cd mu;
  mu(0) = std::sin(theta_v) / (2.0 * cats.c_plus);
  mu(1) = std::cos(theta_v) / (2.0 * cats.c_minus);
  return mu.normalized();
}

}  // namespace

void OscillatorParams::validate() const {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("OscillatorParams: omega must be positive");
  }
  if (!(g >= 0.0) || !(t >= 0.0)) {
    throw std::invalid_argument("OscillatorParams: g and t must be non-negative");
  }
  if (!(lambda() <= max_lambda)) {
    throw std::invalid_argument("OscillatorParams: g/omega exceeds the weak-coupling cap");
  }
  if (!(theta_v > 0.0) || !(theta_v < std::numbers::pi / 4.0)) {
    throw std::invalid_argument("OscillatorParams: theta_v must lie in (0, pi/4)");
  }
  if (!(nbar >= 0.0)) {
    throw std::invalid_argument("OscillatorParams: nbar must be non-negative");
  }
}

Complex displaced_amplitude(const OscillatorParams& p) {
  p.validate();
  const Complex phase = std::exp(Complex(0.0, -p.omega * p.t));
  return p.lambda() * (phase - 1.0);
}

Complex coherent_overlap(Complex alpha, Complex beta) {
  if (!std::isfinite(std::abs(alpha)) || !std::isfinite(std::abs(beta))) {
    throw std::invalid_argument("coherent_overlap: non-finite amplitude");
  }
  return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) +
                  std::conj(alpha) * beta);
}

Complex CoherentSuperposition::overlap(const CoherentSuperposition& other) const {
  Complex s = 0.0;
  for (const auto& a : terms) {
    for (const auto& b : other.terms) {
      s += std::conj(a.coeff) * b.coeff * coherent_overlap(a.alpha, b.alpha);
    }
  }
  return s;
}

Complex CoherentSuperposition::overlap_with_coherent(Complex beta) const {
  Complex s = 0.0;
  for (const auto& a : terms) {
    s += std::conj(a.coeff) * coherent_overlap(a.alpha, beta);
  }
  return s;
}

double CoherentSuperposition::norm() const {
  return std::sqrt(std::max(0.0, overlap(*this).real()));
}

CoherentSuperposition CoherentSuperposition::normalized() const {
  const double n = norm();
  if (n == 0.0) {
    throw std::domain_error("CoherentSuperposition: cannot normalize the null state");
  }
  CoherentSuperposition out = *this;
  for (auto& t : out.terms) {
    t.coeff /= n;
  }
  return out;
}

CatPair cat_states(Complex eta) {
  const double eta2 = std::norm(eta);
  if (eta2 == 0.0) {
    throw std::domain_error("cat_states: odd cat undefined at eta = 0");
  }
  // 1 - e^{-2|eta|^2} through expm1 so tiny eta stays fully accurate.
  const double one_minus = -std::expm1(-2.0 * eta2);
  const double one_plus = 2.0 - one_minus;
  CatPair cats;
  cats.c_plus = 1.0 / std::sqrt(2.0 * one_plus);
  cats.c_minus = 1.0 / std::sqrt(2.0 * one_minus);
  cats.plus.terms = {{cats.c_plus, eta}, {cats.c_plus, -eta}};
  cats.minus.terms = {{cats.c_minus, eta}, {-cats.c_minus, -eta}};
  return cats;
}

EvolvedState evolved_joint_state(const OscillatorParams& p) {
  const Complex eta = displaced_amplitude(p);
  CatPair cats = cat_states(eta);
  EvolvedState state;
  state.amp_l = 1.0 / (2.0 * cats.c_plus);
  state.amp_r = 1.0 / (2.0 * cats.c_minus);
  state.cat_plus = std::move(cats.plus);
  state.cat_minus = std::move(cats.minus);
  return state;
}

SteeringBasisV steering_basis_v(double theta_v, Complex eta) {
  if (!std::isfinite(theta_v)) {
    throw std::invalid_argument("steering_basis_v: theta_v must be finite");
  }
  const CatPair cats = cat_states(eta);
  const double s = std::sin(theta_v);
  const double c = std::cos(theta_v);
  SteeringBasisV basis;
  basis.v.terms = {{s * cats.c_plus + c * cats.c_minus, eta},
                   {s * cats.c_plus - c * cats.c_minus, -eta}};
  basis.v_perp.terms = {{c * cats.c_plus - s * cats.c_minus, eta},
                        {c * cats.c_plus + s * cats.c_minus, -eta}};
  return basis;
}

OscillatorVisibility oscillator_visibility(const OscillatorParams& p, double gamma,
                                           double herald_floor) {
  p.validate();
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw std::invalid_argument("oscillator_visibility: gamma must lie in (0,1)");
  }
  const Complex eta = displaced_amplitude(p);

  OscillatorVisibility out;
  if (std::norm(eta) == 0.0) {
    // Decoupled limit: the joint state is |0>|L>; every herald conditions
    // the atom on |L> regardless of theta_v.
    const double s = std::sin(p.theta_v);
    out.heralding_prob = s * s;
    out.visibility = 1.0;
    out.k_factor = 0.0;
    out.observable = out.heralding_prob >= herald_floor;
    out.v_classical = {1.0, 1.0, 1.0, 1.0};
    return out;
  }

  const CatPair cats = cat_states(eta);
  const Eigen::Vector2cd mu_tilde(std::sin(p.theta_v) / (2.0 * cats.c_plus),
                                  std::cos(p.theta_v) / (2.0 * cats.c_minus));
  out.heralding_prob = mu_tilde.squaredNorm();
  out.observable = out.heralding_prob >= herald_floor;
  if (!out.observable) {
    // Nothing to compare below the floor; the conditional is still the pure
    // branch state, but the comparator is not evaluated.
    out.visibility = 1.0;
    out.k_factor = 0.0;
    out.v_classical = {0.0, 0.0, 0.0, 0.0};
    return out;
  }

  const Eigen::Vector2cd mu = mu_tilde.normalized();
  StateVector mu_sv(2);
  mu_sv << mu(0), mu(1);
  const DensityMatrix conditional(projector_onto(mu_sv));
  out.visibility = visibility(conditional, projector_onto(mu_sv));

  // Separable comparator on the effective qubit pair
  // {|cat+>,|cat->} (x) {|L>,|R>}.
  StateVector joint(4);
  joint << 1.0 / (2.0 * cats.c_plus), 0.0, 0.0, 1.0 / (2.0 * cats.c_minus);
  StateVector v2(2), vp2(2);
  v2 << std::sin(p.theta_v), std::cos(p.theta_v);
  vp2 << std::cos(p.theta_v), -std::sin(p.theta_v);
  classical::TwoSettingProtocol protocol{PureState(std::move(joint)),
                                         {ket_plus(), ket_minus()},
                                         {v2, vp2},
                                         {"plus", "minus", "v", "v_perp"}};
  const auto comparator =
      classical::classical_visibilities(classical::build_separable_for(protocol), protocol);
  out.v_classical = comparator.visibilities;
  out.k_factor = (out.visibility - comparator.visibilities[2]) / gamma;
  return out;
}

ThermalVisibility thermal_visibility(const OscillatorParams& p, int order) {
  p.validate();
  if (!(p.nbar > 0.0)) {
    throw std::invalid_argument("thermal_visibility: requires nbar > 0");
  }
  if (order < 2) {
    throw std::invalid_argument("thermal_visibility: order must be >= 2");
  }
  const Complex eta = displaced_amplitude(p);
  const CatPair cats = cat_states(eta);
  const VCoefficients vc = v_coefficients(p.theta_v, cats);
  const Eigen::Vector2cd mu = mu_ket(p.theta_v, cats);
  const double scale = std::sqrt(p.nbar);

  const auto evaluate = [&](int n) {
    const Quadrature q = gauss_hermite(n);
    Kahan2x2 acc;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Complex zeta = scale * Complex(q.nodes[i], q.nodes[j]);
        const Eigen::Vector2cd m = conditional_atom_ket(vc, eta, zeta);
        acc.add((q.weights[i] * q.weights[j] / std::numbers::pi) *
                (m * m.adjoint()));
      }
    }
    const Eigen::Matrix2cd rho = acc.value();
    const double herald = rho.trace().real();
    const double vis = mu.dot(rho * mu).real() / herald;
    return std::pair<double, double>{herald, vis};
  };

  auto [herald_lo, v_lo] = evaluate(order);
  auto [herald_hi, v_hi] = evaluate(2 * order);
  double delta = std::abs(v_hi - v_lo);
  int used = 2 * order;
  if (delta > kQuadratureTol) {
    const auto [herald_xx, v_xx] = evaluate(4 * order);
    delta = std::abs(v_xx - v_hi);
    herald_hi = herald_xx;
    v_hi = v_xx;
    used = 4 * order;
    if (delta > kQuadratureTol) {
      throw std::runtime_error("thermal_visibility: quadrature did not converge");
    }
  }
  return ThermalVisibility{herald_hi, v_hi, delta, used};
}

McEstimate thermal_visibility_mc(const OscillatorParams& p, int n_samples,
                                 std::uint64_t seed) {
  p.validate();
  if (!(p.nbar > 0.0)) {
    throw std::invalid_argument("thermal_visibility_mc: requires nbar > 0");
  }
  if (n_samples < 32) {
    throw std::invalid_argument("thermal_visibility_mc: need at least 32 samples");
  }
  const Complex eta = displaced_amplitude(p);
  const CatPair cats = cat_states(eta);
  const VCoefficients vc = v_coefficients(p.theta_v, cats);
  const Eigen::Vector2cd mu = mu_ket(p.theta_v, cats);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(p.nbar / 2.0));

  // Ratio estimator in 16 batches; spread of the batch ratios gives the bar.
  constexpr int kBatches = 16;
  double num[kBatches] = {};
  double den[kBatches] = {};
  for (int s = 0; s < n_samples; ++s) {
    const Complex zeta(gauss(rng), gauss(rng));
    const Eigen::Vector2cd m = conditional_atom_ket(vc, eta, zeta);
    const double weight = m.squaredNorm();
    const double hit = std::norm(mu.dot(m));
    num[s % kBatches] += hit;
    den[s % kBatches] += weight;
  }
  double total_num = 0.0, total_den = 0.0;
  double batch_vals[kBatches];
  for (int b = 0; b < kBatches; ++b) {
    total_num += num[b];
    total_den += den[b];
    batch_vals[b] = den[b] > 0.0 ? num[b] / den[b] : 0.0;
  }
  const double value = total_num / total_den;
  double var = 0.0;
  for (double bv : batch_vals) {
    var += (bv - value) * (bv - value);
  }
  var /= kBatches * (kBatches - 1);
  return McEstimate{value, std::sqrt(var)};
}

Quadrature gauss_hermite(int order) {
  if (order < 1 || order > 512) {
    throw std::invalid_argument("gauss_hermite: order out of range");
  }
  // Golub-Welsch on the Hermite Jacobi matrix; weights from the first
  // eigenvector components.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int i = 0; i + 1 < order; ++i) {
    const double off = std::sqrt((i + 1) / 2.0);
    jacobi(i, i + 1) = off;
    jacobi(i + 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  Quadrature q;
  q.nodes.resize(order);
  q.weights.resize(order);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < order; ++i) {
    q.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    q.weights[i] = mu0 * v0 * v0;
  }
  return q;
}

}  // namespace gsteer::osc
