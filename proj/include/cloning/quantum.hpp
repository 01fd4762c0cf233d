#pragma once

// Finite-dimensional simulation of the noisy cloning experiment: qubit
// inputs a, b; two-qubit clone outputs alpha, beta; ideal targets aa, bb.
// Every procedure is degraded by the depolarizing channel
// N_v(rho) = (1 - v) rho + v I / d.

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "cloning/bounds.hpp"

namespace cloning::quantum {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kStateTol = 1e-12;
inline constexpr double kBornTol = 1e-10;

/// Unit vector in C^2 or C^4.
class PureState {
 public:
  explicit PureState(Vector amplitudes);

  const Vector& amplitudes() const { return amps_; }
  Eigen::Index dim() const { return amps_.size(); }
  Complex inner(const PureState& other) const { return amps_.dot(other.amps_); }
  Matrix projector() const { return amps_ * amps_.adjoint(); }
  PureState tensor(const PureState& other) const;

 private:
  Vector amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix (d = 2 or 4).
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m);
  static DensityOperator pure(const PureState& psi);
  static DensityOperator maximally_mixed(Eigen::Index d);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// Outcome-1 effect E of a two-outcome measurement; outcome 0 is I - E.
class TwoOutcomeMeasurement {
 public:
  explicit TwoOutcomeMeasurement(Matrix effect);
  static TwoOutcomeMeasurement projective(const PureState& psi);

  const Matrix& effect() const { return e_; }
  Eigen::Index dim() const { return e_.rows(); }
  TwoOutcomeMeasurement complement() const;

 private:
  Matrix e_;
};

struct NoiseLevel {
  explicit NoiseLevel(double value);
  double v;
};

/// Real qubit pair with <a|b> = sqrt(c_ab) in the symmetric gauge
/// a = (cos t, sin t), b = (cos t, -sin t), cos 2t = sqrt(c_ab).
std::pair<PureState, PureState> make_input_pair(double c_ab);

/// Two-copy channel; requires d = 4.
DensityOperator depolarize(const DensityOperator& rho, NoiseLevel v);

/// Tr_2 of a 4x4 operator on C^2 (x) C^2.
DensityOperator partial_trace_second(const DensityOperator& rho);

/// Heisenberg-picture noise on a test: (1 - v) E + v I / d.
TwoOutcomeMeasurement depolarize_effect(const TwoOutcomeMeasurement& m, NoiseLevel v);

/// Tr[rho E]. Values within kBornTol outside [0, 1] are clipped; anything
/// further out is an error.
double born(const DensityOperator& rho, const TwoOutcomeMeasurement& m);

/// Unit vector in span{s, partner} orthogonal to s. When the span is
/// one-dimensional the first canonical basis vector with a nonzero
/// component orthogonal to s is used instead.
PureState perp_in_span(const PureState& s, const PureState& partner, bool* degenerate = nullptr);

struct OptimalClones {
  PureState alpha;
  PureState beta;
  double fidelity;
  double overlap_residual;  // |<alpha|beta> - <a|b>|
  int evaluations;
  bool converged;
};

/// Numerically maximizes (|<aa|alpha>|^2 + |<bb|beta>|^2) / 2 subject to
/// <alpha|beta> = <a|b>. Independent of the closed form; used as its oracle.
OptimalClones construct_optimal_clones(double c_ab);

struct NoisyEnsemble {
  double v;
  double c_ab;
  bool degenerate;

  // qubit
  DensityOperator rho_a, rho_b, rho_a_perp, rho_b_perp;
  TwoOutcomeMeasurement m_a, m_b;

  // two-qubit, double-noise weight (1 - v)^2 on the pure part
  DensityOperator rho_alpha, rho_beta, rho_alpha_perp, rho_beta_perp;
  DensityOperator rho_aa, rho_bb, rho_aa_perp, rho_bb_perp;
  DensityOperator rho_aa_perp_alt, rho_bb_perp_alt;  // complements in span{aa, bb}
  TwoOutcomeMeasurement m_alpha, m_beta, m_aa, m_bb;
};

NoisyEnsemble noisy_ensemble(NoiseLevel v, double c_ab, const OptimalClones& clones);
NoisyEnsemble noisy_ensemble(NoiseLevel v, double c_ab);

/// Max-abs entry of (rho_s + rho_s_perp)/2 - (rho_t + rho_t_perp)/2 for each
/// of the four equivalences (a,b), (alpha,aa), (beta,bb), (aa,bb).
struct EquivalenceResiduals {
  double input_pair;
  double alpha_aa;
  double beta_bb;
  double aa_bb;
  double max() const;
};

EquivalenceResiduals equivalence_residuals(const NoisyEnsemble& ens);

struct ExperimentRecord {
  bounds::OverlapParams overlaps;
  bounds::ErrorBudget budget;
  double c_alpha_aa;
  double c_beta_bb;
  double f_global;
  double o2_residual;
  bool degenerate;
};

ExperimentRecord simulate_confusabilities(NoiseLevel v, double c_ab);
ExperimentRecord simulate_confusabilities(const NoisyEnsemble& ens);

/// (1 - v)^2 c + v (1 - v) + v^2 / 2, the expanded Tr[rho_a M_b].
double observed_input_confusability(double v, double c_ab);

/// (1 - v)^3 c^2 + v (3 - 3v + v^2) / 4, the expanded Tr[rho_aa M_bb].
double observed_target_confusability(double v, double c_ab);

}  // namespace cloning::quantum
