#include "cloning/quantum.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cloning::quantum {

namespace {

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_dim(Eigen::Index d, const char* what) {
  if (d != 2 && d != 4) {
    throw std::invalid_argument(std::string(what) + ": dimension must be 2 or 4, got " +
                                std::to_string(d));
  }
}

Vector basis_vector(Eigen::Index d, Eigen::Index k) {
  Vector e = Vector::Zero(d);
  e(k) = 1.0;
  return e;
}

}  // namespace

// --- value types -------------------------------------------------------------

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  require_dim(amps_.size(), "PureState");
  if (std::abs(amps_.norm() - 1.0) > kStateTol) {
    throw std::invalid_argument("PureState: amplitudes are not unit norm");
  }
}

PureState PureState::tensor(const PureState& other) const {
  if (dim() != 2 || other.dim() != 2) {
    throw std::invalid_argument("PureState::tensor: only qubit (x) qubit is supported");
  }
  Vector out(4);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) out(2 * i + j) = amps_(i) * other.amps_(j);
  }
  return PureState(std::move(out));
}

DensityOperator::DensityOperator(Matrix m) : m_(std::move(m)) {
  require_dim(m_.rows(), "DensityOperator");
  if (!is_hermitian(m_, kStateTol)) {
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0)) > kStateTol) {
    throw std::invalid_argument("DensityOperator: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStateTol) {
    throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
  }
}

DensityOperator DensityOperator::pure(const PureState& psi) {
  return DensityOperator(psi.projector());
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index d) {
  return DensityOperator(Matrix::Identity(d, d) / static_cast<double>(d));
}

TwoOutcomeMeasurement::TwoOutcomeMeasurement(Matrix effect) : e_(std::move(effect)) {
  require_dim(e_.rows(), "TwoOutcomeMeasurement");
  if (!is_hermitian(e_, kStateTol)) {
    throw std::invalid_argument("TwoOutcomeMeasurement: effect is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(e_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStateTol || es.eigenvalues().maxCoeff() > 1.0 + kStateTol) {
    throw std::invalid_argument("TwoOutcomeMeasurement: effect spectrum leaves [0, 1]");
  }
}

TwoOutcomeMeasurement TwoOutcomeMeasurement::projective(const PureState& psi) {
  return TwoOutcomeMeasurement(psi.projector());
}

TwoOutcomeMeasurement TwoOutcomeMeasurement::complement() const {
  return TwoOutcomeMeasurement(Matrix::Identity(dim(), dim()) - e_);
}

NoiseLevel::NoiseLevel(double value) : v(value) { bounds::require_probability(value, "v"); }

// --- primitive operations ----------------------------------------------------

std::pair<PureState, PureState> make_input_pair(double c_ab) {
  bounds::require_probability(c_ab, "c_ab");
  const double theta = 0.5 * std::acos(std::sqrt(c_ab));
  Vector a(2), b(2);
  a << std::cos(theta), std::sin(theta);
  b << std::cos(theta), -std::sin(theta);
  return {PureState(std::move(a)), PureState(std::move(b))};
}

DensityOperator depolarize(const DensityOperator& rho, NoiseLevel v) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("depolarize: channel acts on the two-copy space (d = 4)");
  }
  return DensityOperator((1.0 - v.v) * rho.matrix() + v.v * Matrix::Identity(4, 4) / 4.0);
}

DensityOperator partial_trace_second(const DensityOperator& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("partial_trace_second: expected d = 4");
  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index k = 0; k < 2; ++k) {
      for (Eigen::Index j = 0; j < 2; ++j) out(i, k) += m(2 * i + j, 2 * k + j);
    }
  }
  return DensityOperator(std::move(out));
}

TwoOutcomeMeasurement depolarize_effect(const TwoOutcomeMeasurement& m, NoiseLevel v) {
  const auto d = m.dim();
  return TwoOutcomeMeasurement((1.0 - v.v) * m.effect() +
                               v.v * Matrix::Identity(d, d) / static_cast<double>(d));
}

double born(const DensityOperator& rho, const TwoOutcomeMeasurement& m) {
  if (rho.dim() != m.dim()) {
    throw std::invalid_argument("born: dimension mismatch (" + std::to_string(rho.dim()) +
                                " vs " + std::to_string(m.dim()) + ")");
  }
  const Complex tr = (rho.matrix() * m.effect()).trace();
  if (std::abs(tr.imag()) > kBornTol) {
    throw std::domain_error("born: trace has a non-negligible imaginary part");
  }
  const double p = tr.real();
  if (p < -kBornTol || p > 1.0 + kBornTol) {
    throw std::domain_error("born: probability " + std::to_string(p) + " outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

PureState perp_in_span(const PureState& s, const PureState& partner, bool* degenerate) {
  const Vector& u = s.amplitudes();
  Vector w = partner.amplitudes() - u.dot(partner.amplitudes()) * u;
  bool collapsed = w.norm() < 1e-9;
  if (collapsed) {
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      Vector e = basis_vector(u.size(), k);
      w = e - u.dot(e) * u;
      if (w.norm() > 1e-6) break;
    }
  }
  if (degenerate != nullptr) *degenerate = collapsed;
  return PureState(w / w.norm());
}

// --- optimal clones ----------------------------------------------------------

namespace {

// Real frame of the two-copy space: e1 = |aa>, e2 = |bb> orthogonalized
// against |aa>, e3 = singlet (orthogonal to every product |xx>).
struct CloneFrame {
  Eigen::Vector4d aa, bb, e1, e2, e3;
  double target_overlap;  // <a|b>
};

CloneFrame make_frame(double c_ab) {
  const auto [a, b] = make_input_pair(c_ab);
  CloneFrame f;
  f.aa = a.tensor(a).amplitudes().real();
  f.bb = b.tensor(b).amplitudes().real();
  f.e1 = f.aa;
  f.e2 = f.bb - f.aa.dot(f.bb) * f.aa;
  f.e2.normalize();
  f.e3 << 0.0, 1.0, -1.0, 0.0;
  f.e3 /= std::sqrt(2.0);
  f.target_overlap = std::sqrt(c_ab);
  return f;
}

// alpha = cos t u(phi - g/2) + sin t e3, beta = cos t u(phi + g/2) + sin t e3,
// with u(x) = cos x e1 + sin x e2 and cos g fixed by <alpha|beta> = target.
struct ClonePair {
  Eigen::Vector4d alpha, beta;
  bool feasible;
};

ClonePair clone_pair(const CloneFrame& f, double phi, double tilt) {
  const double ct = std::cos(tilt), st = std::sin(tilt);
  const double cos_gap = (f.target_overlap - st * st) / (ct * ct);
  ClonePair p{};
  p.feasible = std::isfinite(cos_gap) && cos_gap >= -1.0 && cos_gap <= 1.0;
  const double gap = std::acos(std::clamp(cos_gap, -1.0, 1.0));
  auto u = [&](double x) { return Eigen::Vector4d(std::cos(x) * f.e1 + std::sin(x) * f.e2); };
  p.alpha = ct * u(phi - 0.5 * gap) + st * f.e3;
  p.beta = ct * u(phi + 0.5 * gap) + st * f.e3;
  return p;
}

double clone_fidelity(const CloneFrame& f, const ClonePair& p) {
  const double x = f.aa.dot(p.alpha), y = f.bb.dot(p.beta);
  return 0.5 * x * x + 0.5 * y * y;
}

double max_tilt(double target_overlap) {
  // need target >= -cos 2t
  return 0.5 * std::acos(-target_overlap);
}

struct ObjectiveCtx {
  const CloneFrame* frame;
  double tilt_limit;
  int evaluations = 0;
};

double objective(const gsl_vector* x, void* params) {
  auto* ctx = static_cast<ObjectiveCtx*>(params);
  ++ctx->evaluations;
  const double phi = gsl_vector_get(x, 0);
  const double tilt = gsl_vector_get(x, 1);
  if (std::abs(tilt) > ctx->tilt_limit) return 2.0;
  const ClonePair p = clone_pair(*ctx->frame, phi, tilt);
  if (!p.feasible) return 2.0;
  return -clone_fidelity(*ctx->frame, p);
}

Vector to_complex(const Eigen::Vector4d& v) { return v.cast<Complex>(); }

}  // namespace

OptimalClones construct_optimal_clones(double c_ab) {
  bounds::require_probability(c_ab, "c_ab");
  const CloneFrame frame = make_frame(c_ab);

  if (c_ab == 0.0 || c_ab == 1.0) {
    // Orthogonal or identical inputs are cloned perfectly by alpha = aa, beta = bb.
    PureState alpha(to_complex(frame.aa)), beta(to_complex(frame.bb));
    return OptimalClones{alpha, beta, 1.0,
                         std::abs(alpha.inner(beta).real() - frame.target_overlap), 0, true};
  }

  ObjectiveCtx ctx{&frame, max_tilt(frame.target_overlap)};

  // Coarse 100 x 100 grid over (phi, tilt).
  constexpr int kGrid = 100;
  double best = 1.0, best_phi = 0.0, best_tilt = 0.0;
  gsl_vector* x = gsl_vector_alloc(2);
  for (int i = 0; i < kGrid; ++i) {
    const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * (i + 0.5) / kGrid;
    for (int j = 0; j < kGrid; ++j) {
      const double tilt = -ctx.tilt_limit + 2.0 * ctx.tilt_limit * (j + 0.5) / kGrid;
      gsl_vector_set(x, 0, phi);
      gsl_vector_set(x, 1, tilt);
      const double val = objective(x, &ctx);
      if (val < best) {
        best = val;
        best_phi = phi;
        best_tilt = tilt;
      }
    }
  }

  // Simplex refinement from the best grid point.
  gsl_multimin_function fn{&objective, 2, &ctx};
  gsl_vector* step = gsl_vector_alloc(2);
  gsl_vector_set(x, 0, best_phi);
  gsl_vector_set(x, 1, best_tilt);
  gsl_vector_set_all(step, 2.0 * std::numbers::pi / kGrid);
  gsl_multimin_fminimizer* solver =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(solver, &fn, x, step);

  int status = GSL_CONTINUE;
  for (int iter = 0; iter < 2000 && status == GSL_CONTINUE; ++iter) {
    if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver), 1e-7);
  }
  const double phi = gsl_vector_get(solver->x, 0);
  const double tilt = gsl_vector_get(solver->x, 1);
  gsl_multimin_fminimizer_free(solver);
  gsl_vector_free(step);
  gsl_vector_free(x);

  const ClonePair p = clone_pair(frame, phi, tilt);
  PureState alpha(to_complex(p.alpha)), beta(to_complex(p.beta));
  const double residual = std::abs(alpha.inner(beta) - Complex(frame.target_overlap));
  return OptimalClones{alpha, beta, clone_fidelity(frame, p), residual, ctx.evaluations,
                       status == GSL_SUCCESS};
}

// --- noisy experiment --------------------------------------------------------

namespace {

// N_v o N_v applied to a pure two-copy state.
DensityOperator double_noise(const PureState& psi, NoiseLevel v) {
  return depolarize(depolarize(DensityOperator::pure(psi), v), v);
}

// Tr_2 N_v(|x0><x0|).
DensityOperator noisy_input(const PureState& x, NoiseLevel v) {
  Vector zero(2);
  zero << 1.0, 0.0;
  return partial_trace_second(depolarize(DensityOperator::pure(x.tensor(PureState(zero))), v));
}

double max_abs_diff(const DensityOperator& s, const DensityOperator& s_perp,
                    const DensityOperator& t, const DensityOperator& t_perp) {
  const Matrix diff = 0.5 * (s.matrix() + s_perp.matrix()) - 0.5 * (t.matrix() + t_perp.matrix());
  return diff.cwiseAbs().maxCoeff();
}

}  // namespace

NoisyEnsemble noisy_ensemble(NoiseLevel v, double c_ab, const OptimalClones& clones) {
  bounds::require_probability(c_ab, "c_ab");
  const auto [a, b] = make_input_pair(c_ab);
  const PureState aa = a.tensor(a), bb = b.tensor(b);
  const PureState& alpha = clones.alpha;
  const PureState& beta = clones.beta;

  bool deg[6] = {};
  const PureState a_perp = perp_in_span(a, b, &deg[0]);
  const PureState b_perp = perp_in_span(b, a, &deg[0]);
  const PureState alpha_perp = perp_in_span(alpha, aa, &deg[1]);
  const PureState aa_perp = perp_in_span(aa, alpha, &deg[2]);
  const PureState beta_perp = perp_in_span(beta, bb, &deg[3]);
  const PureState bb_perp = perp_in_span(bb, beta, &deg[4]);
  const PureState aa_perp_alt = perp_in_span(aa, bb, &deg[5]);
  const PureState bb_perp_alt = perp_in_span(bb, aa, &deg[5]);

  auto noisy_test = [&](const PureState& psi) {
    return depolarize_effect(TwoOutcomeMeasurement::projective(psi), v);
  };

  return NoisyEnsemble{
      v.v,
      c_ab,
      std::any_of(std::begin(deg), std::end(deg), [](bool d) { return d; }),
      noisy_input(a, v),
      noisy_input(b, v),
      noisy_input(a_perp, v),
      noisy_input(b_perp, v),
      noisy_test(a),
      noisy_test(b),
      double_noise(alpha, v),
      double_noise(beta, v),
      double_noise(alpha_perp, v),
      double_noise(beta_perp, v),
      double_noise(aa, v),
      double_noise(bb, v),
      double_noise(aa_perp, v),
      double_noise(bb_perp, v),
      double_noise(aa_perp_alt, v),
      double_noise(bb_perp_alt, v),
      noisy_test(alpha),
      noisy_test(beta),
      noisy_test(aa),
      noisy_test(bb),
  };
}

NoisyEnsemble noisy_ensemble(NoiseLevel v, double c_ab) {
  return noisy_ensemble(v, c_ab, construct_optimal_clones(c_ab));
}

double EquivalenceResiduals::max() const {
  return std::max({input_pair, alpha_aa, beta_bb, aa_bb});
}

EquivalenceResiduals equivalence_residuals(const NoisyEnsemble& e) {
  return EquivalenceResiduals{
      max_abs_diff(e.rho_a, e.rho_a_perp, e.rho_b, e.rho_b_perp),
      max_abs_diff(e.rho_alpha, e.rho_alpha_perp, e.rho_aa, e.rho_aa_perp),
      max_abs_diff(e.rho_beta, e.rho_beta_perp, e.rho_bb, e.rho_bb_perp),
      max_abs_diff(e.rho_aa, e.rho_aa_perp_alt, e.rho_bb, e.rho_bb_perp_alt),
  };
}

ExperimentRecord simulate_confusabilities(const NoisyEnsemble& e) {
  // eps_s covers both halves of the noisy O1 condition.
  auto eps = [](const DensityOperator& s, const DensityOperator& s_perp,
                const TwoOutcomeMeasurement& m) {
    return std::max(1.0 - born(s, m), born(s_perp, m));
  };

  ExperimentRecord r{};
  r.overlaps.c_ab = born(e.rho_a, e.m_b);
  r.overlaps.c_ba = born(e.rho_b, e.m_a);
  r.overlaps.c_aabb = born(e.rho_aa, e.m_bb);
  r.overlaps.c_bbaa = born(e.rho_bb, e.m_aa);

  r.budget.eps_a = eps(e.rho_a, e.rho_a_perp, e.m_a);
  r.budget.eps_b = eps(e.rho_b, e.rho_b_perp, e.m_b);
  r.budget.eps_alpha = eps(e.rho_alpha, e.rho_alpha_perp, e.m_alpha);
  r.budget.eps_beta = eps(e.rho_beta, e.rho_beta_perp, e.m_beta);
  r.budget.eps_aa = std::max(eps(e.rho_aa, e.rho_aa_perp, e.m_aa),
                             eps(e.rho_aa, e.rho_aa_perp_alt, e.m_aa));
  r.budget.eps_bb = std::max(eps(e.rho_bb, e.rho_bb_perp, e.m_bb),
                             eps(e.rho_bb, e.rho_bb_perp_alt, e.m_bb));

  r.c_alpha_aa = born(e.rho_alpha, e.m_aa);
  r.c_beta_bb = born(e.rho_beta, e.m_bb);
  r.f_global = 0.5 * r.c_alpha_aa + 0.5 * r.c_beta_bb;
  r.o2_residual = equivalence_residuals(e).max();
  r.degenerate = e.degenerate;
  return r;
}

ExperimentRecord simulate_confusabilities(NoiseLevel v, double c_ab) {
  return simulate_confusabilities(noisy_ensemble(v, c_ab));
}

double observed_input_confusability(double v, double c_ab) {
  return (1.0 - v) * (1.0 - v) * c_ab + v * (1.0 - v) + 0.5 * v * v;
}

double observed_target_confusability(double v, double c_ab) {
  const double keep = 1.0 - v;
  return keep * keep * keep * c_ab * c_ab + 0.25 * v * (3.0 - 3.0 * v + v * v);
}

}  // namespace cloning::quantum
