#pragma once

// Closed-form fidelity bounds for state-dependent cloning: the optimal
// quantum value, the noncontextual bounds (ideal and noise-robust), the
// discrimination bound, and the depolarizing-noise error terms.
//
// Every function here is pure. Out-of-range probabilities raise
// std::domain_error.

namespace cloning::bounds {

/// Observed confusabilities. c_ab = p(M_b | P_a), c_aabb = p(M_bb | P_aa);
/// the *_ba / *_bbaa fields are the exchanged versions.
struct OverlapParams {
  double c_ab = 0.0;
  double c_ba = 0.0;
  double c_aabb = 0.0;
  double c_bbaa = 0.0;

  /// c_ab = c_ba = c and c_aabb = c_bbaa = c^2, as seen in the ideal
  /// quantum experiment.
  static OverlapParams symmetric(double c);

  void validate() const;
};

/// Per-test noise parameters: p(M_s|P_s) >= 1 - eps_s and
/// p(M_s|P_s_perp) <= eps_s.
struct ErrorBudget {
  double eps_a = 0.0;
  double eps_b = 0.0;
  double eps_alpha = 0.0;
  double eps_beta = 0.0;
  double eps_aa = 0.0;
  double eps_bb = 0.0;

  static ErrorBudget uniform(double eps);

  void validate() const;
};

/// A bound that may exceed 1 for large error budgets. The raw value is kept
/// and `clamped` records that the bound is vacuous.
struct BoundValue {
  double value = 0.0;
  bool clamped = false;

  static BoundValue from_raw(double raw);
};

struct ErrTerms {
  double err_thm2 = 0.0;       // (eps_b + 2 eps_bb + eps_aa) / 2 with depolarizing epsilons
  double err_appendix = 0.0;   // v (31 - 29 v + 9 v^2) / 2
  double err_prime = 0.0;      // v (31 - 21 v + 9 v^2) / 8
  double eps_effective = 0.0;  // v (31 - 21 v + 9 v^2) / 16
};

double quantum_optimal_fidelity(double c_ab);

double nc_bound_ideal(double c_ab, double c_aabb);

BoundValue nc_bound_noisy(const OverlapParams& ov, const ErrorBudget& eb);

/// Min-form bound; never larger than nc_bound_noisy on the same inputs.
BoundValue nc_bound_noisy_symmetric(const OverlapParams& ov, const ErrorBudget& eb);

double nc_discrimination_bound(double c_ab, double eps_b);

ErrorBudget depolarizing_epsilons(double v);

ErrTerms err_terms(double v);

/// Global fidelity of the noiselessly-optimal cloner when preparations,
/// transformation and measurements all pass through a depolarizing channel.
double quantum_noisy_fidelity(double v, double c_ab);

/// Throws std::domain_error unless x is a finite value in [0, 1].
void require_probability(double x, const char* name);

}  // namespace cloning::bounds
