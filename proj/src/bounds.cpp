#include "cloning/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cloning::bounds {

void require_probability(double x, const char* name) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1], got " +
                            std::to_string(x));
  }
}

OverlapParams OverlapParams::symmetric(double c) {
  require_probability(c, "c");
  return OverlapParams{c, c, c * c, c * c};
}

void OverlapParams::validate() const {
  require_probability(c_ab, "c_ab");
  require_probability(c_ba, "c_ba");
  require_probability(c_aabb, "c_aabb");
  require_probability(c_bbaa, "c_bbaa");
}

ErrorBudget ErrorBudget::uniform(double eps) {
  require_probability(eps, "eps");
  return ErrorBudget{eps, eps, eps, eps, eps, eps};
}

void ErrorBudget::validate() const {
  require_probability(eps_a, "eps_a");
  require_probability(eps_b, "eps_b");
  require_probability(eps_alpha, "eps_alpha");
  require_probability(eps_beta, "eps_beta");
  require_probability(eps_aa, "eps_aa");
  require_probability(eps_bb, "eps_bb");
}

BoundValue BoundValue::from_raw(double raw) {
  return BoundValue{raw, raw > 1.0};
}

double quantum_optimal_fidelity(double c_ab) {
  require_probability(c_ab, "c_ab");
  const double s = std::sqrt(c_ab);
  const double sum = std::sqrt((1.0 + c_ab) * (1.0 + s)) +
                     std::sqrt((1.0 - c_ab) * (1.0 - s));
  return 0.25 * sum * sum;
}

double nc_bound_ideal(double c_ab, double c_aabb) {
  require_probability(c_ab, "c_ab");
  require_probability(c_aabb, "c_aabb");
  return 1.0 - 0.5 * c_ab + 0.5 * c_aabb;
}

BoundValue nc_bound_noisy(const OverlapParams& ov, const ErrorBudget& eb) {
  ov.validate();
  eb.validate();
  const double err = 0.5 * (eb.eps_b + 2.0 * eb.eps_bb + eb.eps_aa);
  return BoundValue::from_raw(1.0 - 0.5 * ov.c_ab + 0.5 * ov.c_aabb + err);
}

BoundValue nc_bound_noisy_symmetric(const OverlapParams& ov, const ErrorBudget& eb) {
  ov.validate();
  eb.validate();
  const double input_term = std::min(eb.eps_b - ov.c_ab, eb.eps_a - ov.c_ba);
  const double target_term = std::min(ov.c_aabb + eb.eps_bb, ov.c_bbaa + eb.eps_aa);
  return BoundValue::from_raw(1.0 + 0.5 * input_term + 0.5 * target_term +
                              0.5 * (eb.eps_aa + eb.eps_bb));
}

double nc_discrimination_bound(double c_ab, double eps_b) {
  require_probability(c_ab, "c_ab");
  require_probability(eps_b, "eps_b");
  return 1.0 - 0.5 * (c_ab - eps_b);
}

ErrorBudget depolarizing_epsilons(double v) {
  require_probability(v, "v");
  const double input = v - 0.5 * v * v;
  const double output = 0.75 * v * (3.0 - 3.0 * v + v * v);
  return ErrorBudget{input, input, output, output, output, output};
}

ErrTerms err_terms(double v) {
  const ErrorBudget eb = depolarizing_epsilons(v);
  const double q = 31.0 - 21.0 * v + 9.0 * v * v;
  ErrTerms out;
  out.err_thm2 = 0.5 * (eb.eps_b + 2.0 * eb.eps_bb + eb.eps_aa);
  out.err_appendix = 0.5 * v * (31.0 - 29.0 * v + 9.0 * v * v);
  out.err_prime = v * q / 8.0;
  out.eps_effective = v * q / 16.0;
  return out;
}

double quantum_noisy_fidelity(double v, double c_ab) {
  require_probability(v, "v");
  const double keep = 1.0 - v;
  return keep * keep * keep * quantum_optimal_fidelity(c_ab) +
         0.25 * v * (3.0 - 3.0 * v + v * v);
}

}  // namespace cloning::bounds
