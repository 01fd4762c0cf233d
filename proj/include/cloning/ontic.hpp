#pragma once

// Discretized ontological models. Ontic states live on a uniform grid over
// [0,2] (inputs) or [0,2]^2 (two-copy outputs); densities, response
// functions and transition kernels are piecewise constant on the cells and
// all integrals are exact cell sums.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cloning/kernels.hpp"

namespace cloning::ontic {

inline constexpr double kStructuralTol = 1e-9;

class LambdaGrid {
 public:
  LambdaGrid(int dimension, int resolution);

  int dimension() const { return dim_; }
  int resolution() const { return n_; }
  double cell_width() const { return 2.0 / n_; }
  /// h^dimension
  double cell_measure() const;
  std::size_t cells() const;

  friend bool operator==(const LambdaGrid&, const LambdaGrid&) = default;

 private:
  int dim_;
  int n_;
};

/// Probability density over the grid: nonnegative, integrates to 1.
class EpistemicState {
 public:
  EpistemicState(LambdaGrid grid, std::vector<double> density);

  static EpistemicState uniform(const LambdaGrid& grid);
  /// Unit density on the cells flagged in `support`; requires total area 1.
  static EpistemicState indicator(const LambdaGrid& grid, const std::vector<bool>& support);

  const LambdaGrid& grid() const { return grid_; }
  std::span<const double> density() const { return density_; }
  std::vector<double> masses() const;
  std::vector<bool> support() const;

 private:
  LambdaGrid grid_;
  std::vector<double> density_;
};

/// Probability of outcome 1 at each cell, values in [0, 1].
class ResponseFunction {
 public:
  ResponseFunction(LambdaGrid grid, std::vector<double> values);

  static ResponseFunction indicator(const LambdaGrid& grid, const std::vector<bool>& support);
  static ResponseFunction constant(const LambdaGrid& grid, double value);

  const LambdaGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }

 private:
  LambdaGrid grid_;
  std::vector<double> values_;
};

/// Transition probabilities between cells of a source and target grid,
/// stored sparsely. Every source row sums to 1.
class StochasticMap {
 public:
  StochasticMap(LambdaGrid source, LambdaGrid target, kernels::Csr kernel);

  static StochasticMap identity(const LambdaGrid& grid);
  /// Dense row-major kernel (source cells x target cells).
  static StochasticMap dense(const LambdaGrid& source, const LambdaGrid& target,
                             const std::vector<double>& rows);

  const LambdaGrid& source() const { return source_; }
  const LambdaGrid& target() const { return target_; }
  const kernels::Csr& kernel() const { return kernel_; }
  const kernels::Csr& kernel_transposed() const { return kernel_t_; }

 private:
  LambdaGrid source_;
  LambdaGrid target_;
  kernels::Csr kernel_;
  kernels::Csr kernel_t_;
};

enum class Prep { a, b, a_perp, b_perp, alpha, beta, alpha_perp, beta_perp, aa, bb, aa_perp, bb_perp };
enum class Test { a, b, alpha, beta, aa, bb };

std::string_view to_string(Prep p);
std::string_view to_string(Test t);
std::optional<Prep> prep_from_string(std::string_view s);
std::optional<Test> test_from_string(std::string_view s);
Prep prep_of(Test t);
Prep perp_of(Test t);

struct EquivalencePair {
  Test s;
  Test t;
};

struct OnticModel {
  LambdaGrid input_grid;
  LambdaGrid output_grid;
  std::map<Prep, EpistemicState> states;
  std::map<Test, ResponseFunction> responses;
  std::optional<StochasticMap> cloner;
  std::vector<EquivalencePair> pairs;
  double c_requested = 0.0;
  double c_used = 0.0;
  std::vector<std::string> warnings;

  const EpistemicState& state(Prep p) const;
  const ResponseFunction& response(Test t) const;
  void validate() const;
};

double l1_distance(const EpistemicState& mu, const EpistemicState& nu);
double confusability(const EpistemicState& mu, const ResponseFunction& xi);
EpistemicState apply_map(const StochasticMap& t, const EpistemicState& mu);

namespace serial {
double l1_distance(const EpistemicState& mu, const EpistemicState& nu);
double confusability(const EpistemicState& mu, const ResponseFunction& xi);
EpistemicState apply_map(const StochasticMap& t, const EpistemicState& mu);
}  // namespace serial

/// Half the cloning test pass rate: (c_{alpha,aa} + c_{beta,bb}) / 2.
double global_fidelity(const OnticModel& model);

struct O1Entry {
  Test test;
  double pass;       // p(M_s | P_s)
  double perp_pass;  // p(M_s | P_s_perp)
  double residual() const;
};

struct O1Report {
  std::vector<O1Entry> entries;
  double tolerance;
  double max_residual() const;
  bool ok() const { return max_residual() <= tolerance; }
  const O1Entry& at(Test t) const;
};

O1Report check_O1(const OnticModel& model, double tol = kStructuralTol);

struct O2Entry {
  EquivalencePair pair;
  double residual;  // max over cells
};

struct O2Report {
  std::vector<O2Entry> entries;
  double tolerance;
  double max_residual() const;
  bool ok() const { return max_residual() <= tolerance; }
};

O2Report check_O2(const OnticModel& model, double tol = kStructuralTol);

/// Max over cells of |(mu_s + mu_s_perp) - (mu_t + mu_t_perp)| / 2.
double equivalence_residual(const OnticModel& model, EquivalencePair pair);

struct SaturatingModel {
  OnticModel model;
  int overlap_cells;  // c_used * n / 2
};

/// The noncontextual model reaching F_g = 1 - c/2 + c^2/2. The resolution
/// must be even and >= 4; c is snapped to the nearest multiple of 2/n.
SaturatingModel build_saturating_model(double c_ab, int resolution);

/// The saturating cloner: lambda in S_a \ S_b goes to (lambda, lambda' ~ mu_a),
/// every other lambda to (lambda, lambda' ~ mu_b).
StochasticMap saturating_cloner(int resolution, int overlap_cells);

struct IdealSandwich {
  double l1;
  double confusability;
  double residual;   // |l1 - 2(1 - c)|
  double tolerance;  // 4h
  bool pass() const { return residual <= tolerance; }
};

/// Requires O1 and O2 to hold at kStructuralTol; throws std::logic_error otherwise.
IdealSandwich verify_sandwich_ideal(const OnticModel& model, EquivalencePair pair);

enum class SandwichMode { full, lower_only };

struct NoisySandwich {
  double l1;
  double c_st;
  double c_ts;
  double lower;         // 2 max{1 - c_st - eps_t, 1 - c_ts - eps_s}
  double upper;         // 2 min{1 - c_st + eps_t, 1 - c_ts + eps_s}
  double lower_margin;  // l1 - lower
  double upper_margin;  // upper - l1
  double slack;         // 4h
  SandwichMode mode;
  bool pass() const;
};

/// Two-sided l1/confusability relation under O1 residuals eps_s, eps_t.
/// In lower_only mode the O2 precondition is not required.
NoisySandwich verify_sandwich_noisy(const OnticModel& model, EquivalencePair pair, double eps_s,
                                    double eps_t, SandwichMode mode = SandwichMode::full);

/// Every epistemic state replaced by (1 - w) mu + w * uniform.
OnticModel mix_with_uniform(const OnticModel& model, double w);

struct DpiResult {
  double before;
  double after;
  bool holds;
};

DpiResult dpi_check(const StochasticMap& t, const EpistemicState& mu, const EpistemicState& nu);

}  // namespace cloning::ontic
