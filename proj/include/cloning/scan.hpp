#pragma once

// Sweeps over the input confusability c and the noise level v: the ideal
// fidelity tradeoff curves, the interval of c where the noisy quantum
// cloner beats the noise-robust noncontextual bound, and the largest noise
// that still leaves a violation at a given c.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cloning::scan {

/// Which error term is added to the noncontextual bound.
enum class ErrMode {
  thm2_direct,   // (eps_b + 2 eps_bb + eps_aa) / 2 with depolarizing epsilons
  appendix_err,  // v (31 - 29 v + 9 v^2) / 2
  err_prime,     // v (31 - 21 v + 9 v^2) / 8
};

/// Which confusabilities feed the bound.
enum class CMode {
  ideal_overlap,           // c_ab = c, c_aa,bb = c^2
  observed_confusability,  // Born-rule values of the noisy experiment
};

std::string_view to_string(ErrMode m);
std::string_view to_string(CMode m);
std::optional<ErrMode> err_mode_from_string(std::string_view s);
std::optional<CMode> c_mode_from_string(std::string_view s);

inline constexpr ErrMode kAllErrModes[] = {ErrMode::thm2_direct, ErrMode::appendix_err,
                                           ErrMode::err_prime};
inline constexpr CMode kAllCModes[] = {CMode::ideal_overlap, CMode::observed_confusability};

struct SweepSpec {
  std::vector<double> c_grid;
  std::vector<double> v_grid;
  ErrMode err_mode = ErrMode::thm2_direct;
  CMode c_mode = CMode::observed_confusability;

  void validate() const;
  std::string mode_label() const;
};

inline constexpr int kPrescanPoints = 1000;
inline constexpr double kAbscissaTol = 1e-6;

/// n evenly spaced points on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, int n);

/// Noise-robust noncontextual bound at confusability c and noise v (raw, unclamped).
double noisy_nc_bound(double v, double c, ErrMode err, CMode cm);

/// F_Q,noisy(v, c) minus the noisy noncontextual bound; positive means violation.
double violation_gap(double v, double c, ErrMode err, CMode cm);

struct CurveSeries {
  std::string label;
  std::string x_label;
  std::string y_label;
  std::string mode;
  std::vector<std::pair<double, double>> points;

  void validate() const;
};

struct FidelityCurves {
  CurveSeries quantum;
  CurveSeries noncontextual;
};

FidelityCurves fidelity_curves(const std::vector<double>& c_grid);

struct ViolationRegion {
  double v = 0.0;
  bool empty = true;
  double c_lo = 0.0;
  double c_hi = 0.0;
  /// All boundary points found; more than two means the region is not an interval.
  std::vector<double> roots;
  bool anomaly = false;
  ErrMode err_mode = ErrMode::thm2_direct;
  CMode c_mode = CMode::observed_confusability;

  bool contains(double c) const { return !empty && c >= c_lo && c <= c_hi; }
};

ViolationRegion violation_interval(double v, const SweepSpec& spec);

struct CriticalNoise {
  double c = 0.0;
  double v_star = 0.0;
  bool monotone = true;  // gap was nonincreasing in v on the pre-scan
};

CriticalNoise critical_noise(double c_ab, const SweepSpec& spec);

/// v*(c) over the spec's c-grid.
CurveSeries critical_noise_curve(const SweepSpec& spec);

namespace serial {
std::vector<double> gap_profile(double v, std::span<const double> c_grid, ErrMode err, CMode cm);
}
namespace parallel {
std::vector<double> gap_profile(double v, std::span<const double> c_grid, ErrMode err, CMode cm);
}

/// The (err-mode, c-mode) pair whose interval at v is closest (max endpoint
/// error) to the target interval, with that error.
struct ModeMatch {
  ErrMode err_mode;
  CMode c_mode;
  ViolationRegion region;
  double endpoint_error;
};

std::vector<ModeMatch> rank_modes(double v, double target_lo, double target_hi);

}  // namespace cloning::scan
