#include "cloning/scan.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "cloning/bounds.hpp"
#include "cloning/kernels.hpp"
#include "cloning/quantum.hpp"

namespace cloning::scan {

std::string_view to_string(ErrMode m) {
  switch (m) {
    case ErrMode::thm2_direct: return "thm2-direct";
    case ErrMode::appendix_err: return "appendix-err";
    case ErrMode::err_prime: return "err-prime";
  }
  return "?";
}

std::string_view to_string(CMode m) {
  switch (m) {
    case CMode::ideal_overlap: return "ideal-overlap";
    case CMode::observed_confusability: return "observed-confusability";
  }
  return "?";
}

std::optional<ErrMode> err_mode_from_string(std::string_view s) {
  for (ErrMode m : kAllErrModes) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::optional<CMode> c_mode_from_string(std::string_view s) {
  for (CMode m : kAllCModes) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

namespace {

void require_sorted_unit_grid(const std::vector<double>& g, const char* name) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    bounds::require_probability(g[i], name);
    if (i > 0 && !(g[i] > g[i - 1])) {
      throw std::invalid_argument(fmt::format("{} must be strictly increasing", name));
    }
  }
}

}  // namespace

void SweepSpec::validate() const {
  require_sorted_unit_grid(c_grid, "c-grid");
  require_sorted_unit_grid(v_grid, "v-grid");
}

std::string SweepSpec::mode_label() const {
  return fmt::format("err-mode={},c-mode={}", to_string(err_mode), to_string(c_mode));
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least two points");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

double noisy_nc_bound(double v, double c, ErrMode err, CMode cm) {
  bounds::OverlapParams ov = bounds::OverlapParams::symmetric(c);
  if (cm == CMode::observed_confusability) {
    const double cab = quantum::observed_input_confusability(v, c);
    const double caabb = quantum::observed_target_confusability(v, c);
    ov = bounds::OverlapParams{cab, cab, caabb, caabb};
  }
  const bounds::ErrorBudget zero{};
  const double base = bounds::nc_bound_noisy(ov, zero).value;
  const bounds::ErrTerms e = bounds::err_terms(v);
  switch (err) {
    case ErrMode::thm2_direct: return bounds::nc_bound_noisy(ov, bounds::depolarizing_epsilons(v)).value;
    case ErrMode::appendix_err: return base + e.err_appendix;
    case ErrMode::err_prime: return base + e.err_prime;
  }
  throw std::logic_error("noisy_nc_bound: unknown err-mode");
}

double violation_gap(double v, double c, ErrMode err, CMode cm) {
  return bounds::quantum_noisy_fidelity(v, c) - noisy_nc_bound(v, c, err, cm);
}

void CurveSeries::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [x, y] = points[i];
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw std::invalid_argument(fmt::format("CurveSeries {}: non-finite point", label));
    }
    if (i > 0 && !(x > points[i - 1].first)) {
      throw std::invalid_argument(fmt::format("CurveSeries {}: abscissa not increasing", label));
    }
  }
}

FidelityCurves fidelity_curves(const std::vector<double>& c_grid) {
  require_sorted_unit_grid(c_grid, "c-grid");
  const auto q = kernels::parallel::tabulate(c_grid, [](double c) {
    return bounds::quantum_optimal_fidelity(c);
  });
  const auto nc = kernels::parallel::tabulate(c_grid, [](double c) {
    return bounds::nc_bound_ideal(c, c * c);
  });
  FidelityCurves out{{"quantum", "c_ab", "F_g", "optimal-quantum", {}},
                     {"noncontextual", "c_ab", "F_g", "nc-ideal(c_aabb=c^2)", {}}};
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    out.quantum.points.emplace_back(c_grid[i], q[i]);
    out.noncontextual.points.emplace_back(c_grid[i], nc[i]);
  }
  return out;
}

namespace serial {
std::vector<double> gap_profile(double v, std::span<const double> c_grid, ErrMode err, CMode cm) {
  return kernels::serial::tabulate(c_grid, [&](double c) { return violation_gap(v, c, err, cm); });
}
}  // namespace serial

namespace parallel {
std::vector<double> gap_profile(double v, std::span<const double> c_grid, ErrMode err, CMode cm) {
  return kernels::parallel::tabulate(c_grid, [&](double c) { return violation_gap(v, c, err, cm); });
}
}  // namespace parallel

namespace {

// Boundary between a non-violating point `out` (g <= 0) and a violating
// point `in` (g > 0).
template <class G>
double bisect_boundary(G g, double out, double in) {
  auto f = [&](double x) { return g(x) > 0.0 ? 1.0 : -1.0; };
  auto tol = [](double a, double b) { return std::abs(b - a) <= kAbscissaTol; };
  const auto [lo, hi] = boost::math::tools::bisect(f, std::min(out, in), std::max(out, in), tol);
  return 0.5 * (lo + hi);
}

}  // namespace

ViolationRegion violation_interval(double v, const SweepSpec& spec) {
  bounds::require_probability(v, "v");
  ViolationRegion r;
  r.v = v;
  r.err_mode = spec.err_mode;
  r.c_mode = spec.c_mode;

  const std::vector<double> cs = linspace(0.0, 1.0, kPrescanPoints);
  const std::vector<double> gs = parallel::gap_profile(v, cs, spec.err_mode, spec.c_mode);
  auto g = [&](double c) { return violation_gap(v, c, spec.err_mode, spec.c_mode); };

  for (std::size_t i = 0; i < cs.size(); ++i) {
    const bool inside = gs[i] > 0.0;
    const bool prev_inside = i > 0 && gs[i - 1] > 0.0;
    if (inside && !prev_inside) {
      r.roots.push_back(i == 0 ? cs[0] : bisect_boundary(g, cs[i - 1], cs[i]));
    }
    if (inside && (i + 1 == cs.size() || gs[i + 1] <= 0.0)) {
      r.roots.push_back(i + 1 == cs.size() ? cs[i] : bisect_boundary(g, cs[i + 1], cs[i]));
    }
  }
  if (r.roots.empty()) return r;
  r.empty = false;
  r.c_lo = r.roots.front();
  r.c_hi = r.roots.back();
  r.anomaly = r.roots.size() > 2;
  return r;
}

CriticalNoise critical_noise(double c_ab, const SweepSpec& spec) {
  bounds::require_probability(c_ab, "c_ab");
  CriticalNoise out;
  out.c = c_ab;

  const std::vector<double> vs = linspace(0.0, 1.0, kPrescanPoints);
  auto g = [&](double v) { return violation_gap(v, c_ab, spec.err_mode, spec.c_mode); };
  std::vector<double> gs(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) gs[i] = g(vs[i]);

  for (std::size_t i = 1; i < gs.size(); ++i) {
    if (gs[i] > gs[i - 1] + 1e-12) {
      out.monotone = false;
      break;
    }
  }

  // Largest grid index still violating; on a monotone profile this is the
  // single crossing, otherwise the grid scan picks the last one.
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (gs[i] > 0.0) last = i;
  }
  if (!last) return out;
  if (*last + 1 == vs.size()) {
    out.v_star = 1.0;
    return out;
  }
  out.v_star = bisect_boundary(g, vs[*last + 1], vs[*last]);
  return out;
}

CurveSeries critical_noise_curve(const SweepSpec& spec) {
  spec.validate();
  const auto vstar = kernels::parallel::tabulate(spec.c_grid, [&](double c) {
    return critical_noise(c, spec).v_star;
  });
  CurveSeries s{"critical-noise", "c_ab", "v_star", spec.mode_label(), {}};
  for (std::size_t i = 0; i < spec.c_grid.size(); ++i) s.points.emplace_back(spec.c_grid[i], vstar[i]);
  return s;
}

std::vector<ModeMatch> rank_modes(double v, double target_lo, double target_hi) {
  std::vector<ModeMatch> out;
  for (ErrMode e : kAllErrModes) {
    for (CMode c : kAllCModes) {
      SweepSpec spec;
      spec.err_mode = e;
      spec.c_mode = c;
      ViolationRegion r = violation_interval(v, spec);
      const double err = r.empty ? std::numeric_limits<double>::infinity()
                                 : std::max(std::abs(r.c_lo - target_lo), std::abs(r.c_hi - target_hi));
      out.push_back(ModeMatch{e, c, std::move(r), err});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ModeMatch& a, const ModeMatch& b) { return a.endpoint_error < b.endpoint_error; });
  return out;
}

}  // namespace cloning::scan
