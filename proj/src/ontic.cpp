#include "cloning/ontic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "cloning/bounds.hpp"

namespace cloning::ontic {

// --- grid and value types ----------------------------------------------------

LambdaGrid::LambdaGrid(int dimension, int resolution) : dim_(dimension), n_(resolution) {
  if (dim_ != 1 && dim_ != 2) throw std::invalid_argument("LambdaGrid: dimension must be 1 or 2");
  if (n_ < 4) throw std::invalid_argument("LambdaGrid: resolution must be at least 4");
}

double LambdaGrid::cell_measure() const {
  const double h = cell_width();
  return dim_ == 1 ? h : h * h;
}

std::size_t LambdaGrid::cells() const {
  const auto n = static_cast<std::size_t>(n_);
  return dim_ == 1 ? n : n * n;
}

EpistemicState::EpistemicState(LambdaGrid grid, std::vector<double> density)
    : grid_(grid), density_(std::move(density)) {
  if (density_.size() != grid_.cells()) {
    throw std::invalid_argument("EpistemicState: density size does not match the grid");
  }
  for (double d : density_) {
    if (!std::isfinite(d) || d < 0.0) {
      throw std::invalid_argument("EpistemicState: density must be finite and nonnegative");
    }
  }
  const double total = kernels::serial::sum(density_) * grid_.cell_measure();
  if (std::abs(total - 1.0) > kStructuralTol) {
    throw std::invalid_argument(fmt::format("EpistemicState: total mass {:.12g} is not 1", total));
  }
}

EpistemicState EpistemicState::uniform(const LambdaGrid& grid) {
  const double area = grid.dimension() == 1 ? 2.0 : 4.0;
  return EpistemicState(grid, std::vector<double>(grid.cells(), 1.0 / area));
}

EpistemicState EpistemicState::indicator(const LambdaGrid& grid, const std::vector<bool>& support) {
  std::vector<double> d(support.size());
  std::transform(support.begin(), support.end(), d.begin(), [](bool s) { return s ? 1.0 : 0.0; });
  return EpistemicState(grid, std::move(d));
}

std::vector<double> EpistemicState::masses() const {
  std::vector<double> m(density_);
  const double dv = grid_.cell_measure();
  for (double& x : m) x *= dv;
  return m;
}

std::vector<bool> EpistemicState::support() const {
  std::vector<bool> s(density_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = density_[i] > 0.0;
  return s;
}

ResponseFunction::ResponseFunction(LambdaGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cells()) {
    throw std::invalid_argument("ResponseFunction: size does not match the grid");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("ResponseFunction: value outside [0, 1]");
  }
}

ResponseFunction ResponseFunction::indicator(const LambdaGrid& grid,
                                             const std::vector<bool>& support) {
  std::vector<double> v(support.size());
  std::transform(support.begin(), support.end(), v.begin(), [](bool s) { return s ? 1.0 : 0.0; });
  return ResponseFunction(grid, std::move(v));
}

ResponseFunction ResponseFunction::constant(const LambdaGrid& grid, double value) {
  return ResponseFunction(grid, std::vector<double>(grid.cells(), value));
}

StochasticMap::StochasticMap(LambdaGrid source, LambdaGrid target, kernels::Csr kernel)
    : source_(source), target_(target), kernel_(std::move(kernel)) {
  if (kernel_.rows != source_.cells() || kernel_.cols != target_.cells() ||
      kernel_.row_ptr.size() != kernel_.rows + 1) {
    throw std::invalid_argument("StochasticMap: kernel shape does not match the grids");
  }
  for (std::size_t r = 0; r < kernel_.rows; ++r) {
    double row = 0.0;
    for (std::size_t k = kernel_.row_ptr[r]; k < kernel_.row_ptr[r + 1]; ++k) {
      const double p = kernel_.values[k];
      if (!std::isfinite(p) || p < 0.0 || kernel_.col_idx[k] >= kernel_.cols) {
        throw std::invalid_argument("StochasticMap: invalid kernel entry");
      }
      row += p;
    }
    if (std::abs(row - 1.0) > kStructuralTol) {
      throw std::invalid_argument(fmt::format("StochasticMap: row {} sums to {:.12g}", r, row));
    }
  }
  kernel_t_ = kernel_.transposed();
}

StochasticMap StochasticMap::identity(const LambdaGrid& grid) {
  kernels::Csr k;
  k.rows = k.cols = grid.cells();
  k.row_ptr.resize(k.rows + 1);
  for (std::size_t i = 0; i <= k.rows; ++i) k.row_ptr[i] = i;
  k.col_idx.resize(k.rows);
  for (std::size_t i = 0; i < k.rows; ++i) k.col_idx[i] = i;
  k.values.assign(k.rows, 1.0);
  return StochasticMap(grid, grid, std::move(k));
}

StochasticMap StochasticMap::dense(const LambdaGrid& source, const LambdaGrid& target,
                                   const std::vector<double>& rows) {
  const std::size_t ns = source.cells(), nt = target.cells();
  if (rows.size() != ns * nt) throw std::invalid_argument("StochasticMap::dense: size mismatch");
  kernels::Csr k;
  k.rows = ns;
  k.cols = nt;
  k.row_ptr.push_back(0);
  for (std::size_t r = 0; r < ns; ++r) {
    for (std::size_t c = 0; c < nt; ++c) {
      if (rows[r * nt + c] != 0.0) {
        k.col_idx.push_back(c);
        k.values.push_back(rows[r * nt + c]);
      }
    }
    k.row_ptr.push_back(k.col_idx.size());
  }
  return StochasticMap(source, target, std::move(k));
}

// --- labels ------------------------------------------------------------------

namespace {

constexpr std::array<std::pair<Prep, std::string_view>, 12> kPrepNames{{
    {Prep::a, "a"},
    {Prep::b, "b"},
    {Prep::a_perp, "a_perp"},
    {Prep::b_perp, "b_perp"},
    {Prep::alpha, "alpha"},
    {Prep::beta, "beta"},
    {Prep::alpha_perp, "alpha_perp"},
    {Prep::beta_perp, "beta_perp"},
    {Prep::aa, "aa"},
    {Prep::bb, "bb"},
    {Prep::aa_perp, "aa_perp"},
    {Prep::bb_perp, "bb_perp"},
}};

constexpr std::array<std::pair<Test, std::string_view>, 6> kTestNames{{
    {Test::a, "a"},
    {Test::b, "b"},
    {Test::alpha, "alpha"},
    {Test::beta, "beta"},
    {Test::aa, "aa"},
    {Test::bb, "bb"},
}};

}  // namespace

std::string_view to_string(Prep p) {
  for (const auto& [k, name] : kPrepNames) {
    if (k == p) return name;
  }
  return "?";
}

std::string_view to_string(Test t) {
  for (const auto& [k, name] : kTestNames) {
    if (k == t) return name;
  }
  return "?";
}

std::optional<Prep> prep_from_string(std::string_view s) {
  for (const auto& [k, name] : kPrepNames) {
    if (name == s) return k;
  }
  return std::nullopt;
}

std::optional<Test> test_from_string(std::string_view s) {
  for (const auto& [k, name] : kTestNames) {
    if (name == s) return k;
  }
  return std::nullopt;
}

Prep prep_of(Test t) {
  switch (t) {
    case Test::a: return Prep::a;
    case Test::b: return Prep::b;
    case Test::alpha: return Prep::alpha;
    case Test::beta: return Prep::beta;
    case Test::aa: return Prep::aa;
    case Test::bb: return Prep::bb;
  }
  throw std::logic_error("prep_of: unknown test");
}

Prep perp_of(Test t) {
  switch (t) {
    case Test::a: return Prep::a_perp;
    case Test::b: return Prep::b_perp;
    case Test::alpha: return Prep::alpha_perp;
    case Test::beta: return Prep::beta_perp;
    case Test::aa: return Prep::aa_perp;
    case Test::bb: return Prep::bb_perp;
  }
  throw std::logic_error("perp_of: unknown test");
}

const EpistemicState& OnticModel::state(Prep p) const {
  auto it = states.find(p);
  if (it == states.end()) {
    throw std::out_of_range(fmt::format("OnticModel: no state for {}", to_string(p)));
  }
  return it->second;
}

const ResponseFunction& OnticModel::response(Test t) const {
  auto it = responses.find(t);
  if (it == responses.end()) {
    throw std::out_of_range(fmt::format("OnticModel: no response function for {}", to_string(t)));
  }
  return it->second;
}

void OnticModel::validate() const {
  for (const auto& [p, mu] : states) {
    const bool input = p == Prep::a || p == Prep::b || p == Prep::a_perp || p == Prep::b_perp;
    if (!(mu.grid() == (input ? input_grid : output_grid))) {
      throw std::invalid_argument(fmt::format("OnticModel: {} lives on the wrong grid", to_string(p)));
    }
  }
  for (const auto& pair : pairs) {
    for (Test t : {pair.s, pair.t}) {
      state(prep_of(t));
      state(perp_of(t));
    }
  }
  if (cloner && !(cloner->source() == input_grid && cloner->target() == output_grid)) {
    throw std::invalid_argument("OnticModel: cloner grids do not match the model");
  }
}

// --- quadrature --------------------------------------------------------------

namespace {

void require_same_grid(const LambdaGrid& x, const LambdaGrid& y, const char* what) {
  if (!(x == y)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace

double l1_distance(const EpistemicState& mu, const EpistemicState& nu) {
  require_same_grid(mu.grid(), nu.grid(), "l1_distance");
  return kernels::parallel::l1(mu.density(), nu.density()) * mu.grid().cell_measure();
}

double confusability(const EpistemicState& mu, const ResponseFunction& xi) {
  require_same_grid(mu.grid(), xi.grid(), "confusability");
  return kernels::parallel::dot(mu.density(), xi.values()) * mu.grid().cell_measure();
}

EpistemicState apply_map(const StochasticMap& t, const EpistemicState& mu) {
  require_same_grid(t.source(), mu.grid(), "apply_map");
  std::vector<double> out = kernels::parallel::pushforward(t.kernel_transposed(), mu.masses());
  const double inv = 1.0 / t.target().cell_measure();
  for (double& x : out) x *= inv;
  return EpistemicState(t.target(), std::move(out));
}

namespace serial {

double l1_distance(const EpistemicState& mu, const EpistemicState& nu) {
  require_same_grid(mu.grid(), nu.grid(), "l1_distance");
  return kernels::serial::l1(mu.density(), nu.density()) * mu.grid().cell_measure();
}

double confusability(const EpistemicState& mu, const ResponseFunction& xi) {
  require_same_grid(mu.grid(), xi.grid(), "confusability");
  return kernels::serial::dot(mu.density(), xi.values()) * mu.grid().cell_measure();
}

EpistemicState apply_map(const StochasticMap& t, const EpistemicState& mu) {
  require_same_grid(t.source(), mu.grid(), "apply_map");
  std::vector<double> out = kernels::serial::pushforward(t.kernel(), mu.masses());
  const double inv = 1.0 / t.target().cell_measure();
  for (double& x : out) x *= inv;
  return EpistemicState(t.target(), std::move(out));
}

}  // namespace serial

double global_fidelity(const OnticModel& model) {
  return 0.5 * confusability(model.state(Prep::alpha), model.response(Test::aa)) +
         0.5 * confusability(model.state(Prep::beta), model.response(Test::bb));
}

// --- O1 / O2 -----------------------------------------------------------------

double O1Entry::residual() const { return std::max(1.0 - pass, perp_pass); }

double O1Report::max_residual() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.residual());
  return m;
}

const O1Entry& O1Report::at(Test t) const {
  for (const auto& e : entries) {
    if (e.test == t) return e;
  }
  throw std::out_of_range(fmt::format("O1Report: no entry for {}", to_string(t)));
}

O1Report check_O1(const OnticModel& model, double tol) {
  O1Report r{{}, tol};
  for (const auto& [t, xi] : model.responses) {
    auto s = model.states.find(prep_of(t));
    auto sp = model.states.find(perp_of(t));
    if (s == model.states.end() || sp == model.states.end()) continue;
    r.entries.push_back(O1Entry{t, confusability(s->second, xi), confusability(sp->second, xi)});
  }
  return r;
}

double equivalence_residual(const OnticModel& model, EquivalencePair pair) {
  const auto lhs_a = model.state(prep_of(pair.s)).density();
  const auto lhs_b = model.state(perp_of(pair.s)).density();
  const auto rhs_a = model.state(prep_of(pair.t)).density();
  const auto rhs_b = model.state(perp_of(pair.t)).density();
  if (lhs_a.size() != rhs_a.size()) {
    throw std::invalid_argument("equivalence_residual: pair spans different grids");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs_a.size(); ++i) {
    worst = std::max(worst, 0.5 * std::abs(lhs_a[i] + lhs_b[i] - rhs_a[i] - rhs_b[i]));
  }
  return worst;
}

double O2Report::max_residual() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.residual);
  return m;
}

O2Report check_O2(const OnticModel& model, double tol) {
  O2Report r{{}, tol};
  for (const auto& pair : model.pairs) r.entries.push_back({pair, equivalence_residual(model, pair)});
  return r;
}

// --- saturating model --------------------------------------------------------

StochasticMap saturating_cloner(int n, int k) {
  const LambdaGrid in(1, n), out(2, n);
  const int u = n / 2;
  kernels::Csr csr;
  csr.rows = in.cells();
  csr.cols = out.cells();
  csr.row_ptr.push_back(0);
  const double p = 1.0 / u;
  for (int i = 0; i < n; ++i) {
    // second coordinate ~ mu_a on [0, u) or mu_b on [u - k, 2u - k)
    const int lo = i < u - k ? 0 : u - k;
    for (int j = lo; j < lo + u; ++j) {
      csr.col_idx.push_back(static_cast<std::size_t>(i) * n + j);
      csr.values.push_back(p);
    }
    csr.row_ptr.push_back(csr.col_idx.size());
  }
  return StochasticMap(in, out, std::move(csr));
}

SaturatingModel build_saturating_model(double c_ab, int n) {
  bounds::require_probability(c_ab, "c_ab");
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument(
        fmt::format("build_saturating_model: resolution {} must be even and >= 4", n));
  }
  const int u = n / 2;  // cells per unit length
  const int k = static_cast<int>(std::lround(c_ab * u));
  const double c_used = static_cast<double>(k) / u;

  OnticModel m{LambdaGrid(1, n), LambdaGrid(2, n), {}, {}, std::nullopt, {}, c_ab, c_used, {}};
  if (std::abs(c_used - c_ab) > 1e-12) {
    m.warnings.push_back(fmt::format(
        "c_ab = {} is not a multiple of the cell width 2/{}; snapped to {}", c_ab, n, c_used));
  }

  auto interval = [n](int lo, int hi) {
    std::vector<bool> s(n, false);
    for (int i = std::max(lo, 0); i < std::min(hi, n); ++i) s[i] = true;
    return s;
  };
  auto rect = [n](int x0, int x1, int y0, int y1) {
    std::vector<bool> s(static_cast<std::size_t>(n) * n, false);
    for (int i = x0; i < x1; ++i) {
      for (int j = y0; j < y1; ++j) s[static_cast<std::size_t>(i) * n + j] = true;
    }
    return s;
  };
  auto unite = [](std::vector<bool> x, const std::vector<bool>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] || y[i];
    return x;
  };
  // First `count` cells (row-major) of `allowed`.
  auto take = [](const std::vector<bool>& allowed, long count) {
    std::vector<bool> s(allowed.size(), false);
    for (std::size_t i = 0; i < allowed.size() && count > 0; ++i) {
      if (allowed[i]) {
        s[i] = true;
        --count;
      }
    }
    if (count != 0) throw std::logic_error("build_saturating_model: not enough free cells");
    return s;
  };

  // input layer on [0, 2]
  const auto s_a = interval(0, u);
  const auto s_b = interval(u - k, 2 * u - k);
  const auto s_a_perp = interval(u, 2 * u);
  const auto s_b_perp = unite(interval(0, u - k), interval(2 * u - k, 2 * u));
  const LambdaGrid& g1 = m.input_grid;
  m.states.emplace(Prep::a, EpistemicState::indicator(g1, s_a));
  m.states.emplace(Prep::b, EpistemicState::indicator(g1, s_b));
  m.states.emplace(Prep::a_perp, EpistemicState::indicator(g1, s_a_perp));
  m.states.emplace(Prep::b_perp, EpistemicState::indicator(g1, s_b_perp));
  m.responses.emplace(Test::a, ResponseFunction::indicator(g1, s_a));
  m.responses.emplace(Test::b, ResponseFunction::indicator(g1, s_b));

  // clone outputs on [0, 2]^2
  const LambdaGrid& g2 = m.output_grid;
  m.cloner = saturating_cloner(n, k);
  const EpistemicState alpha = apply_map(*m.cloner, m.state(Prep::a));
  const EpistemicState beta = apply_map(*m.cloner, m.state(Prep::b));
  const auto s_alpha = alpha.support();
  const auto s_beta = beta.support();
  const auto s_aa = rect(0, u, 0, u);
  const auto s_bb = rect(u - k, 2 * u - k, u - k, 2 * u - k);

  // Q: area 1 - c(1 - c) inside [1, 2] x [0, 2], shared by alpha_perp and aa_perp.
  const auto q = take(rect(u, 2 * u, 0, 2 * u), static_cast<long>(u) * u - static_cast<long>(k) * (u - k));
  const auto s_alpha_perp = unite(rect(u - k, u, 0, u - k), q);
  const auto s_aa_perp = unite(rect(u - k, u, u, 2 * u - k), q);
  std::vector<bool> outside_bb(s_bb.size());
  for (std::size_t i = 0; i < s_bb.size(); ++i) outside_bb[i] = !s_bb[i];
  const auto s_bb_perp = take(outside_bb, static_cast<long>(u) * u);

  m.states.emplace(Prep::alpha, alpha);
  m.states.emplace(Prep::beta, beta);
  m.states.emplace(Prep::alpha_perp, EpistemicState::indicator(g2, s_alpha_perp));
  m.states.emplace(Prep::beta_perp, EpistemicState::indicator(g2, s_bb_perp));
  m.states.emplace(Prep::aa, EpistemicState::indicator(g2, s_aa));
  m.states.emplace(Prep::bb, EpistemicState::indicator(g2, s_bb));
  m.states.emplace(Prep::aa_perp, EpistemicState::indicator(g2, s_aa_perp));
  m.states.emplace(Prep::bb_perp, EpistemicState::indicator(g2, s_bb_perp));
  m.responses.emplace(Test::alpha, ResponseFunction::indicator(g2, s_alpha));
  m.responses.emplace(Test::beta, ResponseFunction::indicator(g2, s_beta));
  m.responses.emplace(Test::aa, ResponseFunction::indicator(g2, s_aa));
  m.responses.emplace(Test::bb, ResponseFunction::indicator(g2, s_bb));

  m.pairs = {{Test::a, Test::b}, {Test::alpha, Test::aa}, {Test::beta, Test::bb}};
  m.validate();
  return SaturatingModel{std::move(m), k};
}

// --- sandwich relations ------------------------------------------------------

IdealSandwich verify_sandwich_ideal(const OnticModel& model, EquivalencePair pair) {
  const O1Report o1 = check_O1(model);
  const O2Report o2 = check_O2(model);
  if (!o1.ok() || !o2.ok()) {
    throw std::logic_error(fmt::format(
        "verify_sandwich_ideal: model violates O1/O2 (O1 residual {:.3g}, O2 residual {:.3g})",
        o1.max_residual(), o2.max_residual()));
  }
  const EpistemicState& mu = model.state(prep_of(pair.s));
  const EpistemicState& nu = model.state(prep_of(pair.t));
  IdealSandwich r{};
  r.l1 = l1_distance(mu, nu);
  r.confusability = confusability(mu, model.response(pair.t));
  r.residual = std::abs(r.l1 - 2.0 * (1.0 - r.confusability));
  r.tolerance = 4.0 * mu.grid().cell_width();
  return r;
}

bool NoisySandwich::pass() const {
  if (lower_margin < -slack) return false;
  return mode == SandwichMode::lower_only || upper_margin >= -slack;
}

NoisySandwich verify_sandwich_noisy(const OnticModel& model, EquivalencePair pair, double eps_s,
                                    double eps_t, SandwichMode mode) {
  bounds::require_probability(eps_s, "eps_s");
  bounds::require_probability(eps_t, "eps_t");
  const O1Report o1 = check_O1(model);
  constexpr double kRoundoff = 1e-12;
  if (o1.at(pair.s).residual() > eps_s + kRoundoff || o1.at(pair.t).residual() > eps_t + kRoundoff) {
    throw std::logic_error("verify_sandwich_noisy: O1 residuals exceed the given epsilons");
  }
  if (mode == SandwichMode::full && equivalence_residual(model, pair) > kStructuralTol) {
    throw std::logic_error("verify_sandwich_noisy: pair is not operationally equivalent");
  }
  const EpistemicState& mu = model.state(prep_of(pair.s));
  const EpistemicState& nu = model.state(prep_of(pair.t));
  NoisySandwich r{};
  r.mode = mode;
  r.l1 = l1_distance(mu, nu);
  r.c_st = confusability(mu, model.response(pair.t));
  r.c_ts = confusability(nu, model.response(pair.s));
  r.lower = 2.0 * std::max(1.0 - r.c_st - eps_t, 1.0 - r.c_ts - eps_s);
  r.upper = 2.0 * std::min(1.0 - r.c_st + eps_t, 1.0 - r.c_ts + eps_s);
  r.lower_margin = r.l1 - r.lower;
  r.upper_margin = r.upper - r.l1;
  r.slack = 4.0 * mu.grid().cell_width();
  return r;
}

OnticModel mix_with_uniform(const OnticModel& model, double w) {
  bounds::require_probability(w, "w");
  OnticModel out = model;
  for (auto& [p, mu] : out.states) {
    const EpistemicState u = EpistemicState::uniform(mu.grid());
    std::vector<double> d(mu.density().begin(), mu.density().end());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (1.0 - w) * d[i] + w * u.density()[i];
    mu = EpistemicState(mu.grid(), std::move(d));
  }
  return out;
}

DpiResult dpi_check(const StochasticMap& t, const EpistemicState& mu, const EpistemicState& nu) {
  DpiResult r{};
  r.before = l1_distance(mu, nu);
  r.after = l1_distance(apply_map(t, mu), apply_map(t, nu));
  r.holds = r.after <= r.before + kStructuralTol;
  return r;
}

}  // namespace cloning::ontic
