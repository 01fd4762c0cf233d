#pragma once

// Reference values computed in 50-digit decimal arithmetic from derivations
// that do not share code with the library, plus seeded generators for the
// property tests.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <random>
#include <vector>

#include "cloning/ontic.hpp"

namespace oracle {

using mp = boost::multiprecision::cpp_dec_float_50;

// Optimal clones lie in span{aa, bb}. With angle(aa, bb) = acos c and the
// clone angle pinned at acos sqrt(c), each clone rotates half the difference
// towards its partner, so F = cos^2((acos c - acos sqrt c) / 2).
inline double optimal_fidelity(double c) {
  const mp x(c);
  const mp half = (acos(x) - acos(sqrt(x))) / 2;
  const mp cs = cos(half);
  return static_cast<double>(cs * cs);
}

// Tr[rho E] for rho = (1 - p) |x><x| + p I/d and E = (1 - q) |y><y| + q I/d
// with overlap o = |<x|y>|^2.
inline mp born_mixed(const mp& p, const mp& q, const mp& o, int d) {
  return (1 - p) * (1 - q) * o + ((1 - p) * q + p * (1 - q) + p * q) / d;
}

// Qubit inputs see one channel on the preparation and one on the test.
inline double eps_input(double v) {
  const mp x(v);
  return static_cast<double>(1 - born_mixed(x, x, mp(1), 2));
}

// Two-qubit states pass the channel twice, tests once.
inline double eps_target(double v) {
  const mp x(v);
  const mp p = 1 - (1 - x) * (1 - x);
  return static_cast<double>(1 - born_mixed(p, x, mp(1), 4));
}

inline double noisy_fidelity(double v, double c) {
  const mp x(v);
  // Preparation and transformation noise on the clone, one more on the test.
  const mp p = 1 - (1 - x) * (1 - x);
  return static_cast<double>(born_mixed(p, x, mp(optimal_fidelity(c)), 4));
}

inline double observed_c_ab(double v, double c) {
  const mp x(v);
  return static_cast<double>(born_mixed(x, x, mp(c), 2));
}

// Violation interval for the direct error term with ideal overlaps, by
// 50-digit bisection of F_Q,noisy - F_NC,noisy.
inline mp gap_direct_ideal(const mp& v, const mp& c) {
  const mp eps_b = v - v * v / 2;
  const mp eps_t = mp(3) / 4 * v * (3 - 3 * v + v * v);
  const mp err = (eps_b + 3 * eps_t) / 2;
  const mp p = 1 - (1 - v) * (1 - v);
  const mp fq = born_mixed(p, v, mp(optimal_fidelity(static_cast<double>(c))), 4);
  return fq - (1 - c / 2 + c * c / 2 + err);
}

inline double bisect_gap(double v, double out, double in) {
  mp o(out), i(in);
  for (int k = 0; k < 60; ++k) {
    const mp mid = (o + i) / 2;
    (gap_direct_ideal(mp(v), mid) > 0 ? i : o) = mid;
  }
  return static_cast<double>((o + i) / 2);
}

// --- generators -------------------------------------------------------------

inline std::vector<double> random_density(std::mt19937_64& rng, const cloning::ontic::LambdaGrid& g) {
  std::exponential_distribution<double> exp1(1.0);
  std::bernoulli_distribution sparse(0.3);
  std::vector<double> d(g.cells());
  double total = 0.0;
  for (auto& x : d) {
    x = sparse(rng) ? 0.0 : exp1(rng);
    total += x;
  }
  if (total == 0.0) d[0] = total = 1.0;
  for (auto& x : d) x /= total * g.cell_measure();
  return d;
}

inline cloning::ontic::StochasticMap random_map(std::mt19937_64& rng, const cloning::ontic::LambdaGrid& src,
                                                const cloning::ontic::LambdaGrid& dst) {
  std::exponential_distribution<double> exp1(1.0);
  std::bernoulli_distribution sparse(0.5);
  std::vector<double> rows(src.cells() * dst.cells());
  for (std::size_t r = 0; r < src.cells(); ++r) {
    double total = 0.0;
    for (std::size_t c = 0; c < dst.cells(); ++c) {
      double& x = rows[r * dst.cells() + c];
      x = sparse(rng) ? 0.0 : exp1(rng);
      total += x;
    }
    if (total == 0.0) rows[r * dst.cells()] = total = 1.0;
    for (std::size_t c = 0; c < dst.cells(); ++c) rows[r * dst.cells() + c] /= total;
  }
  return cloning::ontic::StochasticMap::dense(src, dst, rows);
}

}  // namespace oracle
