#pragma once

// Data-parallel inner loops shared by the ontic quadrature and the scans.
// Each kernel has a plain serial reference and an OpenMP version. The
// OpenMP reductions split the range into a fixed number of blocks, so the
// result does not depend on the thread count or schedule.

#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cloning::kernels {

/// Compressed sparse rows: row r owns entries [row_ptr[r], row_ptr[r+1]).
struct Csr {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> col_idx;
  std::vector<double> values;

  Csr transposed() const;
};

namespace serial {

double l1(std::span<const double> x, std::span<const double> y);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
/// out[c] = sum_r in[r] * K[r][c]
std::vector<double> pushforward(const Csr& kernel, std::span<const double> in);

template <class F>
std::vector<double> tabulate(std::span<const double> xs, F&& f) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
  return out;
}

}  // namespace serial

namespace parallel {

inline constexpr std::size_t kBlocks = 64;

double l1(std::span<const double> x, std::span<const double> y);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
/// Gathers over the transposed kernel (columns of K as rows).
std::vector<double> pushforward(const Csr& kernel_transposed, std::span<const double> in);

template <class F>
std::vector<double> tabulate(std::span<const double> xs, F&& f) {
  std::vector<double> out(xs.size());
  const auto n = static_cast<long long>(xs.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) out[i] = f(xs[i]);
  return out;
}

}  // namespace parallel

int thread_count();

}  // namespace cloning::kernels
