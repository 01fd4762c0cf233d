#include "cloning/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace cloning::kernels {

Csr Csr::transposed() const {
  Csr t;
  t.rows = cols;
  t.cols = rows;
  t.row_ptr.assign(cols + 1, 0);
  for (std::size_t c : col_idx) ++t.row_ptr[c + 1];
  for (std::size_t c = 0; c < cols; ++c) t.row_ptr[c + 1] += t.row_ptr[c];
  t.col_idx.resize(values.size());
  t.values.resize(values.size());
  std::vector<std::size_t> fill(t.row_ptr.begin(), t.row_ptr.end() - 1);
  // Row-major traversal keeps each transposed row sorted by source index.
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const std::size_t slot = fill[col_idx[k]]++;
      t.col_idx[slot] = r;
      t.values[slot] = values[k];
    }
  }
  return t;
}

namespace {

void require_same_size(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("kernels: length mismatch");
}

template <class Term>
double blocked_reduce(std::size_t n, Term term) {
  constexpr std::size_t kBlocks = parallel::kBlocks;
  double partial[kBlocks] = {};
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(kBlocks); ++b) {
    const std::size_t lo = n * b / kBlocks;
    const std::size_t hi = n * (b + 1) / kBlocks;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[b] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

namespace serial {

double l1(std::span<const double> x, std::span<const double> y) {
  require_same_size(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - y[i]);
  return acc;
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_size(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double sum(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc;
}

std::vector<double> pushforward(const Csr& kernel, std::span<const double> in) {
  if (in.size() != kernel.rows) throw std::invalid_argument("pushforward: source size mismatch");
  std::vector<double> out(kernel.cols, 0.0);
  for (std::size_t r = 0; r < kernel.rows; ++r) {
    for (std::size_t k = kernel.row_ptr[r]; k < kernel.row_ptr[r + 1]; ++k) {
      out[kernel.col_idx[k]] += in[r] * kernel.values[k];
    }
  }
  return out;
}

}  // namespace serial

namespace parallel {

double l1(std::span<const double> x, std::span<const double> y) {
  require_same_size(x, y);
  return blocked_reduce(x.size(), [&](std::size_t i) { return std::abs(x[i] - y[i]); });
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_size(x, y);
  return blocked_reduce(x.size(), [&](std::size_t i) { return x[i] * y[i]; });
}

double sum(std::span<const double> x) {
  return blocked_reduce(x.size(), [&](std::size_t i) { return x[i]; });
}

std::vector<double> pushforward(const Csr& kt, std::span<const double> in) {
  if (in.size() != kt.cols) throw std::invalid_argument("pushforward: source size mismatch");
  std::vector<double> out(kt.rows, 0.0);
  const auto rows = static_cast<long long>(kt.rows);
#pragma omp parallel for schedule(static)
  for (long long t = 0; t < rows; ++t) {
    double acc = 0.0;
    for (std::size_t k = kt.row_ptr[t]; k < kt.row_ptr[t + 1]; ++k) {
      acc += in[kt.col_idx[k]] * kt.values[k];
    }
    out[t] = acc;
  }
  return out;
}

}  // namespace parallel

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace cloning::kernels
