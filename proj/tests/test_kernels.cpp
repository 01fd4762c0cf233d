#include <doctest.h>

#include <random>

#include "cloning/kernels.hpp"

using namespace cloning::kernels;

TEST_SUITE("kernels") {

TEST_CASE("reductions are independent of the partition") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {0u, 1u, 63u, 64u, 65u, 1000u, 40001u}) {
    std::vector<double> x(n), y(n);
    for (auto& e : x) e = u(rng);
    for (auto& e : y) e = u(rng);
    CHECK(parallel::sum(x) == doctest::Approx(serial::sum(x)).epsilon(1e-12));
    CHECK(parallel::dot(x, y) == doctest::Approx(serial::dot(x, y)).epsilon(1e-12));
    CHECK(parallel::l1(x, y) == doctest::Approx(serial::l1(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("blocked reductions do not depend on the thread count") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(100003), y(100003);
  for (auto& e : x) e = u(rng);
  for (auto& e : y) e = u(rng);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  const double l1_one = parallel::l1(x, y), dot_one = parallel::dot(x, y);
#ifdef _OPENMP
  omp_set_num_threads(7);
#endif
  CHECK(parallel::l1(x, y) == l1_one);
  CHECK(parallel::dot(x, y) == dot_one);
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif
}

TEST_CASE("pushforward gather equals scatter") {
  Csr k;
  k.rows = 3;
  k.cols = 2;
  k.row_ptr = {0, 2, 3, 4};
  k.col_idx = {0, 1, 1, 0};
  k.values = {0.5, 0.5, 1.0, 1.0};
  const std::vector<double> in{1.0, 2.0, 4.0};
  const auto a = serial::pushforward(k, in);
  const auto b = parallel::pushforward(k.transposed(), in);
  REQUIRE(a.size() == 2);
  CHECK(a[0] == 4.5);
  CHECK(a[1] == 2.5);
  CHECK(a == b);
}

TEST_CASE("tabulate") {
  const std::vector<double> xs{0.0, 1.0, 2.0};
  auto sq = [](double x) { return x * x; };
  CHECK(serial::tabulate(xs, sq) == parallel::tabulate(xs, sq));
  CHECK(thread_count() >= 1);
}

}
